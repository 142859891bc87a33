#include "cesaro/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace cesaro {

CheckReport& CheckReport::set(const std::string& key, double value) {
  auto it = std::find_if(quantities.begin(), quantities.end(),
                         [&](const auto& kv) { return kv.first == key; });
  if (it != quantities.end()) {
    it->second = value;
  } else {
    quantities.emplace_back(key, value);
  }
  return *this;
}

CheckReport& CheckReport::note(const std::string& key, std::string text) {
  notes.emplace_back(key, std::move(text));
  return *this;
}

double CheckReport::get(const std::string& key) const {
  for (const auto& [k, v] : quantities) {
    if (k == key) return v;
  }
  throw std::out_of_range("CheckReport '" + name + "' has no quantity '" + key + "'");
}

bool CheckReport::has(const std::string& key) const {
  return std::any_of(quantities.begin(), quantities.end(),
                     [&](const auto& kv) { return kv.first == key; });
}

}  // namespace cesaro
