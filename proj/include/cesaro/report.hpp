#ifndef CESARO_REPORT_HPP
#define CESARO_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace cesaro {

// Structured pass/fail record. Quantities keep insertion order so serialized
// reports are deterministic.
struct CheckReport {
  std::string name;
  bool holds = false;
  // False when limits were estimated on a window rather than by stabilization.
  bool certifying = true;
  std::vector<std::pair<std::string, double>> quantities;
  std::vector<std::pair<std::string, std::string>> notes;

  CheckReport& set(const std::string& key, double value);
  CheckReport& note(const std::string& key, std::string text);
  // Throws std::out_of_range if absent.
  double get(const std::string& key) const;
  bool has(const std::string& key) const;
};

}  // namespace cesaro

#endif  // CESARO_REPORT_HPP
