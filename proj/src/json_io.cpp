#include "cesaro/json_io.hpp"

#include <charconv>
#include <cmath>

namespace cesaro::json_io {

namespace {

[[noreturn]] void violation(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::SchemaViolation, where + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) violation(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) violation(where, std::string("missing \"") + key + "\"");
  return *it;
}

Index read_index(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) violation(where, "expected an integer");
  return j.get<Index>();
}

const Json& array_at(const Json& j, const char* key, const std::string& where) {
  const Json& a = member(j, key, where);
  if (!a.is_array()) violation(where + "." + key, "expected an array");
  return a;
}

// Runs a constructor and relabels its domain errors as schema problems.
template <typename F>
auto guarded(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaViolation) throw;
    violation(where, e.what());
  }
}

void write_double(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "null";
    return;
  }
  if (std::isinf(v)) {
    out += v > 0 ? "\"inf\"" : "\"-inf\"";
    return;
  }
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  std::string_view s(buf, static_cast<std::size_t>(res.ptr - buf));
  out += s;
  // Keep it a JSON float so the reader sees a double, not an integer.
  if (s.find_first_of(".eE") == std::string_view::npos) out += ".0";
}

void write(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(k).dump();
        out += indent < 0 ? ":" : ": ";
        write(out, v, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Numeric arrays stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat || indent < 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write(out, v, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      write_double(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  out += '\n';
  return out;
}

Json number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  violation(where, "expected a number");
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    violation("input", e.what());
  }
}

Json to_json(const SpaceSpec& s) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LpSequence>) {
          return {{"space", "lp"}, {"p", number(v.p)}};
        } else if constexpr (std::is_same_v<T, FiniteL1>) {
          return {{"space", "finite_l1"}, {"n", v.n}};
        } else if constexpr (std::is_same_v<T, CSpace>) {
          return {{"space", "c"}};
        } else {
          Json comps = Json::array();
          for (const auto& c : v.components) comps.push_back(to_json(c));
          return {{"space", "cesaro_sum"}, {"p", number(v.p)}, {"components", comps}};
        }
      },
      s.variant());
}

SpaceSpec space_from_json(const Json& j) {
  const std::string where = "space";
  const Json& kind = member(j, "space", where);
  if (!kind.is_string()) violation(where, "\"space\" must be a string");
  const auto& k = kind.get_ref<const std::string&>();
  return guarded(where, [&] {
    if (k == "lp") return SpaceSpec::lp(read_number(member(j, "p", where), where + ".p"));
    if (k == "finite_l1") return SpaceSpec::finite_l1(read_index(member(j, "n", where), where + ".n"));
    if (k == "c") return SpaceSpec::c_space();
    if (k == "cesaro_sum") {
      std::vector<SpaceSpec> comps;
      for (const auto& c : array_at(j, "components", where)) comps.push_back(space_from_json(c));
      return SpaceSpec::cesaro_sum(read_number(member(j, "p", where), where + ".p"), std::move(comps));
    }
    violation(where, "unknown space \"" + k + "\"");
  });
}

Json to_json(const TaggedVector& v) {
  Json idx = Json::array(), coeffs = Json::array();
  for (const auto& e : v.entries()) {
    idx.push_back(e.index);
    coeffs.push_back(number(e.coeff));
  }
  return {{"indices", idx}, {"coeffs", coeffs}};
}

TaggedVector vector_from_json(const Json& j) {
  const std::string where = "vector";
  const Json& idx = array_at(j, "indices", where);
  const Json& coeffs = array_at(j, "coeffs", where);
  if (idx.size() != coeffs.size()) violation(where, "indices and coeffs differ in length");
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    entries.push_back({read_index(idx[i], where + ".indices"), read_number(coeffs[i], where + ".coeffs")});
  }
  return guarded(where, [&] { return TaggedVector(std::move(entries)); });
}

namespace {

Partition partition_from_json(const Json& j, const std::string& where) {
  std::vector<double> bp;
  for (const auto& b : array_at(j, "breakpoints", where)) bp.push_back(read_number(b, where + ".breakpoints"));
  return guarded(where, [&] { return Partition(std::span<const double>(bp)); });
}

Json breakpoints_json(const Partition& p) {
  Json bp = Json::array();
  for (Index i = 0; i < p.breakpoints().size(); ++i) bp.push_back(number(p.breakpoints()[i]));
  return bp;
}

}  // namespace

Json to_json(const ScalarStepFunction& f) {
  Json cells = Json::array();
  for (Index k = 0; k < f.cells(); ++k) cells.push_back(number(f.value(k)));
  return {{"breakpoints", breakpoints_json(f.partition())}, {"cells", cells}};
}

ScalarStepFunction scalar_function_from_json(const Json& j) {
  const std::string where = "step_function";
  Partition part = partition_from_json(j, where);
  const Json& cells = array_at(j, "cells", where);
  if (static_cast<Index>(cells.size()) != part.cells()) violation(where, "need one value per cell");
  Eigen::ArrayXd v(part.cells());
  for (Index k = 0; k < part.cells(); ++k) v[k] = read_number(cells[static_cast<std::size_t>(k)], where + ".cells");
  return guarded(where, [&] { return ScalarStepFunction(std::move(part), std::move(v)); });
}

Json to_json(const VectorStepFunction& f) {
  Json cells = Json::array();
  for (const auto& v : f.values()) cells.push_back(to_json(v));
  return {{"breakpoints", breakpoints_json(f.partition())}, {"cells", cells}, {"space", to_json(f.space())}};
}

VectorStepFunction vector_function_from_json(const Json& j, const SpaceSpec* fallback) {
  const std::string where = "step_function";
  Partition part = partition_from_json(j, where);
  const Json& cells = array_at(j, "cells", where);
  if (static_cast<Index>(cells.size()) != part.cells()) violation(where, "need one value per cell");
  std::vector<TaggedVector> values;
  for (const auto& c : cells) values.push_back(vector_from_json(c));
  SpaceSpec space = SpaceSpec::lp(2.0);
  if (j.contains("space")) {
    space = space_from_json(j["space"]);
  } else if (fallback != nullptr) {
    space = *fallback;
  } else {
    violation(where, "missing \"space\"");
  }
  return guarded(where, [&] { return VectorStepFunction(std::move(part), std::move(values), space); });
}

Json to_json(const SumElement& x) {
  const auto* sum = x.space().as<CesaroSum>();
  Json stack = Json::array();
  for (const auto& c : sum->components) stack.push_back(to_json(c));
  Json comps = Json::array();
  for (const auto& c : x.components()) comps.push_back({{"slot", c.slot}, {"vector", to_json(c.vector)}});
  return {{"p", number(sum->p)}, {"components", comps}, {"stack", stack}};
}

SumElement sum_element_from_json(const Json& j) {
  const std::string where = "sum_element";
  std::vector<SpaceSpec> stack;
  for (const auto& c : array_at(j, "stack", where)) stack.push_back(space_from_json(c));
  const double p = read_number(member(j, "p", where), where + ".p");
  std::vector<SlotVector> comps;
  for (const auto& c : array_at(j, "components", where)) {
    comps.push_back({read_index(member(c, "slot", where), where + ".slot"), vector_from_json(member(c, "vector", where))});
  }
  return guarded(where, [&] { return SumElement(std::move(comps), SpaceSpec::cesaro_sum(p, std::move(stack))); });
}

Json to_json(const FunctionShiftFamily& fam) {
  return {{"profile", to_json(fam.profile())},
          {"space", to_json(fam.space())},
          {"block", to_json(fam.shifts().base())},
          {"offset", fam.shifts().offset()},
          {"stride", fam.shifts().stride()}};
}

FunctionShiftFamily family_from_json(const Json& j) {
  const std::string where = "family";
  ScalarStepFunction profile = scalar_function_from_json(member(j, "profile", where));
  SpaceSpec space = space_from_json(member(j, "space", where));
  TaggedVector block = vector_from_json(member(j, "block", where));
  const Index offset = j.contains("offset") ? read_index(j["offset"], where + ".offset") : 1;
  const Index stride = j.contains("stride") ? read_index(j["stride"], where + ".stride") : 0;
  return guarded(where, [&] { return FunctionShiftFamily(std::move(profile), std::move(space), std::move(block), offset, stride); });
}

Json to_json(const NormResult& r) {
  return {{"value", number(r.value)}, {"error_bound", number(r.error_bound)}, {"exact", r.exact},
          {"converged", r.converged}};
}

Json to_json(const LimitEstimate& e) {
  Json j{{"kind", e.kind == LimitEstimate::Kind::Limsup ? "limsup" : "liminf"},
         {"value", number(e.value)},
         {"error_bound", number(e.error_bound)},
         {"exact", e.exact}};
  if (e.exact) {
    j["stabilization_index"] = e.stabilization_index;
  } else {
    j["window"] = {e.window_begin, e.window_end};
    j["drift"] = number(e.drift);
  }
  return j;
}

Json to_json(const CheckReport& r) {
  Json q = Json::object();
  for (const auto& [k, v] : r.quantities) q[k] = number(v);
  Json n = Json::object();
  for (const auto& [k, v] : r.notes) n[k] = v;
  return {{"name", r.name}, {"holds", r.holds}, {"certifying", r.certifying}, {"quantities", q}, {"notes", n}};
}

}  // namespace cesaro::json_io
