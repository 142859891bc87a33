#ifndef CESARO_ACCEPTANCE_HPP
#define CESARO_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cesaro/json_io.hpp"

namespace cesaro::acceptance {

inline constexpr const char* kSuiteSchema = "cesaro-lab/suite/v1";

struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool pass = false;
  std::size_t instances = 0;
  std::size_t failures = 0;
  // Worst observed value of the checked quantity and the bound it is held to.
  std::vector<std::pair<std::string, double>> quantities;
  // First failing instance, empty when everything passed.
  std::string first_failure;
};

struct SuiteOutcome {
  std::uint64_t seed = 0;
  std::vector<CriterionOutcome> criteria;
  bool pass() const;
};

// Criteria 1 to 13. Every randomized battery draws from generators seeded by
// (seed, criterion, instance), so the outcome is independent of thread count.
SuiteOutcome run_criteria(std::uint64_t seed);

// Criterion 14: the serialized reports of two runs must match byte for byte.
CriterionOutcome determinism_criterion(const std::string& first, const std::string& second);

// Runs the criteria twice and appends criterion 14.
SuiteOutcome run_suite(std::uint64_t seed);

json_io::Json to_json(const SuiteOutcome& s);
// One "PASS 3 title (...)" line per criterion.
std::string summary_lines(const SuiteOutcome& s);

}  // namespace cesaro::acceptance

#endif  // CESARO_ACCEPTANCE_HPP
