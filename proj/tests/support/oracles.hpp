#ifndef CESARO_TESTS_ORACLES_HPP
#define CESARO_TESTS_ORACLES_HPP

// Reference computations that share no code path with the library.

#include <cmath>
#include <vector>

#include "cesaro/core.hpp"

namespace cesaro::testing {

// sum_n ((1/n) sum_{i<=n} |a_i|)^p by direct long double summation to `terms`,
// plus the midpoint of the plain integral tail bracket.
inline long double brute_ces_seq_norm(const std::vector<double>& dense, double p,
                                      long n_terms = 2'000'000) {
  long double mass = 0.0L;
  long double sum = 0.0L;
  for (long n = 1; n <= n_terms; ++n) {
    if (n <= static_cast<long>(dense.size())) mass += std::fabs(static_cast<long double>(dense[n - 1]));
    sum += std::pow(mass / n, static_cast<long double>(p));
  }
  const long double sp = std::pow(mass, static_cast<long double>(p));
  const long double lo = sp * std::pow(static_cast<long double>(n_terms + 1), 1.0L - p) / (p - 1.0L);
  const long double hi = sp * std::pow(static_cast<long double>(n_terms), 1.0L - p) / (p - 1.0L);
  return std::pow(sum + 0.5L * (lo + hi), 1.0L / p);
}

// Composite Simpson in long double on each cell of the partition of the
// integrand ((1/t) int_0^t |h|)^p, with the inner integral evaluated by
// summing full cells; first cell handled by the same Simpson rule.
inline long double simpson_ces_fun_power(const ScalarStepFunction& h, double p,
                                         int panels_per_cell = 4000) {
  const auto& bp = h.partition().breakpoints();
  const Index K = h.cells();
  auto inner = [&](long double t) {
    long double acc = 0.0L;
    for (Index k = 0; k < K; ++k) {
      const long double a = bp[k];
      const long double b = bp[k + 1];
      if (t <= a) break;
      acc += std::fabs(static_cast<long double>(h.value(k))) * (std::min(t, b) - a);
    }
    return acc;
  };
  long double total = 0.0L;
  for (Index k = 0; k < K; ++k) {
    const long double a = bp[k];
    const long double b = bp[k + 1];
    if (k == 0) {
      total += std::pow(std::fabs(static_cast<long double>(h.value(0))), static_cast<long double>(p)) * b;
      continue;
    }
    const long double step = (b - a) / panels_per_cell;
    auto f = [&](long double t) { return std::pow(inner(t) / t, static_cast<long double>(p)); };
    long double s = f(a) + f(b);
    for (int i = 1; i < panels_per_cell; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(a + i * step);
    total += s * step / 3.0L;
  }
  return total;
}

}  // namespace cesaro::testing

#endif  // CESARO_TESTS_ORACLES_HPP
