#ifndef CESARO_QUADRATURE_HPP
#define CESARO_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "cesaro/errors.hpp"
#include "cesaro/summation.hpp"

namespace cesaro {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  // Bisections allowed per partition cell.
  int max_subdivisions = 60;
  // Gauss-Legendre order of the coarse rule; the error estimate uses 2x.
  int nodes_per_cell = 16;

  void validate() const;
};

// Gauss-Legendre nodes and weights on [-1, 1].
template <typename Scalar>
struct GaussLegendreRule {
  Eigen::Array<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> weights;
};

// Newton iteration on the three-term Legendre recurrence.
template <typename Scalar = double>
GaussLegendreRule<Scalar> gauss_legendre(int n) {
  using std::abs;
  using std::cos;
  if (n < 1) throw Error(ErrorKind::InvalidInput, "Gauss-Legendre order must be >= 1");
  GaussLegendreRule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Scalar pi = std::numbers::pi_v<double>;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar x = cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p0 = 1;
      Scalar p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / Scalar(k);
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n == 1 ? Scalar(1) : Scalar(n) * (x * p1 - p0) / (x * x - 1);
      const Scalar dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= 2 * eps) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const Scalar w = 2 / ((1 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0;
  return rule;
}

// Cached double-precision rule; thread-safe.
const GaussLegendreRule<double>& cached_gauss_legendre(int n);

template <typename F>
double gauss_legendre_apply(const GaussLegendreRule<double>& rule, F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  CompensatedSum<double> acc;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * acc.value();
}

struct QuadratureResult {
  double value = 0.0;
  // Sum of |I_n - I_2n| over the accepted subintervals.
  double error_estimate = 0.0;
  bool converged = true;
  std::int64_t subdivisions = 0;
};

// Globally adaptive Gauss-Legendre over a list of disjoint intervals. The
// interval with the largest |I_n - I_2n| is bisected until the summed
// estimate is <= rel_tol * |total| or the subdivision budget runs out.
// The final value is summed in ascending interval order.
//
// Envelope(a, b) returns {lo, hi} with lo <= f <= hi on [a, b]. If the budget
// runs out, each segment's error is widened to the enclosure the envelope
// implies, so the bound stays rigorous instead of resting on |I_n - I_2n|.
struct NoEnvelope {};

template <typename F, typename Envelope = NoEnvelope>
QuadratureResult integrate_adaptive(F&& f, std::span<const std::pair<double, double>> intervals,
                                    const QuadratureConfig& cfg, Envelope&& envelope = {}) {
  struct Segment {
    double a, b, value, error;
  };
  const auto& low = cached_gauss_legendre(cfg.nodes_per_cell);
  const auto& high = cached_gauss_legendre(2 * cfg.nodes_per_cell);
  auto evaluate = [&](double a, double b) {
    const double coarse = gauss_legendre_apply(low, f, a, b);
    const double fine = gauss_legendre_apply(high, f, a, b);
    return Segment{a, b, fine, std::abs(fine - coarse)};
  };

  std::vector<Segment> segments;
  segments.reserve(intervals.size());
  double total = 0.0;
  double total_error = 0.0;
  for (const auto& [a, b] : intervals) {
    segments.push_back(evaluate(a, b));
    total += segments.back().value;
    total_error += segments.back().error;
  }

  // Max-heap on error; ties broken by position for determinism.
  auto worse = [&](std::size_t i, std::size_t j) {
    if (segments[i].error != segments[j].error) return segments[i].error < segments[j].error;
    return i > j;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> heap(worse);
  for (std::size_t i = 0; i < segments.size(); ++i) heap.push(i);

  const std::int64_t budget =
      static_cast<std::int64_t>(cfg.max_subdivisions) * static_cast<std::int64_t>(intervals.size());
  QuadratureResult result;
  while (!heap.empty() && total_error > cfg.rel_tol * std::abs(total)) {
    if (result.subdivisions >= budget) {
      result.converged = false;
      break;
    }
    const std::size_t i = heap.top();
    heap.pop();
    const Segment parent = segments[i];
    const double mid = 0.5 * (parent.a + parent.b);
    if (!(mid > parent.a && mid < parent.b)) {
      result.converged = false;
      break;
    }
    segments[i] = evaluate(parent.a, mid);
    segments.push_back(evaluate(mid, parent.b));
    total += segments[i].value + segments.back().value - parent.value;
    total_error += segments[i].error + segments.back().error - parent.error;
    heap.push(i);
    heap.push(segments.size() - 1);
    ++result.subdivisions;
  }

  std::sort(segments.begin(), segments.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  CompensatedSum<double> value;
  CompensatedSum<double> error;
  for (const auto& s : segments) {
    value += s.value;
    double e = s.error;
    if constexpr (!std::is_same_v<std::decay_t<Envelope>, NoEnvelope>) {
      if (!result.converged) {
        const auto [lo, hi] = envelope(s.a, s.b);
        const double w = s.b - s.a;
        e = std::max({e, s.value - w * lo, w * hi - s.value});
      }
    }
    error += e;
  }
  result.value = value.value();
  result.error_estimate = error.value();
  return result;
}

}  // namespace cesaro

#endif  // CESARO_QUADRATURE_HPP
