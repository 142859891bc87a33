#include "cesaro/scalar_cesaro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cesaro/summation.hpp"

namespace cesaro {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double ipow(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  return std::pow(x, p);
}

double iroot(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return std::sqrt(x);
  return std::pow(x, 1.0 / p);
}

// value = P^{1/p} with the interval [P - e, P + e] mapped through the root.
NormResult root_of_power_sum(double power_sum, double power_error, double p, bool exact) {
  NormResult r;
  r.exact = exact;
  r.value = iroot(power_sum, p);
  const double hi = iroot(power_sum + power_error, p);
  const double lo = iroot(std::max(power_sum - power_error, 0.0), p);
  r.error_bound = std::max(hi - r.value, r.value - lo) + 4.0 * kEps * r.value;
  return r;
}

void check_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::InvalidTolerance, "tolerance must be positive and finite");
  }
}

// int_a^b t^{-p} dt for 0 < a < b.
double inverse_power_integral(double a, double b, double p) {
  const double log_ratio = std::log1p((b - a) / a);
  if (p == 1.0) return log_ratio;
  return -std::pow(a, 1.0 - p) * std::expm1((1.0 - p) * log_ratio) / (p - 1.0);
}

// int_a^b log(1/s) ds.
double log_weight_integral(double a, double b) {
  const double d = b - a;
  if (a == 0.0) return b * (1.0 - std::log(b));
  return d * (1.0 - std::log(b)) - a * std::log1p(d / a);
}

double log_weight_integral_error(double a, double b) {
  const double d = b - a;
  if (a == 0.0) return 4.0 * kEps * b * (1.0 + std::abs(std::log(b)));
  return 4.0 * kEps * (d * (1.0 + std::abs(std::log(b))) + a * std::log1p(d / a));
}

// Signed int_0^1 h(s) log(1/s) ds with a rounding bound.
NormResult signed_weighted_integral(const ScalarStepFunction& h) {
  const Partition& part = h.partition();
  CompensatedSum<double> value;
  CompensatedSum<double> error;
  for (Index k = 0; k < part.cells(); ++k) {
    const double v = h.value(k);
    if (v == 0.0) continue;
    value += v * log_weight_integral(part.left(k), part.right(k));
    error += std::abs(v) * log_weight_integral_error(part.left(k), part.right(k));
  }
  NormResult r;
  r.value = value.value();
  r.error_bound = error.value() + 2.0 * kEps * std::abs(r.value);
  r.exact = true;
  return r;
}

// (x + d)^p - x^p for x >= 0, without cancellation when |d| << x.
double power_increment(double x, double d, double p) {
  if (d == 0.0) return 0.0;
  if (x == 0.0) return d > 0.0 ? ipow(d, p) : 0.0;
  if (x + d <= 0.0) return -ipow(x, p);
  return ipow(x, p) * std::expm1(p * std::log1p(d / x));
}

// Range of (y_+)^p over a segment where y is monotone; y_a, y_b are the
// endpoint values. Padded outward for rounding in pow.
std::pair<double, double> monotone_power_range(double y_a, double y_b, double p) {
  const double u = ipow(std::max(y_a, 0.0), p);
  const double w = ipow(std::max(y_b, 0.0), p);
  return {std::min(u, w) * (1.0 - 8.0 * kEps), std::max(u, w) * (1.0 + 8.0 * kEps)};
}

}  // namespace

TailBracket harmonic_tail_bracket(double tail_mass, const Exponent& exponent, Index n) {
  const double p = exponent.value();
  if (exponent.is_one()) throw Error(ErrorKind::InvalidExponent, "tail diverges at p = 1");
  if (n < 1) throw Error(ErrorKind::InvalidInput, "tail bracket needs N >= 1");
  const double sp = ipow(tail_mass, p);
  const double nd = static_cast<double>(n);
  auto antiderivative = [p](double x) { return std::pow(x, 1.0 - p) / (p - 1.0); };
  TailBracket b;
  b.integral_lower = sp * antiderivative(nd + 1.0);
  b.integral_upper = sp * antiderivative(nd);
  b.lower = sp * (antiderivative(nd + 1.0) + 0.5 * std::pow(nd + 1.0, -p));
  b.upper = sp * antiderivative(nd + 0.5);
  return b;
}

NormResult harmonic_tail_lp_norm(std::span<const double> head, double tail_mass,
                                 const Exponent& exponent, double tol) {
  check_tolerance(tol);
  if (exponent.is_one()) {
    throw Error(ErrorKind::InvalidExponent, "ces_1 = {0}: the p = 1 series diverges");
  }
  const double p = exponent.value();
  CompensatedSum<double> acc;
  for (double c : head) acc += ipow(std::abs(c), p);
  if (tail_mass == 0.0) {
    return root_of_power_sum(acc.value(), 4.0 * kEps * acc.value(), p, true);
  }

  Index n = static_cast<Index>(head.size());
  auto extend_to = [&](Index m) {
    for (Index k = n + 1; k <= m; ++k) acc += ipow(tail_mass / static_cast<double>(k), p);
    n = m;
  };
  extend_to(std::max<Index>(n, 8));

  constexpr Index kMaxTerms = Index{1} << 27;
  NormResult r;
  for (;;) {
    const TailBracket b = harmonic_tail_bracket(tail_mass, exponent, n);
    const double sum = acc.value();
    const double lo = iroot(sum + b.lower, p);
    const double hi = iroot(sum + b.upper, p);
    r.value = 0.5 * (lo + hi);
    const double rounding = 8.0 * kEps * r.value;
    r.error_bound = 0.5 * (hi - lo) + rounding;
    if (r.error_bound <= tol) break;
    // Bracket already below rounding level, or term budget spent.
    if (0.5 * (hi - lo) <= rounding || n >= kMaxTerms) {
      r.converged = false;
      break;
    }
    extend_to(2 * n);
  }
  return r;
}

std::vector<double> running_averages(const TaggedVector& a) {
  std::vector<double> averages(static_cast<std::size_t>(a.max_index()));
  double mass = 0.0;
  auto entry = a.entries().begin();
  for (Index n = 1; n <= a.max_index(); ++n) {
    if (entry != a.entries().end() && entry->index == n) {
      mass += std::abs(entry->coeff);
      ++entry;
    }
    averages[static_cast<std::size_t>(n - 1)] = mass / static_cast<double>(n);
  }
  return averages;
}

NormResult ces_seq_norm(const TaggedVector& a, const Exponent& p, double tol) {
  if (p.is_one()) throw Error(ErrorKind::InvalidExponent, "ces_1 = {0}; use p > 1");
  check_tolerance(tol);
  const auto averages = running_averages(a);
  return harmonic_tail_lp_norm(averages, a.l1_norm(), p, tol);
}

Eigen::ArrayXd cumulative_integral(const ScalarStepFunction& h) {
  const Partition& part = h.partition();
  Eigen::ArrayXd F(part.cells() + 1);
  CompensatedSum<double> acc;
  F[0] = 0.0;
  for (Index k = 0; k < part.cells(); ++k) {
    acc += std::abs(h.value(k)) * part.width(k);
    F[k + 1] = acc.value();
  }
  return F;
}

NormResult weighted_l1_norm(const ScalarStepFunction& h) {
  return signed_weighted_integral(h.abs());
}

NormResult ces_fun_norm_by_quadrature(const ScalarStepFunction& h, const Exponent& exponent,
                                      const QuadratureConfig& cfg) {
  cfg.validate();
  const double p = exponent.value();
  const Partition& part = h.partition();
  const Eigen::ArrayXd v = h.values().abs();
  const Eigen::ArrayXd F = cumulative_integral(h);

  // First cell: the average equals |h_0| exactly.
  CompensatedSum<double> closed;
  closed += ipow(v[0], p) * part.right(0);
  double closed_error = 2.0 * kEps * ipow(v[0], p) * part.right(0);

  std::vector<std::pair<double, double>> intervals;
  for (Index k = 1; k < part.cells(); ++k) {
    if (v[k] != 0.0) {
      intervals.emplace_back(part.left(k), part.right(k));
    } else if (F[k] != 0.0) {
      const double term = ipow(F[k], p) * inverse_power_integral(part.left(k), part.right(k), p);
      closed += term;
      closed_error += 8.0 * kEps * term;
    }
  }

  auto average_on = [&](Index k, double t) { return (F[k] + v[k] * (t - part.left(k))) / t; };
  auto integrand = [&](double t) { return ipow(average_on(part.locate(t), t), p); };
  // F_k / t + v_k (1 - t_k / t) is monotone in t on each cell.
  auto envelope = [&](double a, double b) {
    const Index k = part.locate(0.5 * (a + b));
    return monotone_power_range(average_on(k, a), average_on(k, b), p);
  };
  const QuadratureResult q = integrate_adaptive(integrand, intervals, cfg, envelope);
  const double sum = closed.value() + q.value;
  const double error = q.error_estimate + closed_error + 8.0 * kEps * sum;
  NormResult r = root_of_power_sum(sum, error, p, intervals.empty());
  r.converged = q.converged;
  return r;
}

NormResult ces_fun_norm(const ScalarStepFunction& h, const Exponent& p,
                        const QuadratureConfig& cfg) {
  cfg.validate();
  if (p.is_one()) return weighted_l1_norm(h);
  return ces_fun_norm_by_quadrature(h, p, cfg);
}

NormResult lp_fun_norm(const ScalarStepFunction& h, const Exponent& exponent) {
  const double p = exponent.value();
  const Partition& part = h.partition();
  CompensatedSum<double> acc;
  for (Index k = 0; k < part.cells(); ++k) acc += ipow(std::abs(h.value(k)), p) * part.width(k);
  return root_of_power_sum(acc.value(), 4.0 * kEps * acc.value(), p, true);
}

NormResult lr_fun_norm(const ScalarStepFunction& h, double r) {
  if (r == std::numeric_limits<double>::infinity()) {
    return {h.values().abs().maxCoeff(), 0.0, true, true};
  }
  return lp_fun_norm(h, Exponent(r));
}

CheckReport check_embedding_inequality(const ScalarStepFunction& h, const Exponent& p,
                                       const QuadratureConfig& cfg) {
  if (p.is_one()) throw Error(ErrorKind::InvalidExponent, "the L^p comparison needs p > 1");
  const NormResult lhs = ces_fun_norm(h, p, cfg);
  const NormResult lp = lp_fun_norm(h, p);
  const double q = p.conjugate();
  const double rhs = q * lp.value;
  const double slack_allowance = lhs.error_bound + q * lp.error_bound;
  CheckReport report;
  report.name = "embedding_inequality";
  report.holds = lhs.value <= rhs + slack_allowance;
  report.set("p", p.value())
      .set("q", q)
      .set("lhs", lhs.value)
      .set("lhs_error", lhs.error_bound)
      .set("lp_norm", lp.value)
      .set("rhs", rhs)
      .set("rhs_error", q * lp.error_bound)
      .set("slack", rhs - lhs.value);
  return report;
}

NormResult ces_power_difference(const ScalarStepFunction& base,
                                const ScalarStepFunction& increment, const Exponent& exponent,
                                const QuadratureConfig& cfg) {
  cfg.validate();
  const Partition common = common_refinement(base.partition(), increment.partition());
  const ScalarStepFunction g = base.on(common);
  const ScalarStepFunction d = increment.on(common);
  if ((g.values() < 0.0).any()) {
    throw Error(ErrorKind::InvalidInput, "base profile must be nonnegative");
  }
  if (exponent.is_one()) return signed_weighted_integral(d);

  const double p = exponent.value();
  // Signed running integrals of base and increment.
  Eigen::ArrayXd G(common.cells() + 1);
  Eigen::ArrayXd D(common.cells() + 1);
  CompensatedSum<double> gs;
  CompensatedSum<double> ds;
  G[0] = D[0] = 0.0;
  for (Index k = 0; k < common.cells(); ++k) {
    gs += g.value(k) * common.width(k);
    ds += d.value(k) * common.width(k);
    G[k + 1] = gs.value();
    D[k + 1] = ds.value();
  }

  CompensatedSum<double> closed;
  closed += power_increment(g.value(0), d.value(0), p) * common.right(0);
  std::vector<std::pair<double, double>> intervals;
  for (Index k = 1; k < common.cells(); ++k) {
    if (d.value(k) != 0.0 || D[k] != 0.0) intervals.emplace_back(common.left(k), common.right(k));
  }
  auto base_on = [&](Index k, double t) { return (G[k] + g.value(k) * (t - common.left(k))) / t; };
  auto incr_on = [&](Index k, double t) { return (D[k] + d.value(k) * (t - common.left(k))) / t; };
  auto integrand = [&](double t) {
    const Index k = common.locate(t);
    return power_increment(base_on(k, t), incr_on(k, t), p);
  };
  // Both averages and their sum are monotone on a cell, so bound the two
  // powers separately.
  auto envelope = [&](double a, double b) {
    const Index k = common.locate(0.5 * (a + b));
    const auto [x_lo, x_hi] = monotone_power_range(base_on(k, a), base_on(k, b), p);
    const auto [y_lo, y_hi] = monotone_power_range(base_on(k, a) + incr_on(k, a),
                                                   base_on(k, b) + incr_on(k, b), p);
    return std::pair{y_lo - x_hi, y_hi - x_lo};
  };
  const QuadratureResult q = integrate_adaptive(integrand, intervals, cfg, envelope);
  NormResult r;
  r.value = closed.value() + q.value;
  r.error_bound = q.error_estimate + 16.0 * kEps * std::abs(r.value);
  r.exact = intervals.empty();
  r.converged = q.converged;
  return r;
}

std::vector<AverageSample> sample_averages(const ScalarStepFunction& h, const Exponent& exponent,
                                           const QuadratureConfig& cfg) {
  cfg.validate();
  const double p = exponent.value();
  const Partition& part = h.partition();
  const Eigen::ArrayXd F = cumulative_integral(h);
  const auto& rule = cached_gauss_legendre(cfg.nodes_per_cell);
  std::vector<AverageSample> samples;
  samples.reserve(static_cast<std::size_t>(part.cells() * rule.nodes.size()));
  for (Index k = 0; k < part.cells(); ++k) {
    const double mid = 0.5 * (part.left(k) + part.right(k));
    const double half = 0.5 * part.width(k);
    const double vk = std::abs(h.value(k));
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      const double t = mid + half * rule.nodes[i];
      const double avg = k == 0 ? vk : (F[k] + vk * (t - part.left(k))) / t;
      samples.push_back({t, avg, ipow(avg, p)});
    }
  }
  return samples;
}

NormResult power_of(const NormResult& v, double p) {
  NormResult r;
  r.exact = v.exact;
  r.converged = v.converged;
  r.value = ipow(v.value, p);
  const double hi = ipow(v.value + v.error_bound, p);
  const double lo = ipow(std::max(v.value - v.error_bound, 0.0), p);
  r.error_bound = std::max(hi - r.value, r.value - lo) + 2.0 * kEps * r.value;
  return r;
}

}  // namespace cesaro
