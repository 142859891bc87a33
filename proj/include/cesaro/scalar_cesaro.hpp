#ifndef CESARO_SCALAR_CESARO_HPP
#define CESARO_SCALAR_CESARO_HPP

#include <span>
#include <vector>

#include "cesaro/core.hpp"
#include "cesaro/quadrature.hpp"
#include "cesaro/report.hpp"

namespace cesaro {

inline constexpr double kDefaultSequenceTol = 1e-10;

// (sum_n c_n^p)^{1/p} where c_1..c_N are given and c_n = tail_mass / n for
// n > N. Extra terms are summed exactly until the integral bracket on the
// remaining tail is narrow enough that the norm is pinned to within tol.
NormResult harmonic_tail_lp_norm(std::span<const double> head, double tail_mass,
                                 const Exponent& p, double tol = kDefaultSequenceTol);

// Two-sided bounds on sum_{n>N} (S/n)^p. `integral_*` is the plain bracket
// S^p (N+1)^{1-p}/(p-1) <= tail <= S^p N^{1-p}/(p-1); `lower`/`upper` is the
// convexity (trapezoid / midpoint) bracket, which lies inside it.
struct TailBracket {
  double integral_lower;
  double integral_upper;
  double lower;
  double upper;
};
TailBracket harmonic_tail_bracket(double tail_mass, const Exponent& p, Index n);

// Cesaro sequence norm (sum_n ((1/n) sum_{i<=n} |a_i|)^p)^{1/p}, p > 1.
NormResult ces_seq_norm(const TaggedVector& a, const Exponent& p,
                        double tol = kDefaultSequenceTol);

// Running averages (1/n) sum_{i<=n} |a_i| for n = 1..max_index.
std::vector<double> running_averages(const TaggedVector& a);

// F(t_k) = int_0^{t_k} |h| at every breakpoint.
Eigen::ArrayXd cumulative_integral(const ScalarStepFunction& h);

// Cesaro function norm. p = 1 uses the closed form of weighted_l1_norm.
NormResult ces_fun_norm(const ScalarStepFunction& h, const Exponent& p,
                        const QuadratureConfig& cfg = {});

// Always integrates numerically, also at p = 1. Used to cross-check the
// closed form.
NormResult ces_fun_norm_by_quadrature(const ScalarStepFunction& h, const Exponent& p,
                                      const QuadratureConfig& cfg = {});

// int_0^1 |h(s)| log(1/s) ds.
NormResult weighted_l1_norm(const ScalarStepFunction& h);

NormResult lp_fun_norm(const ScalarStepFunction& h, const Exponent& p);
// r in [1, inf]; r = inf gives the max of |h| over cells.
NormResult lr_fun_norm(const ScalarStepFunction& h, double r);

// ||h||_{Ces_p} <= q ||h||_p, checked with combined error bounds.
CheckReport check_embedding_inequality(const ScalarStepFunction& h, const Exponent& p,
                                       const QuadratureConfig& cfg = {});

// ||base + increment||_{Ces_p}^p - ||base||_{Ces_p}^p for nonnegative base and
// base + increment, computed without subtracting the two norms:
//   int_0^1 t^{-p} ((G + D)^p - G^p) dt,  G = int base, D = int increment.
NormResult ces_power_difference(const ScalarStepFunction& base,
                                const ScalarStepFunction& increment, const Exponent& p,
                                const QuadratureConfig& cfg = {});

struct AverageSample {
  double t;
  double inner_average;
  double integrand;
};

// (t, (1/t) int_0^t |h|, ((1/t) int_0^t |h|)^p) on the Gauss nodes of each cell.
std::vector<AverageSample> sample_averages(const ScalarStepFunction& h, const Exponent& p,
                                           const QuadratureConfig& cfg = {});

// Bounds on v^p given v +- e.
NormResult power_of(const NormResult& v, double p);

}  // namespace cesaro

#endif  // CESARO_SCALAR_CESARO_HPP
