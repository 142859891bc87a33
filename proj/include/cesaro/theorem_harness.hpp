#ifndef CESARO_THEOREM_HARNESS_HPP
#define CESARO_THEOREM_HARNESS_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cesaro/core.hpp"
#include "cesaro/opial_moduli.hpp"
#include "cesaro/report.hpp"
#include "cesaro/scalar_cesaro.hpp"
#include "cesaro/vector_cesaro.hpp"

namespace cesaro {

// f_n(t) = g(t) * (block shifted by offset + (n - 1) * stride) in l^{p_X},
// p_X > 1. ||f_n(t)|| = g(t) for all n, and the terms are pointwise weakly
// null because their supports are disjoint.
class FunctionShiftFamily {
 public:
  // Throws UnsupportedSpace unless space is l^{p_X} with p_X > 1, InvalidInput
  // for a negative profile or a block whose norm is not 1.
  FunctionShiftFamily(ScalarStepFunction profile, SpaceSpec space, TaggedVector block,
                      Index offset = 1, Index stride = 0);

  const ScalarStepFunction& profile() const noexcept { return profile_; }
  const SpaceSpec& space() const noexcept { return space_; }
  double space_exponent() const { return space_.as<LpSequence>()->p; }
  const VectorShiftFamily& shifts() const noexcept { return shifts_; }
  VectorStepFunction term(Index n) const;
  // First n from which the terms are disjoint from every value of f.
  Index stabilization_index(const VectorStepFunction& f) const;

 private:
  ScalarStepFunction profile_;
  SpaceSpec space_;
  VectorShiftFamily shifts_;
};

struct PhiResult {
  // phi(t) = liminf ||f_n(t) - f(t)|| and g on the common refinement of the
  // profile and f partitions.
  ScalarStepFunction phi;
  ScalarStepFunction g;
  Index stabilization_index = 1;
};

// phi from the actual vectors g_k x_N - f_k at the stabilization index N; the
// sequence is constant from N on, so the value is exact.
PhiResult eval_phi(const FunctionShiftFamily& fam, const VectorStepFunction& f);

struct OpialInequalityReport {
  double p = 0.0;
  NormResult a;  // ||phi||^p - ||g||^p
  NormResult phi_norm;
  NormResult g_norm;
  LimitEstimate limsup_fn;       // limsup ||f_n||
  LimitEstimate limsup_diff;     // limsup ||f_n - f||
  NormResult limsup_fn_power;    // (limsup ||f_n||)^p
  NormResult limsup_diff_power;  // (limsup ||f_n - f||)^p
  double lhs1 = 0.0, rhs1 = 0.0, allowance1 = 0.0;
  double lhs2 = 0.0, rhs2 = 0.0, allowance2 = 0.0;
  bool holds1 = false;
  bool holds2 = false;
  bool certifying = true;
  ScalarStepFunction phi;

  CheckReport to_report() const;
};

// 2^{p-1} a <= 2^{p-1} limsup||f_n - f||^p - limsup||f_n||^p and
// limsup||f_n|| <= 2^{1-1/p} limsup||f_n - f||, both with combined error
// bounds as allowance.
OpialInequalityReport check_opial_inequalities(const FunctionShiftFamily& fam, const VectorStepFunction& f,
                        const Exponent& p, const QuadratureConfig& cfg = {});

// Terms produced by an arbitrary callback on a common partition; limits are
// estimated on a window and the report is marked non-certifying.
struct GeneralFamily {
  std::function<VectorStepFunction(Index)> term;
  ScalarStepFunction g;  // pointwise limit of ||f_n(t)||
};
OpialInequalityReport check_opial_inequalities_windowed(const GeneralFamily& fam, const VectorStepFunction& f,
                                 const Exponent& p, const Window& window = {},
                                 const QuadratureConfig& cfg = {});

// Strict form for f != 0: a exceeds its error bound and
// 2^{1-1/p} limsup||f_n - f|| - limsup||f_n|| exceeds the combined errors.
// DegenerateInput when f = 0.
CheckReport check_strict_opial(const FunctionShiftFamily& fam, const VectorStepFunction& f,
                        const Exponent& p, const QuadratureConfig& cfg = {});

struct Interval {
  double lo;
  double hi;
};

struct LevelSetEtaRecipe {
  double p = 0.0;
  double f_norm = 0.0;
  double tau = 0.0;
  std::vector<Interval> A;  // cells where ||f(s)|| >= tau
  double lambda_A = 0.0;
  double t0 = 0.0;  // minimal t with lambda(A cap [0, t]) >= lambda(A) / 2
  double theta = 0.0;
  double w = 0.0;
  double B = 0.0;  // 2^{1-1/p} (3R + 1)
  double nu = 0.0;
  double omega = 0.0;
  double eta = 0.0;
};

struct IntegrableEtaRecipe {
  double p = 0.0;
  double r = 0.0;
  double s = 0.0;
  double s_prime = 0.0;
  bool s_prime_by_convention = false;  // r = inf, s' taken as 1
  double q = 0.0;
  double tau = 0.0;
  double Q = 0.0;
  double t0 = 0.0;
  double theta = 0.0;
  double w = 0.0;
  double B = 0.0;
  double nu = 0.0;
  double omega = 0.0;
  double eta = 0.0;
};

// tau defaults to ||f||/2 and must lie in (0, ||f||) (TauOutOfRange). w is
// eta_X(tau, M) for the space of f unless given.
LevelSetEtaRecipe compute_eta_level_set(const VectorStepFunction& f, const Exponent& p, double M, double R,
                              std::optional<double> tau = std::nullopt,
                              std::optional<double> w = std::nullopt,
                              const QuadratureConfig& cfg = {});

// 1 < p < r <= inf (ExponentOrder otherwise). tau defaults to
// min(eps / (2q), 1/2); it must lie in (0, 1) (TauOutOfRange) with
// q tau < eps (TauTooLarge).
IntegrableEtaRecipe compute_eta_integrable(const Exponent& p, double r, double eps, double M, double K,
                              double R, const SpaceSpec& space,
                              std::optional<double> tau = std::nullopt,
                              std::optional<double> w = std::nullopt);

// Hypotheses are checked first and raise HypothesisViolation("R"), ("M"),
// ("K") or ("eps"). Then eta is computed and the conclusion
// limsup||f_n|| + eta <= 2^{1-1/p} limsup||f_n - f|| is tested.
CheckReport verify_uniform_opial_level_set(const FunctionShiftFamily& fam, const VectorStepFunction& f,
                         const Exponent& p, double M, double R,
                         std::optional<double> tau = std::nullopt,
                         const QuadratureConfig& cfg = {});
CheckReport verify_uniform_opial_integrable(const FunctionShiftFamily& fam, const VectorStepFunction& f,
                         const Exponent& p, double r, double eps, double M, double K, double R,
                         std::optional<double> tau = std::nullopt,
                         const QuadratureConfig& cfg = {});

CheckReport to_report(const LevelSetEtaRecipe& e);
CheckReport to_report(const IntegrableEtaRecipe& e);

// limsup||x^(k)|| < limsup||x^(k) - x|| along slot shifts in a Cesaro sum of
// l^p and l^1(n) components, estimated on a window. Strict for x != 0 with
// margin above the drift; for x = 0 only the nonstrict form is required.
CheckReport check_sum_opial(const SlotShiftFamily& fam, const SumElement& x, const Window& window = {});

// In c: x_n = 2 lambda e_n and x = lambda (1, 1, ...), or x = 0. Returns
// ||x_n||, ||x_n - x|| and their ratio, which is 2 (resp. 1 for x = 0).
CheckReport check_constant_two_sharpness(double lambda = 1.0, bool x_zero = false);

}  // namespace cesaro

#endif  // CESARO_THEOREM_HARNESS_HPP
