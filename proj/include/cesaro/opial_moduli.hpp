#ifndef CESARO_OPIAL_MODULI_HPP
#define CESARO_OPIAL_MODULI_HPP

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cesaro/core.hpp"
#include "cesaro/report.hpp"
#include "cesaro/vector_cesaro.hpp"

namespace cesaro {

// Returned for eta when the space has the Schur property: weakly null
// sequences are norm null there, so no number is assigned.
struct SchurFlag {
  friend bool operator==(const SchurFlag&, const SchurFlag&) = default;
};
using ModulusValue = std::variant<double, SchurFlag>;

struct ModulusQuery {
  SpaceSpec space = SpaceSpec::lp(2.0);
  double eps = 1.0;  // lower bound on ||x||
  double R = 1.0;    // upper bound on limsup ||x_n||
  // Throws DomainError unless eps and R are positive and finite.
  void validate() const;
};

// l^p, p > 1: (R^p + eps^p)^{1/p} - R. Schur spaces: SchurFlag.
ModulusValue eta_closed_form(const ModulusQuery& q);
// l^p, p > 1: (1 + c^p)^{1/p} - 1. Schur spaces: 1 by convention.
double r_closed_form(const SpaceSpec& space, double c);

// x_n = base shifted by offset + (n - 1) * stride, n >= 1. A stride of at
// least width(base) keeps the terms pairwise disjoint, so in l^p (p > 1) the
// sequence is weakly null.
class VectorShiftFamily {
 public:
  VectorShiftFamily(TaggedVector base, Index offset, Index stride);

  const TaggedVector& base() const noexcept { return base_; }
  Index offset() const noexcept { return offset_; }
  Index stride() const noexcept { return stride_; }
  TaggedVector term(Index n) const;
  // First n with min_index(x_n) > max_index(x); from there on x_n and x are
  // disjoint.
  Index stabilization_index(const TaggedVector& x) const;

 private:
  TaggedVector base_;
  Index offset_;
  Index stride_;
};

// ||x_n - x||^p against ||x_n||^p + ||x||^p over `window` terms starting at the
// stabilization index; passes when the relative gap is <= 1e-14.
inline constexpr double kSplittingRelTol = 1e-14;
CheckReport splitting_check(const TaggedVector& x, const VectorShiftFamily& fam,
                            const Exponent& p, Index window = 32);

// Indices k in [begin, end] over which a non-stabilizing limit is estimated.
struct Window {
  Index begin = 100;
  Index end = 200;
  void validate() const;
};

// liminf estimated by the minimum over the window, limsup by the maximum;
// drift is max - min over the window. exact is false.
LimitEstimate windowed_limit(const std::function<double(Index)>& seq, LimitEstimate::Kind kind,
                             const Window& window);

// x^(k) = base moved by offset + (k - 1) * stride slots, optionally rescaled to
// a fixed Cesaro-sum norm. The unscaled terms tend to zero in norm.
class SlotShiftFamily {
 public:
  SlotShiftFamily(SumElement base, Index offset, Index stride,
                  std::optional<double> normalized_to = std::nullopt);

  const SumElement& base() const noexcept { return base_; }
  Index offset() const noexcept { return offset_; }
  Index stride() const noexcept { return stride_; }
  const std::optional<double>& normalized_to() const noexcept { return normalized_to_; }
  SumElement term(Index k) const;
  // Norm of term(k). For a normalized family this is the target, with the
  // error of the normalizing norm carried over.
  NormResult term_norm(Index k) const;

 private:
  SumElement base_;
  Index offset_;
  Index stride_;
  std::optional<double> normalized_to_;
};

struct LpWitness {
  TaggedVector x;
  VectorShiftFamily family;
};

struct SumWitness {
  SumElement x;
  SlotShiftFamily family;
};

// x = c e_1, x_n = L e_{n+1} for L on a grid in (0, R] and c on [eps, 2 eps);
// the pair (L, c) = (R, eps) is always included.
std::vector<LpWitness> canonical_lp_witnesses(double eps, double R, int grid = 6);
// x = eps * (unit vector in slot 1) against slot shifts of a unit vector, both
// plain and rescaled to norm R.
std::vector<SumWitness> canonical_sum_witnesses(const SpaceSpec& space, double eps, double R);

struct EtaEstimate {
  // Minimum over admissible witnesses of liminf||x_n - x|| - liminf||x_n||.
  // Always an upper bound of the true infimum.
  double estimate = 0.0;
  bool exact = false;  // every admissible witness stabilized
  std::size_t admissible = 0;
  std::size_t rejected = 0;
  std::size_t best_witness = 0;
  // l^p only: closed form and estimate - closed form.
  std::optional<double> closed_form;
  std::optional<double> gap;
  // Slot shifts only: window and summed drift of the best witness.
  std::optional<Window> window;
  double drift = 0.0;
};

// Witnesses with ||x|| < eps or limsup||x_n|| > R are rejected (up to a few
// ulps of slack); EmptyWitnessSet if none remain.
EtaEstimate estimate_eta_empirical(const ModulusQuery& q, std::span<const LpWitness> witnesses);
EtaEstimate estimate_eta_empirical(const ModulusQuery& q, std::span<const SumWitness> witnesses,
                                   const Window& window = {});

CheckReport to_report(const EtaEstimate& e, const ModulusQuery& q);

}  // namespace cesaro

#endif  // CESARO_OPIAL_MODULI_HPP
