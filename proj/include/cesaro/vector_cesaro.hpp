#ifndef CESARO_VECTOR_CESARO_HPP
#define CESARO_VECTOR_CESARO_HPP

#include <vector>

#include "cesaro/core.hpp"
#include "cesaro/quadrature.hpp"
#include "cesaro/scalar_cesaro.hpp"

namespace cesaro {

struct SlotVector {
  Index slot;
  TaggedVector vector;
  friend bool operator==(const SlotVector&, const SlotVector&) = default;
};

// Finitely supported element of a Cesaro sum. Slots are 1-based and strictly
// increasing; absent slots and empty vectors are zero (empty vectors are
// dropped on construction). `space` must be a CesaroSum.
class SumElement {
 public:
  SumElement(std::vector<SlotVector> components, SpaceSpec space);
  explicit SumElement(SpaceSpec space) : SumElement({}, std::move(space)) {}

  const std::vector<SlotVector>& components() const noexcept { return components_; }
  const SpaceSpec& space() const noexcept { return space_; }
  const CesaroSum& stack() const noexcept { return *space_.as<CesaroSum>(); }
  Exponent p() const { return Exponent(stack().p); }
  bool is_zero() const noexcept { return components_.empty(); }
  Index max_slot() const noexcept { return is_zero() ? 0 : components_.back().slot; }
  Index min_slot() const noexcept { return is_zero() ? 0 : components_.front().slot; }
  const TaggedVector* at(Index slot) const noexcept;

  // ||x_n|| for n = 1..max_slot.
  std::vector<double> component_norms() const;

  // Components moved to slot + offset; revalidated in the new slots.
  SumElement shifted(Index offset) const;
  SumElement scaled(double lambda) const;
  friend SumElement operator+(const SumElement& a, const SumElement& b);
  friend SumElement operator-(const SumElement& a, const SumElement& b);
  friend bool operator==(const SumElement&, const SumElement&) = default;

 private:
  std::vector<SlotVector> components_;
  SpaceSpec space_;
};

// ces_p norm of the sequence of component norms.
NormResult cesaro_sum_norm(const SumElement& x, double tol = kDefaultSequenceTol);

// Ces_p norm of the pointwise norm t -> ||f(t)||.
NormResult ces_vfun_norm(const VectorStepFunction& f, const Exponent& p,
                         const QuadratureConfig& cfg = {});

}  // namespace cesaro

#endif  // CESARO_VECTOR_CESARO_HPP
