#include "cesaro/vector_cesaro.hpp"

#include <algorithm>

namespace cesaro {

SumElement::SumElement(std::vector<SlotVector> components, SpaceSpec space)
    : space_(std::move(space)) {
  if (!space_.as<CesaroSum>()) {
    throw Error(ErrorKind::SpaceMismatch, "sum element needs a Cesaro sum, got " + space_.describe());
  }
  Index previous = 0;
  for (auto& c : components) {
    if (c.slot <= previous) {
      throw Error(ErrorKind::InvalidInput, "slots must be positive and strictly increasing");
    }
    previous = c.slot;
    // Throws SpaceMismatch if the vector does not live in the slot's space.
    (void)space_norm(space_.component(c.slot), c.vector);
    if (!c.vector.empty()) components_.push_back(std::move(c));
  }
}

const TaggedVector* SumElement::at(Index slot) const noexcept {
  auto it = std::lower_bound(components_.begin(), components_.end(), slot,
                             [](const SlotVector& c, Index s) { return c.slot < s; });
  return it != components_.end() && it->slot == slot ? &it->vector : nullptr;
}

std::vector<double> SumElement::component_norms() const {
  std::vector<double> norms(static_cast<std::size_t>(max_slot()), 0.0);
  for (const auto& c : components_) {
    norms[static_cast<std::size_t>(c.slot - 1)] = space_norm(space_.component(c.slot), c.vector);
  }
  return norms;
}

SumElement SumElement::shifted(Index offset) const {
  std::vector<SlotVector> moved = components_;
  for (auto& c : moved) c.slot += offset;
  return SumElement(std::move(moved), space_);
}

SumElement SumElement::scaled(double lambda) const {
  std::vector<SlotVector> out;
  for (const auto& c : components_) out.push_back({c.slot, c.vector.scaled(lambda)});
  return SumElement(std::move(out), space_);
}

namespace {

template <typename Op>
SumElement merge(const SumElement& a, const SumElement& b, Op op) {
  if (!(a.space() == b.space())) {
    throw Error(ErrorKind::SpaceMismatch, "sum elements live in different spaces");
  }
  const TaggedVector zero;
  std::vector<SlotVector> out;
  auto i = a.components().begin();
  auto j = b.components().begin();
  while (i != a.components().end() || j != b.components().end()) {
    const Index si = i != a.components().end() ? i->slot : INT64_MAX;
    const Index sj = j != b.components().end() ? j->slot : INT64_MAX;
    const Index slot = std::min(si, sj);
    const TaggedVector& u = si == slot ? (i++)->vector : zero;
    const TaggedVector& v = sj == slot ? (j++)->vector : zero;
    out.push_back({slot, op(u, v)});
  }
  return SumElement(std::move(out), a.space());
}

}  // namespace

SumElement operator+(const SumElement& a, const SumElement& b) {
  return merge(a, b, [](const TaggedVector& u, const TaggedVector& v) { return u + v; });
}

SumElement operator-(const SumElement& a, const SumElement& b) {
  return merge(a, b, [](const TaggedVector& u, const TaggedVector& v) { return u - v; });
}

NormResult cesaro_sum_norm(const SumElement& x, double tol) {
  const auto norms = x.component_norms();
  return ces_seq_norm(TaggedVector::from_dense(norms), x.p(), tol);
}

NormResult ces_vfun_norm(const VectorStepFunction& f, const Exponent& p,
                         const QuadratureConfig& cfg) {
  return ces_fun_norm(pointwise_norm(f), p, cfg);
}

}  // namespace cesaro
