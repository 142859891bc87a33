#include "cesaro/embeddings.hpp"

#include <cmath>

#include "cesaro/summation.hpp"

namespace cesaro {

namespace {

SpaceSpec scalar_stack(const Exponent& p) {
  return SpaceSpec::cesaro_sum(p.value(), {SpaceSpec::finite_l1(1)});
}

}  // namespace

EmbeddedElement::EmbeddedElement(SumElement source) : source_(std::move(source)) {
  CompensatedSum<double> mass;
  for (double v : source_.component_norms()) mass += v;
  tail_mass_ = mass.value();
}

std::vector<SlotVector> EmbeddedElement::block(Index n) const {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "blocks start at n = 1");
  const double inv = 1.0 / static_cast<double>(n);
  std::vector<SlotVector> out;
  for (const auto& c : source_.components()) {
    if (c.slot > n) break;
    out.push_back({c.slot, c.vector.scaled(inv)});
  }
  return out;
}

double EmbeddedElement::block_norm(Index n) const {
  if (n > support_end()) return tail_mass_ / static_cast<double>(n);
  CompensatedSum<double> acc;
  for (const auto& c : block(n)) acc += space_norm(stack().component(c.slot), c.vector);
  return acc.value();
}

EmbeddedElement embed_T(const TaggedVector& a, const Exponent& p) {
  if (p.is_one()) throw Error(ErrorKind::InvalidExponent, "embedding needs p > 1");
  std::vector<SlotVector> slots;
  for (const auto& e : a.entries()) slots.push_back({e.index, TaggedVector::unit(1, e.coeff)});
  return EmbeddedElement(SumElement(std::move(slots), scalar_stack(p)));
}

EmbeddedElement embed_S(const SumElement& x) {
  // p > 1 is already enforced by the Cesaro sum space.
  return EmbeddedElement(x);
}

NormResult embedded_norm(const EmbeddedElement& e, double tol) {
  std::vector<double> head(static_cast<std::size_t>(e.support_end()));
  for (Index n = 1; n <= e.support_end(); ++n) head[static_cast<std::size_t>(n - 1)] = e.block_norm(n);
  return harmonic_tail_lp_norm(head, e.tail_mass(), e.outer_p(), tol);
}

namespace {

CheckReport isometry_report(const NormResult& embedded, const NormResult& direct, double p) {
  const double gap = std::abs(embedded.value - direct.value);
  const double rel = gap / (1.0 + direct.value);
  CheckReport r;
  r.name = "isometry";
  r.holds = rel <= kIsometryRelTol;
  r.set("p", p)
      .set("embedded_norm", embedded.value)
      .set("embedded_error", embedded.error_bound)
      .set("direct_norm", direct.value)
      .set("direct_error", direct.error_bound)
      .set("relative_gap", rel)
      .set("rel_tol", kIsometryRelTol);
  return r;
}

}  // namespace

CheckReport verify_isometry(const TaggedVector& a, const Exponent& p, double tol) {
  return isometry_report(embedded_norm(embed_T(a, p), tol), ces_seq_norm(a, p, tol), p.value());
}

CheckReport verify_isometry(const SumElement& x, double tol) {
  return isometry_report(embedded_norm(embed_S(x), tol), cesaro_sum_norm(x, tol), x.p().value());
}

}  // namespace cesaro
