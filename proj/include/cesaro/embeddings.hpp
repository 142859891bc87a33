#ifndef CESARO_EMBEDDINGS_HPP
#define CESARO_EMBEDDINGS_HPP

#include <vector>

#include "cesaro/report.hpp"
#include "cesaro/vector_cesaro.hpp"

namespace cesaro {

// Image of x under x -> ((1/n)(x_1, ..., x_n))_n in the outer l^p sum of the
// blocks X_1 +_1 ... +_1 X_n. Blocks are materialized on request. Past the
// last nonzero slot N every block holds the same components scaled by 1/n,
// so its norm is tail_mass() / n exactly.
class EmbeddedElement {
 public:
  explicit EmbeddedElement(SumElement source);

  Exponent outer_p() const { return source_.p(); }
  const SpaceSpec& stack() const noexcept { return source_.space(); }
  Index support_end() const noexcept { return source_.max_slot(); }
  // sum_i ||x_i||.
  double tail_mass() const noexcept { return tail_mass_; }
  bool is_zero() const noexcept { return source_.is_zero(); }

  // (1/n)(x_1, ..., x_n) as slot vectors; slots with x_i = 0 are omitted.
  std::vector<SlotVector> block(Index n) const;
  // l^1 sum of the component norms of block(n). For n > support_end() this
  // uses the symbolic tail tail_mass() / n.
  double block_norm(Index n) const;

 private:
  SumElement source_;
  double tail_mass_ = 0.0;
};

// Scalar case: a_i lives in the one-dimensional slot space.
EmbeddedElement embed_T(const TaggedVector& a, const Exponent& p);
EmbeddedElement embed_S(const SumElement& x);

// Outer l^p norm of the block norms, with the harmonic tail bracketed in the
// same way as ces_seq_norm.
NormResult embedded_norm(const EmbeddedElement& e, double tol = kDefaultSequenceTol);

// Embedded norm against the direct Cesaro norm; the two share summands term by
// term, so the relative gap must be at rounding level.
inline constexpr double kIsometryRelTol = 1e-12;
CheckReport verify_isometry(const TaggedVector& a, const Exponent& p,
                            double tol = kDefaultSequenceTol);
CheckReport verify_isometry(const SumElement& x, double tol = kDefaultSequenceTol);

}  // namespace cesaro

#endif  // CESARO_EMBEDDINGS_HPP
