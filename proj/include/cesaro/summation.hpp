#ifndef CESARO_SUMMATION_HPP
#define CESARO_SUMMATION_HPP

#include <cmath>
#include <iterator>
#include <type_traits>

namespace cesaro {

// Neumaier's variant of Kahan summation. Terms are consumed in call order, so
// a fixed input order gives bit-identical results.
template <typename Scalar>
class CompensatedSum {
 public:
  CompensatedSum& operator+=(Scalar term) {
    using std::abs;
    const Scalar t = sum_ + term;
    if (abs(sum_) >= abs(term)) {
      correction_ += (sum_ - t) + term;
    } else {
      correction_ += (term - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  Scalar value() const { return sum_ + correction_; }

 private:
  Scalar sum_{0};
  Scalar correction_{0};
};

template <typename Range>
auto compensated_sum(const Range& terms) {
  using Scalar = std::decay_t<decltype(*std::begin(terms))>;
  CompensatedSum<Scalar> acc;
  for (const auto& t : terms) acc += t;
  return acc.value();
}

}  // namespace cesaro

#endif  // CESARO_SUMMATION_HPP
