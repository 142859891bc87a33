#ifndef CESARO_CORE_HPP
#define CESARO_CORE_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "cesaro/errors.hpp"

namespace cesaro {

using Index = std::int64_t;

// An exponent 1 <= p < inf together with its conjugate q (q = inf at p = 1).
class Exponent {
 public:
  explicit Exponent(double p);

  double value() const noexcept { return p_; }
  double conjugate() const noexcept {
    return p_ == 1.0 ? std::numeric_limits<double>::infinity() : p_ / (p_ - 1.0);
  }
  bool is_one() const noexcept { return p_ == 1.0; }

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double p_;
};

struct Entry {
  Index index;
  double coeff;
  friend bool operator==(const Entry&, const Entry&) = default;
};

// Finitely supported real sequence, 1-based indices, strictly increasing, no
// stored zeros. The empty vector is zero.
class TaggedVector {
 public:
  TaggedVector() = default;

  // Validates the invariants; throws InvalidInput otherwise.
  explicit TaggedVector(std::vector<Entry> entries);

  // Sorts, merges duplicate indices by addition and drops zeros.
  static TaggedVector accumulate(std::vector<Entry> entries);
  static TaggedVector unit(Index index, double coeff = 1.0);
  static TaggedVector from_dense(std::span<const double> coeffs);

  std::span<const Entry> entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  Index min_index() const noexcept { return empty() ? 0 : entries_.front().index; }
  Index max_index() const noexcept { return empty() ? 0 : entries_.back().index; }
  Index width() const noexcept { return empty() ? 0 : max_index() - min_index() + 1; }
  double coeff(Index index) const noexcept;

  TaggedVector shifted(Index offset) const;
  TaggedVector scaled(double lambda) const;
  // Entries with index <= n.
  TaggedVector truncated(Index n) const;

  double l1_norm() const;
  double sup_norm() const;
  double lp_power_sum(double p) const;
  double lp_norm(double p) const;

  bool disjoint_from(const TaggedVector& other) const;

  friend TaggedVector operator+(const TaggedVector& a, const TaggedVector& b);
  friend TaggedVector operator-(const TaggedVector& a, const TaggedVector& b);
  friend bool operator==(const TaggedVector&, const TaggedVector&) = default;

 private:
  std::vector<Entry> entries_;
};

class SpaceSpec;

struct LpSequence {
  double p;
  friend bool operator==(const LpSequence&, const LpSequence&) = default;
};
struct FiniteL1 {
  Index n;
  friend bool operator==(const FiniteL1&, const FiniteL1&) = default;
};
struct CSpace {
  friend bool operator==(const CSpace&, const CSpace&) = default;
};
// Cesaro sum of a stack X_1, X_2, ...; the last listed component repeats.
struct CesaroSum {
  double p;
  std::vector<SpaceSpec> components;
  friend bool operator==(const CesaroSum&, const CesaroSum&);
};

class SpaceSpec {
 public:
  using Variant = std::variant<LpSequence, FiniteL1, CSpace, CesaroSum>;

  static SpaceSpec lp(double p);
  static SpaceSpec finite_l1(Index n);
  static SpaceSpec c_space();
  static SpaceSpec cesaro_sum(double p, std::vector<SpaceSpec> components);

  const Variant& variant() const noexcept { return v_; }
  template <typename T>
  const T* as() const noexcept { return std::get_if<T>(&v_); }

  // l^1 and finite-dimensional spaces have the Schur property.
  bool schur() const noexcept;
  bool finite_dimensional() const noexcept { return as<FiniteL1>() != nullptr; }
  std::string describe() const;

  // Component space for a 1-based slot of a CesaroSum.
  const SpaceSpec& component(Index slot) const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  explicit SpaceSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// Norm of a finitely supported vector in an l^p or l^1(n) model.
// Throws UnsupportedSpace for c and Cesaro sums, SpaceMismatch when an index
// lies outside l^1(n).
double space_norm(const SpaceSpec& space, const TaggedVector& v);

// Element of c: tail * (1,1,1,...) plus a finitely supported perturbation.
struct CElement {
  TaggedVector perturbation;
  double tail = 0.0;

  double sup_norm() const;
  CElement scaled(double lambda) const;
  friend CElement operator-(const CElement& a, const CElement& b);
};

// 0 = t_0 < t_1 < ... < t_K = 1.
class Partition {
 public:
  Partition() : Partition(unit_breakpoints()) {}
  explicit Partition(Eigen::ArrayXd breakpoints);
  explicit Partition(std::span<const double> breakpoints);

  static Partition uniform(Index cells);

  Index cells() const noexcept { return breakpoints_.size() - 1; }
  const Eigen::ArrayXd& breakpoints() const noexcept { return breakpoints_; }
  double left(Index k) const { return breakpoints_[k]; }
  double right(Index k) const { return breakpoints_[k + 1]; }
  double width(Index k) const { return breakpoints_[k + 1] - breakpoints_[k]; }
  Eigen::ArrayXd widths() const;

  // Cell k with t in (t_k, t_{k+1}]; t = 0 maps to cell 0.
  Index locate(double t) const;
  bool refines(const Partition& coarse) const;
  Partition refined_uniformly(Index factor) const;

  friend bool operator==(const Partition& a, const Partition& b);

 private:
  static Eigen::ArrayXd unit_breakpoints();
  Eigen::ArrayXd breakpoints_;
};

Partition common_refinement(const Partition& a, const Partition& b);

class ScalarStepFunction {
 public:
  ScalarStepFunction() : ScalarStepFunction(Partition(), Eigen::ArrayXd::Zero(1)) {}
  ScalarStepFunction(Partition partition, Eigen::ArrayXd values);

  static ScalarStepFunction constant(double value);
  // 1 on [a, b] (up to measure zero), 0 elsewhere.
  static ScalarStepFunction indicator(double a, double b);

  const Partition& partition() const noexcept { return partition_; }
  const Eigen::ArrayXd& values() const noexcept { return values_; }
  Index cells() const noexcept { return partition_.cells(); }
  double value(Index k) const { return values_[k]; }
  double operator()(double t) const { return values_[partition_.locate(t)]; }

  // Same function on a refinement of the current partition.
  ScalarStepFunction on(const Partition& refinement) const;
  ScalarStepFunction abs() const;

  friend bool operator==(const ScalarStepFunction& a, const ScalarStepFunction& b);

 private:
  Partition partition_;
  Eigen::ArrayXd values_;
};

class VectorStepFunction {
 public:
  VectorStepFunction(Partition partition, std::vector<TaggedVector> values, SpaceSpec space);

  static VectorStepFunction constant(const TaggedVector& v, SpaceSpec space);
  // h(t) * v.
  static VectorStepFunction profile_times(const ScalarStepFunction& h, const TaggedVector& v,
                                          SpaceSpec space);

  const Partition& partition() const noexcept { return partition_; }
  const std::vector<TaggedVector>& values() const noexcept { return values_; }
  const SpaceSpec& space() const noexcept { return space_; }
  Index cells() const noexcept { return partition_.cells(); }
  const TaggedVector& value(Index k) const { return values_[k]; }
  Index max_support_index() const noexcept;
  bool is_zero() const noexcept;

  VectorStepFunction on(const Partition& refinement) const;

  friend bool operator==(const VectorStepFunction& a, const VectorStepFunction& b);

 private:
  Partition partition_;
  std::vector<TaggedVector> values_;
  SpaceSpec space_;
};

ScalarStepFunction scale(const ScalarStepFunction& f, double lambda);
VectorStepFunction scale(const VectorStepFunction& f, double lambda);
ScalarStepFunction add(const ScalarStepFunction& f, const ScalarStepFunction& g);
VectorStepFunction add(const VectorStepFunction& f, const VectorStepFunction& g);
VectorStepFunction subtract(const VectorStepFunction& f, const VectorStepFunction& g);

ScalarStepFunction pointwise_norm(const VectorStepFunction& f);

// value +- error_bound brackets the true value.
struct NormResult {
  double value = 0.0;
  double error_bound = 0.0;
  bool exact = false;
  bool converged = true;

  double lower() const noexcept { return value - error_bound; }
  double upper() const noexcept { return value + error_bound; }
};

struct LimitEstimate {
  enum class Kind { Limsup, Liminf };

  Kind kind = Kind::Limsup;
  double value = 0.0;
  double error_bound = 0.0;
  bool exact = false;
  // First index from which the sequence is constant; meaningful when exact.
  Index stabilization_index = 0;
  // Window and spread of the windowed estimate; zero when exact.
  Index window_begin = 0;
  Index window_end = 0;
  double drift = 0.0;
};

}  // namespace cesaro

#endif  // CESARO_CORE_HPP
