#include "cesaro/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cesaro/summation.hpp"

namespace cesaro {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::InvalidTolerance: return "InvalidTolerance";
    case ErrorKind::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::EmptyWitnessSet: return "EmptyWitnessSet";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::TauOutOfRange: return "TauOutOfRange";
    case ErrorKind::TauTooLarge: return "TauTooLarge";
    case ErrorKind::ExponentOrder: return "ExponentOrder";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::ZeroMeasureA: return "ZeroMeasureA";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
  }
  return "Unknown";
}

Exponent::Exponent(double p) : p_(p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidExponent, "exponent must satisfy 1 <= p < inf, got " +
                                                std::to_string(p));
  }
}

// ---------------------------------------------------------------- TaggedVector

TaggedVector::TaggedVector(std::vector<Entry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    if (e.index < 1) throw Error(ErrorKind::InvalidInput, "indices start at 1");
    if (e.coeff == 0.0 || !std::isfinite(e.coeff)) {
      throw Error(ErrorKind::InvalidInput, "coefficients must be finite and nonzero");
    }
    if (i > 0 && entries_[i - 1].index >= e.index) {
      throw Error(ErrorKind::InvalidInput, "indices must be strictly increasing");
    }
  }
}

TaggedVector TaggedVector::accumulate(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.index < b.index; });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (const Entry& e : entries) {
    if (!merged.empty() && merged.back().index == e.index) {
      merged.back().coeff += e.coeff;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.coeff == 0.0; });
  return TaggedVector(std::move(merged));
}

TaggedVector TaggedVector::unit(Index index, double coeff) {
  if (coeff == 0.0) return {};
  return TaggedVector({{index, coeff}});
}

TaggedVector TaggedVector::from_dense(std::span<const double> coeffs) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0.0) entries.push_back({static_cast<Index>(i) + 1, coeffs[i]});
  }
  return TaggedVector(std::move(entries));
}

double TaggedVector::coeff(Index index) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, Index i) { return e.index < i; });
  return (it != entries_.end() && it->index == index) ? it->coeff : 0.0;
}

TaggedVector TaggedVector::shifted(Index offset) const {
  TaggedVector out = *this;
  for (Entry& e : out.entries_) {
    e.index += offset;
    if (e.index < 1) throw Error(ErrorKind::InvalidInput, "shift moves an index below 1");
  }
  return out;
}

TaggedVector TaggedVector::scaled(double lambda) const {
  TaggedVector out;
  if (lambda == 0.0) return out;
  out.entries_.reserve(entries_.size());
  for (const Entry& e : entries_) {
    const double c = e.coeff * lambda;
    if (c != 0.0) out.entries_.push_back({e.index, c});
  }
  return out;
}

TaggedVector TaggedVector::truncated(Index n) const {
  TaggedVector out;
  for (const Entry& e : entries_) {
    if (e.index > n) break;
    out.entries_.push_back(e);
  }
  return out;
}

double TaggedVector::l1_norm() const {
  CompensatedSum<double> acc;
  for (const Entry& e : entries_) acc += std::abs(e.coeff);
  return acc.value();
}

double TaggedVector::sup_norm() const {
  double m = 0.0;
  for (const Entry& e : entries_) m = std::max(m, std::abs(e.coeff));
  return m;
}

double TaggedVector::lp_power_sum(double p) const {
  CompensatedSum<double> acc;
  for (const Entry& e : entries_) {
    const double a = std::abs(e.coeff);
    acc += p == 1.0 ? a : (p == 2.0 ? a * a : std::pow(a, p));
  }
  return acc.value();
}

double TaggedVector::lp_norm(double p) const {
  if (p == 1.0) return l1_norm();
  const double s = lp_power_sum(p);
  return p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p);
}

bool TaggedVector::disjoint_from(const TaggedVector& other) const {
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->index == b->index) return false;
    if (a->index < b->index) ++a; else ++b;
  }
  return true;
}

namespace {

template <typename Op>
TaggedVector merge(const std::vector<Entry>& x, const std::vector<Entry>& y, Op op) {
  std::vector<Entry> out;
  out.reserve(x.size() + y.size());
  auto a = x.begin();
  auto b = y.begin();
  auto push = [&](Index i, double c) {
    if (c != 0.0) out.push_back({i, c});
  };
  while (a != x.end() || b != y.end()) {
    if (b == y.end() || (a != x.end() && a->index < b->index)) {
      push(a->index, op(a->coeff, 0.0));
      ++a;
    } else if (a == x.end() || b->index < a->index) {
      push(b->index, op(0.0, b->coeff));
      ++b;
    } else {
      push(a->index, op(a->coeff, b->coeff));
      ++a;
      ++b;
    }
  }
  return TaggedVector(std::move(out));
}

}  // namespace

TaggedVector operator+(const TaggedVector& a, const TaggedVector& b) {
  return merge(a.entries_, b.entries_, [](double u, double v) { return u + v; });
}

TaggedVector operator-(const TaggedVector& a, const TaggedVector& b) {
  return merge(a.entries_, b.entries_, [](double u, double v) { return u - v; });
}

// ------------------------------------------------------------------- SpaceSpec

bool operator==(const CesaroSum& a, const CesaroSum& b) {
  return a.p == b.p && a.components == b.components;
}

SpaceSpec SpaceSpec::lp(double p) {
  (void)Exponent(p);
  return SpaceSpec(LpSequence{p});
}

SpaceSpec SpaceSpec::finite_l1(Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "finite_l1 requires n >= 1");
  return SpaceSpec(FiniteL1{n});
}

SpaceSpec SpaceSpec::c_space() { return SpaceSpec(CSpace{}); }

SpaceSpec SpaceSpec::cesaro_sum(double p, std::vector<SpaceSpec> components) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidExponent, "Cesaro sums require 1 < p < inf");
  }
  if (components.empty()) {
    throw Error(ErrorKind::InvalidInput, "Cesaro sum needs at least one component space");
  }
  return SpaceSpec(CesaroSum{p, std::move(components)});
}

bool SpaceSpec::schur() const noexcept {
  if (const auto* lp = as<LpSequence>()) return lp->p == 1.0;
  return finite_dimensional();
}

std::string SpaceSpec::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpSequence>) {
          os << "lp(" << s.p << ")";
        } else if constexpr (std::is_same_v<T, FiniteL1>) {
          os << "finite_l1(" << s.n << ")";
        } else if constexpr (std::is_same_v<T, CSpace>) {
          os << "c";
        } else {
          os << "cesaro_sum(" << s.p << ";";
          for (const auto& c : s.components) os << " " << c.describe();
          os << ")";
        }
      },
      v_);
  return os.str();
}

const SpaceSpec& SpaceSpec::component(Index slot) const {
  const auto* sum = as<CesaroSum>();
  if (sum == nullptr) throw Error(ErrorKind::SpaceMismatch, describe() + " is not a Cesaro sum");
  if (slot < 1) throw Error(ErrorKind::InvalidInput, "slots start at 1");
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(slot), sum->components.size());
  return sum->components[i - 1];
}

double space_norm(const SpaceSpec& space, const TaggedVector& v) {
  if (const auto* lp = space.as<LpSequence>()) return v.lp_norm(lp->p);
  if (const auto* l1 = space.as<FiniteL1>()) {
    if (v.max_index() > l1->n) {
      throw Error(ErrorKind::SpaceMismatch, "index " + std::to_string(v.max_index()) +
                                                " outside " + space.describe());
    }
    return v.l1_norm();
  }
  throw Error(ErrorKind::UnsupportedSpace, "no pointwise norm rule for " + space.describe());
}

double CElement::sup_norm() const {
  double m = std::abs(tail);
  for (const Entry& e : perturbation.entries()) m = std::max(m, std::abs(tail + e.coeff));
  return m;
}

CElement CElement::scaled(double lambda) const {
  return {perturbation.scaled(lambda), tail * lambda};
}

CElement operator-(const CElement& a, const CElement& b) {
  return {a.perturbation - b.perturbation, a.tail - b.tail};
}

// ------------------------------------------------------------------- Partition

Eigen::ArrayXd Partition::unit_breakpoints() {
  Eigen::ArrayXd bp(2);
  bp << 0.0, 1.0;
  return bp;
}

Partition::Partition(Eigen::ArrayXd breakpoints) : breakpoints_(std::move(breakpoints)) {
  const Index n = breakpoints_.size();
  if (n < 2) throw Error(ErrorKind::InvalidInput, "a partition needs at least two breakpoints");
  if (breakpoints_[0] != 0.0 || breakpoints_[n - 1] != 1.0) {
    throw Error(ErrorKind::InvalidInput, "partition must start at 0 and end at 1");
  }
  for (Index i = 1; i < n; ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1])) {
      throw Error(ErrorKind::InvalidInput, "breakpoints must be strictly increasing");
    }
  }
}

Partition::Partition(std::span<const double> breakpoints)
    : Partition(Eigen::ArrayXd(
          Eigen::Map<const Eigen::ArrayXd>(breakpoints.data(),
                                           static_cast<Index>(breakpoints.size())))) {}

Partition Partition::uniform(Index cells) {
  if (cells < 1) throw Error(ErrorKind::InvalidInput, "uniform partition needs >= 1 cell");
  Eigen::ArrayXd bp(cells + 1);
  for (Index i = 0; i <= cells; ++i) bp[i] = static_cast<double>(i) / static_cast<double>(cells);
  bp[cells] = 1.0;
  return Partition(std::move(bp));
}

Eigen::ArrayXd Partition::widths() const {
  return breakpoints_.tail(cells()) - breakpoints_.head(cells());
}

Index Partition::locate(double t) const {
  const double* begin = breakpoints_.data();
  const double* end = begin + breakpoints_.size();
  const Index j = std::lower_bound(begin, end, t) - begin;
  return std::clamp<Index>(j - 1, 0, cells() - 1);
}

bool Partition::refines(const Partition& coarse) const {
  const double* begin = breakpoints_.data();
  const double* end = begin + breakpoints_.size();
  for (Index i = 0; i < coarse.breakpoints_.size(); ++i) {
    if (!std::binary_search(begin, end, coarse.breakpoints_[i])) return false;
  }
  return true;
}

Partition Partition::refined_uniformly(Index factor) const {
  if (factor < 1) throw Error(ErrorKind::InvalidInput, "refinement factor must be >= 1");
  Eigen::ArrayXd bp(cells() * factor + 1);
  for (Index k = 0; k < cells(); ++k) {
    for (Index j = 0; j < factor; ++j) {
      bp[k * factor + j] = left(k) + width(k) * static_cast<double>(j) / static_cast<double>(factor);
    }
  }
  bp[cells() * factor] = 1.0;
  return Partition(std::move(bp));
}

bool operator==(const Partition& a, const Partition& b) {
  return a.breakpoints_.size() == b.breakpoints_.size() &&
         (a.breakpoints_ == b.breakpoints_).all();
}

Partition common_refinement(const Partition& a, const Partition& b) {
  std::vector<double> merged;
  const auto& x = a.breakpoints();
  const auto& y = b.breakpoints();
  merged.reserve(static_cast<std::size_t>(x.size() + y.size()));
  std::merge(x.data(), x.data() + x.size(), y.data(), y.data() + y.size(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return Partition(std::span<const double>(merged));
}

namespace {

// For each cell of `fine`, the index of the coarse cell containing it.
std::vector<Index> coarse_cells(const Partition& coarse, const Partition& fine) {
  if (!fine.refines(coarse)) {
    throw Error(ErrorKind::InvalidInput, "target partition does not refine the source");
  }
  std::vector<Index> map(static_cast<std::size_t>(fine.cells()));
  for (Index k = 0; k < fine.cells(); ++k) {
    map[static_cast<std::size_t>(k)] = coarse.locate(0.5 * (fine.left(k) + fine.right(k)));
  }
  return map;
}

}  // namespace

// ------------------------------------------------------------ step functions

ScalarStepFunction::ScalarStepFunction(Partition partition, Eigen::ArrayXd values)
    : partition_(std::move(partition)), values_(std::move(values)) {
  if (values_.size() != partition_.cells()) {
    throw Error(ErrorKind::InvalidInput, "need exactly one value per cell");
  }
  if (!values_.isFinite().all()) throw Error(ErrorKind::InvalidInput, "cell values must be finite");
}

ScalarStepFunction ScalarStepFunction::constant(double value) {
  return {Partition(), Eigen::ArrayXd::Constant(1, value)};
}

ScalarStepFunction ScalarStepFunction::indicator(double a, double b) {
  if (!(0.0 <= a && a < b && b <= 1.0)) {
    throw Error(ErrorKind::InvalidInput, "indicator needs 0 <= a < b <= 1");
  }
  std::vector<double> bp{0.0, a, b, 1.0};
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  Partition part{std::span<const double>(bp)};
  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(part.cells());
  for (Index k = 0; k < part.cells(); ++k) {
    if (part.left(k) >= a && part.right(k) <= b) v[k] = 1.0;
  }
  return {std::move(part), std::move(v)};
}

ScalarStepFunction ScalarStepFunction::on(const Partition& refinement) const {
  const auto map = coarse_cells(partition_, refinement);
  Eigen::ArrayXd v(refinement.cells());
  for (Index k = 0; k < refinement.cells(); ++k) v[k] = values_[map[static_cast<std::size_t>(k)]];
  return {refinement, std::move(v)};
}

ScalarStepFunction ScalarStepFunction::abs() const { return {partition_, values_.abs()}; }

bool operator==(const ScalarStepFunction& a, const ScalarStepFunction& b) {
  return a.partition_ == b.partition_ && (a.values_ == b.values_).all();
}

VectorStepFunction::VectorStepFunction(Partition partition, std::vector<TaggedVector> values,
                                       SpaceSpec space)
    : partition_(std::move(partition)), values_(std::move(values)), space_(std::move(space)) {
  if (static_cast<Index>(values_.size()) != partition_.cells()) {
    throw Error(ErrorKind::InvalidInput, "need exactly one value per cell");
  }
  if (const auto* l1 = space_.as<FiniteL1>()) {
    for (const auto& v : values_) {
      if (v.max_index() > l1->n) {
        throw Error(ErrorKind::SpaceMismatch, "cell value outside " + space_.describe());
      }
    }
  }
}

VectorStepFunction VectorStepFunction::constant(const TaggedVector& v, SpaceSpec space) {
  return {Partition(), {v}, std::move(space)};
}

VectorStepFunction VectorStepFunction::profile_times(const ScalarStepFunction& h,
                                                     const TaggedVector& v, SpaceSpec space) {
  std::vector<TaggedVector> values;
  values.reserve(static_cast<std::size_t>(h.cells()));
  for (Index k = 0; k < h.cells(); ++k) values.push_back(v.scaled(h.value(k)));
  return {h.partition(), std::move(values), std::move(space)};
}

Index VectorStepFunction::max_support_index() const noexcept {
  Index m = 0;
  for (const auto& v : values_) m = std::max(m, v.max_index());
  return m;
}

bool VectorStepFunction::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.empty(); });
}

VectorStepFunction VectorStepFunction::on(const Partition& refinement) const {
  const auto map = coarse_cells(partition_, refinement);
  std::vector<TaggedVector> v;
  v.reserve(map.size());
  for (Index k : map) v.push_back(values_[static_cast<std::size_t>(k)]);
  return {refinement, std::move(v), space_};
}

bool operator==(const VectorStepFunction& a, const VectorStepFunction& b) {
  return a.partition_ == b.partition_ && a.values_ == b.values_ && a.space_ == b.space_;
}

ScalarStepFunction scale(const ScalarStepFunction& f, double lambda) {
  return {f.partition(), f.values() * lambda};
}

VectorStepFunction scale(const VectorStepFunction& f, double lambda) {
  std::vector<TaggedVector> v;
  v.reserve(f.values().size());
  for (const auto& x : f.values()) v.push_back(x.scaled(lambda));
  return {f.partition(), std::move(v), f.space()};
}

ScalarStepFunction add(const ScalarStepFunction& f, const ScalarStepFunction& g) {
  const Partition common = common_refinement(f.partition(), g.partition());
  return {common, f.on(common).values() + g.on(common).values()};
}

namespace {

template <typename Op>
VectorStepFunction combine(const VectorStepFunction& f, const VectorStepFunction& g, Op op) {
  if (!(f.space() == g.space())) {
    throw Error(ErrorKind::SpaceMismatch,
                f.space().describe() + " vs " + g.space().describe());
  }
  const Partition common = common_refinement(f.partition(), g.partition());
  const auto fr = f.on(common);
  const auto gr = g.on(common);
  std::vector<TaggedVector> v;
  v.reserve(static_cast<std::size_t>(common.cells()));
  for (Index k = 0; k < common.cells(); ++k) v.push_back(op(fr.value(k), gr.value(k)));
  return {common, std::move(v), f.space()};
}

}  // namespace

VectorStepFunction add(const VectorStepFunction& f, const VectorStepFunction& g) {
  return combine(f, g, [](const TaggedVector& a, const TaggedVector& b) { return a + b; });
}

VectorStepFunction subtract(const VectorStepFunction& f, const VectorStepFunction& g) {
  return combine(f, g, [](const TaggedVector& a, const TaggedVector& b) { return a - b; });
}

ScalarStepFunction pointwise_norm(const VectorStepFunction& f) {
  Eigen::ArrayXd v(f.cells());
  for (Index k = 0; k < f.cells(); ++k) v[k] = space_norm(f.space(), f.value(k));
  return {f.partition(), std::move(v)};
}

}  // namespace cesaro
