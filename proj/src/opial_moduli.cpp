#include "cesaro/opial_moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cesaro/parallel.hpp"

namespace cesaro {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Slack for admissibility tests on norms computed to a few ulps.
constexpr double kNormSlack = 8.0 * kEps;

// (1 + u^p)^{1/p} - 1 without cancellation for small u.
double opial_gap(double u, double p) { return std::expm1(std::log1p(std::pow(u, p)) / p); }

bool is_lp_above_one(const SpaceSpec& space) {
  const auto* lp = space.as<LpSequence>();
  return lp != nullptr && lp->p > 1.0;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorKind::DomainError, std::string(name) + " must be positive and finite");
  }
}

}  // namespace

void ModulusQuery::validate() const {
  require_positive(eps, "eps");
  require_positive(R, "R");
}

ModulusValue eta_closed_form(const ModulusQuery& q) {
  q.validate();
  if (q.space.schur()) return SchurFlag{};
  if (!is_lp_above_one(q.space)) {
    throw Error(ErrorKind::UnsupportedSpace, "no closed form for eta in " + q.space.describe());
  }
  const double p = q.space.as<LpSequence>()->p;
  return q.R * opial_gap(q.eps / q.R, p);
}

double r_closed_form(const SpaceSpec& space, double c) {
  require_positive(c, "c");
  if (space.schur()) return 1.0;
  if (!is_lp_above_one(space)) {
    throw Error(ErrorKind::UnsupportedSpace, "no closed form for r in " + space.describe());
  }
  return opial_gap(c, space.as<LpSequence>()->p);
}

VectorShiftFamily::VectorShiftFamily(TaggedVector base, Index offset, Index stride)
    : base_(std::move(base)), offset_(offset), stride_(stride) {
  if (stride_ < 1 || stride_ < base_.width()) {
    throw Error(ErrorKind::InvalidInput, "stride must be >= max(1, width(base))");
  }
  if (!base_.empty() && base_.min_index() + offset_ < 1) {
    throw Error(ErrorKind::InvalidInput, "offset moves the base below index 1");
  }
}

TaggedVector VectorShiftFamily::term(Index n) const {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "family terms start at n = 1");
  return base_.shifted(offset_ + (n - 1) * stride_);
}

Index VectorShiftFamily::stabilization_index(const TaggedVector& x) const {
  if (base_.empty() || x.empty()) return 1;
  // min_index(x_n) = base.min + offset + (n - 1) stride > x.max
  const Index first_min = base_.min_index() + offset_;
  if (first_min > x.max_index()) return 1;
  return (x.max_index() - first_min) / stride_ + 2;
}

CheckReport splitting_check(const TaggedVector& x, const VectorShiftFamily& fam,
                            const Exponent& exponent, Index window) {
  if (window < 1) throw Error(ErrorKind::InvalidInput, "window must be >= 1");
  const double p = exponent.value();
  const Index start = fam.stabilization_index(x);
  const double x_power = x.lp_power_sum(p);
  double worst = 0.0;
  double lhs0 = 0.0;
  double rhs0 = 0.0;
  for (Index n = start; n < start + window; ++n) {
    const TaggedVector xn = fam.term(n);
    const double lhs = (xn - x).lp_power_sum(p);
    const double rhs = xn.lp_power_sum(p) + x_power;
    if (n == start) {
      lhs0 = lhs;
      rhs0 = rhs;
    }
    if (rhs > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  CheckReport r;
  r.name = "splitting";
  r.holds = worst <= kSplittingRelTol;
  r.set("p", p)
      .set("stabilization_index", static_cast<double>(start))
      .set("window_end", static_cast<double>(start + window - 1))
      .set("lhs", lhs0)
      .set("rhs", rhs0)
      .set("max_relative_gap", worst);
  return r;
}

void Window::validate() const {
  if (begin < 1 || end < begin) throw Error(ErrorKind::InvalidInput, "window needs 1 <= begin <= end");
}

LimitEstimate windowed_limit(const std::function<double(Index)>& seq, LimitEstimate::Kind kind,
                             const Window& window) {
  window.validate();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Index k = window.begin; k <= window.end; ++k) {
    const double v = seq(k);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  LimitEstimate e;
  e.kind = kind;
  e.value = kind == LimitEstimate::Kind::Liminf ? lo : hi;
  e.exact = false;
  e.window_begin = window.begin;
  e.window_end = window.end;
  e.drift = hi - lo;
  return e;
}

SlotShiftFamily::SlotShiftFamily(SumElement base, Index offset, Index stride,
                                 std::optional<double> normalized_to)
    : base_(std::move(base)), offset_(offset), stride_(stride), normalized_to_(normalized_to) {
  const Index width = base_.is_zero() ? 0 : base_.max_slot() - base_.min_slot() + 1;
  if (stride_ < 1 || stride_ < width) {
    throw Error(ErrorKind::InvalidInput, "stride must be >= max(1, slot width of base)");
  }
  if (!base_.is_zero() && base_.min_slot() + offset_ < 1) {
    throw Error(ErrorKind::InvalidInput, "offset moves the base below slot 1");
  }
  if (normalized_to_) {
    require_positive(*normalized_to_, "normalization target");
    if (base_.is_zero()) throw Error(ErrorKind::DegenerateInput, "cannot normalize a zero base");
  }
}

SumElement SlotShiftFamily::term(Index k) const {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "family terms start at k = 1");
  SumElement moved = base_.shifted(offset_ + (k - 1) * stride_);
  if (!normalized_to_) return moved;
  return moved.scaled(*normalized_to_ / cesaro_sum_norm(moved).value);
}

NormResult SlotShiftFamily::term_norm(Index k) const {
  if (!normalized_to_) return cesaro_sum_norm(term(k));
  const NormResult raw = cesaro_sum_norm(base_.shifted(offset_ + (k - 1) * stride_));
  // True norm is target * N / N_computed with |N - N_computed| <= e.
  NormResult r;
  r.value = *normalized_to_;
  r.error_bound = *normalized_to_ * (raw.error_bound / raw.lower() + 4.0 * kEps);
  return r;
}

std::vector<LpWitness> canonical_lp_witnesses(double eps, double R, int grid) {
  require_positive(eps, "eps");
  require_positive(R, "R");
  if (grid < 1) throw Error(ErrorKind::InvalidInput, "grid must be >= 1");
  std::vector<LpWitness> out;
  for (int i = grid; i >= 1; --i) {
    const double L = i == grid ? R : R * i / grid;
    for (int j = 0; j < grid; ++j) {
      const double c = j == 0 ? eps : eps * (1.0 + static_cast<double>(j) / grid);
      out.push_back({TaggedVector::unit(1, c), VectorShiftFamily(TaggedVector::unit(1, L), 1, 1)});
    }
  }
  return out;
}

std::vector<SumWitness> canonical_sum_witnesses(const SpaceSpec& space, double eps, double R) {
  require_positive(eps, "eps");
  require_positive(R, "R");
  const SumElement unit({{1, TaggedVector::unit(1)}}, space);
  const SumElement x = unit.scaled(eps / cesaro_sum_norm(unit).value);
  std::vector<SumWitness> out;
  out.push_back({x, SlotShiftFamily(unit, 1, 1, R)});
  const double unit_norm = cesaro_sum_norm(unit).value;
  if (unit_norm <= R) out.push_back({x, SlotShiftFamily(unit, 1, 1)});
  return out;
}

EtaEstimate estimate_eta_empirical(const ModulusQuery& q, std::span<const LpWitness> witnesses) {
  q.validate();
  if (!is_lp_above_one(q.space)) {
    throw Error(ErrorKind::UnsupportedSpace,
                "exact witness evaluation needs l^p with p > 1, got " + q.space.describe());
  }
  const double p = q.space.as<LpSequence>()->p;
  EtaEstimate e;
  e.exact = true;
  e.estimate = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const auto& w = witnesses[i];
    // ||x_n|| = ||base|| for every n.
    const double limit_norm = w.family.base().lp_norm(p);
    if (w.x.lp_norm(p) * (1.0 + kNormSlack) < q.eps || limit_norm * (1.0 - kNormSlack) > q.R) {
      ++e.rejected;
      continue;
    }
    ++e.admissible;
    const TaggedVector xn = w.family.term(w.family.stabilization_index(w.x));
    const double value = (xn - w.x).lp_norm(p) - xn.lp_norm(p);
    if (value < e.estimate) {
      e.estimate = value;
      e.best_witness = i;
    }
  }
  if (e.admissible == 0) throw Error(ErrorKind::EmptyWitnessSet, "no witness satisfies ||x|| >= eps, limsup ||x_n|| <= R");
  e.closed_form = std::get<double>(eta_closed_form(q));
  e.gap = e.estimate - *e.closed_form;
  return e;
}

EtaEstimate estimate_eta_empirical(const ModulusQuery& q, std::span<const SumWitness> witnesses,
                                   const Window& window) {
  q.validate();
  window.validate();
  const auto* sum = q.space.as<CesaroSum>();
  if (sum == nullptr ||
      !std::all_of(sum->components.begin(), sum->components.end(),
                   [](const SpaceSpec& s) { return s.schur(); })) {
    throw Error(ErrorKind::UnsupportedSpace,
                "slot-shift witnesses need a Cesaro sum of Schur spaces, got " + q.space.describe());
  }
  struct Evaluation {
    bool admissible = false;
    double value = 0.0;
    double drift = 0.0;
  };
  std::vector<Evaluation> evals(witnesses.size());
  parallel_for(witnesses.size(), [&](std::size_t i) {
    const auto& w = witnesses[i];
    if (!(w.x.space() == q.space) || !(w.family.base().space() == q.space)) {
      throw Error(ErrorKind::SpaceMismatch, "witness lives in a different space");
    }
    // Admissible unless the computed bounds refute ||x|| >= eps or
    // limsup ||x_n|| <= R.
    const NormResult xnorm = cesaro_sum_norm(w.x);
    const auto upper = windowed_limit(
        [&](Index k) { return w.family.term_norm(k).lower(); },
        LimitEstimate::Kind::Limsup, window);
    if (xnorm.upper() * (1.0 + kNormSlack) < q.eps || upper.value * (1.0 - kNormSlack) > q.R) return;
    const auto far = windowed_limit(
        [&](Index k) { return cesaro_sum_norm(w.family.term(k) - w.x).value; },
        LimitEstimate::Kind::Liminf, window);
    const auto near = windowed_limit(
        [&](Index k) { return w.family.term_norm(k).value; },
        LimitEstimate::Kind::Liminf, window);
    evals[i] = {true, far.value - near.value, far.drift + near.drift};
  });

  EtaEstimate e;
  e.exact = false;
  e.window = window;
  e.estimate = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < evals.size(); ++i) {
    if (!evals[i].admissible) {
      ++e.rejected;
      continue;
    }
    ++e.admissible;
    if (evals[i].value < e.estimate) {
      e.estimate = evals[i].value;
      e.best_witness = i;
      e.drift = evals[i].drift;
    }
  }
  if (e.admissible == 0) throw Error(ErrorKind::EmptyWitnessSet, "no witness satisfies ||x|| >= eps, limsup ||x_n|| <= R");
  return e;
}

CheckReport to_report(const EtaEstimate& e, const ModulusQuery& q) {
  CheckReport r;
  r.name = "eta_empirical";
  r.certifying = e.exact;
  r.set("eps", q.eps).set("R", q.R).set("estimate", e.estimate);
  r.set("admissible", static_cast<double>(e.admissible))
      .set("rejected", static_cast<double>(e.rejected))
      .set("best_witness", static_cast<double>(e.best_witness));
  if (e.closed_form) {
    r.set("closed_form", *e.closed_form).set("gap", *e.gap);
    // The estimate is an infimum over a subset, so it cannot undercut the closed form.
    r.holds = *e.gap >= -1e-12;
  } else {
    r.holds = e.estimate > e.drift;
  }
  if (e.window) {
    r.set("window_begin", static_cast<double>(e.window->begin))
        .set("window_end", static_cast<double>(e.window->end))
        .set("drift", e.drift);
    r.note("limit_mode", "windowed; upper bound of the infimum, not certified");
  } else {
    r.note("limit_mode", "exact per witness via stabilization; upper bound of the infimum");
  }
  r.note("space", q.space.describe());
  return r;
}

}  // namespace cesaro
