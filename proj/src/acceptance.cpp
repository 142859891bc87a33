#include "cesaro/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cesaro/embeddings.hpp"
#include "cesaro/opial_moduli.hpp"
#include "cesaro/parallel.hpp"
#include "cesaro/scalar_cesaro.hpp"
#include "cesaro/theorem_harness.hpp"
#include "cesaro/vector_cesaro.hpp"

namespace cesaro::acceptance {

namespace {

using Rng = std::mt19937_64;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

// Reference values recomputed in long double from the closed formulas.
constexpr double kEtaLevelSetExample = 6.157477361207266e-4;
constexpr double kEtaLrExample = 9.257217094055502e-10;
constexpr double kThetaLrExample = 9.0 / 503.0;

Rng instance_rng(std::uint64_t seed, int criterion, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(criterion), static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <std::size_t N>
double pick(Rng& rng, const double (&values)[N]) {
  return values[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(N) - 1))];
}

constexpr double kAllExponents[] = {1.0, 1.5, 2.0, 3.0};
constexpr double kProperExponents[] = {1.5, 2.0, 3.0};

Partition random_partition(Rng& rng) {
  const int cells = uniform_int(rng, 1, 8);
  std::vector<double> bp{0.0, 1.0};
  while (static_cast<int>(bp.size()) < cells + 1) {
    const double t = uniform(rng, 0.01, 0.99);
    if (std::all_of(bp.begin(), bp.end(), [t](double b) { return std::abs(b - t) >= 0.01; })) bp.push_back(t);
  }
  std::sort(bp.begin(), bp.end());
  return Partition(std::span<const double>(bp));
}

ScalarStepFunction random_scalar(Rng& rng, bool nonnegative) {
  Partition part = random_partition(rng);
  Eigen::ArrayXd v(part.cells());
  for (Index k = 0; k < part.cells(); ++k) {
    v[k] = uniform_int(rng, 0, 5) == 0 ? 0.0 : uniform(rng, nonnegative ? 0.0 : -2.0, 2.0);
  }
  return {std::move(part), std::move(v)};
}

TaggedVector random_vector(Rng& rng, Index max_index, int max_entries) {
  const int n = uniform_int(rng, 1, max_entries);
  std::vector<Entry> entries;
  for (int i = 0; i < n; ++i) entries.push_back({uniform_int(rng, 1, static_cast<int>(max_index)), uniform(rng, -3.0, 3.0)});
  return TaggedVector::accumulate(std::move(entries));
}

TaggedVector random_nonzero(Rng& rng, Index max_index, int max_entries) {
  for (;;) {
    TaggedVector v = random_vector(rng, max_index, max_entries);
    if (!v.empty()) return v;
  }
}

SpaceSpec random_stack(Rng& rng, double p) {
  std::vector<SpaceSpec> comps;
  for (int i = uniform_int(rng, 1, 4); i > 0; --i) {
    comps.push_back(uniform_int(rng, 0, 1) == 0 ? SpaceSpec::finite_l1(uniform_int(rng, 1, 4))
                                                : SpaceSpec::lp(pick(rng, kAllExponents)));
  }
  return SpaceSpec::cesaro_sum(p, std::move(comps));
}

SumElement random_sum_element(Rng& rng, const SpaceSpec& space) {
  std::vector<SlotVector> comps;
  for (Index slot = 1; slot <= 10; ++slot) {
    if (uniform_int(rng, 0, 2) == 0) continue;
    const SpaceSpec& c = space.component(slot);
    const auto* fin = c.as<FiniteL1>();
    comps.push_back({slot, random_vector(rng, fin ? fin->n : 8, 3)});
  }
  return SumElement(std::move(comps), space);
}

// A shift family in l^q with a random nonnegative profile, plus a random f.
struct ShiftInstance {
  FunctionShiftFamily fam;
  VectorStepFunction f;
  Exponent p;
};

ShiftInstance random_shift_instance(Rng& rng, const double (&outer)[4]) {
  const double q = pick(rng, kProperExponents);
  const SpaceSpec space = SpaceSpec::lp(q);
  TaggedVector block;
  for (;;) {
    const TaggedVector v = random_nonzero(rng, 4, 3);
    block = v.scaled(1.0 / v.lp_norm(q));
    if (std::abs(block.lp_norm(q) - 1.0) <= 4.0 * kEps) break;
  }
  const Index stride = uniform_int(rng, 0, 1) == 0 ? 0 : block.width() + uniform_int(rng, 0, 3);
  FunctionShiftFamily fam(random_scalar(rng, true), space, block, uniform_int(rng, 0, 5), stride);
  Partition part = random_partition(rng);
  std::vector<TaggedVector> values;
  for (Index k = 0; k < part.cells(); ++k) {
    values.push_back(uniform_int(rng, 0, 4) == 0 ? TaggedVector{} : random_vector(rng, 6, 3));
  }
  VectorStepFunction f(std::move(part), std::move(values), space);
  return {std::move(fam), std::move(f), Exponent(pick(rng, outer))};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Result of one battery instance.
struct Sample {
  bool pass = true;
  double metric = 0.0;
  std::string detail;
  // Not applicable (for instance f = 0 where f must be nonzero).
  bool skipped = false;
};

Sample skip() { return {true, 0.0, "", true}; }

enum class Worst { Max, Min };

// Runs `n` instances in parallel; aggregation happens in index order.
// The metric of the worst instance is reported; NaN if any instance threw.
template <typename F>
void run_battery(CriterionOutcome& out, std::uint64_t seed, std::size_t n, const char* metric_name, Worst dir,
                 F&& one) {
  std::vector<Sample> samples(n);
  parallel_for(n, [&](std::size_t i) {
    Rng rng = instance_rng(seed, out.id, i);
    try {
      samples[i] = one(rng, i);
    } catch (const std::exception& e) {
      samples[i] = {false, std::numeric_limits<double>::quiet_NaN(), std::string("threw: ") + e.what()};
    }
  });
  const double inf = std::numeric_limits<double>::infinity();
  double worst = dir == Worst::Max ? -inf : inf;
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& s = samples[i];
    if (s.skipped) continue;
    ++out.instances;
    if (std::isnan(s.metric) || std::isnan(worst)) {
      worst = std::numeric_limits<double>::quiet_NaN();
    } else {
      worst = dir == Worst::Max ? std::max(worst, s.metric) : std::min(worst, s.metric);
    }
    if (!s.pass) {
      if (out.failures == 0) out.first_failure = "instance " + std::to_string(i) + ": " + s.detail;
      ++out.failures;
    }
  }
  out.quantities.emplace_back(metric_name, worst);
}

// Deterministic (non-random) checks recorded as a single instance each.
void record(CriterionOutcome& out, bool pass, const std::string& what) {
  ++out.instances;
  if (!pass) {
    if (out.failures == 0) out.first_failure = what;
    ++out.failures;
  }
}

CriterionOutcome start(int id, std::string title) {
  CriterionOutcome out;
  out.id = id;
  out.title = std::move(title);
  return out;
}

void finish(CriterionOutcome& out) { out.pass = out.instances > 0 && out.failures == 0; }

CriterionOutcome constant_norm() {
  CriterionOutcome out = start(1, "constant function has Cesaro norm 1");
  double worst = 0.0;
  for (double pv : kAllExponents) {
    const NormResult r = ces_fun_norm(ScalarStepFunction::constant(1.0), Exponent(pv));
    const double err = std::abs(r.value - 1.0);
    worst = std::max(worst, err);
    record(out, err <= 1e-10, "p = " + fmt(pv) + ": value " + fmt(r.value));
  }
  out.quantities = {{"max_abs_error", worst}, {"tolerance", 1e-10}};
  finish(out);
  return out;
}

CriterionOutcome sequence_oracle() {
  CriterionOutcome out = start(2, "sequence norm matches zeta closed forms");
  const Exponent p2(2.0);
  const double unit = ces_seq_norm(TaggedVector::unit(1), p2).value;
  const double pair = ces_seq_norm(TaggedVector({{1, 1.0}, {2, 1.0}}), p2).value;
  const double unit_ref = std::sqrt(kPi * kPi / 6.0);
  const double pair_ref = std::sqrt(4.0 * kPi * kPi / 6.0 - 3.0);
  record(out, std::abs(unit - unit_ref) <= 1e-8, "e_1: " + fmt(unit) + " vs " + fmt(unit_ref));
  record(out, std::abs(pair - pair_ref) <= 1e-8, "(1,1): " + fmt(pair) + " vs " + fmt(pair_ref));
  out.quantities = {{"e1_norm", unit},
                    {"e1_abs_error", std::abs(unit - unit_ref)},
                    {"pair_norm", pair},
                    {"pair_abs_error", std::abs(pair - pair_ref)},
                    {"tolerance", 1e-8}};
  finish(out);
  return out;
}

CriterionOutcome weighted_l1_identity(std::uint64_t seed) {
  CriterionOutcome out = start(3, "p = 1 norm equals the weighted L1 norm");
  run_battery(out, seed, 200, "max_scaled_gap", Worst::Max, [](Rng& rng, std::size_t) {
    const ScalarStepFunction h = random_scalar(rng, false);
    const double quad = ces_fun_norm_by_quadrature(h, Exponent(1.0)).value;
    const double closed = weighted_l1_norm(h).value;
    const double gap = std::abs(quad - closed) / (1.0 + closed);
    return Sample{gap <= 1e-8, gap, "quadrature " + fmt(quad) + " vs closed form " + fmt(closed)};
  });
  out.quantities.emplace_back("tolerance", 1e-8);
  finish(out);
  return out;
}

CriterionOutcome hardy_inequality(std::uint64_t seed) {
  CriterionOutcome out = start(4, "Cesaro norm bounded by q times the L^p norm");
  run_battery(out, seed, 200, "max_excess", Worst::Max, [](Rng& rng, std::size_t i) {
    const Exponent p(kProperExponents[i % 3]);
    const ScalarStepFunction h = random_scalar(rng, false);
    const double ces = ces_fun_norm(h, p).value;
    const double bound = p.conjugate() * lp_fun_norm(h, p).value;
    return Sample{ces <= bound + 1e-8, ces - bound, "p = " + fmt(p.value()) + ": " + fmt(ces) + " > " + fmt(bound)};
  });
  out.quantities.emplace_back("allowance", 1e-8);
  finish(out);
  return out;
}

CriterionOutcome isometries(std::uint64_t seed) {
  CriterionOutcome out = start(5, "embeddings T and S are isometries");
  run_battery(out, seed, 1000, "max_relative_gap", Worst::Max, [](Rng& rng, std::size_t i) {
    const double pv = kProperExponents[i % 3];
    const CheckReport r = i % 2 == 0 ? verify_isometry(random_nonzero(rng, 40, 6), Exponent(pv))
                                     : verify_isometry(random_sum_element(rng, random_stack(rng, pv)));
    const double gap = r.get("relative_gap");
    return Sample{r.holds && gap <= 1e-12, gap,
                  std::string(i % 2 == 0 ? "T" : "S") + " at p = " + fmt(pv) + ": gap " + fmt(gap)};
  });
  out.quantities.emplace_back("tolerance", 1e-12);
  finish(out);
  return out;
}

CriterionOutcome monotonicity(std::uint64_t seed) {
  CriterionOutcome out = start(6, "norms are monotone under pointwise domination");
  run_battery(out, seed, 200, "max_violation", Worst::Max, [](Rng& rng, std::size_t i) {
    const Exponent p(kAllExponents[i % 4]);
    if (i % 2 == 0) {
      const ScalarStepFunction h = random_scalar(rng, false);
      Eigen::ArrayXd v = h.values();
      for (Index k = 0; k < v.size(); ++k) v[k] *= uniform(rng, -1.0, 1.0);
      const ScalarStepFunction g(h.partition(), v);
      const NormResult a = ces_fun_norm(g, p), b = ces_fun_norm(h, p);
      const double excess = a.value - b.value;
      return Sample{excess <= a.error_bound + b.error_bound, excess,
                    "function, p = " + fmt(p.value()) + ": " + fmt(a.value) + " > " + fmt(b.value)};
    }
    if (p.is_one()) return skip();  // ces_1 is trivial
    const TaggedVector h = random_nonzero(rng, 30, 8);
    std::vector<Entry> dominated;
    for (const auto& e : h.entries()) dominated.push_back({e.index, e.coeff * uniform(rng, -1.0, 1.0)});
    const TaggedVector g = TaggedVector::accumulate(std::move(dominated));
    const NormResult a = ces_seq_norm(g, p), b = ces_seq_norm(h, p);
    const double excess = a.value - b.value;
    return Sample{excess <= a.error_bound + b.error_bound, excess,
                  "sequence, p = " + fmt(p.value()) + ": " + fmt(a.value) + " > " + fmt(b.value)};
  });
  out.quantities.emplace_back("allowance", 0.0);
  finish(out);
  return out;
}

CriterionOutcome splitting(std::uint64_t seed) {
  CriterionOutcome out = start(7, "splitting identity on disjoint supports");
  run_battery(out, seed, 500, "max_relative_gap", Worst::Max, [](Rng& rng, std::size_t i) {
    const Exponent p(kProperExponents[i % 3]);
    const TaggedVector x = random_nonzero(rng, 12, 5);
    const TaggedVector base = random_nonzero(rng, 6, 4);
    const VectorShiftFamily fam(base, uniform_int(rng, 0, 8), base.width() + uniform_int(rng, 0, 3));
    const CheckReport r = splitting_check(x, fam, p);
    const double gap = r.get("max_relative_gap");
    return Sample{r.holds && gap <= kSplittingRelTol, gap, "p = " + fmt(p.value()) + ": gap " + fmt(gap)};
  });
  out.quantities.emplace_back("tolerance", kSplittingRelTol);
  finish(out);
  return out;
}

CriterionOutcome moduli() {
  CriterionOutcome out = start(8, "modulus closed forms and the Schur convention");
  const ModulusQuery q{SpaceSpec::lp(2.0), 1.0, 1.0};
  const double eta = std::get<double>(eta_closed_form(q));
  const double eta_err = std::abs(eta - (std::numbers::sqrt2 - 1.0));
  record(out, eta_err <= 1e-12, "eta(l2, 1, 1) = " + fmt(eta));
  const auto witnesses = canonical_lp_witnesses(1.0, 1.0);
  const EtaEstimate est = estimate_eta_empirical(q, witnesses);
  const double gap = est.gap.value_or(std::numeric_limits<double>::infinity());
  record(out, est.exact && std::abs(gap) <= 1e-12, "canonical witness gap " + fmt(gap));
  bool schur = true;
  for (double c : {0.25, 1.0, 4.0}) schur = schur && r_closed_form(SpaceSpec::lp(1.0), c) == 1.0;
  record(out, schur, "r(l1, c) differs from 1");
  out.quantities = {{"eta_l2", eta}, {"eta_abs_error", eta_err}, {"witness_gap", gap}, {"tolerance", 1e-12}};
  finish(out);
  return out;
}

CriterionOutcome opial_inequality_battery(std::uint64_t seed) {
  CriterionOutcome out = start(9, "both Opial-type inequalities for weakly null families");
  const FunctionShiftFamily unit(ScalarStepFunction::constant(1.0), SpaceSpec::lp(2.0), TaggedVector::unit(1));
  const VectorStepFunction e1 = VectorStepFunction::constant(TaggedVector::unit(1), SpaceSpec::lp(2.0));
  const OpialInequalityReport w = check_opial_inequalities(unit, e1, Exponent(2.0));
  const bool sides = std::abs(w.lhs1 - 2.0) <= 1e-8 && std::abs(w.rhs1 - 3.0) <= 1e-8 &&
                     std::abs(w.lhs2 - 1.0) <= 1e-8 && std::abs(w.rhs2 - 2.0) <= 1e-8;
  record(out, sides && w.holds1 && w.holds2,
         "worked example: lhs1 " + fmt(w.lhs1) + ", rhs1 " + fmt(w.rhs1) + ", lhs2 " + fmt(w.lhs2) + ", rhs2 " + fmt(w.rhs2));
  const VectorStepFunction half =
      VectorStepFunction::profile_times(ScalarStepFunction::indicator(0.0, 0.5), TaggedVector::unit(1), SpaceSpec::lp(2.0));
  const OpialInequalityReport h = check_opial_inequalities(unit, half, Exponent(2.0));
  record(out, h.holds1 && h.holds2, "half-interval example fails");

  run_battery(out, seed, 150, "max_relative_shortfall", Worst::Max, [](Rng& rng, std::size_t) {
    const ShiftInstance in = random_shift_instance(rng, kAllExponents);
    const OpialInequalityReport r = check_opial_inequalities(in.fam, in.f, in.p);
    const double s1 = (r.lhs1 - r.rhs1) / (1.0 + std::abs(r.rhs1));
    const double s2 = (r.lhs2 - r.rhs2) / (1.0 + std::abs(r.rhs2));
    return Sample{r.holds1 && r.holds2, std::max(s1, s2),
                  "p = " + fmt(in.p.value()) + ": slack1 " + fmt(r.rhs1 - r.lhs1) + ", slack2 " + fmt(r.rhs2 - r.lhs2)};
  });
  out.quantities.insert(out.quantities.begin(), {{"example_lhs1", w.lhs1}, {"example_rhs1", w.rhs1},
                                                 {"example_lhs2", w.lhs2}, {"example_rhs2", w.rhs2},
                                                 {"half_example_a", h.a.value}});
  finish(out);
  return out;
}

CriterionOutcome strict_opial_battery(std::uint64_t seed) {
  CriterionOutcome out = start(10, "strict inequality for nonzero perturbations");
  run_battery(out, seed, 150, "min_margin_over_error", Worst::Min, [](Rng& rng, std::size_t) {
    ShiftInstance in = random_shift_instance(rng, kAllExponents);
    if (in.f.is_zero()) return skip();
    double worst = std::numeric_limits<double>::infinity();
    for (double s : {1.0, 1e-4}) {
      const CheckReport r = check_strict_opial(in.fam, scale(in.f, s), in.p);
      const double ratio = r.get("margin") / std::max(r.get("margin_error"), std::numeric_limits<double>::min());
      worst = std::min(worst, ratio);
      if (!r.holds) {
        return Sample{false, ratio, "scale " + fmt(s) + ", p = " + fmt(in.p.value()) + ": margin " +
                                         fmt(r.get("margin")) + ", error " + fmt(r.get("margin_error"))};
      }
    }
    return Sample{true, worst, ""};
  });
  const FunctionShiftFamily unit(ScalarStepFunction::constant(1.0), SpaceSpec::lp(2.0), TaggedVector::unit(1));
  const VectorStepFunction small =
      VectorStepFunction::profile_times(ScalarStepFunction::indicator(0.0, 0.5), TaggedVector::unit(1, 1e-4), SpaceSpec::lp(2.0));
  const CheckReport r = check_strict_opial(unit, small, Exponent(2.0));
  record(out, r.holds, "f scaled by 1e-4 on the half interval");
  out.quantities.emplace_back("scaled_example_margin", r.get("margin"));
  finish(out);
  return out;
}

// Random family satisfying the hypotheses with the tightest admissible M, R.
struct Admissible {
  ShiftInstance in;
  double M, R;
};

Admissible random_admissible(Rng& rng) {
  for (;;) {
    ShiftInstance in = random_shift_instance(rng, kAllExponents);
    if (in.p.is_one() || in.f.is_zero()) continue;
    const double M = std::max(in.fam.profile().values().maxCoeff(), 1e-3);
    const double R = std::max(ces_fun_norm(in.fam.profile(), in.p).upper() * (1.0 + 1e-12), 1e-3);
    return {std::move(in), M, R};
  }
}

CriterionOutcome level_set_recipe(std::uint64_t seed) {
  CriterionOutcome out = start(11, "explicit eta from level sets");
  const SpaceSpec l2 = SpaceSpec::lp(2.0);
  const VectorStepFunction e1 = VectorStepFunction::constant(TaggedVector::unit(1), l2);
  const LevelSetEtaRecipe e = compute_eta_level_set(e1, Exponent(2.0), 1.0, 1.0, 0.5);
  const double w_ref = std::sqrt(5.0) / 2.0 - 1.0;
  record(out, e.t0 == 0.5 && e.theta == 1.0, "t0 " + fmt(e.t0) + ", theta " + fmt(e.theta));
  record(out, std::abs(e.w - w_ref) <= 1e-15, "w " + fmt(e.w));
  record(out, std::abs(e.eta - kEtaLevelSetExample) <= 1e-9, "eta " + fmt(e.eta));
  const FunctionShiftFamily unit(ScalarStepFunction::constant(1.0), l2, TaggedVector::unit(1));
  const CheckReport v = verify_uniform_opial_level_set(unit, e1, Exponent(2.0), 1.0, 1.0, 0.5);
  record(out, v.holds, "conclusion: " + fmt(v.get("lhs")) + " <= " + fmt(v.get("rhs")));

  run_battery(out, seed, 120, "min_eta", Worst::Min, [](Rng& rng, std::size_t) {
    const Admissible a = random_admissible(rng);
    const CheckReport r = verify_uniform_opial_level_set(a.in.fam, a.in.f, a.in.p, a.M, a.R, std::nullopt);
    const double eta = r.get("eta");
    return Sample{r.holds && eta > 0.0, eta, "eta " + fmt(eta) + ", slack " + fmt(r.get("slack"))};
  });
  out.quantities.insert(out.quantities.begin(),
                        {{"t0", e.t0}, {"theta", e.theta}, {"w", e.w}, {"eta", e.eta}, {"eta_reference", kEtaLevelSetExample}});
  finish(out);
  return out;
}

CriterionOutcome integrable_recipe(std::uint64_t seed) {
  CriterionOutcome out = start(12, "explicit eta from an L^r bound");
  const SpaceSpec l2 = SpaceSpec::lp(2.0);
  const IntegrableEtaRecipe e = compute_eta_integrable(Exponent(2.0), 4.0, 1.0, 1.0, 1.0, 1.0, l2, 0.25);
  record(out, e.Q == 9.0 / 256.0 && e.t0 == 503.0 / 512.0, "Q " + fmt(e.Q) + ", t0 " + fmt(e.t0));
  record(out, std::abs(e.theta - kThetaLrExample) <= 4.0 * kEps * kThetaLrExample, "theta " + fmt(e.theta));
  record(out, e.eta > 0.0 && std::abs(e.eta - kEtaLrExample) <= 1e-9 * kEtaLrExample, "eta " + fmt(e.eta));
  const FunctionShiftFamily unit(ScalarStepFunction::constant(1.0), l2, TaggedVector::unit(1));
  const VectorStepFunction e1 = VectorStepFunction::constant(TaggedVector::unit(1), l2);
  record(out, verify_uniform_opial_integrable(unit, e1, Exponent(2.0), 4.0, 1.0, 1.0, 1.0, 1.0, 0.25).holds, "worked conclusion fails");

  run_battery(out, seed, 120, "min_eta", Worst::Min, [](Rng& rng, std::size_t) {
    const Admissible a = random_admissible(rng);
    const ScalarStepFunction norms = pointwise_norm(a.in.f);
    const double r = a.in.p.value() * uniform(rng, 1.2, 3.0);
    const double K = lr_fun_norm(norms, r).upper() * (1.0 + 1e-12);
    const double eps = ces_vfun_norm(a.in.f, a.in.p).lower() * uniform(rng, 0.3, 1.0);
    const CheckReport c = verify_uniform_opial_integrable(a.in.fam, a.in.f, a.in.p, r, eps, a.M, K, a.R, std::nullopt);
    const double eta = c.get("eta");
    return Sample{c.holds && eta > 0.0, eta, "eta " + fmt(eta) + ", slack " + fmt(c.get("slack"))};
  });
  out.quantities.insert(out.quantities.begin(), {{"Q", e.Q}, {"t0", e.t0}, {"theta", e.theta}, {"eta", e.eta}});
  finish(out);
  return out;
}

CriterionOutcome sharpness() {
  CriterionOutcome out = start(13, "the constant 2 is attained in c");
  const CheckReport r = check_constant_two_sharpness();
  record(out, r.holds && r.get("ratio") == 2.0, "ratio " + fmt(r.get("ratio")));
  out.quantities = {{"limsup_xn", r.get("limsup_xn")}, {"limsup_xn_minus_x", r.get("limsup_xn_minus_x")},
                    {"ratio", r.get("ratio")}};
  finish(out);
  return out;
}

}  // namespace

bool SuiteOutcome::pass() const {
  return !criteria.empty() && std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.pass; });
}

SuiteOutcome run_criteria(std::uint64_t seed) {
  SuiteOutcome s;
  s.seed = seed;
  s.criteria = {constant_norm(),           sequence_oracle(),   weighted_l1_identity(seed),
                hardy_inequality(seed),    isometries(seed),    monotonicity(seed),
                splitting(seed),           moduli(),            opial_inequality_battery(seed),
                strict_opial_battery(seed),       level_set_recipe(seed),  integrable_recipe(seed),
                sharpness()};
  return s;
}

CriterionOutcome determinism_criterion(const std::string& first, const std::string& second) {
  CriterionOutcome out = start(14, "identical seed gives byte-identical reports");
  record(out, first == second, "reports differ");
  out.quantities = {{"report_bytes", static_cast<double>(first.size())}};
  finish(out);
  return out;
}

SuiteOutcome run_suite(std::uint64_t seed) {
  SuiteOutcome a = run_criteria(seed);
  const SuiteOutcome b = run_criteria(seed);
  const std::string da = json_io::dump(to_json(a)), db = json_io::dump(to_json(b));
  a.criteria.push_back(determinism_criterion(da, db));
  return a;
}

json_io::Json to_json(const SuiteOutcome& s) {
  using json_io::Json;
  Json crit = Json::array();
  for (const auto& c : s.criteria) {
    Json q = Json::object();
    for (const auto& [k, v] : c.quantities) q[k] = json_io::number(v);
    Json j{{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"instances", c.instances},
           {"failures", c.failures}, {"quantities", q}};
    if (!c.first_failure.empty()) j["first_failure"] = c.first_failure;
    crit.push_back(std::move(j));
  }
  return {{"schema", kSuiteSchema}, {"seed", s.seed}, {"pass", s.pass()}, {"criteria", crit}};
}

std::string summary_lines(const SuiteOutcome& s) {
  std::string out;
  for (const auto& c : s.criteria) {
    out += c.pass ? "PASS " : "FAIL ";
    out += std::to_string(c.id) + " " + c.title + " (" + std::to_string(c.instances) + (c.instances == 1 ? " check" : " checks");
    if (c.failures > 0) out += ", " + std::to_string(c.failures) + " failed: " + c.first_failure;
    out += ")\n";
  }
  return out;
}

}  // namespace cesaro::acceptance
