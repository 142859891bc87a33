#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "cesaro/opial_moduli.hpp"
#include "cesaro/parallel.hpp"
#include "support/generators.hpp"

using namespace cesaro;
using cesaro::testing::Rng;
using cesaro::testing::uniform;

namespace {

constexpr double kExponents[] = {1.5, 2.0, 3.0};

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidInput;
}

double eta(double p, double eps, double R) {
  return std::get<double>(eta_closed_form({SpaceSpec::lp(p), eps, R}));
}

// Brute minimization of (L^p + c^p)^{1/p} - L over a grid of witness norms
// L in (0, R], c in [eps, 3 eps], in long double.
double grid_oracle(double p, double eps, double R) {
  long double best = INFINITY;
  for (int i = 1; i <= 200; ++i) {
    const long double L = static_cast<long double>(R) * i / 200;
    for (int j = 0; j <= 50; ++j) {
      const long double c = static_cast<long double>(eps) * (1.0L + j / 25.0L);
      best = std::min(best, std::pow(std::pow(L, p) + std::pow(c, p), 1.0L / p) - L);
    }
  }
  return static_cast<double>(best);
}

}  // namespace

TEST_CASE("eta and r closed forms") {
  CHECK(eta(2.0, 1.0, 1.0) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(std::abs(eta(2.0, 1.0, 1.0) - grid_oracle(2.0, 1.0, 1.0)) <= 1e-15);
  CHECK(eta(3.0, 1.0, 2.0) == doctest::Approx(std::cbrt(9.0) - 2.0).epsilon(1e-14));
  CHECK(std::abs(eta(3.0, 1.0, 2.0) - grid_oracle(3.0, 1.0, 2.0)) <= 1e-15);
  CHECK(eta(3.0, 1.0, 2.0) == doctest::Approx(0.08008382305190411).epsilon(1e-14));
  for (double p : kExponents) {
    for (double eps : {0.1, 0.7, 2.5}) {
      for (double R : {0.3, 1.0, 4.0}) {
        CHECK(eta(p, eps, R) == doctest::Approx(grid_oracle(p, eps, R)).epsilon(1e-13));
      }
    }
  }

  CHECK(r_closed_form(SpaceSpec::lp(2.0), 1.0) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(r_closed_form(SpaceSpec::lp(1.0), 0.3) == 1.0);
  CHECK(r_closed_form(SpaceSpec::finite_l1(3), 7.0) == 1.0);
  CHECK(std::holds_alternative<SchurFlag>(eta_closed_form({SpaceSpec::lp(1.0), 1.0, 1.0})));
  CHECK(std::holds_alternative<SchurFlag>(eta_closed_form({SpaceSpec::finite_l1(2), 1.0, 1.0})));

  CHECK(kind_of([] { (void)eta_closed_form({SpaceSpec::lp(2.0), 0.0, 1.0}); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { (void)eta_closed_form({SpaceSpec::lp(2.0), 1.0, -1.0}); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { (void)r_closed_form(SpaceSpec::lp(2.0), 0.0); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { (void)eta_closed_form({SpaceSpec::c_space(), 1.0, 1.0}); }) ==
        ErrorKind::UnsupportedSpace);
  CHECK(kind_of([] { (void)r_closed_form(SpaceSpec::cesaro_sum(2.0, {SpaceSpec::lp(2.0)}), 1.0); }) ==
        ErrorKind::UnsupportedSpace);
}

TEST_CASE("property: eta is monotone in eps and R and matches r") {
  for (double p : kExponents) {
    double previous = INFINITY;
    for (double eps = 1.0; eps > 1e-9; eps /= 3.0) {
      const double v = eta(p, eps, 1.0);
      CHECK(v > 0.0);
      CHECK(v < previous);
      previous = v;
    }
    CHECK(previous < 1e-12);
    for (double eps : {0.2, 1.0, 3.0}) {
      for (double R = 0.25; R < 8.0; R *= 1.5) {
        CHECK(eta(p, eps, R * 1.5) <= eta(p, eps, R));
        CHECK(eta(p, eps * 1.5, R) >= eta(p, eps, R));
      }
    }
    for (double c : {1e-6, 0.1, 1.0, 10.0}) {
      CHECK(r_closed_form(SpaceSpec::lp(p), c) == doctest::Approx(eta(p, c, 1.0)).epsilon(1e-15));
    }
  }
}

TEST_CASE("VectorShiftFamily terms and stabilization") {
  const VectorShiftFamily fam(TaggedVector::unit(1), 1, 1);
  CHECK(fam.term(1) == TaggedVector::unit(2));
  CHECK(fam.term(5) == TaggedVector::unit(6));
  CHECK(fam.stabilization_index(TaggedVector::unit(1)) == 1);
  CHECK(fam.stabilization_index(TaggedVector({{1, 1.0}, {4, 1.0}})) == 4);
  CHECK(fam.stabilization_index({}) == 1);

  CHECK(kind_of([] { VectorShiftFamily(TaggedVector({{1, 1.0}, {3, 1.0}}), 0, 2); }) ==
        ErrorKind::InvalidInput);
  CHECK(kind_of([] { VectorShiftFamily(TaggedVector::unit(2), -2, 1); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([&] { (void)fam.term(0); }) == ErrorKind::InvalidInput);

  Rng rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const auto base = cesaro::testing::random_nonzero_vector(rng, 6, 3);
    const VectorShiftFamily f(base, cesaro::testing::uniform_int(rng, 0, 5),
                              base.width() + cesaro::testing::uniform_int(rng, 0, 2));
    const auto x = cesaro::testing::random_vector(rng, 20, 5);
    const Index n = f.stabilization_index(x);
    CHECK(f.term(n).disjoint_from(x));
    CHECK(f.term(n + 3).disjoint_from(x));
    if (n > 1) CHECK(f.term(n - 1).min_index() <= x.max_index());
    CHECK(f.term(n).disjoint_from(f.term(n + 1)));
  }
}

TEST_CASE("splitting_check examples") {
  const Exponent p2(2.0);
  auto r = splitting_check(TaggedVector::unit(1), VectorShiftFamily(TaggedVector::unit(1), 1, 1), p2);
  CHECK(r.holds);
  CHECK(r.get("lhs") == 2.0);
  CHECK(r.get("rhs") == 2.0);
  CHECK(r.get("stabilization_index") == 1.0);

  r = splitting_check({}, VectorShiftFamily(TaggedVector::unit(1, 3.0), 0, 1), p2);
  CHECK(r.holds);
  CHECK(r.get("lhs") == 9.0);
  CHECK(r.get("rhs") == 9.0);

  r = splitting_check(TaggedVector({{1, 2.0}, {2, 1.0}}), VectorShiftFamily(TaggedVector::unit(1, 3.0), 2, 1),
                      Exponent(3.0));
  CHECK(r.holds);
  CHECK(r.get("lhs") == 36.0);
  CHECK(r.get("rhs") == 36.0);
  CHECK(r.get("max_relative_gap") == 0.0);
}

TEST_CASE("property: splitting identity on random disjoint witnesses") {
  Rng rng(67);
  for (int trial = 0; trial < 500; ++trial) {
    const Exponent p(kExponents[trial % 3]);
    const auto base = cesaro::testing::random_vector(rng, 8, 4);
    const VectorShiftFamily fam(base, cesaro::testing::uniform_int(rng, 0, 3),
                                std::max<Index>(1, base.width()) + cesaro::testing::uniform_int(rng, 0, 3));
    const auto r = splitting_check(cesaro::testing::random_vector(rng, 15, 6), fam, p, 8);
    CHECK(r.holds);
    CHECK(r.get("max_relative_gap") <= kSplittingRelTol);
  }
}

TEST_CASE("windowed_limit") {
  const auto inf = windowed_limit([](Index k) { return 1.0 / static_cast<double>(k); },
                                  LimitEstimate::Kind::Liminf, {});
  CHECK(inf.value == 1.0 / 200.0);
  CHECK(inf.drift == doctest::Approx(1.0 / 100.0 - 1.0 / 200.0));
  CHECK_FALSE(inf.exact);
  CHECK(inf.window_begin == 100);
  CHECK(inf.window_end == 200);
  const auto sup = windowed_limit([](Index k) { return k % 2 ? 1.0 : -1.0; },
                                  LimitEstimate::Kind::Limsup, {3, 9});
  CHECK(sup.value == 1.0);
  CHECK(sup.drift == 2.0);
  CHECK_THROWS_AS(windowed_limit([](Index) { return 0.0; }, LimitEstimate::Kind::Limsup, {5, 4}), Error);
}

TEST_CASE("estimate_eta_empirical on l^p") {
  const ModulusQuery q{SpaceSpec::lp(2.0), 1.0, 1.0};
  const auto canonical = canonical_lp_witnesses(1.0, 1.0);
  const auto e = estimate_eta_empirical(q, canonical);
  CHECK(e.exact);
  CHECK(e.estimate == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(std::abs(*e.gap) <= 1e-12);
  CHECK(e.admissible == canonical.size());
  const auto report = to_report(e, q);
  CHECK(report.holds);
  CHECK(report.certifying);

  // Everything below eps is rejected.
  std::vector<LpWitness> small{{TaggedVector::unit(1, 0.5), VectorShiftFamily(TaggedVector::unit(1), 1, 1)}};
  CHECK(kind_of([&] { (void)estimate_eta_empirical(q, small); }) == ErrorKind::EmptyWitnessSet);
  // Families above R are rejected too.
  std::vector<LpWitness> big{{TaggedVector::unit(1), VectorShiftFamily(TaggedVector::unit(1, 1.5), 1, 1)}};
  CHECK(kind_of([&] { (void)estimate_eta_empirical(q, big); }) == ErrorKind::EmptyWitnessSet);
  CHECK(kind_of([&] { (void)estimate_eta_empirical({SpaceSpec::lp(1.0), 1.0, 1.0}, canonical); }) ==
        ErrorKind::UnsupportedSpace);
}

TEST_CASE("property: random witnesses never undercut the closed form") {
  Rng rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const double p = kExponents[trial % 3];
    const double eps = uniform(rng, 0.1, 2.0);
    const double R = uniform(rng, 0.5, 4.0);
    std::vector<LpWitness> ws;
    for (int i = 0; i < 20; ++i) {
      const auto x = cesaro::testing::random_nonzero_vector(rng, 6, 3);
      auto base = cesaro::testing::random_nonzero_vector(rng, 4, 3);
      base = base.scaled(uniform(rng, 0.05, 1.0) * R / base.lp_norm(p));
      ws.push_back({x.scaled(eps * uniform(rng, 1.0, 3.0) / x.lp_norm(p)),
                    VectorShiftFamily(base, cesaro::testing::uniform_int(rng, 0, 4), base.width())});
    }
    const ModulusQuery q{SpaceSpec::lp(p), eps, R};
    const auto e = estimate_eta_empirical(q, ws);
    CHECK(e.estimate >= *e.closed_form - 1e-12);
    CHECK(to_report(e, q).holds);
  }
}

TEST_CASE("estimate_eta_empirical on a Cesaro sum of lines") {
  const auto space = SpaceSpec::cesaro_sum(2.0, {SpaceSpec::finite_l1(1)});
  const ModulusQuery q{space, 1.0, 1.0};
  const auto ws = canonical_sum_witnesses(space, 1.0, 1.0);
  const auto e = estimate_eta_empirical(q, ws);
  CHECK_FALSE(e.exact);
  CHECK(e.estimate > 0.0);
  CHECK(e.estimate > e.drift);
  // x has norm eps and the normalized shifts norm R, so along the shifts the
  // gap tends to (eps^2 + R^2)^{1/2} - R from above; the window only gets part
  // of the way.
  const double limit = std::sqrt(2.0) - 1.0;
  CHECK(e.estimate >= limit);
  CHECK(e.estimate <= limit + 0.1);
  const auto later = estimate_eta_empirical(q, ws, {800, 1000});
  CHECK(later.estimate < e.estimate);
  CHECK(later.estimate >= limit);
  const auto report = to_report(e, q);
  CHECK(report.holds);
  CHECK_FALSE(report.certifying);
  CHECK(report.get("window_end") == 200.0);

  CHECK(kind_of([&] { (void)estimate_eta_empirical({SpaceSpec::cesaro_sum(2.0, {SpaceSpec::lp(2.0)}), 1.0, 1.0}, ws); }) ==
        ErrorKind::UnsupportedSpace);
}

TEST_CASE("parallel evaluation does not depend on the thread count") {
  const auto space = SpaceSpec::cesaro_sum(3.0, {SpaceSpec::finite_l1(2), SpaceSpec::lp(1.0)});
  std::vector<SumWitness> ws;
  for (double eps : {0.5, 1.0, 1.5}) {
    for (auto& w : canonical_sum_witnesses(space, eps, 1.2)) ws.push_back(std::move(w));
  }
  const ModulusQuery q{space, 0.5, 1.2};
  setenv("CESARO_LAB_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  const auto one = estimate_eta_empirical(q, ws, {20, 60});
  setenv("CESARO_LAB_THREADS", "4", 1);
  CHECK(worker_count() == 4);
  const auto four = estimate_eta_empirical(q, ws, {20, 60});
  unsetenv("CESARO_LAB_THREADS");
  CHECK(one.estimate == four.estimate);
  CHECK(one.drift == four.drift);
  CHECK(one.best_witness == four.best_witness);

  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_WITH(parallel_for(50, [](std::size_t i) {
    if (i % 7 == 3) throw std::runtime_error("index " + std::to_string(i));
  }), "index 3");
}
