#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "cesaro/json_io.hpp"
#include "support/generators.hpp"

using namespace cesaro;
using namespace cesaro::json_io;
using cesaro::testing::Rng;
using cesaro::testing::uniform;
using cesaro::testing::uniform_int;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidInput;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// Through text and back.
Json reparse(const Json& j) { return parse(dump(j)); }

// Awkward doubles: subnormals, extremes, and values needing all 17 digits.
double random_double(Rng& rng) {
  switch (uniform_int(rng, 0, 5)) {
    case 0: return std::ldexp(uniform(rng, 0.5, 1.0), uniform_int(rng, -1074, 1023));
    case 1: return 0.1 * uniform_int(rng, -50, 50);
    case 2: return std::nextafter(uniform(rng, -3.0, 3.0), 10.0);
    case 3: return std::numeric_limits<double>::denorm_min() * uniform_int(rng, 1, 1000);
    case 4: return static_cast<double>(uniform_int(rng, -1000, 1000));
    default: return uniform(rng, -1e-3, 1e-3);
  }
}

}  // namespace

TEST_CASE("doubles survive the text form bit for bit") {
  Rng rng(401);
  for (int i = 0; i < 20000; ++i) {
    const double v = random_double(rng);
    const Json back = reparse(Json::array({number(v)}));
    CHECK(same_bits(read_number(back[0], "v"), v));
  }
  const double specials[] = {0.0, -0.0, 1.0, 1e300, -2.2250738585072014e-308, 5e-324,
                             std::numeric_limits<double>::max(), 0.1, 1.0 / 3.0};
  for (double v : specials) CHECK(same_bits(read_number(reparse(Json::array({number(v)}))[0], "v"), v));

  CHECK(dump(Json::array({number(0.1)}), -1) == "[0.10000000000000001]\n");
  CHECK(dump(Json::array({number(2.0)}), -1) == "[2.0]\n");
  CHECK(dump(Json::array({number(std::nan(""))}), -1) == "[null]\n");
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(read_number(reparse(Json::array({number(inf)}))[0], "v") == inf);
  CHECK(read_number(reparse(Json::array({number(-inf)}))[0], "v") == -inf);
}

TEST_CASE("schema objects round-trip") {
  Rng rng(402);
  for (int i = 0; i < 300; ++i) {
    const double p = std::array{1.0, 1.5, 2.0, 3.0}[static_cast<std::size_t>(uniform_int(rng, 0, 3))];
    const SpaceSpec stack = cesaro::testing::random_stack(rng, p == 1.0 ? 2.0 : p);
    CHECK(space_from_json(reparse(to_json(stack))) == stack);

    TaggedVector v = cesaro::testing::random_vector(rng);
    CHECK(vector_from_json(reparse(to_json(v))) == v);

    const ScalarStepFunction h = cesaro::testing::random_scalar(rng);
    CHECK(scalar_function_from_json(reparse(to_json(h))) == h);

    const SpaceSpec sp = SpaceSpec::lp(uniform(rng, 1.0, 5.0));
    const VectorStepFunction f = cesaro::testing::random_vector_function(rng, sp);
    CHECK(vector_function_from_json(reparse(to_json(f))) == f);

    const SumElement x = cesaro::testing::random_sum_element(rng, stack);
    CHECK(sum_element_from_json(reparse(to_json(x))) == x);

    const double q = uniform(rng, 1.1, 4.0);
    TaggedVector block = cesaro::testing::random_nonzero_vector(rng, 5, 3);
    block = block.scaled(1.0 / block.lp_norm(q));
    if (std::abs(block.lp_norm(q) - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) continue;
    const FunctionShiftFamily fam(cesaro::testing::random_scalar(rng, 6, true), SpaceSpec::lp(q), block,
                                  uniform_int(rng, 0, 4), 0);
    const FunctionShiftFamily back = family_from_json(reparse(to_json(fam)));
    CHECK(back.profile() == fam.profile());
    CHECK(back.space() == fam.space());
    CHECK(back.shifts().base() == fam.shifts().base());
    CHECK(back.shifts().offset() == fam.shifts().offset());
    CHECK(back.shifts().stride() == fam.shifts().stride());
  }
  CHECK(space_from_json(reparse(to_json(SpaceSpec::c_space()))) == SpaceSpec::c_space());
  CHECK(kind_of([] { space_from_json(parse(R"({"space":"lp","p":"inf"})")); }) == ErrorKind::SchemaViolation);
}

TEST_CASE("documented input shapes") {
  const Json h = parse(R"({"breakpoints":[0,0.5,1],"cells":[1,2]})");
  const ScalarStepFunction s = scalar_function_from_json(h);
  CHECK(s.value(1) == 2.0);

  const Json f = parse(R"({"breakpoints":[0,1],"cells":[{"indices":[1,3],"coeffs":[1,-2]}]})");
  const SpaceSpec l2 = SpaceSpec::lp(2.0);
  const VectorStepFunction vf = vector_function_from_json(f, &l2);
  CHECK(vf.value(0) == TaggedVector({{1, 1.0}, {3, -2.0}}));
  CHECK(vf.space() == l2);

  const Json x = parse(R"({"p":2,"components":[{"slot":1,"vector":{"indices":[1],"coeffs":[1]}}],
                            "stack":[{"space":"finite_l1","n":1},{"space":"lp","p":2}]})");
  CHECK(sum_element_from_json(x).max_slot() == 1);

  const Json fam = parse(R"({"profile":{"breakpoints":[0,1],"cells":[1]},"space":{"space":"lp","p":2},
                              "block":{"indices":[1],"coeffs":[1]},"offset":1,"stride":1})");
  CHECK(family_from_json(fam).term(1).value(0) == TaggedVector::unit(2));
}

TEST_CASE("malformed input is a schema violation") {
  const char* bad[] = {
      R"({"breakpoints":[0,1]})",
      R"({"breakpoints":[0,0.7,0.5,1],"cells":[1,1,1]})",
      R"({"breakpoints":[0,1],"cells":[1,2]})",
      R"({"breakpoints":[0,1],"cells":["x"]})",
      R"([1,2])",
  };
  for (const char* text : bad) {
    CHECK(kind_of([&] { scalar_function_from_json(parse(text)); }) == ErrorKind::SchemaViolation);
  }
  CHECK(kind_of([] { parse("{not json"); }) == ErrorKind::SchemaViolation);
  CHECK(kind_of([] { space_from_json(parse(R"({"space":"lq","p":2})")); }) == ErrorKind::SchemaViolation);
  CHECK(kind_of([] { space_from_json(parse(R"({"space":"lp","p":0.5})")); }) == ErrorKind::SchemaViolation);
  CHECK(kind_of([] { vector_from_json(parse(R"({"indices":[1,2],"coeffs":[1]})")); }) ==
        ErrorKind::SchemaViolation);
  CHECK(kind_of([] { vector_from_json(parse(R"({"indices":[2,1],"coeffs":[1,1]})")); }) ==
        ErrorKind::SchemaViolation);
  CHECK(kind_of([] { vector_from_json(parse(R"({"indices":[1.5],"coeffs":[1]})")); }) ==
        ErrorKind::SchemaViolation);
  CHECK(kind_of([] { vector_function_from_json(parse(R"({"breakpoints":[0,1],"cells":[{"indices":[],"coeffs":[]}]})")); }) ==
        ErrorKind::SchemaViolation);
  CHECK(kind_of([] {
          family_from_json(parse(R"({"profile":{"breakpoints":[0,1],"cells":[1]},"space":{"space":"lp","p":2},
                                     "block":{"indices":[1],"coeffs":[2]}})"));
        }) == ErrorKind::SchemaViolation);
  try {
    scalar_function_from_json(parse(R"({"breakpoints":[0,1]})"));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("cells") != std::string::npos);
  }
}

TEST_CASE("reports keep insertion order") {
  CheckReport r;
  r.name = "demo";
  r.holds = true;
  r.set("zeta", 1.0).set("alpha", std::nan("")).note("mode", "exact");
  const std::string text = dump(to_json(r));
  CHECK(text.find("\"zeta\"") < text.find("\"alpha\""));
  CHECK(text.find("\"alpha\": null") != std::string::npos);
  CHECK(dump(to_json(r)) == text);
}
