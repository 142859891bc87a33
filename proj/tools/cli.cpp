#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cesaro/acceptance.hpp"
#include "cesaro/embeddings.hpp"
#include "cesaro/json_io.hpp"
#include "cesaro/opial_moduli.hpp"
#include "cesaro/scalar_cesaro.hpp"
#include "cesaro/theorem_harness.hpp"
#include "cesaro/vector_cesaro.hpp"

namespace cesaro::cli {

namespace {

using json_io::Json;

const char* const kCsvHeader = "t,inner_average,integrand\n";

struct Output {
  Json report;
  // Function whose Hardy averages are sampled for CSV output, if any.
  std::optional<ScalarStepFunction> plot;
  std::optional<double> plot_p;
  bool failed = false;  // suite only
};

Output of(Json report) {
  Output o;
  o.report = std::move(report);
  return o;
}

Json read_input(const RunConfig& cfg, bool required) {
  if (cfg.input_path.empty()) {
    if (required) throw Error(ErrorKind::SchemaViolation, "command " + cfg.command + " needs an input file");
    return Json::object();
  }
  std::ifstream in(cfg.input_path);
  if (!in) throw Error(ErrorKind::SchemaViolation, "cannot read " + cfg.input_path);
  std::stringstream ss;
  ss << in.rdbuf();
  Json j = json_io::parse(ss.str());
  if (!j.is_object()) throw Error(ErrorKind::SchemaViolation, "input must be a JSON object");
  return j;
}

// Flag, else the same key in the input, else the fallback.
std::optional<double> param(const std::optional<double>& flag, const Json& in, const char* key,
                            std::optional<double> fallback = std::nullopt) {
  if (flag) return flag;
  if (in.contains(key)) return json_io::read_number(in[key], key);
  return fallback;
}

double required(const std::optional<double>& v, const char* name) {
  if (!v) throw Error(ErrorKind::SchemaViolation, std::string("missing parameter ") + name);
  return *v;
}

QuadratureConfig quadrature(const std::optional<double>& tol) {
  QuadratureConfig q;
  if (tol) q.rel_tol = *tol;
  return q;
}

const Json& field(const Json& in, const char* key) {
  if (!in.contains(key)) throw Error(ErrorKind::SchemaViolation, std::string("input: missing \"") + key + "\"");
  return in[key];
}

Json params_json(const std::vector<std::pair<const char*, std::optional<double>>>& ps) {
  Json j = Json::object();
  for (const auto& [k, v] : ps) {
    if (v) j[k] = json_io::number(*v);
  }
  return j;
}

Json envelope(const RunConfig& cfg, Json inputs, Json result) {
  return {{"schema", json_io::kReportSchema}, {"command", cfg.command}, {"inputs", std::move(inputs)},
          {"result", std::move(result)}};
}

Output norm_seq(const RunConfig& cfg) {
  const Json in = read_input(cfg, true);
  const TaggedVector v = json_io::vector_from_json(in.contains("vector") ? in["vector"] : in);
  const double p = *param(cfg.p, in, "p", 2.0);
  const double tol = *param(cfg.tol, in, "tol", kDefaultSequenceTol);
  const NormResult r = ces_seq_norm(v, Exponent(p), tol);
  return of(envelope(cfg, {{"vector", json_io::to_json(v)}, {"params", params_json({{"p", p}, {"tol", tol}})}},
                   json_io::to_json(r)));
}

Output norm_fun(const RunConfig& cfg) {
  const Json in = read_input(cfg, true);
  const ScalarStepFunction h = json_io::scalar_function_from_json(in.contains("function") ? in["function"] : in);
  const std::optional<double> tol = param(cfg.tol, in, "tol");
  const double p = *param(cfg.p, in, "p", 2.0);
  const NormResult r = ces_fun_norm(h, Exponent(p), quadrature(tol));
  Output o = of(envelope(cfg, {{"function", json_io::to_json(h)}, {"params", params_json({{"p", p}, {"tol", tol}})}},
                    json_io::to_json(r)));
  o.plot = h;
  o.plot_p = p;
  return o;
}

Output norm_vfun(const RunConfig& cfg) {
  const Json in = read_input(cfg, true);
  const VectorStepFunction f = json_io::vector_function_from_json(in.contains("function") ? in["function"] : in);
  const std::optional<double> tol = param(cfg.tol, in, "tol");
  const double p = *param(cfg.p, in, "p", 2.0);
  const NormResult r = ces_vfun_norm(f, Exponent(p), quadrature(tol));
  Output o = of(envelope(cfg, {{"function", json_io::to_json(f)}, {"params", params_json({{"p", p}, {"tol", tol}})}},
                    json_io::to_json(r)));
  o.plot = pointwise_norm(f);
  o.plot_p = p;
  return o;
}

Output sum_norm(const RunConfig& cfg) {
  const Json in = read_input(cfg, true);
  const SumElement x = json_io::sum_element_from_json(in.contains("element") ? in["element"] : in);
  const double tol = *param(cfg.tol, in, "tol", kDefaultSequenceTol);
  Json result = json_io::to_json(cesaro_sum_norm(x, tol));
  Json comps = Json::array();
  for (double c : x.component_norms()) comps.push_back(json_io::number(c));
  result["component_norms"] = comps;
  return of(envelope(cfg, {{"element", json_io::to_json(x)}, {"params", params_json({{"tol", tol}})}}, result));
}

Output embed_check(const RunConfig& cfg) {
  const Json in = read_input(cfg, true);
  const double tol = *param(cfg.tol, in, "tol", kDefaultSequenceTol);
  const Json& obj = in.contains("element") ? in["element"] : in.contains("vector") ? in["vector"] : in;
  if (obj.contains("stack")) {
    const SumElement x = json_io::sum_element_from_json(obj);
    return of(envelope(cfg, {{"element", json_io::to_json(x)}, {"map", "S"}, {"params", params_json({{"tol", tol}})}},
                     json_io::to_json(verify_isometry(x, tol))));
  }
  const TaggedVector a = json_io::vector_from_json(obj);
  const double p = *param(cfg.p, in, "p", 2.0);
  return of(envelope(cfg,
                   {{"vector", json_io::to_json(a)}, {"map", "T"}, {"params", params_json({{"p", p}, {"tol", tol}})}},
                   json_io::to_json(verify_isometry(a, Exponent(p), tol))));
}

Output modulus(const RunConfig& cfg) {
  const Json in = read_input(cfg, false);
  const SpaceSpec space = in.contains("space") ? json_io::space_from_json(in["space"]) : SpaceSpec::lp(2.0);
  const double eps = *param(cfg.eps, in, "eps", 1.0);
  const double R = *param(cfg.R, in, "R", 1.0);
  Json result = Json::object();
  const ModulusQuery q{space, eps, R};
  const bool closed = space.as<LpSequence>() || space.schur();
  if (closed) {
    const ModulusValue eta = eta_closed_form(q);
    if (std::holds_alternative<SchurFlag>(eta)) {
      result["eta"] = "schur";
    } else {
      result["eta"] = json_io::number(std::get<double>(eta));
    }
    result["r_of_eps"] = json_io::number(r_closed_form(space, eps));
  }
  if (const auto* lp = space.as<LpSequence>(); lp && lp->p > 1.0) {
    const auto w = canonical_lp_witnesses(eps, R);
    result["empirical"] = json_io::to_json(to_report(estimate_eta_empirical(q, w), q));
  } else if (space.as<CesaroSum>()) {
    const auto w = canonical_sum_witnesses(space, eps, R);
    result["empirical"] = json_io::to_json(to_report(estimate_eta_empirical(q, w), q));
  }
  return of(envelope(cfg, {{"space", json_io::to_json(space)}, {"params", params_json({{"eps", eps}, {"R", R}})}},
                   result));
}

struct FamilyInput {
  FunctionShiftFamily fam;
  VectorStepFunction f;
  Json echo;
};

FamilyInput family_input(const RunConfig& cfg) {
  const Json in = read_input(cfg, true);
  FunctionShiftFamily fam = json_io::family_from_json(field(in, "family"));
  VectorStepFunction f = json_io::vector_function_from_json(field(in, "f"), &fam.space());
  Json echo{{"family", json_io::to_json(fam)}, {"f", json_io::to_json(f)}};
  return {std::move(fam), std::move(f), std::move(echo)};
}

Output opial_inequalities(const RunConfig& cfg, bool strict) {
  FamilyInput fi = family_input(cfg);
  const Json in = read_input(cfg, true);
  const std::optional<double> tol = param(cfg.tol, in, "tol");
  const double p = *param(cfg.p, in, "p", 2.0);
  fi.echo["params"] = params_json({{"p", p}, {"tol", tol}});
  const QuadratureConfig qc = quadrature(tol);
  Output o;
  if (strict) {
    o.report = envelope(cfg, fi.echo, json_io::to_json(check_strict_opial(fi.fam, fi.f, Exponent(p), qc)));
    o.plot = eval_phi(fi.fam, fi.f).phi;
  } else {
    const OpialInequalityReport r = check_opial_inequalities(fi.fam, fi.f, Exponent(p), qc);
    Json result = json_io::to_json(r.to_report());
    result["phi"] = json_io::to_json(r.phi);
    result["limsup_fn"] = json_io::to_json(r.limsup_fn);
    result["limsup_diff"] = json_io::to_json(r.limsup_diff);
    o.report = envelope(cfg, fi.echo, result);
    o.plot = r.phi;
  }
  o.plot_p = p;
  return o;
}

Output uniform_opial_level_set(const RunConfig& cfg) {
  FamilyInput fi = family_input(cfg);
  const Json in = read_input(cfg, true);
  const std::optional<double> tol = param(cfg.tol, in, "tol");
  const Exponent p(*param(cfg.p, in, "p", 2.0));
  const QuadratureConfig qc = quadrature(tol);
  // Without explicit bounds take the tightest ones the family satisfies.
  const double M = *param(cfg.M, in, "M", fi.fam.profile().values().maxCoeff());
  const double R = *param(cfg.R, in, "R", ces_fun_norm(fi.fam.profile(), p, qc).upper());
  const std::optional<double> tau = param(cfg.tau, in, "tau");
  fi.echo["params"] = params_json({{"p", p.value()}, {"M", M}, {"R", R}, {"tau", tau}, {"tol", tol}});
  return of(envelope(cfg, fi.echo, json_io::to_json(verify_uniform_opial_level_set(fi.fam, fi.f, p, M, R, tau, qc))));
}

Output uniform_opial_integrable(const RunConfig& cfg) {
  FamilyInput fi = family_input(cfg);
  const Json in = read_input(cfg, true);
  const std::optional<double> tol = param(cfg.tol, in, "tol");
  const Exponent p(*param(cfg.p, in, "p", 2.0));
  const QuadratureConfig qc = quadrature(tol);
  const double r = required(param(cfg.r, in, "r"), "r");
  const ScalarStepFunction norms = pointwise_norm(fi.f);
  const double M = *param(cfg.M, in, "M", fi.fam.profile().values().maxCoeff());
  const double R = *param(cfg.R, in, "R", ces_fun_norm(fi.fam.profile(), p, qc).upper());
  const double K = *param(cfg.K, in, "K", lr_fun_norm(norms, r).upper());
  const double eps = *param(cfg.eps, in, "eps", ces_vfun_norm(fi.f, p, qc).lower());
  const std::optional<double> tau = param(cfg.tau, in, "tau");
  fi.echo["params"] =
      params_json({{"p", p.value()}, {"r", r}, {"eps", eps}, {"M", M}, {"K", K}, {"R", R}, {"tau", tau}, {"tol", tol}});
  return of(envelope(cfg, fi.echo, json_io::to_json(verify_uniform_opial_integrable(fi.fam, fi.f, p, r, eps, M, K, R, tau, qc))));
}

Output sum_opial(const RunConfig& cfg) {
  const Json in = read_input(cfg, true);
  const SumElement x = json_io::sum_element_from_json(field(in, "x"));
  const SumElement base = json_io::sum_element_from_json(field(in, "base"));
  const auto index = [&](const char* key, Index fallback) {
    if (!in.contains(key)) return fallback;
    if (!in[key].is_number_integer()) throw Error(ErrorKind::SchemaViolation, std::string(key) + " must be an integer");
    return in[key].get<Index>();
  };
  const Index offset = index("offset", 1);
  const Index stride = index("stride", std::max<Index>(1, base.max_slot()));
  std::optional<double> normalized;
  if (in.contains("normalized_to")) normalized = json_io::read_number(in["normalized_to"], "normalized_to");
  Window window;
  if (in.contains("window")) {
    const Json& w = in["window"];
    if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer()) {
      throw Error(ErrorKind::SchemaViolation, "window must be [begin, end]");
    }
    window = {w[0].get<Index>(), w[1].get<Index>()};
  }
  const SlotShiftFamily fam(base, offset, stride, normalized);
  Json echo{{"x", json_io::to_json(x)}, {"base", json_io::to_json(base)}, {"offset", offset}, {"stride", stride},
            {"window", {window.begin, window.end}}};
  if (normalized) echo["normalized_to"] = json_io::number(*normalized);
  return of(envelope(cfg, echo, json_io::to_json(check_sum_opial(fam, x, window))));
}

Output sharpness(const RunConfig& cfg) {
  const Json in = read_input(cfg, false);
  const double lambda = in.contains("lambda") ? json_io::read_number(in["lambda"], "lambda") : 1.0;
  const bool x_zero = in.contains("x_zero") && in["x_zero"].is_boolean() && in["x_zero"].get<bool>();
  return of(envelope(cfg, {{"lambda", json_io::number(lambda)}, {"x_zero", x_zero}},
                   json_io::to_json(check_constant_two_sharpness(lambda, x_zero))));
}

Output suite(const RunConfig& cfg, std::ostream& err) {
  const acceptance::SuiteOutcome s = acceptance::run_suite(cfg.seed);
  err << acceptance::summary_lines(s);
  Output o;
  o.report = acceptance::to_json(s);
  o.failed = !s.pass();
  return o;
}

Output dispatch(const RunConfig& cfg, std::ostream& err) {
  const std::string& c = cfg.command;
  if (c == "norm-seq") return norm_seq(cfg);
  if (c == "norm-fun") return norm_fun(cfg);
  if (c == "norm-vfun") return norm_vfun(cfg);
  if (c == "sum-norm") return sum_norm(cfg);
  if (c == "embed-check") return embed_check(cfg);
  if (c == "modulus") return modulus(cfg);
  if (c == "thm31") return opial_inequalities(cfg, false);
  if (c == "cor32") return opial_inequalities(cfg, true);
  if (c == "thm33") return uniform_opial_level_set(cfg);
  if (c == "thm34") return uniform_opial_integrable(cfg);
  if (c == "prop21") return sum_opial(cfg);
  if (c == "sharpness") return sharpness(cfg);
  if (c == "suite") return suite(cfg, err);
  throw Error(ErrorKind::SchemaViolation, "unknown command " + c);
}

std::string csv(const Output& o, const RunConfig& cfg) {
  std::string text = kCsvHeader;
  if (!o.plot) return text;
  const auto cell = [&](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    text.append(buf, res.ptr);
  };
  for (const auto& s : sample_averages(*o.plot, Exponent(*o.plot_p), quadrature(cfg.tol))) {
    cell(s.t);
    text += ',';
    cell(s.inner_average);
    text += ',';
    cell(s.integrand);
    text += '\n';
  }
  return text;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"norm-seq", "norm-fun", "norm-vfun", "sum-norm", "embed-check",
                                              "modulus",  "thm31",    "cor32",     "thm33",    "thm34",
                                              "prop21",   "sharpness", "suite"};
  return names;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Output o;
  try {
    o = dispatch(cfg, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::SchemaViolation ? kExitSchema : kExitFailed;
  }
  const std::string text = cfg.format == Format::Csv ? csv(o, cfg) : json_io::dump(o.report);
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    file << text;
    if (!file) {
      err << "error: cannot write " << cfg.out_path << '\n';
      return kExitFailed;
    }
  }
  return o.failed ? kExitFailed : kExitOk;
}

}  // namespace cesaro::cli
