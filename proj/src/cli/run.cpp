#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oscillab/cli.hpp"
#include "oscillab/csv.hpp"
#include "oscillab/errors.hpp"
#include "oscillab/svg.hpp"
#include "oscillab/verify.hpp"

namespace oscillab::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Check {
  Check(std::string n, bool ok, std::string d, std::optional<RatioSample> w = std::nullopt)
      : name(std::move(n)), pass(ok), detail(std::move(d)), witness(std::move(w)) {}

  std::string name;
  bool pass = true;
  std::string detail;
  std::optional<RatioSample> witness;
};

struct Outcome {
  std::vector<RatioSample> samples;
  std::vector<SweepReport> sweeps;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> files;
  Json extra = Json::object();
  std::vector<std::string> lines;
};

std::string fmt(double v) { return csv::format_double(v); }

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::vector<double> lambdas_or(const RunConfig& c, std::vector<double> fallback) {
  return c.lambdas.empty() ? fallback : c.lambdas;
}

std::vector<double> powers(int lo, int hi) {
  std::vector<double> out;
  for (int e = lo; e <= hi; ++e) out.push_back(std::ldexp(1.0, e));
  return out;
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

// First sample whose right side vanishes while the left does not.
Check no_violation(const std::string& name, const std::vector<RatioSample>& samples) {
  for (const auto& s : samples) {
    if (s.violates()) return {name, false, "rhs = 0 with lhs = " + fmt(s.lhs), s};
  }
  return {name, true, std::to_string(samples.size()) + " samples"};
}

Check slope_check(const SweepReport& r, double target, double width) {
  if (!r.fit) return {"slope", false, "no fit: " + r.flag};
  const bool ok = std::abs(r.fit->slope - target) <= width;
  return {"slope", ok, "slope " + fmt(r.fit->slope) + ", expected " + fmt(target) + " +- " + fmt(width)};
}

Outcome validate_phase(const RunConfig& c) {
  Outcome o;
  const Phase phase = c.phase();
  FiniteTypeSpec spec = c.spec();
  TypeReport report;
  try {
    report = validate_finite_type(phase, spec, c.tol);
  } catch (const ValidationFailed& e) {
    o.checks.push_back({"finite type", false, e.what()});
    return o;
  }
  o.checks.push_back({"finite type", report.pass,
                      report.pass ? "phi^(ell)(x0) = " + fmt(report.leading) + ", u = " + fmt(report.u)
                                  : report.violation});
  Json vanishing = Json::array();
  for (double v : report.vanishing) vanishing.push_back(v);
  o.extra["phase"] = phase.describe();
  o.extra["x0"] = report.x0;
  o.extra["ell"] = report.ell;
  o.extra["vanishing"] = vanishing;
  o.extra["leading"] = report.leading;
  o.extra["u"] = report.u;
  if (!report.pass || report.u <= 0.0) return o;
  spec.u = report.u;
  Json comp = Json::array();
  for (int k = 0; k < c.ell; ++k) {
    const auto r = comparability_check(phase, spec, k, report.u / 512);
    comp.push_back({{"k", k}, {"min_ratio", r.min_ratio}, {"max_ratio", r.max_ratio}, {"upper", r.upper}, {"pass", r.pass}});
    // The remainder carries 1/(ell-k)!, which the bare bounds [1/2, A_ell] omit.
    const double f = std::tgamma(c.ell - k + 1.0);
    const bool ok = r.min_ratio * f >= 0.5 * (1 - 1e-3) && r.max_ratio * f <= r.upper * (1 + 1e-3);
    o.checks.push_back({"comparability k=" + std::to_string(k), ok,
                        "(ell-k)! ratio in [" + fmt(r.min_ratio * f) + ", " + fmt(r.max_ratio * f) + "]"});
  }
  o.extra["comparability"] = comp;
  return o;
}

Outcome kernel_decay(const RunConfig& c) {
  Outcome o;
  const auto lambdas = lambdas_or(c, powers(6, 14));
  std::vector<DecayReport> reports;
  auto sweep = kernel_decay_sweep(c.phase(), c.spec(), lambdas, c.N, reports);
  o.files.emplace_back("decay.csv", decay_csv(reports));
  std::vector<double> low;
  double tail = 0.0;
  bool far = true;
  for (const auto& r : reports) {
    low.push_back(r.sup_low * std::pow(r.lambda, 1.0 / c.ell));
    tail = std::max(tail, r.tail_max);
    far = far && std::isfinite(r.far_field);
  }
  o.checks.push_back({"low-frequency scaling", spread(low) < 3.0, "sup_low lambda^{1/ell} spread " + fmt(spread(low))});
  const double first = reports.front().tail_max;
  o.checks.push_back({"tail constant", tail <= 1.5 * first,
                      "max tail " + fmt(tail) + " against " + fmt(first) + " at the smallest lambda"});
  o.checks.push_back({"far field", far, far ? "finite" : "not finite"});
  o.sweeps.push_back(std::move(sweep));
  return o;
}

Outcome maximal(const RunConfig& c) {
  Outcome o;
  const double lambda = c.lambdas.empty() ? 64.0 : c.lambdas.front();
  MaximalOperator op{MaximalOperator::Kind::approach, 1, c.ell, lambda};
  if (!c.op.empty()) {
    try {
      op = MaximalOperator::parse(c.op);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  const bool scaled = op.kind == MaximalOperator::Kind::approach || op.kind == MaximalOperator::Kind::regular;
  Weight w = Weight::zeros(Grid::with_size(0.0, 1.0, 2));
  if (!c.input.empty()) {
    std::ifstream in(c.input);
    if (!in) throw ConfigError("cannot open " + c.input);
    w = csv::read_weight(in);
  } else {
    const Grid g = c.step ? Grid::covering(0.0, corpus::kFeatureExtent + 4.5, *c.step)
                          : scaled ? maximal_grid(op.lambda)
                                   : Grid::covering(0.0, corpus::kFeatureExtent + 4.5, 1.0 / 256);
    w = corpus::make_weight(corpus::parse_weight_kind(c.weight), g, op.lambda, c.seed);
  }
  const double q = c.q.value_or(op.kind == MaximalOperator::Kind::approach && op.ell > 2 ? op.ell / (op.ell - 2.0)
                                : op.kind == MaximalOperator::Kind::approach ? INFINITY
                                                                              : 2.0);
  o.samples.push_back(maximal_ratio(op, w, q, {"maximal", "", c.input.empty() ? c.weight : c.input, op.ell,
                                               op.lambda, -1, c.seed}));
  const Weight m = op.apply(w);
  std::ostringstream body;
  csv::write_weight(body, m);
  o.files.emplace_back("maximal.csv", body.str());
  const double at0 = m[m.grid().nearest(0.0)];
  o.lines.push_back(op.name() + " at x=0: " + fmt(at0));
  o.extra["operator"] = op.name();
  o.extra["value_at_0"] = at0;
  if (op.kind == MaximalOperator::Kind::approach && c.input.empty() && c.weight.rfind("const", 0) == 0) {
    const double closed = 2.0 * std::pow(op.lambda, -2.0 / op.ell);
    o.checks.push_back({"closed form", std::abs(at0 / closed - 1.0) <= 0.03,
                        fmt(at0) + " against 2 lambda^{-2/ell} = " + fmt(closed)});
  }
  return o;
}

Outcome sweep_maximal(const RunConfig& c) {
  Outcome o;
  WeightCorpus wc;
  wc.kinds.clear();
  for (const auto& k : c.kinds) wc.kinds.push_back(corpus::parse_weight_kind(k));
  wc.per_kind = c.per_kind;
  wc.seed = c.seed;
  const double q = c.q.value_or(c.ell == 2 ? INFINITY : c.ell / (c.ell - 2.0));
  auto r = maximal_norm_sweep(c.ell, lambdas_or(c, powers(4, 12)), q, wc);
  o.checks.push_back(slope_check(r, -2.0 / c.ell, 0.1));
  o.samples = r.witnesses;
  o.sweeps.push_back(std::move(r));
  return o;
}

Outcome sweep_operator(const RunConfig& c) {
  Outcome o;
  FunctionCorpus fc;
  fc.random = c.random;
  fc.seed = c.seed;
  auto r = operator_norm_sweep(c.phase(), c.spec(), lambdas_or(c, powers(6, 12)), fc);
  o.checks.push_back(slope_check(r, -1.0 / c.ell, 0.15));
  o.samples = r.witnesses;
  o.sweeps.push_back(std::move(r));
  return o;
}

Outcome check_main(const RunConfig& c) {
  Outcome o;
  SweepReport maxima;
  maxima.experiment = "main_max";
  maxima.ell = c.ell;
  std::vector<double> values;
  for (double lambda : lambdas_or(c, {64.0, 256.0, 1024.0})) {
    const auto s = main_theorem_sweep(c.phase(), c.spec(), lambda, c.weights, c.per_weight, c.seed);
    o.samples.insert(o.samples.end(), s.begin(), s.end());
    const auto best = max_ratio(s);
    maxima.points.push_back({lambda, best ? best->ratio : 0.0});
    if (best) maxima.witnesses.push_back(*best);
    values.push_back(best ? best->ratio : 0.0);
  }
  fit_report(maxima);
  o.checks.push_back(no_violation("no vacuous right side", o.samples));
  if (values.size() > 1 && *std::min_element(values.begin(), values.end()) > 0.0) {
    o.checks.push_back({"bounded across lambda", spread(values) < 2.0, "max ratio spread " + fmt(spread(values))});
  }
  o.sweeps.push_back(std::move(maxima));
  return o;
}

Outcome check_lp(const RunConfig& c) {
  Outcome o;
  const auto dy = dyadic_sweep({c.kmin, c.kmax}, c.count, c.seed);
  o.samples = dy;
  SweepReport spaced;
  spaced.experiment = "spaced_max";
  for (double L : c.spacings) {
    const auto s = spaced_sweep({L}, c.count, c.seed);
    o.samples.insert(o.samples.end(), s.begin(), s.end());
    const auto best = max_ratio(s);
    spaced.points.push_back({L, best ? best->ratio : 0.0});
    if (best) spaced.witnesses.push_back(*best);
  }
  fit_report(spaced);
  o.checks.push_back(no_violation("no vacuous right side", o.samples));
  double fwd = 0.0, bwd = 0.0;
  for (std::size_t i = 0; i + 1 < dy.size(); i += 2) {
    fwd = std::max(fwd, dy[i].ratio);
    bwd = std::max(bwd, dy[i + 1].ratio);
  }
  o.checks.push_back({"square function ratios finite", std::isfinite(fwd) && std::isfinite(bwd),
                      "forward max " + fmt(fwd) + ", backward max " + fmt(bwd)});
  o.sweeps.push_back(std::move(spaced));
  return o;
}

Outcome check_lemmas(const RunConfig& c) {
  Outcome o;
  const Phase phase = c.phase();
  const FiniteTypeSpec spec = c.spec();
  const auto a1 = derivative_bound(phase, spec, 1);
  if (!a1) throw ConfigError("no bound for the first derivative");
  SweepReport env;
  env.experiment = "envelope";
  env.ell = c.ell;
  std::vector<RatioSample> unc;
  bool ordered = true;
  double worst = 0.0;
  for (double lambda : lambdas_or(c, {256.0, 1024.0, 4096.0})) {
    const int pmid = max_band(lambda, c.ell, *a1) / 2;
    for (int p : {0, pmid}) {
      const auto chain = weight_chain_check(c.ell, lambda, p, *a1, c.count, c.seed);
      ordered = ordered && chain.ordered;
      worst = std::max(worst, chain.worst);
    }
    const double k = std::round(std::exp2(pmid * static_cast<double>(c.ell) / (c.ell - 1)));
    const auto e = envelope_check(phase, spec, lambda, pmid, k, 2);
    o.samples.push_back(e);
    env.points.push_back({lambda, e.ratio});
    env.witnesses.push_back(e);
    const auto u = uncertainty_sweep(phase, spec, lambda, 2.0 * std::pow(lambda, 1.0 / c.ell), c.count, c.seed);
    unc.insert(unc.end(), u.begin(), u.end());
  }
  fit_report(env);
  o.samples.insert(o.samples.end(), unc.begin(), unc.end());
  o.checks.push_back({"w1 <= w2", ordered, ordered ? "pointwise" : "violated"});
  o.checks.push_back({"w2 <= C w3", worst <= 1.0, "max w2/(C w3) " + fmt(worst)});
  std::vector<double> ev;
  for (const auto& p : env.points) ev.push_back(p.value);
  o.checks.push_back({"envelope constant", spread(ev) < 4.0, "spread " + fmt(spread(ev))});
  const auto top = max_ratio(unc);
  const bool unc_ok = !top || top->ratio <= 1.0 + 1e-6;
  o.checks.push_back({"uncertainty bounds", unc_ok, top ? "max ratio " + fmt(top->ratio) : "no samples",
                      unc_ok ? std::nullopt : top});
  o.checks.push_back(no_violation("no vacuous right side", o.samples));
  o.sweeps.push_back(std::move(env));
  return o;
}

Json summary_json(const std::string& experiment, const Outcome& o, bool pass) {
  Json j;
  j["experiment"] = experiment;
  j["pass"] = pass;
  const SweepReport* primary = o.sweeps.empty() ? nullptr : &o.sweeps.front();
  const bool fitted = primary && primary->fit;
  j["slope"] = fitted ? number(primary->fit->slope) : Json(nullptr);
  j["intercept"] = fitted ? number(primary->fit->intercept) : Json(nullptr);
  j["max_residual"] = fitted ? number(primary->fit->max_residual) : Json(nullptr);
  Json sweeps = Json::array();
  for (const auto& r : o.sweeps) {
    Json s;
    s["experiment"] = r.experiment;
    s["ell"] = r.ell;
    s["slope"] = r.fit ? number(r.fit->slope) : Json(nullptr);
    s["intercept"] = r.fit ? number(r.fit->intercept) : Json(nullptr);
    s["max_residual"] = r.fit ? number(r.fit->max_residual) : Json(nullptr);
    if (!r.flag.empty()) s["flag"] = r.flag;
    Json pts = Json::array();
    for (const auto& p : r.points) pts.push_back({number(p.lambda), number(p.value)});
    s["points"] = pts;
    sweeps.push_back(s);
  }
  j["sweeps"] = sweeps;
  Json checks = Json::array();
  for (const auto& c : o.checks) {
    Json cj{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
    if (c.witness) cj["provenance"] = c.witness->provenance.describe();
    checks.push_back(cj);
  }
  j["checks"] = checks;
  if (!o.extra.empty()) j["details"] = o.extra;
  return j;
}

std::string plot(const std::string& experiment, const std::vector<SweepReport>& sweeps) {
  std::vector<svg::Series> series;
  for (const auto& r : sweeps) {
    svg::Series s;
    s.label = r.experiment + " (ell=" + std::to_string(r.ell) + ")";
    if (r.fit) s.label += ", slope " + fmt(std::round(r.fit->slope * 1e4) / 1e4);
    for (const auto& p : r.points) {
      s.x.push_back(p.lambda);
      s.y.push_back(p.value);
    }
    if (r.fit) s.fit = std::make_pair(r.fit->slope, r.fit->intercept);
    series.push_back(std::move(s));
  }
  return svg::loglog(experiment, "lambda", "value", series);
}

const std::map<std::string, std::function<Outcome(const RunConfig&)>>& dispatch() {
  static const std::map<std::string, std::function<Outcome(const RunConfig&)>> table{
      {"validate-phase", validate_phase}, {"kernel-decay", kernel_decay},   {"maximal", maximal},
      {"sweep-maximal", sweep_maximal},   {"sweep-operator", sweep_operator}, {"check-main", check_main},
      {"check-lp", check_lp},             {"check-lemmas", check_lemmas}};
  return table;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oscillatory integral and maximal function laboratory"};
  app.require_subcommand(1);
  for (const auto& name : kExperiments) app.add_subcommand(name)->fallthrough();

  std::string config_path, out_dir, kind, lambda_text, op, weight, input, kinds_text, spacing_text;
  int ell = 0, degree = 0, N = 0, weights = 0, per_weight = 0, random = 0, count = 0, per_kind = 0, kmin = 0,
      kmax = 0;
  double x0 = 0, epsilon = 0, u = 0, tol = 0, step = 0, q = 0;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON configuration file");
  auto* o_out = app.add_option("--out", out_dir, "Output directory");
  auto* o_kind = app.add_option("--kind", kind, "Phase kind: monomial or cosine");
  auto* o_ell = app.add_option("--ell", ell, "Type ell >= 2");
  auto* o_degree = app.add_option("--degree", degree, "Monomial degree (defaults to ell)");
  auto* o_x0 = app.add_option("--x0", x0, "Base point");
  auto* o_eps = app.add_option("--epsilon", epsilon, "Lower bound on the ell-th derivative");
  auto* o_u = app.add_option("--u", u, "Half-width of the cutoff support");
  auto* o_tol = app.add_option("--tol", tol, "Tolerance for vanishing derivatives");
  auto* o_lambda = app.add_option("--lambda,--lambdas", lambda_text, "lambda values: 64..4096, 16,64 or 64");
  auto* o_op = app.add_option("--op", op, "Maximal operator name, e.g. Mll:3:64");
  auto* o_weight = app.add_option("--weight", weight, "Weight kind: const, bump, spike, block, mixed");
  auto* o_input = app.add_option("--input", input, "Weight CSV (x,w)");
  auto* o_step = app.add_option("--step", step, "Grid step for the maximal experiment");
  auto* o_q = app.add_option("--q", q, "Norm exponent for maximal sweeps");
  auto* o_N = app.add_option("--N", N, "Decay order");
  auto* o_weights = app.add_option("--weights", weights, "Weights per lambda (check-main)");
  auto* o_per_weight = app.add_option("--per-weight", per_weight, "Functions per weight (check-main)");
  auto* o_random = app.add_option("--random", random, "Random inputs per lambda (sweep-operator)");
  auto* o_count = app.add_option("--count", count, "Corpus size (check-lp, check-lemmas)");
  auto* o_per_kind = app.add_option("--per-kind", per_kind, "Weights per kind (sweep-maximal)");
  auto* o_kinds = app.add_option("--kinds", kinds_text, "Weight kinds, comma separated");
  auto* o_kmin = app.add_option("--kmin", kmin, "Lowest dyadic band");
  auto* o_kmax = app.add_option("--kmax", kmax, "Highest dyadic band");
  auto* o_L = app.add_option("--L", spacing_text, "Spacings, comma separated");
  auto* o_seed = app.add_option("--seed", seed, "Corpus seed");
  auto* o_plots = app.add_flag("--plots", "Write plot-*.svg");
  auto* o_no_plots = app.add_flag("--no-plots", "Skip plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  const std::string experiment = app.get_subcommands().front()->get_name();

  Outcome outcome;
  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config " + config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      cfg = config_from_json(buf.str());
    }
    cfg.experiment = experiment;
    auto set = [](CLI::Option* opt, auto& field, const auto& value) {
      if (opt->count() > 0) field = value;
    };
    set(o_out, cfg.output, std::filesystem::path(out_dir));
    set(o_kind, cfg.kind, kind);
    set(o_ell, cfg.ell, ell);
    if (o_degree->count() > 0) cfg.degree = degree;
    if (o_x0->count() > 0) cfg.x0 = x0;
    set(o_eps, cfg.epsilon, epsilon);
    if (o_u->count() > 0) cfg.u = u;
    set(o_tol, cfg.tol, tol);
    if (o_lambda->count() > 0) cfg.lambdas = parse_lambdas(lambda_text);
    set(o_op, cfg.op, op);
    set(o_weight, cfg.weight, weight);
    set(o_input, cfg.input, input);
    if (o_step->count() > 0) cfg.step = step;
    if (o_q->count() > 0) cfg.q = q;
    set(o_N, cfg.N, N);
    set(o_weights, cfg.weights, weights);
    set(o_per_weight, cfg.per_weight, per_weight);
    set(o_random, cfg.random, random);
    set(o_count, cfg.count, count);
    set(o_per_kind, cfg.per_kind, per_kind);
    if (o_kinds->count() > 0) {
      cfg.kinds.clear();
      std::stringstream ss(kinds_text);
      for (std::string k; std::getline(ss, k, ',');) cfg.kinds.push_back(k);
    }
    set(o_kmin, cfg.kmin, kmin);
    set(o_kmax, cfg.kmax, kmax);
    if (o_L->count() > 0) cfg.spacings = parse_lambdas(spacing_text);
    set(o_seed, cfg.seed, seed);
    if (o_plots->count() > 0) cfg.emit_plots = true;
    if (o_no_plots->count() > 0) cfg.emit_plots = false;
    cfg.validate();
    outcome = dispatch().at(experiment)(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  bool pass = true;
  for (const auto& c : outcome.checks) pass = pass && c.pass;
  try {
    std::filesystem::create_directories(cfg.output);
    auto write = [&](const std::string& name, const std::string& body) {
      csv::write_file_atomic(cfg.output / name, body);
    };
    if (!outcome.samples.empty()) write("results.csv", results_csv(outcome.samples));
    if (!outcome.sweeps.empty()) write("sweep.csv", sweep_csv(outcome.sweeps));
    for (const auto& [name, body] : outcome.files) write(name, body);
    if (cfg.emit_plots && !outcome.sweeps.empty()) write("plot-" + experiment + ".svg", plot(experiment, outcome.sweeps));
    write("summary.json", summary_json(experiment, outcome, pass).dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: cannot write results: " << e.what() << '\n';
    return 2;
  }

  for (const auto& line : outcome.lines) out << line << '\n';
  for (const auto& r : outcome.sweeps) {
    if (r.fit) out << r.experiment << " slope " << fmt(r.fit->slope) << '\n';
  }
  for (const auto& c : outcome.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail;
    if (!c.pass && c.witness) out << " [" << c.witness->provenance.describe() << ']';
    out << '\n';
  }
  out << "results in " << cfg.output.string() << '\n';
  return pass ? 0 : 1;
}

}  // namespace oscillab::cli
