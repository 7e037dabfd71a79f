#include "cli.hpp"

#include "ctl/bourgain.hpp"
#include "ctl/catalog.hpp"
#include "ctl/decomposition.hpp"
#include "ctl/errors.hpp"
#include "ctl/influence.hpp"
#include "ctl/lattice.hpp"
#include "ctl/monte_carlo.hpp"
#include "ctl/parallel.hpp"
#include "ctl/threshold.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace ctl::cli {

namespace {

using Json = nlohmann::ordered_json;

// All flags of all subcommands; each subcommand registers the ones it reads.
struct Args {
  std::string fn;
  std::string p = "1/2";
  std::string format;
  std::string out;
  unsigned threads = 0;
  unsigned size_cap = 0;
  std::string eps;
  std::string m_threshold;
  std::string delta_prime;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  std::string grid;
  double tolerance = kDefaultBisectionTolerance;
  unsigned coordinate = 1;
  unsigned support_cap = kDefaultSupportCap;
  std::string quantity = "expectation";
  int max_level = -1;
  bool range01 = false;
  bool force_sampling = false;
};

// 12 significant digits; non-finite values become null.
Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  if (v == 0.0) return 0.0;
  return std::stod(format_decimal(v));
}

Json number(const Rational& r) { return number(to_double(r)); }

void put_rational(Json& j, const std::string& key, const Rational& r) {
  j[key] = to_string(r);
  j[key + "_decimal"] = number(r);
}

Json subset_json(Mask subset) {
  Json a = Json::array();
  for (unsigned c : subset_coordinates(subset)) a.push_back(c);
  return a;
}

Json estimate_json(const Estimate& e) {
  Json j;
  j["mean"] = number(e.mean);
  j["stderr"] = number(e.stderr_);
  j["ci_low"] = number(e.ci_low);
  j["ci_high"] = number(e.ci_high);
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  j["undecided"] = e.undecided;
  return j;
}

Rational parse_probability_literal(const std::string& text, bool& exact) {
  const ParsedRational parsed = parse_rational(text);
  exact = parsed.exact_literal;
  return parsed.value;
}

double parse_positive(const std::string& text, const char* what) {
  const double v = to_double(parse_rational(text).value);
  if (!(v > 0.0)) throw DomainError(std::string(what) + " must be positive");
  return v;
}

// Per-run context: the function, the resolved p and the config echo.
class Context {
 public:
  Context(const Args& args, CLI::App* sub) : args_(args), sub_(sub) {}

  bool given(const char* flag) const { return sub_->count(flag) > 0; }
  Json& config() { return config_; }

  const FunctionSpec& spec() {
    if (!spec_) {
      spec_ = parse_function_spec(args_.fn);
      config_["fn"] = canonical_name(*spec_);
    }
    return *spec_;
  }

  const BooleanFunction& table() {
    if (!table_) table_ = build(spec());
    return *table_;
  }

  const BiasedMeasure& measure() {
    if (measure_) return *measure_;
    Json echo;
    echo["literal"] = args_.p;
    Rational value;
    if (args_.p == "critical") {
      const CriticalProbability cp = critical_probability(table(), args_.tolerance);
      value = cp.midpoint;
      echo["exact_literal"] = false;
      echo["critical_tolerance"] = number(args_.tolerance);
    } else {
      bool exact = true;
      value = parse_probability_literal(args_.p, exact);
      echo["exact_literal"] = exact;
    }
    echo["value"] = to_string(value);
    echo["decimal"] = number(value);
    measure_.emplace(value);
    config_["p"] = echo;
    return *measure_;
  }

  SamplingOptions sampling() {
    if (args_.samples < 2) throw DomainError("--samples must be at least 2");
    config_["samples"] = args_.samples;
    config_["seed"] = args_.seed;
    return {args_.samples, args_.seed, resolve_threads(args_.threads)};
  }

  Rational total_influence_value() {
    if (!influence_) influence_ = total_influence(table(), measure());
    return *influence_;
  }

  // --B, or ceil(10 C) from the exact total influence.
  unsigned size_cap() {
    unsigned b = args_.size_cap;
    const bool defaulted = !given("--B");
    if (defaulted) b = default_size_cap(total_influence_value());
    if (b < 1) throw DomainError("--B must be >= 1");
    config_["B"] = b;
    config_["B_defaulted"] = defaulted;
    return b;
  }

 private:
  const Args& args_;
  CLI::App* sub_;
  Json config_ = Json::object();
  std::optional<FunctionSpec> spec_;
  std::optional<BooleanFunction> table_;
  std::optional<BiasedMeasure> measure_;
  std::optional<Rational> influence_;
};

// ---------------------------------------------------------------------------
// Subcommands. Each fills the report and extends the config echo.

Json run_spectrum(const Args& args, Context& ctx) {
  const BooleanFunction& f = ctx.table();
  const Spectrum s = transform(f, ctx.measure());
  const unsigned n = f.arity();
  const unsigned max_level = args.max_level < 0 ? n : std::min<unsigned>(n, static_cast<unsigned>(args.max_level));
  ctx.config()["max_level"] = max_level;

  Json r;
  r["n"] = n;
  r["r0"] = number(s.r0());
  r["r1"] = number(s.r1());
  r["squared_norm"] = number(s.squared_norm());
  std::vector<double> levels(n + 1, 0.0);
  Json coeffs = Json::array();
  for (std::uint64_t raw = 0; raw < f.size(); ++raw) {
    const auto subset = static_cast<Mask>(raw);
    const unsigned k = popcount(subset);
    const double c = s.coefficient(subset);
    levels[k] += c * c;
    if (k > max_level) continue;
    Json e;
    e["subset"] = subset_json(subset);
    e["size"] = k;
    e["value"] = number(c);
    coeffs.push_back(std::move(e));
  }
  Json lv = Json::array();
  for (double w : levels) lv.push_back(number(w));
  r["level_weights"] = lv;
  r["coefficients"] = coeffs;
  return r;
}

Json run_influence(Context& ctx) {
  const BooleanFunction& f = ctx.table();
  const InfluenceReport rep = influence_report(f, ctx.measure());
  Json r;
  r["n"] = f.arity();
  Json coords = Json::array();
  for (unsigned i = 0; i < f.arity(); ++i) {
    Json c;
    c["i"] = i + 1;
    put_rational(c, "influence", rep.influence[i]);
    c["spectral"] = number(rep.spectral[i]);
    put_rational(c, "pivotal", rep.pivotal[i]);
    coords.push_back(std::move(c));
  }
  r["coordinates"] = coords;
  put_rational(r, "total", rep.total);
  r["spectral_total"] = number(rep.spectral_total);
  return r;
}

std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> grid;
  if (text.empty()) {
    for (int k = 1; k < 20; ++k) {
      grid.emplace_back(k, 20);
      grid.back().canonicalize();
    }
    return grid;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Rational v = parse_rational(item).value;
    if (v <= 0 || v >= 1) throw DomainError("grid point " + item + " is outside (0,1)");
    grid.push_back(v);
  }
  if (grid.empty()) throw ParseError("--grid is empty");
  return grid;
}

Json run_threshold_curve(const Args& args, Context& ctx) {
  const BooleanFunction& f = ctx.table();
  const std::vector<Rational> grid = parse_grid(args.grid);
  Json echo = Json::array();
  for (const auto& g : grid) echo.push_back(to_string(g));
  ctx.config()["grid"] = echo;
  ctx.config()["range01"] = args.range01;

  const Polynomial poly = threshold_polynomial(f);
  const Polynomial deriv = poly.derivative();
  Json r;
  r["n"] = f.arity();
  r["monotone"] = is_monotone(f);
  Json coeffs = Json::array();
  for (const auto& c : poly.coefficients()) coeffs.push_back(to_string(c));
  r["polynomial"] = coeffs;
  Json rows = Json::array();
  for (const auto& p : grid) {
    const BiasedMeasure measure(p);
    const Rational prob = poly(p);
    const Rational slope = deriv(p);
    Rational influence = total_influence(f, measure);
    Rational lhs = 4 * p * measure.q() * slope;
    if (args.range01) {
      influence /= 4;
      lhs /= 4;
    }
    Json row;
    put_rational(row, "p", p);
    put_rational(row, "prob_one", prob);
    put_rational(row, "derivative", slope);
    put_rational(row, "total_influence", influence);
    row["russo_residual"] = to_string(Rational(lhs - influence));
    rows.push_back(std::move(row));
  }
  r["rows"] = rows;
  return r;
}

Json run_critical_p(const Args& args, Context& ctx) {
  const BooleanFunction& f = ctx.table();
  ctx.config()["tolerance"] = number(args.tolerance);
  const CriticalProbability cp = critical_probability(f, args.tolerance);
  const BiasedMeasure at(cp.midpoint);
  Json r;
  r["critical_p"] = number(cp.midpoint);
  r["lower"] = to_string(cp.lower);
  r["upper"] = to_string(cp.upper);
  r["midpoint"] = to_string(cp.midpoint);
  r["iterations"] = cp.iterations;
  r["exact"] = cp.exact;
  r["prob_one_at_midpoint"] = number(threshold_polynomial(f)(cp.midpoint));
  r["total_influence_at_midpoint"] = number(total_influence(f, at));
  return r;
}

Json run_russo_check(Context& ctx) {
  const BooleanFunction& f = ctx.table();
  const RussoCheck c = margulis_russo_check(f, ctx.measure());
  const Polynomial poly = threshold_polynomial(f);
  Json r;
  put_rational(r, "prob_one", poly(c.p));
  put_rational(r, "derivative", poly.derivative()(c.p));
  put_rational(r, "lhs", c.lhs);
  put_rational(r, "rhs", c.rhs);
  r["equal"] = c.equal;
  r["ratio"] = c.ratio ? Json(to_string(*c.ratio)) : Json(nullptr);
  put_rational(r, "lhs_zero_one", c.lhs_zero_one);
  put_rational(r, "rhs_zero_one", c.rhs_zero_one);
  return r;
}

Json run_bourgain_lhs(const Args& args, Context& ctx) {
  const BooleanFunction& f = ctx.table();
  const BiasedMeasure& measure = ctx.measure();
  const unsigned b = ctx.size_cap();
  ctx.config()["force_sampling"] = args.force_sampling;
  const SamplingOptions options = ctx.sampling();
  const TheoremReport t = theorem_report(f, measure, b, options, args.force_sampling);
  const LevelMass lm = level_mass(transform(f, measure), b);

  Json r;
  put_rational(r, "total_influence", t.total_influence);
  r["size_cap"] = t.size_cap;
  put_rational(r, "balanced_defect", t.balanced_defect);
  r["method"] = t.lhs ? "exact" : "monte-carlo";
  if (t.lhs) {
    put_rational(r, "lhs", *t.lhs);
  } else {
    r["lhs"] = nullptr;
    r["lhs_decimal"] = number(t.lhs_estimate->mean);
  }
  r["estimate"] = t.lhs_estimate ? estimate_json(*t.lhs_estimate) : Json(nullptr);
  Json l;
  l["level_mass"] = number(lm.level_mass);
  l["tail"] = number(lm.tail);
  l["tail_bound"] = number(lm.tail_bound);
  l["tail_ok"] = lm.tail_ok;
  r["spectral"] = l;
  return r;
}

// Truth table when the function fits, otherwise nothing.
std::optional<BooleanFunction> try_table(Context& ctx) {
  try {
    return ctx.table();
  } catch (const CapacityError&) {
    return std::nullopt;
  }
}

Json run_witness_prob(const Args& args, Context& ctx) {
  const FunctionSpec& spec = ctx.spec();
  const auto table = try_table(ctx);
  if (!table && !ctx.given("--B")) throw DomainError("--B is required when the function has no truth table");
  const BiasedMeasure& measure = ctx.measure();
  const unsigned b = ctx.size_cap();
  const bool sample = ctx.given("--samples") || !table;

  Json r;
  r["size_cap"] = b;
  if (table) {
    put_rational(r, "exact", witness_probability(*table, measure, b));
  } else {
    r["exact"] = nullptr;
    r["exact_decimal"] = nullptr;
  }
  if (sample) {
    const SamplingOptions options = ctx.sampling();
    ctx.config()["support_cap"] = args.support_cap;
    const FunctionOracle oracle = table ? table_oracle(*table) : build_oracle(spec);
    r["estimate"] = estimate_json(estimate_witness_probability(oracle, measure, b, options, args.support_cap));
  } else {
    r["estimate"] = nullptr;
  }
  return r;
}

Rational resolve_delta_prime(const Args& args, Context& ctx, unsigned b) {
  Rational d;
  const bool defaulted = !ctx.given("--delta-prime");
  if (defaulted) {
    d = junta_max_expectation(ctx.table(), ctx.measure(), b) / 2;
  } else {
    d = parse_rational(args.delta_prime).value;
    if (d < 0) throw DomainError("--delta-prime must be non-negative");
  }
  ctx.config()["delta_prime"] = to_string(d);
  ctx.config()["delta_prime_defaulted"] = defaulted;
  return d;
}

Json boosters_json(const BooleanFunction& f, const std::vector<Booster>& boosters) {
  Json list = Json::array();
  for (const auto& b : boosters) {
    Json e;
    e["subset"] = subset_json(b.subset);
    put_rational(e, "boost", b.boost);
    e["f_value"] = f(b.subset);
    list.push_back(std::move(e));
  }
  return list;
}

Json run_booster_search(const Args& args, Context& ctx) {
  const BooleanFunction& f = ctx.table();
  const BiasedMeasure& measure = ctx.measure();
  const unsigned b = ctx.size_cap();
  const Rational d = resolve_delta_prime(args, ctx, b);
  const auto boosters = booster_search(f, measure, b, d);
  Json r;
  r["size_cap"] = b;
  put_rational(r, "delta_prime", d);
  r["count"] = boosters.size();
  r["boosters"] = boosters_json(f, boosters);
  return r;
}

Json run_corollary_check(const Args& args, Context& ctx) {
  const BooleanFunction& f = ctx.table();
  const BiasedMeasure& measure = ctx.measure();
  CorollaryOptions options;
  options.size_cap = ctx.size_cap();
  options.delta_prime = resolve_delta_prime(args, ctx, *options.size_cap);
  const CorollaryReport c = corollary_check(f, measure, options);
  Json r;
  put_rational(r, "total_influence", c.total_influence);
  r["size_cap"] = c.size_cap;
  put_rational(r, "delta_prime", c.delta_prime);
  put_rational(r, "expectation", c.expectation);
  r["balanced"] = c.balanced;
  r["small_p"] = c.small_p;
  r["hypotheses_hold"] = c.hypotheses_hold;
  put_rational(r, "witness_probability", c.witness_probability);
  r["alternative1"] = c.alternative1;
  r["boosters"] = boosters_json(f, c.boosters);
  r["alternative2"] = c.alternative2;
  r["at_least_one"] = c.at_least_one;
  return r;
}

Json run_proof_diagnostics(const Args& args, Context& ctx) {
  const BooleanFunction& f = ctx.table();
  const BiasedMeasure& measure = ctx.measure();
  const unsigned b = ctx.size_cap();
  double eps = 0.0;
  double m = 0.0;
  if (!ctx.given("--eps") || !ctx.given("--M")) {
    const DefaultParameters d = default_parameters(ctx.total_influence_value());
    eps = to_double(d.epsilon);
    m = d.m_threshold.get_d();
  }
  if (ctx.given("--eps")) eps = parse_positive(args.eps, "--eps");
  if (ctx.given("--M")) m = parse_positive(args.m_threshold, "--M");
  ctx.config()["eps"] = number(eps);
  ctx.config()["M"] = number(m);

  const DiagnosticsReport d = proof_diagnostics(f, measure, b, eps, m);
  Json r;
  r["epsilon"] = number(d.epsilon);
  r["m_threshold"] = number(d.m_threshold);
  r["size_cap"] = d.size_cap;
  r["q"] = number(d.q);
  r["q_prime"] = number(d.q_prime);
  r["level_mass"] = number(d.level_mass);
  r["term1"] = number(d.term1);
  r["term2"] = number(d.term2);
  r["term3"] = number(d.term3);
  r["total_influence"] = number(d.total_influence);
  r["expected_eta_sum"] = number(d.expected_eta_sum);
  r["expected_one_minus_xi"] = number(d.expected_one_minus_xi);
  r["expected_h_sum"] = number(d.expected_h_sum);
  r["h_norm4"] = number(d.h_norm4);
  r["max_component_sq"] = number(d.max_component_sq);
  r["weighted_max_count"] = number(d.weighted_max_count);
  r["max_active_count"] = number(d.max_active_count);
  r["counting_bound_log2"] = number(d.counting_bound_log2);
  Json checks;
  checks["split"] = d.split_ok;
  checks["markov_count"] = d.markov_count_ok;
  checks["markov_square"] = d.markov_square_ok;
  checks["markov_influence"] = d.markov_influence_ok;
  checks["counting"] = d.counting_ok;
  checks["cauchy_schwarz"] = d.cauchy_schwarz_ok;
  checks["holder"] = d.holder_ok;
  checks["term3"] = d.term3_ok;
  r["checks"] = checks;
  Json coords = Json::array();
  for (std::size_t i = 0; i < d.coordinates.size(); ++i) {
    const auto& c = d.coordinates[i];
    Json e;
    e["i"] = i + 1;
    e["h_second_moment"] = number(c.h_second_moment);
    e["h_q_moment"] = number(c.h_q_moment);
    e["laplacian_q_moment"] = number(c.laplacian_q_moment);
    e["influence"] = number(c.influence);
    e["eta_mean"] = number(c.eta_mean);
    coords.push_back(std::move(e));
  }
  r["coordinates"] = coords;
  return r;
}

Json run_mc_estimate(const Args& args, Context& ctx) {
  const FunctionSpec& spec = ctx.spec();
  const std::string& quantity = args.quantity;
  ctx.config()["quantity"] = quantity;
  Json r;
  r["quantity"] = quantity;
  if (quantity == "junta") {
    const BooleanFunction& f = ctx.table();
    const BiasedMeasure& measure = ctx.measure();
    const unsigned b = ctx.size_cap();
    r["size_cap"] = b;
    r["estimate"] = estimate_json(junta_max_expectation_mc(transform(f, measure), b, ctx.sampling()));
    return r;
  }
  const BiasedMeasure& measure = ctx.measure();
  const FunctionOracle oracle = build_oracle(spec);
  if (quantity == "expectation") {
    r["estimate"] = estimate_json(estimate_expectation(oracle, measure, ctx.sampling()));
  } else if (quantity == "influence") {
    if (args.coordinate < 1 || args.coordinate > oracle.arity()) throw DomainError("--i is outside 1..n");
    ctx.config()["i"] = args.coordinate;
    r["i"] = args.coordinate;
    r["estimate"] = estimate_json(estimate_influence_pivotal(oracle, measure, args.coordinate, ctx.sampling()));
  } else {
    if (!ctx.given("--B")) throw DomainError("--B is required for --quantity witness");
    const unsigned b = ctx.size_cap();
    ctx.config()["support_cap"] = args.support_cap;
    r["size_cap"] = b;
    r["estimate"] =
        estimate_json(estimate_witness_probability(oracle, measure, b, ctx.sampling(), args.support_cap));
  }
  return r;
}

Json run_catalog_list() {
  Json r;
  Json list = Json::array();
  for (const auto& fam : catalog_families()) {
    Json e;
    e["name"] = fam.name;
    e["parameters"] = fam.parameters;
    e["monotone"] = fam.monotone;
    e["description"] = fam.description;
    list.push_back(std::move(e));
  }
  r["families"] = list;
  return r;
}

// ---------------------------------------------------------------------------
// CSV rendering.

std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_null()) {
    s = "";
  } else if (v.is_number_float()) {
    s = format_decimal(v.get<double>());
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + csv_cell(v[i]);
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  }
  return s;
}

void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  if (v.is_object()) {
    for (const auto& [k, child] : v.items()) flatten(child, prefix.empty() ? k : prefix + "." + k, out);
  } else if (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array())) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i + 1), out);
  } else {
    out.emplace_back(prefix, v);
  }
}

void write_table(std::ostream& os, const std::vector<std::string>& columns, const Json& rows) {
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << csv_cell(row[columns[c]]);
    os << '\n';
  }
}

void write_csv(std::ostream& os, const std::string& command, const Json& config, const Json& report) {
  os << "# command=" << command << '\n';
  std::vector<std::pair<std::string, Json>> flat;
  flatten(config, "", flat);
  for (const auto& [k, v] : flat) os << "# " << k << '=' << csv_cell(v) << '\n';

  if (command == "threshold-curve") {
    // Decimal columns for plotting; the residual stays exact.
    os << "p,prob_one,derivative,total_influence,russo_residual\n";
    for (const auto& row : report["rows"]) {
      os << csv_cell(row["p_decimal"]) << ',' << csv_cell(row["prob_one_decimal"]) << ','
         << csv_cell(row["derivative_decimal"]) << ',' << csv_cell(row["total_influence_decimal"]) << ','
         << csv_cell(row["russo_residual"]) << '\n';
    }
  } else if (command == "influence") {
    write_table(os, {"i", "influence", "influence_decimal", "spectral", "pivotal"}, report["coordinates"]);
  } else if (command == "spectrum") {
    write_table(os, {"subset", "size", "value"}, report["coefficients"]);
  } else if (command == "catalog-list") {
    write_table(os, {"name", "parameters", "monotone", "description"}, report["families"]);
  } else {
    flat.clear();
    flatten(report, "", flat);
    os << "key,value\n";
    for (const auto& [k, v] : flat) os << csv_cell(Json(k)) << ',' << csv_cell(v) << '\n';
  }
}

// ---------------------------------------------------------------------------

struct Command {
  std::string name;
  std::string description;
  CLI::App* app = nullptr;
};

void add_common(CLI::App* sub, Args& a, bool needs_fn, bool needs_p) {
  if (needs_fn) sub->add_option("--fn", a.fn, "function spec, e.g. majority:5 or table:f.bft")->required();
  if (needs_p) sub->add_option("--p", a.p, "bias: a/b, decimal, or 'critical'")->capture_default_str();
  sub->add_option("--format", a.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", a.out, "write the report to this file");
  sub->add_option("--threads", a.threads, "worker threads (default: CTL_THREADS, else all cores)");
}

void add_sampling(CLI::App* sub, Args& a) {
  sub->add_option("--samples", a.samples, "number of samples")->capture_default_str();
  sub->add_option("--seed", a.seed, "RNG seed")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Coarse-threshold analysis of Boolean functions on the p-biased cube", "ctl"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::vector<Command> commands = {
      {"spectrum", "p-biased Fourier coefficients"},
      {"influence", "coordinate and total influences, exact and spectral"},
      {"threshold-curve", "P_p[f = 1], its derivative and the total influence over a p grid"},
      {"critical-p", "p at which P_p[f = 1] = 1/2 by exact bisection"},
      {"russo-check", "exact check of 4 p q P'(p) = I[f]"},
      {"bourgain-lhs", "junta-max expectation E[max_{0<|S|<=B} |f^{subseteq S}(x)|]"},
      {"witness-prob", "probability of a witness of size <= B"},
      {"booster-search", "sets S' with f(1_S') = -1 and boost > delta'"},
      {"corollary-check", "witness-or-booster dichotomy for a monotone function"},
      {"proof-diagnostics", "terms and inequalities of the lower-bound argument"},
      {"mc-estimate", "Monte Carlo estimates against an evaluation oracle"},
      {"catalog-list", "list the function families"},
  };
  for (auto& c : commands) c.app = app.add_subcommand(c.name, c.description);
  auto sub = [&](const std::string& name) {
    for (auto& c : commands) {
      if (c.name == name) return c.app;
    }
    return static_cast<CLI::App*>(nullptr);
  };

  add_common(sub("spectrum"), a, true, true);
  sub("spectrum")->add_option("--max-level", a.max_level, "only list coefficients with |S| <= this");
  add_common(sub("influence"), a, true, true);
  add_common(sub("threshold-curve"), a, true, false);
  sub("threshold-curve")->add_option("--grid", a.grid, "comma-separated p values (default k/20, k = 1..19)");
  sub("threshold-curve")->add_flag("--range01", a.range01, "report influence in the 0/1 range (I[f]/4)");
  add_common(sub("critical-p"), a, true, false);
  for (const char* name : {"critical-p", "spectrum", "influence", "russo-check", "bourgain-lhs", "witness-prob",
                           "booster-search", "corollary-check", "proof-diagnostics", "mc-estimate"}) {
    sub(name)->add_option("--tolerance", a.tolerance, "bisection width for p = critical")->capture_default_str();
  }
  add_common(sub("russo-check"), a, true, true);
  add_common(sub("bourgain-lhs"), a, true, true);
  sub("bourgain-lhs")->add_option("--B", a.size_cap, "size cap (default ceil(10 C))");
  sub("bourgain-lhs")->add_flag("--mc", a.force_sampling, "sample even when the exact path is available");
  add_sampling(sub("bourgain-lhs"), a);
  add_common(sub("witness-prob"), a, true, true);
  sub("witness-prob")->add_option("--B", a.size_cap, "size cap (default ceil(10 C))");
  sub("witness-prob")->add_option("--support-cap", a.support_cap, "exhaustive witness search up to this support")->capture_default_str();
  add_sampling(sub("witness-prob"), a);
  for (const char* name : {"booster-search", "corollary-check"}) {
    add_common(sub(name), a, true, true);
    sub(name)->add_option("--B", a.size_cap, "size cap (default ceil(10 C))");
    sub(name)->add_option("--delta-prime", a.delta_prime, "threshold delta' (default junta-max / 2)");
  }
  add_common(sub("proof-diagnostics"), a, true, true);
  sub("proof-diagnostics")->add_option("--B", a.size_cap, "size cap (default ceil(10 C))");
  sub("proof-diagnostics")->add_option("--eps", a.eps, "epsilon (default 2^(-ceil(C)-2))");
  sub("proof-diagnostics")->add_option("--M", a.m_threshold, "M (default ceil(4/epsilon))");
  add_common(sub("mc-estimate"), a, true, true);
  sub("mc-estimate")
      ->add_option("--quantity", a.quantity, "expectation, influence, witness or junta")->capture_default_str()
      ->check(CLI::IsMember({"expectation", "influence", "witness", "junta"}));
  sub("mc-estimate")->add_option("--i", a.coordinate, "coordinate for --quantity influence")->capture_default_str();
  sub("mc-estimate")->add_option("--B", a.size_cap, "size cap for witness or junta");
  sub("mc-estimate")->add_option("--support-cap", a.support_cap, "exhaustive witness search up to this support")->capture_default_str();
  add_sampling(sub("mc-estimate"), a);
  add_common(sub("catalog-list"), a, false, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const Command* chosen = nullptr;
  for (const auto& c : commands) {
    if (c.app->parsed()) chosen = &c;
  }
  const std::string& name = chosen->name;
  Context ctx(a, chosen->app);
  try {
    Json report;
    if (name == "spectrum") report = run_spectrum(a, ctx);
    else if (name == "influence") report = run_influence(ctx);
    else if (name == "threshold-curve") report = run_threshold_curve(a, ctx);
    else if (name == "critical-p") report = run_critical_p(a, ctx);
    else if (name == "russo-check") report = run_russo_check(ctx);
    else if (name == "bourgain-lhs") report = run_bourgain_lhs(a, ctx);
    else if (name == "witness-prob") report = run_witness_prob(a, ctx);
    else if (name == "booster-search") report = run_booster_search(a, ctx);
    else if (name == "corollary-check") report = run_corollary_check(a, ctx);
    else if (name == "proof-diagnostics") report = run_proof_diagnostics(a, ctx);
    else if (name == "mc-estimate") report = run_mc_estimate(a, ctx);
    else report = run_catalog_list();

    const std::string format = a.format.empty() ? (name == "threshold-curve" ? "csv" : "json") : a.format;
    Json config;
    for (const char* key : {"fn", "p"}) {
      if (ctx.config().contains(key)) config[key] = ctx.config()[key];
    }
    for (const auto& [k, v] : ctx.config().items()) {
      if (k != "fn" && k != "p") config[k] = v;
    }
    config["format"] = format;
    config["output"] = a.out.empty() ? "stdout" : a.out;

    std::ostringstream text;
    if (format == "json") {
      Json envelope;
      envelope["command"] = name;
      envelope["config"] = config;
      envelope["report"] = report;
      text << envelope.dump(2) << '\n';
    } else {
      write_csv(text, name, config, report);
    }
    if (a.out.empty()) {
      out << text.str();
    } else {
      std::ofstream file(a.out, std::ios::binary);
      if (!file || !(file << text.str())) {
        err << "error: cannot write " << a.out << '\n';
        return kExitDomain;
      }
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n\n" << chosen->app->help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace ctl::cli
