#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "suites.hpp"
#include "tnn/checked.hpp"
#include "tnn/twisted_product.hpp"
#include "word_parser.hpp"

namespace cli {

using namespace tnn;
using nlohmann::json;
using verify::CheckResult;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct Report {
  std::string command;
  json inputs = json::object();
  std::uint64_t seed = kDefaultSeed;
  std::vector<CheckResult> checks;
  json extra = json::object();
  double seconds = 0;

  Verdict overall() const {
    Verdict v = Verdict::Pass;
    for (const auto& c : checks) {
      if (c.status == Verdict::Fail) return Verdict::Fail;
      if (c.status == Verdict::Inconclusive) v = Verdict::Inconclusive;
    }
    return v;
  }

  json to_json() const {
    json j{{"schema", 1}, {"command", command}, {"inputs", inputs}, {"seed", seed}};
    j["checks"] = json::array();
    for (const auto& c : checks) j["checks"].push_back(verify::to_json(c));
    j["status"] = tnn::to_string(overall());
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    j["timing"] = {{"seconds", seconds}};
    return j;
  }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw InvalidArgument("failed writing '" + path + "'");
}

WTuple tuple_of(const Context& ctx, const std::vector<Word>& words) {
  WTuple t;
  for (const auto& w : words) t.push_back(WeylElt::from_word(ctx, w));
  return t;
}

json pair_witness(const FacePoset& p, std::pair<std::size_t, std::size_t> bad) {
  return {{"interval", {p.element(bad.first).label, p.element(bad.second).label}}};
}

CheckResult shelling_check(const FacePoset& p, std::size_t budget) {
  if (!is_pure(p)) return {"shelling", Verdict::Fail, {{"reason", "poset is not pure"}}};
  const auto s = find_shelling(p, budget);
  json w{{"facets", s.facets}, {"expansions", s.expansions}, {"budget", budget}};
  switch (s.status) {
    case ShellingResult::Status::Found:
      return {"shelling", Verdict::Pass, w};
    case ShellingResult::Status::NotShellable:
      w["reason"] = "exhaustive search found no shelling order";
      return {"shelling", Verdict::Fail, w};
    case ShellingResult::Status::Inconclusive:
      break;
  }
  return {"shelling", Verdict::Inconclusive, w};
}

struct PosetArgs {
  std::string type;
  int rank = 0;
  int n = 1;
  std::string top;
  std::string checks = "pure,thin,eulerian";
  std::string dot, json_file;
  std::size_t shelling_budget = kDefaultShellingBudget;
  std::size_t node_cap = kDefaultNodeCap;
  std::uint64_t seed = kDefaultSeed;
};

Report cmd_poset(const PosetArgs& a) {
  Report r;
  r.command = "poset";
  r.seed = a.seed;
  r.inputs = {{"type", a.type}, {"rank", a.rank}, {"n", a.n}, {"top", a.top}, {"check", a.checks},
              {"shelling_budget", a.shelling_budget}, {"node_cap", a.node_cap}};
  if (a.n < 1) throw InvalidArgument("--n must be at least 1");
  const auto ctx = CoxeterGroup::create(cartan_of_type(parse_cartan_family(a.type), a.rank));
  const auto spec = parse_top_spec(ctx->cartan(), a.top);
  if (spec.w.size() != static_cast<std::size_t>(a.n))
    throw InvalidArgument("top has " + std::to_string(spec.w.size()) + " factors but --n is " + std::to_string(a.n));
  const auto top = QNode::make(WeylElt::from_word(ctx, spec.v), tuple_of(ctx, spec.w));
  const auto p = build_interval(top, a.node_cap);

  for (const auto& name : split(a.checks, ',')) {
    if (name == "pure") {
      const auto bad = purity_violation(p);
      r.checks.push_back({name, bad ? Verdict::Fail : Verdict::Pass,
                          bad ? json{{"element", p.element(*bad).label}} : json{{"rank", top.rank}}});
    } else if (name == "thin") {
      const auto bad = thinness_violation(p);
      r.checks.push_back({name, bad ? Verdict::Fail : Verdict::Pass, bad ? pair_witness(p, *bad) : json(nullptr)});
    } else if (name == "eulerian") {
      const auto bad = eulerian_violation(p);
      r.checks.push_back({name, bad ? Verdict::Fail : Verdict::Pass, bad ? pair_witness(p, *bad) : json(nullptr)});
    } else if (name == "shelling") {
      r.checks.push_back(shelling_check(p, a.shelling_budget));
    } else if (name == "ball") {
      const auto b = check_regular_ball(p, a.shelling_budget);
      json w = b.witness;
      w["boundary_chi"] = b.boundary_chi;
      w["expected_chi"] = b.expected_chi;
      w["cell_chi"] = b.cell_chi;
      r.checks.push_back({name, b.verdict, w});
    } else {
      throw InvalidArgument("unknown check '" + name + "' (expected pure, thin, eulerian, shelling or ball)");
    }
  }
  r.extra["poset"] = {{"size", p.size()}, {"rank", top.rank}, {"f_vector", f_vector(p)}};
  if (!a.dot.empty()) write_file(a.dot, to_dot(p));
  if (!a.json_file.empty()) write_file(a.json_file, to_json(p).dump(2) + "\n");
  return r;
}

struct CellArgs {
  std::size_t k = 2;
  int n = 1;
  std::string v, w;
  std::string params;
  bool has_params = false;
  std::size_t random = 0;
  std::uint64_t seed = kDefaultSeed;
};

Report cmd_cell(const CellArgs& a) {
  Report r;
  r.command = "cell";
  r.seed = a.seed;
  r.inputs = {{"k", a.k}, {"n", a.n}, {"v", a.v}, {"w", a.w}};
  if (a.has_params) r.inputs["params"] = a.params;
  if (a.random) r.inputs["random"] = a.random;
  if (a.has_params == (a.random > 0)) throw InvalidArgument("give exactly one of --params and --random");

  const auto ctx = sl_weyl_group(a.k);
  const auto v = WeylElt::from_word(ctx, parse_word(ctx->cartan(), a.v));
  const auto w = tuple_of(ctx, parse_word_list(ctx->cartan(), a.w));
  if (w.size() != static_cast<std::size_t>(a.n))
    throw InvalidArgument("--w has " + std::to_string(w.size()) + " factors but --n is " + std::to_string(a.n));
  if (!nonempty(v, w)) throw InvalidArgument("stratum " + format_stratum({v, w}) + " is empty: v is not below m_star(w)");
  const std::size_t dim = cell_dimension(v, w);

  std::vector<std::vector<Rational>> samples;
  if (a.has_params) {
    auto p = parse_rationals(a.params);
    for (const auto& x : p)
      if (sgn(x) <= 0) throw InvalidArgument("parameter " + x.get_str() + " is not positive");
    if (p.size() != dim)
      throw InvalidArgument("stratum has dimension " + std::to_string(dim) + " but " + std::to_string(p.size()) +
                            " parameters were given");
    samples.push_back(std::move(p));
  } else {
    std::mt19937_64 rng(a.seed);
    for (std::size_t s = 0; s < a.random; ++s) {
      std::vector<Rational> p;
      for (std::size_t i = 0; i < dim; ++i) p.push_back(random_positive_rational(rng));
      samples.push_back(std::move(p));
    }
  }

  CheckedModeGuard checked(true);
  const Stratum expected{v, w};
  json points = json::array();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    json params = json::array();
    for (const auto& x : samples[s]) params.push_back(x.get_str());
    const std::string name = "stratum point " + std::to_string(s + 1);
    try {
      const auto z = parametrize_cell(ctx, v, w, samples[s]);
      const auto got = stratum(ctx, z);
      json diag = json::array();
      for (const auto& g : z.factors) diag.push_back(is_tnn(g));
      points.push_back({{"params", params},
                        {"point", to_json(z)},
                        {"stratum", to_json(got)},
                        {"factors_tnn", diag},
                        {"product_tnn", is_tnn(convolution(z))}});
      if (got == expected)
        r.checks.push_back({name, Verdict::Pass, {{"stratum", format_stratum(got)}}});
      else
        r.checks.push_back({name, Verdict::Fail,
                            {{"params", params}, {"expected", format_stratum(expected)}, {"observed", format_stratum(got)}}});
    } catch (const CheckFailure& e) {
      r.checks.push_back({name, Verdict::Fail, {{"params", params}, {"error", e.what()}}});
    }
  }
  r.extra["dimension"] = dim;
  r.extra["points"] = points;
  return r;
}

struct VerifyArgs {
  std::string suite;
  std::optional<std::size_t> budget;
  std::size_t shelling_budget = kDefaultShellingBudget;
  std::uint64_t seed = kDefaultSeed;
};

Report cmd_verify(const VerifyArgs& a) {
  Report r;
  r.command = "verify";
  r.seed = a.seed;
  if (!verify::is_suite(a.suite)) {
    std::string known;
    for (const auto& s : verify::suite_names()) known += (known.empty() ? "" : ", ") + s;
    throw InvalidArgument("unknown suite '" + a.suite + "' (known: " + known + ")");
  }
  verify::SuiteOptions opt;
  opt.budget = a.budget;
  opt.seed = a.seed;
  opt.shelling_budget = a.shelling_budget;
  auto s = verify::run_suite(a.suite, opt);
  r.inputs = {{"suite", a.suite}, {"budget", s.budget}, {"shelling_budget", a.shelling_budget}};
  r.checks = std::move(s.checks);
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Totally nonnegative flag varieties: face posets, cells and verification suites", "tnnflag"};
  app.require_subcommand(1);

  PosetArgs pa;
  auto* poset = app.add_subcommand("poset", "Build the face poset [0hat, top] and run checks");
  poset->add_option("type", pa.type, "Cartan type: A, B, C, D or affine-A")->required();
  poset->add_option("rank", pa.rank, "Rank of the Cartan type")->required();
  poset->add_option("--n", pa.n, "Number of factors")->capture_default_str();
  poset->add_option("--top", pa.top, "Top element \"v;w1,...,wn\", e.g. \"e;(1),(1)\"")->required();
  poset->add_option("--check", pa.checks, "Comma-separated: pure,thin,eulerian,shelling,ball")->capture_default_str();
  poset->add_option("--dot", pa.dot, "Write the Hasse diagram as DOT");
  poset->add_option("--json", pa.json_file, "Write the poset as JSON");
  poset->add_option("--shelling-budget", pa.shelling_budget, "Search expansions per shelling")->capture_default_str();
  poset->add_option("--node-cap", pa.node_cap, "Maximal poset size")->capture_default_str();
  poset->add_option("--seed", pa.seed, "Random seed (recorded in the report)")->capture_default_str();

  CellArgs ca;
  auto* cell = app.add_subcommand("cell", "Parametrize a positive cell of the twisted product and check its stratum");
  cell->add_option("--k", ca.k, "Matrix size (SL_k)")->capture_default_str();
  cell->add_option("--n", ca.n, "Number of factors")->capture_default_str();
  cell->add_option("--v", ca.v, "Word for v, e.g. \"(1,2)\" or \"\"")->required();
  cell->add_option("--w", ca.w, "Words for w1..wn, e.g. \"(1);(2,1)\"")->required();
  auto* params = cell->add_option("--params", ca.params, "Positive rationals, e.g. 3/2,1");
  auto* random = cell->add_option("--random", ca.random, "Number of random parameter vectors");
  params->excludes(random);
  cell->add_option("--seed", ca.seed, "Random seed")->capture_default_str();

  VerifyArgs va;
  std::string suite_help = "Suite:";
  for (const auto& s : verify::suite_names()) suite_help += " " + s;
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", va.suite, suite_help)->required();
  ver->add_option("--budget", va.budget, "Suite budget (maximal shelled rank, or samples per stratum)");
  ver->add_option("--shelling-budget", va.shelling_budget, "Search expansions per shelling")->capture_default_str();
  ver->add_option("--seed", va.seed, "Random seed")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  ca.has_params = params->count() > 0;

  Report report;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*poset)
      report = cmd_poset(pa);
    else if (*cell)
      report = cmd_cell(ca);
    else
      report = cmd_verify(va);
  } catch (const CheckFailure& e) {
    err << "check failure: " << e.what() << "\n";
    return kExitCheckFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out << report.to_json().dump(2) << "\n";
  return report.overall() == Verdict::Fail ? kExitCheckFailure : kExitPass;
}

}  // namespace cli
