#include "suites.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>

#include "oracle.hpp"
#include "tnn/error.hpp"
#include "tnn/twisted_product.hpp"

namespace verify {

using namespace tnn;
using nlohmann::json;

namespace {

class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}

  void record(bool ok, const std::function<json()>& witness) {
    ++cases_;
    if (ok) return;
    ++failures_;
    if (first_.is_null()) first_ = witness();
  }
  void inconclusive(json budget) {
    ++cases_;
    ++inconclusive_;
    if (budget_.is_null()) budget_ = std::move(budget);
  }

  CheckResult result() const {
    CheckResult r{name_, Verdict::Pass, {{"cases", cases_}}};
    if (failures_ > 0) {
      r.status = Verdict::Fail;
      r.witness["failures"] = failures_;
      r.witness["counterexample"] = first_;
    } else if (inconclusive_ > 0) {
      r.status = Verdict::Inconclusive;
      r.witness["inconclusive"] = inconclusive_;
      r.witness["budget"] = budget_;
    }
    return r;
  }

 private:
  std::string name_;
  std::size_t cases_ = 0, failures_ = 0, inconclusive_ = 0;
  json first_ = nullptr;
  json budget_ = nullptr;
};

using Checks = std::vector<CheckResult>;

Context type_a(int r) { return CoxeterGroup::create(cartan_of_type(CartanFamily::A, r)); }

std::vector<Rational> sample_params(std::size_t n, std::mt19937_64& rng) {
  std::vector<Rational> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(random_positive_rational(rng));
  return p;
}

json params_json(const std::vector<Rational>& p) {
  auto j = json::array();
  for (const auto& x : p) j.push_back(x.get_str());
  return j;
}

std::string stratum_text(const WeylElt& v, const WTuple& w) { return format_element(v) + "; " + format_tuple(w); }

// ---------------------------------------------------------------------------

Checks demazure_oracle(const SuiteOptions&) {
  Checks out;
  for (auto [name, r] : {std::pair{"S3", 2}, {"S4", 3}}) {
    const auto ctx = type_a(r);
    const auto all = all_elements(ctx);
    Tally dem(std::string("demazure ") + name), circ(std::string("circ_r ") + name);
    for (const auto& x : all)
      for (const auto& y : all) {
        const auto d = demazure(x, y);
        const auto od = oracle::demazure(x, y);
        dem.record(d == od, [&] {
          return json{{"x", format_element(x)}, {"y", format_element(y)}, {"greedy", format_element(d)},
                      {"brute_force", format_element(od)}};
        });
        const auto c = circ_r(y, x);
        const auto oc = oracle::circ_r(y, x);
        circ.record(c == oc, [&] {
          return json{{"y", format_element(y)}, {"x", format_element(x)}, {"greedy", format_element(c)},
                      {"brute_force", format_element(oc)}};
        });
      }
    out.push_back(dem.result());
    out.push_back(circ.result());
  }
  return out;
}

Checks positive_subexpr(const SuiteOptions&) {
  const auto ctx = type_a(3);
  Tally unique("unique positive subexpression S4"), greedy("greedy equals enumeration S4");
  for (const auto& w : all_elements(ctx))
    for (const auto& v : lower_interval(w)) {
      const auto found = oracle::positive_subexpressions(v, w.word());
      unique.record(found.size() == 1, [&] {
        return json{{"v", format_element(v)}, {"w", format_element(w)}, {"count", found.size()}};
      });
      const auto g = positive_subexpression(v, w.word());
      greedy.record(found.size() == 1 && found.front() == g, [&] {
        return json{{"v", format_element(v)}, {"w", format_element(w)}, {"greedy", format_word(ctx->cartan(), g)}};
      });
    }
  return {unique.result(), greedy.result()};
}

Checks thickening_order(const SuiteOptions&) {
  Checks out;
  for (int r : {1, 2}) {
    const std::string tag = "A" + std::to_string(r) + " n=2";
    const auto ctx = type_a(r);
    const auto thick = thickened_context(ctx, 2);
    const auto elems = elements_up_to_length(ctx, 3);
    const auto tuples = all_tuples(elems, 2);
    Tally embed("i order " + tag), star("m_star vs th " + tag), order("tuple order vs th " + tag),
        subword("thickened Bruhat vs subword " + tag);
    for (const auto& v : elems)
      for (const auto& v2 : elems) {
        const bool lhs = bruhat_leq(v, v2);
        const bool rhs = bruhat_leq(i_embed(v, thick), i_embed(v2, thick));
        embed.record(lhs == rhs, [&] { return json{{"v", format_element(v)}, {"v2", format_element(v2)}}; });
      }
    for (const auto& w : tuples) {
      const auto tw = th(w, thick);
      const auto ms = m_star(w);
      for (const auto& v : elems) {
        const bool lhs = bruhat_leq(v, ms);
        const auto iv = i_embed(v, thick);
        const bool rhs = bruhat_leq(iv, tw);
        star.record(lhs == rhs, [&] {
          return json{{"v", format_element(v)}, {"w", format_tuple(w)}, {"fold", lhs}, {"thickened", rhs}};
        });
        subword.record(rhs == oracle::bruhat_leq(iv, tw),
                       [&] { return json{{"x", format_element(iv)}, {"y", format_element(tw)}}; });
      }
      for (const auto& w2 : tuples) {
        const bool lhs = tuple_leq(w, w2);
        const bool rhs = bruhat_leq(tw, th(w2, thick));
        order.record(lhs == rhs, [&] {
          return json{{"w", format_tuple(w)}, {"w2", format_tuple(w2)}, {"componentwise", lhs}, {"thickened", rhs}};
        });
      }
    }
    for (const auto& t : {embed, star, order, subword}) out.push_back(t.result());
  }
  return out;
}

Checks hatq(const SuiteOptions& opt) {
  const std::size_t max_rank = opt.budget.value_or(5);
  struct Case {
    std::string tag;
    Context ctx;
    std::size_t n;
  };
  std::vector<Case> cases;
  for (std::size_t n = 1; n <= 3; ++n) cases.push_back({"A1 n=" + std::to_string(n), type_a(1), n});
  for (std::size_t n = 1; n <= 2; ++n) cases.push_back({"A2 n=" + std::to_string(n), type_a(2), n});
  cases.push_back({"B2 n=1", CoxeterGroup::create(cartan_of_type(CartanFamily::B, 2)), 1});

  Checks out;
  for (const auto& c : cases) {
    Tally pure("pure " + c.tag), thin("thin " + c.tag), euler("eulerian " + c.tag),
        shell("shellable rank<=" + std::to_string(max_rank) + " " + c.tag), covers("covers drop rank by one " + c.tag),
        witness("rank-1 deletion count " + c.tag);
    const auto full = build_full(c.ctx, c.n);
    for (auto [a, b] : full.cover_pairs())
      covers.record(full.rank(b) == full.rank(a) + 1,
                    [&] { return json{{"lower", full.element(a).label}, {"upper", full.element(b).label}}; });
    for (std::size_t i = 1; i < full.size(); ++i) {
      const QNode& top = *full.element(i).node;
      const auto p = build_interval(top);
      const auto label = [&] { return json{{"top", format_qnode(top)}}; };
      const bool is_p = is_pure(p);
      pure.record(is_p, label);
      if (auto bad = thinness_violation(p))
        thin.record(false, [&] {
          return json{{"top", format_qnode(top)}, {"from", p.element(bad->first).label}, {"to", p.element(bad->second).label}};
        });
      else
        thin.record(true, label);
      if (auto bad = eulerian_violation(p))
        euler.record(false, [&] {
          return json{{"top", format_qnode(top)}, {"from", p.element(bad->first).label}, {"to", p.element(bad->second).label}};
        });
      else
        euler.record(true, label);
      if (is_p && static_cast<std::size_t>(top.rank) <= max_rank) {
        const auto sh = find_shelling(p, opt.shelling_budget);
        if (sh.status == ShellingResult::Status::Inconclusive)
          shell.inconclusive({{"top", format_qnode(top)}, {"expansions", opt.shelling_budget}});
        else
          shell.record(sh.status == ShellingResult::Status::Found, label);
      }
      if (top.rank == 1) {
        const auto del = oracle::single_deletions(top.v, top.w);
        const auto below = p.lower_covers(*p.top());
        std::vector<QNode> expect;
        if (del.count == 1) expect = {QNode::make(top.v, del.deleted[0]), QNode::make(m_star(top.w), top.w)};
        if (del.count == 2) expect = {QNode::make(top.v, del.deleted[0]), QNode::make(top.v, del.deleted[1])};
        bool ok = !expect.empty() && below.size() == 2;
        for (const auto& y : expect) ok = ok && p.find(y).has_value();
        witness.record(ok, [&] { return json{{"top", format_qnode(top)}, {"count", del.count}}; });
      }
    }
    for (const auto& t : {pure, thin, euler, shell, covers, witness}) out.push_back(t.result());
  }
  return out;
}

Checks sl2_triangle(const SuiteOptions& opt) {
  const auto ctx = sl_weyl_group(2);
  const auto e = WeylElt::identity(ctx);
  const auto s = WeylElt::simple(ctx, 0);
  const auto top = QNode::make(e, {s, s});
  const auto p = build_interval(top);
  Checks out;

  Tally fv("f-vector (3,3,1)");
  const auto f = f_vector(p);
  fv.record(f == std::vector<std::size_t>{3, 3, 1}, [&] { return json{{"f_vector", f}}; });
  out.push_back(fv.result());

  const auto ball = check_regular_ball(p, opt.shelling_budget);
  Tally chi("boundary Euler characteristic 0");
  chi.record(ball.boundary_chi == 0 && ball.cell_chi == 0,
             [&] { return json{{"order_complex", ball.boundary_chi}, {"cells", ball.cell_chi}}; });
  out.push_back(chi.result());
  CheckResult rb{"regular ball", ball.verdict, ball.witness};
  out.push_back(rb);

  std::mt19937_64 rng(opt.seed);
  const std::size_t samples = opt.budget.value_or(100);
  Tally inside("alpha of top cell satisfies 0 < a < b"), onto("every 0 < a < b is reached");
  for (std::size_t t = 0; t < samples; ++t) {
    const auto params = sample_params(2, rng);
    const auto fl = alpha(parametrize_cell(ctx, e, {s, s}, params));
    const auto a = sl2_chart(fl[0]), b = sl2_chart(fl[1]);
    inside.record(a && b && sgn(*a) > 0 && *b > *a, [&] { return json{{"params", params_json(params)}}; });
    // Conversely hit a prescribed point of the open triangle.
    const Rational x = random_positive_rational(rng);
    const Rational y = x + random_positive_rational(rng);
    const auto gl = alpha(parametrize_cell(ctx, e, {s, s}, {x, Rational(y - x)}));
    onto.record(sl2_chart(gl[0]) == x && sl2_chart(gl[1]) == y,
                [&] { return json{{"a", x.get_str()}, {"b", y.get_str()}}; });
  }
  out.push_back(inside.result());
  out.push_back(onto.result());
  return out;
}

Checks cell_param(const SuiteOptions& opt) {
  const auto ctx = sl_weyl_group(3);
  const std::size_t samples = opt.budget.value_or(25);
  std::mt19937_64 rng(opt.seed);
  Tally t("stratum of parametrize_cell A2 n=2 k=3");
  std::size_t strata = 0;
  for (const auto& w : all_tuples(all_elements(ctx), 2))
    for (const auto& v : lower_interval(m_star(w))) {
      ++strata;
      for (std::size_t i = 0; i < samples; ++i) {
        const auto params = sample_params(cell_dimension(v, w), rng);
        std::string error;
        bool ok = false;
        try {
          ok = stratum(ctx, parametrize_cell(ctx, v, w, params)) == Stratum{v, w};
        } catch (const CheckFailure& ex) {
          error = ex.what();
        }
        t.record(ok, [&] { return json{{"stratum", stratum_text(v, w)}, {"params", params_json(params)}, {"error", error}}; });
      }
    }
  auto r = t.result();
  r.witness["strata"] = strata;
  return {r};
}

Checks braid(const SuiteOptions& opt) {
  const std::size_t max_rank = opt.budget.value_or(5);
  const auto ctx = type_a(2);
  Tally pure("pure"), thin("thin"), euler("eulerian"), shell("shellable"), ball("regular ball");
  for (std::size_t len = 1; len <= 5; ++len)
    for (std::size_t code = 0; code < (std::size_t{1} << len); ++code) {
      Word letters;
      for (std::size_t k = 0; k < len; ++k) letters.push_back(static_cast<int>(code >> k & 1u));
      const auto p = braid_poset(ctx, letters);
      const auto label = [&] { return json{{"word", format_word(ctx->cartan(), letters)}}; };
      const bool is_p = is_pure(p);
      pure.record(is_p, label);
      thin.record(is_thin(p), label);
      euler.record(is_eulerian(p), label);
      const int rank = p.rank(*p.top());
      if (is_p && static_cast<std::size_t>(rank) <= max_rank) {
        const auto sh = find_shelling(p, opt.shelling_budget);
        if (sh.status == ShellingResult::Status::Inconclusive)
          shell.inconclusive({{"word", format_word(ctx->cartan(), letters)}, {"expansions", opt.shelling_budget}});
        else
          shell.record(sh.status == ShellingResult::Status::Found, label);
      }
    }
  Checks out;
  for (const auto& t : {pure, thin, euler, shell}) out.push_back(t.result());
  const auto p = braid_poset(ctx, Word{0, 1, 0, 1});
  const auto r = check_regular_ball(p, opt.shelling_budget);
  const auto f = f_vector(p);
  const auto wit = [&] { return json{{"word", "(1,2,1,2)"}, {"f_vector", f}, {"ball", r.witness}}; };
  const bool two_vertices = f == std::vector<std::size_t>{2, 1};
  if (two_vertices && r.verdict == Verdict::Inconclusive)
    ball.inconclusive(wit());
  else
    ball.record(two_vertices && r.verdict == Verdict::Pass, wit);
  auto br = ball.result();
  br.check = "(1,2,1,2) is a 1-ball with 2 vertices";
  out.push_back(br);
  return out;
}

Checks duality(const SuiteOptions& opt) {
  const auto ctx = sl_weyl_group(3);
  const std::size_t samples = opt.budget.value_or(10);
  std::mt19937_64 rng(opt.seed);
  Tally strat("stratum permutation k=3 n=2"), invol("involution on gauge classes k=3 n=2");
  for (const auto& w : all_tuples(all_elements(ctx), 2))
    for (const auto& v : lower_interval(m_star(w)))
      for (std::size_t i = 0; i < samples; ++i) {
        const auto params = sample_params(cell_dimension(v, w), rng);
        const auto z = random_gauge(parametrize_cell(ctx, v, w, params), rng);
        const auto wit = [&] { return json{{"stratum", stratum_text(v, w)}, {"params", params_json(params)}}; };
        try {
          const auto img = phi_Z(ctx, z);
          strat.record(stratum(ctx, img) == phi_stratum({v, w}), wit);
          invol.record(same_point(phi_Z(ctx, img), z), wit);
        } catch (const CheckFailure&) {
          strat.record(false, wit);
        }
      }
  return {strat.result(), invol.result()};
}

Checks double_bruhat(const SuiteOptions& opt) {
  const std::size_t samples = opt.budget.value_or(5);
  std::mt19937_64 rng(opt.seed);
  Checks out;
  for (std::size_t k : {2u, 3u}) {
    const auto ctx = sl_weyl_group(k);
    const std::string tag = "k=" + std::to_string(k);
    Tally tnn("totally nonnegative " + tag), consistent("single stratum per (v,w) " + tag),
        convention("stratum (v w0, (w, w0)) " + tag);
    const auto all = all_elements(ctx);
    for (const auto& v : all)
      for (const auto& w : all) {
        std::optional<Stratum> seen;
        bool same = true;
        for (std::size_t i = 0; i < samples; ++i) {
          const auto a = sample_params(w.length(), rng);
          const auto b = sample_params(v.length(), rng);
          const auto wit = [&] {
            return json{{"v", format_element(v)}, {"w", format_element(w)}, {"a", params_json(a)}, {"b", params_json(b)}};
          };
          RatMat g;
          try {
            g = db_positive(ctx, v.word(), w.word(), a, b);
          } catch (const CheckFailure&) {
            tnn.record(false, wit);
            continue;
          }
          tnn.record(is_tnn(g), wit);
          const auto s = stratum(ctx, double_bruhat_embed(ctx, g));
          if (seen && !(*seen == s)) same = false;
          if (!seen) seen = s;
        }
        consistent.record(same, [&] { return json{{"v", format_element(v)}, {"w", format_element(w)}}; });
        const auto expect = double_bruhat_stratum(v, w);
        convention.record(seen && *seen == expect, [&] {
          return json{{"v", format_element(v)}, {"w", format_element(w)},
                      {"observed", seen ? format_stratum(*seen) : "none"}, {"expected", format_stratum(expect)}};
        });
      }
    for (const auto& t : {tnn, consistent, convention}) out.push_back(t.result());
  }
  return out;
}

using SuiteFn = Checks (*)(const SuiteOptions&);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r{
      {"demazure-oracle", demazure_oracle}, {"positive-subexpr", positive_subexpr},
      {"thickening-order", thickening_order}, {"hatQ", hatq},
      {"sl2-triangle", sl2_triangle}, {"cell-param", cell_param},
      {"braid", braid}, {"duality", duality},
      {"double-bruhat", double_bruhat},
  };
  return r;
}

std::size_t default_budget(const std::string& name) {
  if (name == "hatQ" || name == "braid") return 5;
  if (name == "cell-param") return 25;
  if (name == "duality") return 10;
  if (name == "double-bruhat") return 5;
  if (name == "sl2-triangle") return 100;
  return 0;
}

}  // namespace

tnn::Verdict SuiteReport::overall() const {
  Verdict v = Verdict::Pass;
  for (const auto& c : checks) {
    if (c.status == Verdict::Fail) return Verdict::Fail;
    if (c.status == Verdict::Inconclusive) v = Verdict::Inconclusive;
  }
  return v;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"demazure-oracle", "positive-subexpr", "thickening-order",
                                              "hatQ",            "sl2-triangle",     "cell-param",
                                              "braid",           "duality",          "double-bruhat"};
  return names;
}

bool is_suite(const std::string& name) { return registry().count(name) > 0; }

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw InvalidArgument("unknown suite '" + name + "'");
  CheckedModeGuard checked(true);
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport r{name, it->second(options), 0, options.budget.value_or(default_budget(name))};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

nlohmann::json to_json(const CheckResult& c) {
  return {{"check", c.check}, {"status", tnn::to_string(c.status)}, {"witness", c.witness}};
}

}  // namespace verify
