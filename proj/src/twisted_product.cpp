#include "tnn/twisted_product.hpp"

#include <algorithm>

#include "tnn/error.hpp"

namespace tnn {

namespace {

void check_point(const Context& ctx, const ZPoint& z) {
  if (z.factors.empty()) throw InvalidArgument("twisted-product point needs at least one factor");
  const std::size_t k = sl_dimension(ctx);
  for (const auto& g : z.factors) {
    if (g.dim() != k) throw InvalidArgument("factor size does not match SL_" + std::to_string(k));
    if (!g.invertible()) throw InvalidArgument("factor is singular");
  }
}

}  // namespace

std::string format_stratum(const Stratum& s) { return "(" + format_element(s.v) + "; " + format_tuple(s.w) + ")"; }

Stratum stratum(const Context& ctx, const ZPoint& z) {
  check_point(ctx, z);
  Stratum s{opposite_cell(ctx, convolution(z)), {}};
  for (const auto& g : z.factors) s.w.push_back(bruhat_cell(ctx, g));
  return s;
}

bool nonempty(const WeylElt& v, const WTuple& w) { return bruhat_leq(v, m_star(w)); }

std::size_t cell_dimension(const WeylElt& v, const WTuple& w) { return tuple_length(w) - v.length(); }

ZPoint parametrize_cell(const Context& ctx, const WeylElt& v, const WTuple& w, const std::vector<Word>& words,
                        const std::vector<Rational>& params) {
  require_tuple(w);
  require_same_context(v, w.front());
  if (v.context() != ctx) throw ContextMismatch("elements do not belong to the given Weyl group");
  if (words.size() != w.size()) throw InvalidArgument("need one reduced word per factor");
  if (!nonempty(v, w)) throw InvalidArgument("stratum " + format_element(v) + "; " + format_tuple(w) + " is empty");
  if (params.size() != cell_dimension(v, w))
    throw InvalidArgument("expected " + std::to_string(cell_dimension(v, w)) + " parameters, got " +
                          std::to_string(params.size()));
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!(WeylElt::from_word(ctx, words[i]) == w[i]) || words[i].size() != w[i].length())
      throw InvalidArgument("word " + std::to_string(i + 1) + " is not a reduced word of its factor");

  const WTuple vbar = positive_tuple(v, w);
  ZPoint z;
  std::size_t next = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Word sub = positive_subexpression(vbar[i], words[i]);
    const auto count = static_cast<std::size_t>(std::count(sub.begin(), sub.end(), kOne));
    std::vector<Rational> slice(params.begin() + static_cast<long>(next),
                                params.begin() + static_cast<long>(next + count));
    next += count;
    z.factors.push_back(mr_matrix(ctx, words[i], sub, slice));
  }
  if (checked_mode() && !(stratum(ctx, z) == Stratum{v, w}))
    throw CheckFailure("cell point for " + format_stratum({v, w}) + " landed in " + format_stratum(stratum(ctx, z)));
  return z;
}

ZPoint parametrize_cell(const Context& ctx, const WeylElt& v, const WTuple& w, const std::vector<Rational>& params) {
  std::vector<Word> words;
  for (const auto& x : w) words.push_back(x.word());
  return parametrize_cell(ctx, v, w, words, params);
}

RatMat convolution(const ZPoint& z) {
  if (z.factors.empty()) throw InvalidArgument("empty point");
  RatMat p = z.factors.front();
  for (std::size_t i = 1; i < z.size(); ++i) p = p * z.factors[i];
  return p;
}

std::vector<RatMat> alpha(const ZPoint& z) {
  if (z.factors.empty()) throw InvalidArgument("empty point");
  std::vector<RatMat> out{z.factors.front()};
  for (std::size_t i = 1; i < z.size(); ++i) out.push_back(out.back() * z.factors[i]);
  return out;
}

ZPoint gauge_canonical(const ZPoint& z) {
  // The prefix flags determine the class; rebuild factors from their
  // canonical representatives.
  ZPoint out;
  RatMat prev_inv;
  bool first = true;
  for (const auto& p : alpha(z)) {
    const RatMat c = flag_canonical(p);
    out.factors.push_back(first ? c : prev_inv * c);
    prev_inv = c.inverse();
    first = false;
  }
  return out;
}

bool same_point(const ZPoint& a, const ZPoint& b) {
  if (a.size() != b.size()) return false;
  const auto fa = alpha(a), fb = alpha(b);
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (!same_flag(fa[i], fb[i])) return false;
  return true;
}

ZPoint random_gauge(const ZPoint& z, std::mt19937_64& rng) {
  ZPoint out;
  const std::size_t k = z.factors.at(0).dim();
  RatMat prev_inv = RatMat::identity(k);
  for (const auto& g : z.factors) {
    const RatMat b = random_upper(k, rng);
    out.factors.push_back(prev_inv * g * b);
    prev_inv = b.inverse();
  }
  return out;
}

Stratum phi_stratum(const Stratum& s) {
  require_tuple(s.w);
  const auto w0 = longest_element(s.v.context());
  Stratum out{w0 * s.w.front(), {w0 * s.v}};
  for (std::size_t i = s.w.size(); i-- > 1;) out.w.push_back(s.w[i].inverse());
  return out;
}

ZPoint phi_Z(const Context& ctx, const ZPoint& z) {
  check_point(ctx, z);
  const RatMat w0inv = dot(longest_element(ctx)).inverse();
  ZPoint out{{iota(w0inv * convolution(z))}};
  for (std::size_t i = z.size(); i-- > 1;) out.factors.push_back(iota(z.factors[i].inverse()));
  if (checked_mode()) {
    const Stratum expect = phi_stratum(stratum(ctx, z));
    const Stratum got = stratum(ctx, out);
    if (!(got == expect))
      throw CheckFailure("duality sent a point to " + format_stratum(got) + ", expected " + format_stratum(expect));
  }
  return out;
}

ZPoint double_bruhat_embed(const Context& ctx, const RatMat& g) {
  if (g.dim() != sl_dimension(ctx)) throw InvalidArgument("matrix size does not match the Weyl group");
  if (!g.invertible()) throw InvalidArgument("double Bruhat embedding needs an invertible matrix");
  return ZPoint{{g, dot(longest_element(ctx))}};
}

RatMat db_positive(const Context& ctx, const Word& v_word, const Word& w_word, const std::vector<Rational>& a,
                   const std::vector<Rational>& b) {
  const std::size_t k = sl_dimension(ctx);
  if (!is_reduced(ctx, v_word) || !is_reduced(ctx, w_word)) throw InvalidArgument("db_positive needs reduced words");
  if (a.size() != w_word.size() || b.size() != v_word.size())
    throw InvalidArgument("db_positive needs one parameter per letter");
  auto g = RatMat::identity(k);
  for (std::size_t j = 0; j < w_word.size(); ++j) {
    if (sgn(a[j]) <= 0) throw InvalidArgument("parameters must be positive");
    g = g * y_gen(k, w_word[j], a[j]);
  }
  for (std::size_t j = 0; j < v_word.size(); ++j) {
    if (sgn(b[j]) <= 0) throw InvalidArgument("parameters must be positive");
    g = g * x_gen(k, v_word[j], b[j]);
  }
  if (!is_tnn(g)) throw CheckFailure("double Bruhat factorization is not totally nonnegative");
  if (checked_mode()) {
    const auto v = WeylElt::from_word(ctx, v_word);
    const auto w = WeylElt::from_word(ctx, w_word);
    if (!(bruhat_cell(ctx, g) == w) || !(opposite_double_cell(ctx, g) == v))
      throw CheckFailure("double Bruhat factorization is not in the expected double cell");
  }
  return g;
}

Stratum double_bruhat_stratum(const WeylElt& v, const WeylElt& w) {
  require_same_context(v, w);
  const auto w0 = longest_element(v.context());
  return {v * w0, {w, w0}};
}

std::pair<WeylElt, WeylElt> generic_bounds(const WeylElt& u, const WeylElt& v, const WeylElt& w) {
  return {circ_r(w, u.inverse()), demazure(v, u)};
}

nlohmann::json to_json(const ZPoint& z) {
  auto f = nlohmann::json::array();
  for (const auto& g : z.factors) f.push_back(to_json(g));
  return {{"factors", f}};
}

ZPoint zpoint_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("factors") || !j["factors"].is_array())
    throw InvalidArgument("point JSON needs a \"factors\" array");
  ZPoint z;
  for (const auto& m : j["factors"]) z.factors.push_back(ratmat_from_json(m));
  return z;
}

nlohmann::json to_json(const Stratum& s) {
  const auto& cartan = s.v.context()->cartan();
  auto w = nlohmann::json::array();
  for (const auto& x : s.w) w.push_back(word_to_json(cartan, x.word()));
  return {{"v", word_to_json(cartan, s.v.word())}, {"w", w}};
}

}  // namespace tnn
