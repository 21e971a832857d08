#pragma once

#include <random>
#include <vector>

#include <json.hpp>

#include "tnn/checked.hpp"
#include "tnn/coxeter.hpp"
#include "tnn/typeA_matrix.hpp"

namespace tnn {

/// Point of the n-fold twisted product of SL_k over B+, stored by raw
/// representatives (g_1, ..., g_n). Two points are the same when they differ
/// by (g_1 b_1, b_1^-1 g_2 b_2, ...) with b_i invertible upper triangular.
struct ZPoint {
  std::vector<RatMat> factors;

  std::size_t size() const { return factors.size(); }
};

/// Stratum label (v, w): w_i = Bruhat cell of g_i, v = opposite cell of the
/// product.
struct Stratum {
  WeylElt v;
  WTuple w;

  friend bool operator==(const Stratum& a, const Stratum& b) { return a.v == b.v && a.w == b.w; }
};

std::string format_stratum(const Stratum& s);

Stratum stratum(const Context& ctx, const ZPoint& z);

/// v <= m_star(w).
bool nonempty(const WeylElt& v, const WTuple& w);

/// Positive cell point for (v, w): factor i is the Marsh-Rietsch matrix of
/// the i-th entry of positive_tuple(v, w) inside `words[i]`, a reduced word
/// for w_i. Params are consumed factor by factor. In checked mode the
/// stratum of the result is compared with (v, w).
ZPoint parametrize_cell(const Context& ctx, const WeylElt& v, const WTuple& w, const std::vector<Word>& words,
                        const std::vector<Rational>& params);
/// Same, with the canonical word of every factor.
ZPoint parametrize_cell(const Context& ctx, const WeylElt& v, const WTuple& w, const std::vector<Rational>& params);
/// Number of parameters of the cell: sum l(w_i) - l(v).
std::size_t cell_dimension(const WeylElt& v, const WTuple& w);

/// g_1 ... g_n.
RatMat convolution(const ZPoint& z);
/// (g_1, g_1 g_2, ..., g_1 ... g_n) as flag representatives.
std::vector<RatMat> alpha(const ZPoint& z);

/// Canonical representative of the gauge class.
ZPoint gauge_canonical(const ZPoint& z);
bool same_point(const ZPoint& a, const ZPoint& b);
/// A random representative of the same gauge class.
ZPoint random_gauge(const ZPoint& z, std::mt19937_64& rng);

/// (iota(w0dot^-1 g_1 ... g_n), iota(g_n^-1), ..., iota(g_2^-1)). In checked
/// mode the stratum of the image is compared with phi_stratum.
ZPoint phi_Z(const Context& ctx, const ZPoint& z);
/// (w0 w_1, (w0 v, w_n^-1, ..., w_2^-1)).
Stratum phi_stratum(const Stratum& s);

/// (g, w0dot).
ZPoint double_bruhat_embed(const Context& ctx, const RatMat& g);
/// y_{j_1}(a_1) ... y_{j_p}(a_p) x_{i_1}(b_1) ... x_{i_q}(b_q) with j over
/// `w_word` and i over `v_word`; the result lies in B+ w B+ and B- v B-.
/// Throws CheckFailure if the result is not totally nonnegative.
RatMat db_positive(const Context& ctx, const Word& v_word, const Word& w_word, const std::vector<Rational>& a,
                   const std::vector<Rational>& b);
/// Stratum expected for double_bruhat_embed of a point of B+ w B+ and B- v B-:
/// (v w0, (w, w0)).
Stratum double_bruhat_stratum(const WeylElt& v, const WeylElt& w);

/// (circ_r(w, u^-1), demazure(v, u)).
std::pair<WeylElt, WeylElt> generic_bounds(const WeylElt& u, const WeylElt& v, const WeylElt& w);

nlohmann::json to_json(const ZPoint& z);
ZPoint zpoint_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Stratum& s);

}  // namespace tnn
