#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "tnn/checked.hpp"
#include "tnn/coxeter.hpp"

namespace tnn {

using Rational = mpq_class;

/// Dense square matrix of exact rationals.
class RatMat {
 public:
  RatMat() = default;
  explicit RatMat(std::size_t k);  // zero matrix
  RatMat(std::initializer_list<std::initializer_list<Rational>> rows);
  static RatMat identity(std::size_t k);

  std::size_t dim() const { return k_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * k_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * k_ + j]; }

  friend RatMat operator*(const RatMat& x, const RatMat& y);
  friend bool operator==(const RatMat& x, const RatMat& y) { return x.k_ == y.k_ && x.a_ == y.a_; }

  Rational det() const;
  bool invertible() const { return det() != 0; }
  /// Throws InvalidArgument for singular matrices.
  RatMat inverse() const;
  /// Rank of the submatrix on rows [r0, r1) and columns [c0, c1).
  std::size_t rank(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

  bool is_upper_triangular() const;
  bool is_lower_triangular() const;
  bool is_identity() const { return *this == identity(k_); }

  std::string to_string() const;

 private:
  std::size_t k_ = 0;
  std::vector<Rational> a_;
};

nlohmann::json to_json(const RatMat& m);
RatMat ratmat_from_json(const nlohmann::json& j);
Rational parse_rational(const std::string& s);

/// Upper bound on k accepted by the operations below.
inline constexpr std::size_t kDefaultMaxK = 6;

/// Weyl group of SL_k, i.e. type A_{k-1}. Elements built here only compare
/// with elements of the same context, so callers should create it once.
Context sl_weyl_group(std::size_t k);
/// k for a type-A context; throws unless the context is of type A_{k-1}.
std::size_t sl_dimension(const Context& ctx);

// Chevalley generators. Vertex indices are 0-based: i in [0, k-2] acts on
// coordinates i and i+1.
RatMat x_gen(std::size_t k, int i, const Rational& a);
RatMat y_gen(std::size_t k, int i, const Rational& a);
/// x_i(1) y_i(-1) x_i(1).
RatMat sdot(std::size_t k, int i);
/// Coroot alpha_i^vee(t) = diag(.., t, 1/t, ..).
RatMat torus(std::size_t k, int i, const Rational& t);

/// One-line notation: perm[j] = w(j), 0-based.
using Permutation = std::vector<int>;
Permutation to_permutation(const WeylElt& w);
WeylElt from_permutation(const Context& ctx, const Permutation& perm);
/// Column j has a one in row perm[j].
RatMat permutation_matrix(const Permutation& perm);
/// Representative of w: product of sdot over its canonical word.
RatMat dot(const WeylElt& w);

/// w with g in B+ w B+, read off from southwest rank conditions.
WeylElt bruhat_cell(const Context& ctx, const RatMat& g);
/// v with g in B- v B+.
WeylElt opposite_cell(const Context& ctx, const RatMat& g);
/// v with g in B- v B-.
WeylElt opposite_double_cell(const Context& ctx, const RatMat& g);

/// All minors nonnegative.
bool is_tnn(const RatMat& g, std::size_t max_k = kDefaultMaxK);

/// Product over positions: sdot where `sub` takes the letter, y(param) where
/// it skips. Params are consumed in order and must be positive. In checked
/// mode the flag stratum is compared against (v, w).
RatMat mr_matrix(const Context& ctx, const Word& word, const Word& sub, const std::vector<Rational>& params);

/// Conjugation by diag(1, -1, 1, ...).
RatMat iota(const RatMat& g);
/// g B+ -> iota(w0dot^-1 g) B+.
RatMat phi_flag(const Context& ctx, const RatMat& g);

/// Canonical representative of g B+: columns reduced left to right, each
/// column scaled to 1 at its bottommost pivot.
RatMat flag_canonical(const RatMat& g);
bool same_flag(const RatMat& g, const RatMat& h);

/// Affine coordinate of a flag of SL_2: the line spanned by the first column
/// (g00, g10) has coordinate g10 / g00; nullopt stands for infinity.
std::optional<Rational> sl2_chart(const RatMat& g);

/// g = L U with L lower unitriangular, U upper triangular, when it exists.
std::optional<std::pair<RatMat, RatMat>> lu_decompose(const RatMat& g);

/// Random rational p/q with 1 <= p, q <= 20.
Rational random_positive_rational(std::mt19937_64& rng);
/// Random invertible upper triangular matrix with rational entries.
RatMat random_upper(std::size_t k, std::mt19937_64& rng);

}  // namespace tnn
