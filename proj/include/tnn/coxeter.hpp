#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tnn/root_datum.hpp"

namespace tnn {

/// A sequence of vertex indices (0-based). In a subexpression the placeholder
/// kOne stands for the identity letter.
using Word = std::vector<int>;
inline constexpr int kOne = -1;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

class CoxeterGroup;
using Context = std::shared_ptr<const CoxeterGroup>;

/// The Weyl group of a generalized Cartan matrix, realized on the root
/// lattice: s_i(alpha_j) = alpha_j - a_ij alpha_i.
///
/// Holds the per-group Bruhat memo. The memo is internally synchronized and
/// bounded; clearing it never changes results.
class CoxeterGroup {
 public:
  static Context create(GeneralizedCartanMatrix cartan, std::size_t bruhat_cache_limit = 1u << 20);

  const GeneralizedCartanMatrix& cartan() const { return cartan_; }
  std::size_t rank() const { return cartan_.size(); }

  std::optional<bool> cached_leq(const Word& v, const Word& w) const;
  void store_leq(const Word& v, const Word& w, bool value) const;
  std::size_t cache_size() const;

  /// Thickened contexts are created once per (group, n) and reused so that
  /// elements built through different calls stay comparable.
  Context thickened(int n) const;

  explicit CoxeterGroup(GeneralizedCartanMatrix cartan, std::size_t cache_limit);

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<Word, Word>& p) const noexcept;
  };

  GeneralizedCartanMatrix cartan_;
  std::size_t cache_limit_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::pair<Word, Word>, bool, PairHash> leq_cache_;
  mutable std::unordered_map<int, Context> thickened_;
};

/// Immutable Weyl group element: action matrix on simple roots (and its
/// inverse), canonical reduced word (lexicographically smallest) and length.
class WeylElt {
 public:
  static WeylElt identity(const Context& ctx);
  static WeylElt simple(const Context& ctx, int i);
  /// Product of the letters of an arbitrary expression; kOne entries are skipped.
  static WeylElt from_word(const Context& ctx, std::span<const int> word);

  const Context& context() const { return ctx_; }
  std::size_t rank() const { return ctx_->rank(); }
  std::size_t length() const { return word_.size(); }
  const Word& word() const { return word_; }
  bool is_identity() const { return word_.empty(); }

  /// Integer matrix of the action; column j is w(alpha_j).
  const std::vector<std::int64_t>& geom() const { return geom_; }
  std::int64_t geom(std::size_t row, std::size_t col) const { return geom_[row * rank() + col]; }

  bool has_left_descent(int i) const;
  bool has_right_descent(int i) const;
  std::vector<int> left_descents() const;
  std::vector<int> right_descents() const;

  WeylElt left_mul(int i) const;   // s_i * w
  WeylElt right_mul(int i) const;  // w * s_i
  WeylElt inverse() const;

  friend WeylElt operator*(const WeylElt& a, const WeylElt& b);
  friend bool operator==(const WeylElt& a, const WeylElt& b);

 private:
  WeylElt(Context ctx, std::vector<std::int64_t> geom, std::vector<std::int64_t> geom_inv);
  void canonicalize();
  void check_vertex(int i) const;

  Context ctx_;
  std::vector<std::int64_t> geom_;
  std::vector<std::int64_t> geom_inv_;
  Word word_;
};

struct WeylEltHash {
  std::size_t operator()(const WeylElt& w) const noexcept { return WordHash{}(w.word()); }
};

/// Sequence (w_1, ..., w_n), n >= 1, all in one context.
using WTuple = std::vector<WeylElt>;

void require_same_context(const WeylElt& a, const WeylElt& b);
void require_tuple(const WTuple& t);

WeylElt multiply(const WeylElt& u, const WeylElt& v);
WeylElt inverse(const WeylElt& u);

bool is_reduced(const Context& ctx, std::span<const int> word);

/// Bruhat order by the left-descent recursion, memoized per context.
bool bruhat_leq(const WeylElt& v, const WeylElt& w);
/// Componentwise order on tuples of equal size.
bool tuple_leq(const WTuple& a, const WTuple& b);
std::size_t tuple_length(const WTuple& t);

/// Demazure product, greedy over the canonical word of y.
WeylElt demazure(const WeylElt& x, const WeylElt& y);
WeylElt m_star(const WTuple& t);
WeylElt m_bullet(const WTuple& t);

/// min{ y u : u <= x }, greedy over the canonical word of x.
WeylElt circ_r(const WeylElt& y, const WeylElt& x);

/// Checks the positivity condition t'_1..t'_{i-1} < t'_1..t'_{i-1} t_i at every
/// position. `word` may be any expression without placeholders; `sub` must be
/// a subexpression of it.
bool is_positive_subexpression(const Context& ctx, std::span<const int> sub, std::span<const int> word);

/// Right-to-left greedy: take t_k iff u t_k < u. Returns nullopt when the
/// walk does not end at the identity. Works for non-reduced expressions.
std::optional<Word> greedy_positive_subexpression(const WeylElt& v, std::span<const int> word);

/// The unique positive subexpression of v in the reduced word `reduced`.
/// Throws InvalidArgument if the word is not reduced or v is not below it.
Word positive_subexpression(const WeylElt& v, std::span<const int> reduced);

/// The unique tuple with product v that is positive in w. Throws if
/// v is not below m_star(w).
WTuple positive_tuple(const WeylElt& v, const WTuple& w);

/// Context of the thickened group for `base` with n factors.
Context thickened_context(const Context& base, int n);

/// Reduced word w_1 inf_1 w_2 ... inf_{n-1} w_n in the thickened context.
Word th_word(const WTuple& w, const Context& thick);
WeylElt th(const WTuple& w, const Context& thick);
/// v reinterpreted inside the parabolic subgroup on I of the thickened group.
WeylElt i_embed(const WeylElt& v, const Context& thick);

/// Bruhat lower interval [e, w], sorted by (length, word).
std::vector<WeylElt> lower_interval(const WeylElt& w);
/// All elements of length <= max_length, sorted by (length, word).
/// Throws CapExceeded when more than `cap` elements would be produced.
std::vector<WeylElt> elements_up_to_length(const Context& ctx, std::size_t max_length,
                                           std::size_t cap = 1u << 20);
/// All elements of a finite group; throws CapExceeded if the group has more
/// than `cap` elements.
std::vector<WeylElt> all_elements(const Context& ctx, std::size_t cap = 100000);
/// Longest element of a finite group.
WeylElt longest_element(const Context& ctx, std::size_t cap = 100000);
/// All tuples (w_1..w_n) with each w_i in `elements`, lexicographic order.
std::vector<WTuple> all_tuples(const std::vector<WeylElt>& elements, std::size_t n);

bool element_less(const WeylElt& a, const WeylElt& b);

/// "(1,2,inf1)" using 1-based base indices; "e" for the empty word; "_" for
/// placeholders.
std::string format_word(const GeneralizedCartanMatrix& cartan, std::span<const int> word);
std::string format_element(const WeylElt& w);
std::string format_tuple(const WTuple& t);

/// JSON encoding: base vertex i -> i + 1, inf_l -> -l, placeholder -> 0.
nlohmann::json word_to_json(const GeneralizedCartanMatrix& cartan, std::span<const int> word);
Word word_from_json(const GeneralizedCartanMatrix& cartan, const nlohmann::json& j);

}  // namespace tnn
