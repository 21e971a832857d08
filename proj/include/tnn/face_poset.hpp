#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "tnn/coxeter.hpp"

namespace tnn {

/// A stratum label (v, w) with v <= m_star(w) and rank sum l(w_i) - l(v).
struct QNode {
  WeylElt v;
  WTuple w;
  int rank = 0;

  /// Validates the nonemptiness condition and computes the rank.
  static QNode make(WeylElt v, WTuple w);
  friend bool operator==(const QNode& a, const QNode& b) { return a.v == b.v && a.w == b.w; }
};

std::string format_qnode(const QNode& x);

/// (a <= b) in Q: b.v <= a.v and a.w <= b.w componentwise.
bool q_leq(const QNode& a, const QNode& b);

/// Finite poset with a rank function. Element 0 is the minimum whenever the
/// poset was built with a synthetic bottom.
class FacePoset {
 public:
  struct Element {
    std::optional<QNode> node;  // empty for synthetic elements
    int rank = 0;
    std::string label;
  };

  /// From an explicit order predicate. `leq(i, j)` must be a partial order on
  /// the given elements.
  template <class Leq>
  static FacePoset from_order(std::vector<Element> elements, Leq&& leq);
  /// From cover pairs (lower, upper); the order is their transitive closure.
  /// When `ranks` is empty, ranks are heights above the minimal elements
  /// minus `rank_offset`.
  static FacePoset from_covers(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers,
                               std::vector<int> ranks = {}, int rank_offset = 0);

  std::size_t size() const { return elements_.size(); }
  const Element& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<Element>& elements() const { return elements_; }
  int rank(std::size_t i) const { return elements_.at(i).rank; }

  bool leq(std::size_t i, std::size_t j) const { return below_[j][i]; }
  bool less(std::size_t i, std::size_t j) const { return i != j && below_[j][i]; }
  /// Elements <= j (resp. >= i), as bitsets.
  const boost::dynamic_bitset<>& down_set(std::size_t j) const { return below_[j]; }
  const boost::dynamic_bitset<>& up_set(std::size_t i) const { return above_[i]; }

  /// Elements covered by j / covering i.
  const std::vector<std::size_t>& lower_covers(std::size_t j) const { return lower_covers_[j]; }
  const std::vector<std::size_t>& upper_covers(std::size_t i) const { return upper_covers_[i]; }
  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const;
  /// A linear extension: every element comes after everything below it.
  const std::vector<std::size_t>& linear_extension() const { return order_; }

  std::vector<std::size_t> minimal_elements() const;
  std::vector<std::size_t> maximal_elements() const;
  /// Unique minimum, if any.
  std::optional<std::size_t> bottom() const;
  std::optional<std::size_t> top() const;

  /// Index of the element carrying this label, if present.
  std::optional<std::size_t> find(const QNode& x) const;

  /// Sub-poset on the given elements (kept in the given order).
  FacePoset restrict_to(const std::vector<std::size_t>& keep) const;

 private:
  FacePoset() = default;
  void finish(std::vector<Element> elements, std::vector<boost::dynamic_bitset<>> below);

  std::vector<Element> elements_;
  std::vector<boost::dynamic_bitset<>> below_;
  std::vector<boost::dynamic_bitset<>> above_;
  std::vector<std::vector<std::size_t>> lower_covers_;
  std::vector<std::vector<std::size_t>> upper_covers_;
  std::vector<std::size_t> order_;
};

inline constexpr std::size_t kDefaultNodeCap = 20000;

/// The closed interval [0hat, top] of the augmented poset.
FacePoset build_interval(const QNode& top, std::size_t node_cap = kDefaultNodeCap);

/// The whole augmented poset for tuples of `n` elements of a finite group.
FacePoset build_full(const Context& ctx, std::size_t n, std::size_t node_cap = kDefaultNodeCap);

/// Augmented poset of a list of QNodes ordered as in Q, plus 0hat.
FacePoset poset_of_nodes(std::vector<QNode> nodes, std::size_t node_cap = kDefaultNodeCap);

/// Pairs (m_star(s), s') with s' <= s entrywise (entries s_i or e) and
/// m_star(s') = m_star(s), plus 0hat. `letters` are vertex indices.
FacePoset braid_poset(const Context& ctx, const Word& letters);

/// {x : bottom < x <= top} plus 0hat, ranks shifted so 0hat has rank -1.
FacePoset link_poset(const QNode& bottom, const QNode& top, std::size_t node_cap = kDefaultNodeCap);

/// An element below which (or a maximal element at which) maximal chains
/// have different lengths.
std::optional<std::size_t> purity_violation(const FacePoset& p);
/// Every maximal chain has the same length, and so does every maximal chain
/// of every interval.
bool is_pure(const FacePoset& p);
/// Every interval of length 2 has exactly two middle elements.
bool is_thin(const FacePoset& p);
/// A length-2 interval with a middle count other than two, if any.
std::optional<std::pair<std::size_t, std::size_t>> thinness_violation(const FacePoset& p);

/// Mobius function mu(x, y); throws if x is not below y.
long mobius(const FacePoset& p, std::size_t x, std::size_t y);
/// mu(x, .) on the up-set of x (zero elsewhere).
std::vector<long> mobius_from(const FacePoset& p, std::size_t x);
bool is_eulerian(const FacePoset& p);
std::optional<std::pair<std::size_t, std::size_t>> eulerian_violation(const FacePoset& p);

/// f_k = number of elements of rank k, for k = 0 .. max rank.
std::vector<std::size_t> f_vector(const FacePoset& p);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct ShellingResult {
  enum class Status { Found, NotShellable, Inconclusive } status = Status::Inconclusive;
  /// Maximal chains of P minus its minimum, in shelling order when found.
  std::vector<std::vector<std::size_t>> order;
  std::size_t facets = 0;
  std::size_t expansions = 0;
};
std::string to_string(ShellingResult::Status s);

inline constexpr std::size_t kDefaultShellingBudget = 2'000'000;

/// Searches for a shelling of the order complex of P minus its minimum.
/// Facets are tried in lexicographic order first, then by backtracking.
ShellingResult find_shelling(const FacePoset& p, std::size_t budget = kDefaultShellingBudget);

/// Euler characteristic (unreduced) of the order complex of the elements
/// strictly between the minimum and `top`.
long boundary_euler_characteristic(const FacePoset& p, std::size_t top);

struct BallReport {
  bool pure = false;
  bool thin = false;
  bool eulerian = false;
  ShellingResult shelling;
  int rank = 0;
  long boundary_chi = 0;
  long expected_chi = 0;
  long cell_chi = 0;  // alternating count of boundary cells
  Verdict verdict = Verdict::Fail;
  nlohmann::json witness;
};

BallReport check_regular_ball(const QNode& top, std::size_t budget = kDefaultShellingBudget,
                              std::size_t node_cap = kDefaultNodeCap);
BallReport check_regular_ball(const FacePoset& p, std::size_t budget = kDefaultShellingBudget);

/// Hasse diagram in Graphviz format, nodes labelled "v | w1,...,wn | rank".
std::string to_dot(const FacePoset& p);
nlohmann::json to_json(const FacePoset& p);
nlohmann::json qnode_to_json(const QNode& x);

// ---------------------------------------------------------------------------

template <class Leq>
FacePoset FacePoset::from_order(std::vector<Element> elements, Leq&& leq) {
  const std::size_t n = elements.size();
  std::vector<boost::dynamic_bitset<>> below(n, boost::dynamic_bitset<>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (i == j || leq(i, j)) below[j][i] = true;
  FacePoset p;
  p.finish(std::move(elements), std::move(below));
  return p;
}

}  // namespace tnn
