#include "tnn/face_poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "tnn/error.hpp"

namespace tnn {

// ---------------------------------------------------------------------------
// QNode

QNode QNode::make(WeylElt v, WTuple w) {
  require_tuple(w);
  require_same_context(v, w.front());
  if (!bruhat_leq(v, m_star(w)))
    throw InvalidArgument("(" + format_element(v) + "; " + format_tuple(w) + ") violates v <= m_star(w)");
  QNode x{std::move(v), std::move(w), 0};
  x.rank = static_cast<int>(tuple_length(x.w)) - static_cast<int>(x.v.length());
  return x;
}

std::string format_qnode(const QNode& x) {
  return format_element(x.v) + " | " + format_tuple(x.w) + " | " + std::to_string(x.rank);
}

bool q_leq(const QNode& a, const QNode& b) { return bruhat_leq(b.v, a.v) && tuple_leq(a.w, b.w); }

// ---------------------------------------------------------------------------
// FacePoset

void FacePoset::finish(std::vector<Element> elements, std::vector<boost::dynamic_bitset<>> below) {
  const std::size_t n = elements.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (auto i = below[j].find_first(); i != boost::dynamic_bitset<>::npos; i = below[j].find_next(i)) {
      if (i != j && below[i][j]) throw InvalidArgument("order relation is not antisymmetric");
      if (!below[i].is_subset_of(below[j])) throw InvalidArgument("order relation is not transitive");
    }
  }
  elements_ = std::move(elements);
  below_ = std::move(below);
  above_.assign(n, boost::dynamic_bitset<>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (auto i = below_[j].find_first(); i != boost::dynamic_bitset<>::npos; i = below_[j].find_next(i))
      above_[i][j] = true;

  order_.resize(n);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return below_[a].count() < below_[b].count(); });

  lower_covers_.assign(n, {});
  upper_covers_.assign(n, {});
  for (std::size_t j = 0; j < n; ++j) {
    auto strict = below_[j];
    strict[j] = false;
    for (auto i = strict.find_first(); i != boost::dynamic_bitset<>::npos; i = strict.find_next(i)) {
      auto between = above_[i] & strict;
      between[i] = false;
      if (between.none()) {
        lower_covers_[j].push_back(i);
        upper_covers_[i].push_back(j);
      }
    }
  }
}

FacePoset FacePoset::from_covers(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers,
                                 std::vector<int> ranks, int rank_offset) {
  std::vector<std::vector<std::size_t>> down(n);
  for (auto [a, b] : covers) {
    if (a >= n || b >= n || a == b) throw InvalidArgument("cover pair out of range");
    down[b].push_back(a);
  }
  // Transitive closure by repeated propagation; inputs are small.
  std::vector<boost::dynamic_bitset<>> below(n, boost::dynamic_bitset<>(n));
  for (std::size_t j = 0; j < n; ++j) below[j][j] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t j = 0; j < n; ++j)
      for (auto i : down[j]) {
        const auto merged = below[j] | below[i];
        if (merged != below[j]) {
          below[j] = merged;
          changed = true;
        }
      }
  }
  std::vector<Element> elements(n);
  if (!ranks.empty() && ranks.size() != n) throw InvalidArgument("rank vector has the wrong size");
  FacePoset p;
  for (std::size_t i = 0; i < n; ++i) elements[i].label = std::to_string(i);
  p.finish(std::move(elements), std::move(below));
  if (ranks.empty()) {
    ranks.assign(n, 0);
    for (auto j : p.order_)
      for (auto i : p.lower_covers_[j]) ranks[j] = std::max(ranks[j], ranks[i] + 1);
    for (auto& r : ranks) r -= rank_offset;
  }
  for (std::size_t i = 0; i < n; ++i) p.elements_[i].rank = ranks[i];
  return p;
}

std::vector<std::pair<std::size_t, std::size_t>> FacePoset::cover_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < size(); ++j)
    for (auto i : lower_covers_[j]) out.emplace_back(i, j);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> FacePoset::minimal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (lower_covers_[i].empty()) out.push_back(i);
  return out;
}

std::vector<std::size_t> FacePoset::maximal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (upper_covers_[i].empty()) out.push_back(i);
  return out;
}

std::optional<std::size_t> FacePoset::bottom() const {
  const auto m = minimal_elements();
  if (m.size() != 1) return std::nullopt;
  return m.front();
}

std::optional<std::size_t> FacePoset::top() const {
  const auto m = maximal_elements();
  if (m.size() != 1) return std::nullopt;
  return m.front();
}

std::optional<std::size_t> FacePoset::find(const QNode& x) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (elements_[i].node && *elements_[i].node == x) return i;
  return std::nullopt;
}

FacePoset FacePoset::restrict_to(const std::vector<std::size_t>& keep) const {
  std::vector<Element> elems;
  for (auto i : keep) elems.push_back(elements_.at(i));
  return from_order(std::move(elems), [&](std::size_t a, std::size_t b) { return leq(keep[a], keep[b]); });
}

// ---------------------------------------------------------------------------
// Builders

namespace {

// Dense Bruhat table over the distinct elements that occur in a node list.
class BruhatTable {
 public:
  explicit BruhatTable(const std::vector<QNode>& nodes) {
    for (const auto& x : nodes) {
      add(x.v);
      for (const auto& w : x.w) add(w);
    }
    const std::size_t m = elems_.size();
    table_.assign(m, boost::dynamic_bitset<>(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) table_[a][b] = bruhat_leq(elems_[a], elems_[b]);
  }

  std::size_t id(const WeylElt& x) const { return index_.at(x.word()); }
  bool leq(std::size_t a, std::size_t b) const { return table_[a][b]; }

 private:
  void add(const WeylElt& x) {
    if (index_.emplace(x.word(), elems_.size()).second) elems_.push_back(x);
  }

  std::vector<WeylElt> elems_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::vector<boost::dynamic_bitset<>> table_;
};

FacePoset augmented(std::vector<QNode> nodes, int rank_shift, std::size_t node_cap) {
  if (nodes.size() + 1 > node_cap) throw CapExceeded("poset exceeds the node cap of " + std::to_string(node_cap));
  std::stable_sort(nodes.begin(), nodes.end(), [](const QNode& a, const QNode& b) { return a.rank < b.rank; });
  const BruhatTable table(nodes);
  struct Ids {
    std::size_t v;
    std::vector<std::size_t> w;
  };
  std::vector<Ids> ids;
  std::vector<FacePoset::Element> elems;
  elems.push_back({std::nullopt, -1, "0hat"});
  ids.push_back({});
  for (auto& x : nodes) {
    Ids t{table.id(x.v), {}};
    for (const auto& w : x.w) t.w.push_back(table.id(w));
    ids.push_back(std::move(t));
    const int r = x.rank - rank_shift;
    std::string label = format_qnode(x);
    elems.push_back({std::move(x), r, std::move(label)});
  }
  return FacePoset::from_order(std::move(elems), [&](std::size_t a, std::size_t b) {
    if (a == 0) return true;
    if (b == 0) return false;
    if (!table.leq(ids[b].v, ids[a].v)) return false;
    for (std::size_t i = 0; i < ids[a].w.size(); ++i)
      if (!table.leq(ids[a].w[i], ids[b].w[i])) return false;
    return true;
  });
}

std::vector<QNode> interval_nodes(const QNode& top, std::size_t node_cap) {
  std::vector<std::vector<WeylElt>> lower;
  std::size_t combos = 1;
  for (const auto& w : top.w) {
    lower.push_back(lower_interval(w));
    combos *= lower.back().size();
    if (combos > node_cap * 64) throw CapExceeded("interval too large to enumerate");
  }
  std::unordered_map<Word, std::vector<WeylElt>, WordHash> below_cache;
  std::vector<QNode> nodes;
  std::vector<std::size_t> pick(top.w.size(), 0);
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t rest = c;
    WTuple w;
    for (std::size_t i = top.w.size(); i-- > 0;) {
      pick[i] = rest % lower[i].size();
      rest /= lower[i].size();
    }
    for (std::size_t i = 0; i < top.w.size(); ++i) w.push_back(lower[i][pick[i]]);
    const auto m = m_star(w);
    auto it = below_cache.find(m.word());
    if (it == below_cache.end()) it = below_cache.emplace(m.word(), lower_interval(m)).first;
    for (const auto& v : it->second) {
      if (!bruhat_leq(top.v, v)) continue;
      nodes.push_back({v, w, static_cast<int>(tuple_length(w)) - static_cast<int>(v.length())});
      if (nodes.size() + 1 > node_cap)
        throw CapExceeded("poset exceeds the node cap of " + std::to_string(node_cap));
    }
  }
  return nodes;
}

}  // namespace

FacePoset poset_of_nodes(std::vector<QNode> nodes, std::size_t node_cap) {
  return augmented(std::move(nodes), 0, node_cap);
}

FacePoset build_interval(const QNode& top, std::size_t node_cap) {
  (void)QNode::make(top.v, top.w);
  return augmented(interval_nodes(top, node_cap), 0, node_cap);
}

FacePoset build_full(const Context& ctx, std::size_t n, std::size_t node_cap) {
  const auto w0 = longest_element(ctx);
  return build_interval(QNode::make(WeylElt::identity(ctx), WTuple(n, w0)), node_cap);
}

FacePoset braid_poset(const Context& ctx, const Word& letters) {
  if (letters.empty()) throw InvalidArgument("braid poset needs a nonempty word");
  WTuple s;
  for (int i : letters) s.push_back(WeylElt::simple(ctx, i));
  const auto w = m_star(s);
  const std::size_t m = letters.size();
  if (m > 20) throw CapExceeded("braid word too long");
  const auto e = WeylElt::identity(ctx);
  std::vector<QNode> nodes;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    WTuple t;
    for (std::size_t k = 0; k < m; ++k) t.push_back(mask >> k & 1u ? s[k] : e);
    if (!(m_star(t) == w)) continue;
    nodes.push_back(QNode::make(w, std::move(t)));
  }
  return augmented(std::move(nodes), 0, kDefaultNodeCap);
}

FacePoset link_poset(const QNode& bottom, const QNode& top, std::size_t node_cap) {
  if (bottom == top || !q_leq(bottom, top)) throw InvalidArgument("link needs bottom < top");
  std::vector<QNode> keep;
  for (auto& x : interval_nodes(top, node_cap))
    if (!(x == bottom) && q_leq(bottom, x)) keep.push_back(std::move(x));
  return augmented(std::move(keep), bottom.rank + 1, node_cap);
}

// ---------------------------------------------------------------------------
// Checks

std::optional<std::size_t> purity_violation(const FacePoset& p) {
  const std::size_t n = p.size();
  std::vector<int> lo(n, 0), hi(n, 0);
  for (auto j : p.linear_extension()) {
    const auto& down = p.lower_covers(j);
    if (down.empty()) continue;
    lo[j] = hi[j] = -1;
    for (auto i : down) {
      lo[j] = lo[j] < 0 ? lo[i] + 1 : std::min(lo[j], lo[i] + 1);
      hi[j] = std::max(hi[j], hi[i] + 1);
    }
    if (lo[j] != hi[j]) return j;
  }
  std::optional<int> height;
  for (auto m : p.maximal_elements()) {
    if (height && *height != hi[m]) return m;
    height = hi[m];
  }
  return std::nullopt;
}

bool is_pure(const FacePoset& p) { return !purity_violation(p); }

std::optional<std::pair<std::size_t, std::size_t>> thinness_violation(const FacePoset& p) {
  std::unordered_set<std::size_t> seen;
  for (std::size_t x = 0; x < p.size(); ++x) {
    seen.clear();
    for (auto z : p.upper_covers(x))
      for (auto y : p.upper_covers(z)) {
        if (!seen.insert(y).second) continue;
        auto middle = p.up_set(x) & p.down_set(y);
        middle[x] = false;
        middle[y] = false;
        bool length_two = true;
        for (auto m = middle.find_first(); m != boost::dynamic_bitset<>::npos; m = middle.find_next(m)) {
          const auto& lc = p.lower_covers(m);
          const auto& uc = p.upper_covers(m);
          if (std::find(lc.begin(), lc.end(), x) == lc.end() || std::find(uc.begin(), uc.end(), y) == uc.end()) {
            length_two = false;
            break;
          }
        }
        if (length_two && middle.count() != 2) return std::pair{x, y};
      }
  }
  return std::nullopt;
}

bool is_thin(const FacePoset& p) { return !thinness_violation(p).has_value(); }

std::vector<long> mobius_from(const FacePoset& p, std::size_t x) {
  std::vector<long> mu(p.size(), 0);
  const auto& up = p.up_set(x);
  for (auto y : p.linear_extension()) {
    if (!up[y]) continue;
    if (y == x) {
      mu[y] = 1;
      continue;
    }
    auto between = up & p.down_set(y);
    between[y] = false;
    long sum = 0;
    for (auto z = between.find_first(); z != boost::dynamic_bitset<>::npos; z = between.find_next(z)) sum += mu[z];
    mu[y] = -sum;
  }
  return mu;
}

long mobius(const FacePoset& p, std::size_t x, std::size_t y) {
  if (!p.leq(x, y)) throw InvalidArgument("mobius(x, y) needs x <= y");
  return mobius_from(p, x)[y];
}

std::optional<std::pair<std::size_t, std::size_t>> eulerian_violation(const FacePoset& p) {
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto mu = mobius_from(p, x);
    const auto& up = p.up_set(x);
    for (auto y = up.find_first(); y != boost::dynamic_bitset<>::npos; y = up.find_next(y)) {
      const long expect = (p.rank(y) - p.rank(x)) % 2 == 0 ? 1 : -1;
      if (mu[y] != expect) return std::pair{x, y};
    }
  }
  return std::nullopt;
}

bool is_eulerian(const FacePoset& p) { return !eulerian_violation(p).has_value(); }

std::vector<std::size_t> f_vector(const FacePoset& p) {
  int top = -1;
  for (const auto& e : p.elements()) top = std::max(top, e.rank);
  std::vector<std::size_t> f(static_cast<std::size_t>(top + 1), 0);
  for (const auto& e : p.elements())
    if (e.rank >= 0) ++f[static_cast<std::size_t>(e.rank)];
  return f;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(ShellingResult::Status s) {
  switch (s) {
    case ShellingResult::Status::Found: return "found";
    case ShellingResult::Status::NotShellable: return "not-shellable";
    case ShellingResult::Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Shelling search

namespace {

constexpr std::size_t kMaxFacets = 200000;
constexpr std::size_t kMaxFacetSize = 30;

class ShellingSearch {
 public:
  ShellingSearch(std::vector<std::vector<std::size_t>> facets, std::size_t budget)
      : facets_(std::move(facets)), budget_(budget) {
    const std::size_t m = facets_.size();
    d_ = facets_.front().size();
    full_ = d_ == 32 ? ~0u : (1u << d_) - 1;
    masks_.assign(m, {});
    codim_.assign(m, 0);
    added_.assign(m, false);
    added_bits_.assign((m + 63) / 64, 0);
  }

  ShellingResult run() {
    ShellingResult out;
    out.facets = facets_.size();
    const bool ok = dfs();
    out.expansions = expansions_;
    if (ok) {
      out.status = ShellingResult::Status::Found;
      out.order = order_of_indices();
    } else {
      out.status = exhausted_ ? ShellingResult::Status::Inconclusive : ShellingResult::Status::NotShellable;
    }
    return out;
  }

  std::vector<std::size_t> order;

 private:
  struct Undo {
    std::size_t facet;
    std::uint32_t prev_codim;
  };

  std::vector<std::vector<std::size_t>> order_of_indices() const {
    std::vector<std::vector<std::size_t>> out;
    for (auto i : order) out.push_back(facets_[i]);
    return out;
  }

  bool valid(std::size_t f) const {
    if (order.empty()) return true;
    const auto c = codim_[f];
    if (c == 0) return false;
    for (auto m : masks_[f])
      if ((m & c) == c) return false;
    return true;
  }

  void add(std::size_t g, std::vector<Undo>& log) {
    added_[g] = true;
    added_bits_[g / 64] |= std::uint64_t{1} << (g % 64);
    order.push_back(g);
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (added_[f]) continue;
      std::uint32_t m = 0;
      for (std::size_t k = 0; k < d_; ++k)
        if (facets_[f][k] == facets_[g][k]) m |= 1u << k;
      auto& list = masks_[f];
      if (std::find(list.begin(), list.end(), m) != list.end()) continue;
      log.push_back({f, codim_[f]});
      list.push_back(m);
      if (std::popcount(m) + 1 == static_cast<int>(d_)) codim_[f] |= full_ & ~m;
    }
  }

  void undo(std::size_t g, std::vector<Undo>& log) {
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
      masks_[it->facet].pop_back();
      codim_[it->facet] = it->prev_codim;
    }
    log.clear();
    added_[g] = false;
    added_bits_[g / 64] &= ~(std::uint64_t{1} << (g % 64));
    order.pop_back();
  }

  bool dfs() {
    if (order.size() == facets_.size()) return true;
    if (failed_.count(added_bits_)) return false;
    std::vector<std::size_t> candidates;
    for (std::size_t f = 0; f < facets_.size(); ++f)
      if (!added_[f] && valid(f)) candidates.push_back(f);
    for (auto f : candidates) {
      if (expansions_ >= budget_) {
        exhausted_ = true;
        return false;
      }
      ++expansions_;
      std::vector<Undo> log;
      add(f, log);
      if (dfs()) return true;
      undo(f, log);
      if (exhausted_) return false;
    }
    failed_.insert(added_bits_);
    return false;
  }

  struct BitsHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
      std::size_t h = 0x84222325cbf29ce4ull;
      for (auto x : v) h = (h ^ x) * 0x100000001b3ull + (h >> 29);
      return h;
    }
  };

  std::vector<std::vector<std::size_t>> facets_;
  std::size_t budget_;
  std::size_t d_ = 0;
  std::uint32_t full_ = 0;
  std::vector<std::vector<std::uint32_t>> masks_;
  std::vector<std::uint32_t> codim_;
  std::vector<bool> added_;
  std::vector<std::uint64_t> added_bits_;
  std::unordered_set<std::vector<std::uint64_t>, BitsHash> failed_;
  std::size_t expansions_ = 0;
  bool exhausted_ = false;
};

// Maximal chains of the poset with its minimum removed.
std::vector<std::vector<std::size_t>> maximal_chains_above_bottom(const FacePoset& p) {
  std::vector<bool> skip(p.size(), false);
  if (auto b = p.bottom()) skip[*b] = true;
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (skip[i]) continue;
    bool minimal = true;
    for (auto j : p.lower_covers(i))
      if (!skip[j]) minimal = false;
    if (minimal) starts.push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> chain;
  auto walk = [&](auto&& self, std::size_t x) -> void {
    chain.push_back(x);
    if (p.upper_covers(x).empty()) {
      out.push_back(chain);
      if (out.size() > kMaxFacets) throw CapExceeded("too many maximal chains for the shelling search");
    }
    for (auto y : p.upper_covers(x)) self(self, y);
    chain.pop_back();
  };
  for (auto s : starts) walk(walk, s);
  return out;
}

}  // namespace

ShellingResult find_shelling(const FacePoset& p, std::size_t budget) {
  if (!is_pure(p)) throw InvalidArgument("find_shelling needs a pure poset");
  auto facets = maximal_chains_above_bottom(p);
  ShellingResult out;
  out.facets = facets.size();
  if (facets.size() <= 1) {
    out.status = ShellingResult::Status::Found;
    out.order = facets;
    return out;
  }
  // Vertices lying in every facet form a cone point and do not affect
  // shellability; drop them before encoding faces as bitmasks.
  const std::size_t len = facets.front().size();
  std::vector<bool> common(len, true);
  for (const auto& f : facets)
    for (std::size_t k = 0; k < len; ++k)
      if (f[k] != facets.front()[k]) common[k] = false;
  std::vector<std::vector<std::size_t>> reduced;
  for (const auto& f : facets) {
    std::vector<std::size_t> r;
    for (std::size_t k = 0; k < len; ++k)
      if (!common[k]) r.push_back(f[k]);
    reduced.push_back(std::move(r));
  }
  if (reduced.front().size() > kMaxFacetSize) throw CapExceeded("facets too large for the shelling search");
  ShellingSearch search(std::move(reduced), budget);
  out = search.run();
  if (out.status == ShellingResult::Status::Found) {
    out.order.clear();
    for (auto i : search.order) out.order.push_back(facets[i]);
  }
  return out;
}

long boundary_euler_characteristic(const FacePoset& p, std::size_t top) {
  const auto b = p.bottom();
  auto inside = p.down_set(top);
  inside[top] = false;
  if (b) inside[*b] = false;
  // f(z) = sum over chains ending at z of (-1)^(length-1).
  std::vector<long> f(p.size(), 0);
  long chi = 0;
  for (auto z : p.linear_extension()) {
    if (!inside[z]) continue;
    long s = 1;
    auto below = p.down_set(z) & inside;
    below[z] = false;
    for (auto y = below.find_first(); y != boost::dynamic_bitset<>::npos; y = below.find_next(y)) s -= f[y];
    f[z] = s;
    chi += s;
  }
  return chi;
}

BallReport check_regular_ball(const FacePoset& p, std::size_t budget) {
  BallReport r;
  const auto top = p.top();
  const auto bottom = p.bottom();
  if (!top || !bottom) throw InvalidArgument("regular-ball check needs a bounded poset");
  r.rank = p.rank(*top) - p.rank(*bottom) - 1;
  auto pure_bad = purity_violation(p);
  r.pure = !pure_bad;
  auto thin_bad = thinness_violation(p);
  r.thin = !thin_bad;
  auto euler_bad = eulerian_violation(p);
  r.eulerian = !euler_bad;
  if (r.pure) r.shelling = find_shelling(p, budget);
  r.boundary_chi = boundary_euler_characteristic(p, *top);
  r.expected_chi = (r.rank - 1) % 2 == 0 ? 2 : 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (i != *top && i != *bottom && p.leq(i, *top))
      r.cell_chi += (p.rank(i) - p.rank(*bottom) - 1) % 2 == 0 ? 1 : -1;

  r.witness = nlohmann::json::object();
  if (pure_bad) r.witness["pure"] = p.element(*pure_bad).label;
  if (thin_bad) r.witness["thin"] = {p.element(thin_bad->first).label, p.element(thin_bad->second).label};
  if (euler_bad) r.witness["eulerian"] = {p.element(euler_bad->first).label, p.element(euler_bad->second).label};
  if (r.boundary_chi != r.expected_chi)
    r.witness["boundary_chi"] = {{"observed", r.boundary_chi}, {"expected", r.expected_chi}};
  r.witness["shelling"] = {{"status", to_string(r.shelling.status)},
                           {"facets", r.shelling.facets},
                           {"expansions", r.shelling.expansions},
                           {"budget", budget}};

  const bool hard_fail = !r.pure || !r.thin || !r.eulerian || r.boundary_chi != r.expected_chi ||
                         r.shelling.status == ShellingResult::Status::NotShellable;
  if (hard_fail)
    r.verdict = Verdict::Fail;
  else if (r.shelling.status == ShellingResult::Status::Inconclusive)
    r.verdict = Verdict::Inconclusive;
  else
    r.verdict = Verdict::Pass;
  return r;
}

BallReport check_regular_ball(const QNode& top, std::size_t budget, std::size_t node_cap) {
  return check_regular_ball(build_interval(top, node_cap), budget);
}

// ---------------------------------------------------------------------------
// Export

std::string to_dot(const FacePoset& p) {
  std::ostringstream os;
  os << "digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::string label = p.element(i).label;
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    os << "  n" << i << " [label=\"" << escaped << "\"];\n";
  }
  for (auto [a, b] : p.cover_pairs()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

nlohmann::json qnode_to_json(const QNode& x) {
  const auto& cartan = x.v.context()->cartan();
  auto w = nlohmann::json::array();
  for (const auto& wi : x.w) w.push_back(word_to_json(cartan, wi.word()));
  return {{"v", word_to_json(cartan, x.v.word())}, {"w", w}, {"rank", x.rank}};
}

nlohmann::json to_json(const FacePoset& p) {
  auto nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& e = p.element(i);
    nlohmann::json j = {{"id", i}, {"label", e.label}, {"rank", e.rank}};
    if (e.node) {
      j["v"] = qnode_to_json(*e.node)["v"];
      j["w"] = qnode_to_json(*e.node)["w"];
    }
    nodes.push_back(std::move(j));
  }
  auto covers = nlohmann::json::array();
  for (auto [a, b] : p.cover_pairs()) covers.push_back({a, b});
  return {{"nodes", nodes}, {"covers", covers}, {"f_vector", f_vector(p)}};
}

}  // namespace tnn
