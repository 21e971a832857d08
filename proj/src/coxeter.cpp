#include "tnn/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "tnn/error.hpp"

namespace tnn {

namespace {

std::int64_t checked_sub_mul(std::int64_t acc, std::int64_t coeff, std::int64_t x) {
  std::int64_t prod = 0;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(coeff, x, &prod) || __builtin_sub_overflow(acc, prod, &out))
    throw CapExceeded("root coordinates overflow 64-bit integers; element too long");
  return out;
}

// Sign of a root given as a column: roots are sign-coherent.
bool column_negative(const std::vector<std::int64_t>& m, std::size_t r, std::size_t col) {
  for (std::size_t row = 0; row < r; ++row) {
    const auto x = m[row * r + col];
    if (x != 0) return x < 0;
  }
  return false;
}

// m <- S_i m  (row i only).
void apply_left(const GeneralizedCartanMatrix& a, std::vector<std::int64_t>& m, std::size_t i) {
  const std::size_t r = a.size();
  std::vector<std::int64_t> row(r);
  for (std::size_t c = 0; c < r; ++c) {
    std::int64_t acc = m[i * r + c];
    for (std::size_t j = 0; j < r; ++j) {
      const int aij = a(i, j);
      if (aij != 0) acc = checked_sub_mul(acc, aij, m[j * r + c]);
    }
    row[c] = acc;
  }
  std::copy(row.begin(), row.end(), m.begin() + static_cast<long>(i * r));
}

// m <- m S_i  (column j gets col_j - a_ij col_i).
void apply_right(const GeneralizedCartanMatrix& a, std::vector<std::int64_t>& m, std::size_t i) {
  const std::size_t r = a.size();
  for (std::size_t row = 0; row < r; ++row) {
    const std::int64_t ci = m[row * r + i];
    if (ci == 0) continue;
    for (std::size_t j = 0; j < r; ++j) {
      const int aij = a(i, j);
      if (aij != 0) m[row * r + j] = checked_sub_mul(m[row * r + j], aij, ci);
    }
  }
}

std::vector<std::int64_t> identity_matrix(std::size_t r) {
  std::vector<std::int64_t> m(r * r, 0);
  for (std::size_t i = 0; i < r; ++i) m[i * r + i] = 1;
  return m;
}

std::vector<std::int64_t> matmul(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y,
                                 std::size_t r) {
  std::vector<std::int64_t> out(r * r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      const auto xik = x[i * r + k];
      if (xik == 0) continue;
      for (std::size_t j = 0; j < r; ++j) {
        std::int64_t prod = 0;
        std::int64_t sum = 0;
        if (__builtin_mul_overflow(xik, y[k * r + j], &prod) ||
            __builtin_add_overflow(out[i * r + j], prod, &sum))
          throw CapExceeded("root coordinates overflow 64-bit integers; element too long");
        out[i * r + j] = sum;
      }
    }
  return out;
}

constexpr std::size_t kMaxCanonicalSteps = 1u << 16;

}  // namespace

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (int x : w) h = (h ^ static_cast<std::size_t>(x + 2)) * 0x100000001b3ull;
  return h ^ w.size();
}

std::size_t CoxeterGroup::PairHash::operator()(const std::pair<Word, Word>& p) const noexcept {
  const std::size_t a = WordHash{}(p.first);
  return a ^ (WordHash{}(p.second) + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

CoxeterGroup::CoxeterGroup(GeneralizedCartanMatrix cartan, std::size_t cache_limit)
    : cartan_(std::move(cartan)), cache_limit_(cache_limit) {}

Context CoxeterGroup::create(GeneralizedCartanMatrix cartan, std::size_t bruhat_cache_limit) {
  return std::make_shared<const CoxeterGroup>(std::move(cartan), bruhat_cache_limit);
}

std::optional<bool> CoxeterGroup::cached_leq(const Word& v, const Word& w) const {
  std::lock_guard lock(mutex_);
  auto it = leq_cache_.find({v, w});
  if (it == leq_cache_.end()) return std::nullopt;
  return it->second;
}

void CoxeterGroup::store_leq(const Word& v, const Word& w, bool value) const {
  std::lock_guard lock(mutex_);
  if (leq_cache_.size() >= cache_limit_) leq_cache_.clear();
  leq_cache_.emplace(std::pair{v, w}, value);
}

std::size_t CoxeterGroup::cache_size() const {
  std::lock_guard lock(mutex_);
  return leq_cache_.size();
}

Context CoxeterGroup::thickened(int n) const {
  std::lock_guard lock(mutex_);
  auto it = thickened_.find(n);
  if (it != thickened_.end()) return it->second;
  auto ctx = create(thicken(cartan_, n), cache_limit_);
  thickened_.emplace(n, ctx);
  return ctx;
}

// ---------------------------------------------------------------------------
// WeylElt

WeylElt::WeylElt(Context ctx, std::vector<std::int64_t> geom, std::vector<std::int64_t> geom_inv)
    : ctx_(std::move(ctx)), geom_(std::move(geom)), geom_inv_(std::move(geom_inv)) {
  canonicalize();
}

void WeylElt::canonicalize() {
  const auto& a = ctx_->cartan();
  const std::size_t r = a.size();
  auto m = geom_;
  auto minv = geom_inv_;
  word_.clear();
  for (std::size_t step = 0;; ++step) {
    if (step > kMaxCanonicalSteps) throw CapExceeded("canonical form did not terminate");
    std::size_t s = r;
    for (std::size_t i = 0; i < r; ++i) {
      if (column_negative(minv, r, i)) {
        s = i;
        break;
      }
    }
    if (s == r) break;
    word_.push_back(static_cast<int>(s));
    apply_left(a, m, s);
    apply_right(a, minv, s);
  }
  if (m != identity_matrix(r)) throw Error("internal: canonical form did not reach the identity");
}

void WeylElt::check_vertex(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= rank())
    throw InvalidArgument("vertex index " + std::to_string(i) + " out of range");
}

WeylElt WeylElt::identity(const Context& ctx) {
  if (!ctx) throw InvalidArgument("null Coxeter context");
  const auto id = identity_matrix(ctx->rank());
  return {ctx, id, id};
}

WeylElt WeylElt::simple(const Context& ctx, int i) { return identity(ctx).right_mul(i); }

WeylElt WeylElt::from_word(const Context& ctx, std::span<const int> word) {
  if (!ctx) throw InvalidArgument("null Coxeter context");
  const auto& a = ctx->cartan();
  auto m = identity_matrix(ctx->rank());
  auto minv = m;
  for (int letter : word) {
    if (letter == kOne) continue;
    if (letter < 0 || static_cast<std::size_t>(letter) >= ctx->rank())
      throw InvalidArgument("vertex index " + std::to_string(letter) + " out of range");
    apply_right(a, m, static_cast<std::size_t>(letter));
    apply_left(a, minv, static_cast<std::size_t>(letter));
  }
  return {ctx, std::move(m), std::move(minv)};
}

bool WeylElt::has_left_descent(int i) const {
  check_vertex(i);
  return column_negative(geom_inv_, rank(), static_cast<std::size_t>(i));
}

bool WeylElt::has_right_descent(int i) const {
  check_vertex(i);
  return column_negative(geom_, rank(), static_cast<std::size_t>(i));
}

std::vector<int> WeylElt::left_descents() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < rank(); ++i)
    if (column_negative(geom_inv_, rank(), i)) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> WeylElt::right_descents() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < rank(); ++i)
    if (column_negative(geom_, rank(), i)) out.push_back(static_cast<int>(i));
  return out;
}

WeylElt WeylElt::left_mul(int i) const {
  check_vertex(i);
  auto m = geom_;
  auto minv = geom_inv_;
  apply_left(ctx_->cartan(), m, static_cast<std::size_t>(i));
  apply_right(ctx_->cartan(), minv, static_cast<std::size_t>(i));
  return {ctx_, std::move(m), std::move(minv)};
}

WeylElt WeylElt::right_mul(int i) const {
  check_vertex(i);
  auto m = geom_;
  auto minv = geom_inv_;
  apply_right(ctx_->cartan(), m, static_cast<std::size_t>(i));
  apply_left(ctx_->cartan(), minv, static_cast<std::size_t>(i));
  return {ctx_, std::move(m), std::move(minv)};
}

WeylElt WeylElt::inverse() const { return {ctx_, geom_inv_, geom_}; }

WeylElt operator*(const WeylElt& a, const WeylElt& b) {
  require_same_context(a, b);
  const std::size_t r = a.rank();
  return {a.ctx_, matmul(a.geom_, b.geom_, r), matmul(b.geom_inv_, a.geom_inv_, r)};
}

bool operator==(const WeylElt& a, const WeylElt& b) { return a.ctx_ == b.ctx_ && a.word_ == b.word_; }

// ---------------------------------------------------------------------------

void require_same_context(const WeylElt& a, const WeylElt& b) {
  if (a.context() != b.context()) throw ContextMismatch("Weyl group elements come from different contexts");
}

void require_tuple(const WTuple& t) {
  if (t.empty()) throw InvalidArgument("tuple must have at least one entry");
  for (const auto& x : t) require_same_context(t.front(), x);
}

WeylElt multiply(const WeylElt& u, const WeylElt& v) { return u * v; }
WeylElt inverse(const WeylElt& u) { return u.inverse(); }

bool is_reduced(const Context& ctx, std::span<const int> word) {
  auto x = WeylElt::identity(ctx);
  for (int letter : word) {
    if (letter == kOne) return false;
    if (x.has_right_descent(letter)) return false;
    x = x.right_mul(letter);
  }
  return true;
}

bool bruhat_leq(const WeylElt& v, const WeylElt& w) {
  require_same_context(v, w);
  if (v.length() > w.length()) return false;
  if (v.length() == w.length()) return v == w;
  if (v.is_identity()) return true;
  const auto& ctx = *w.context();
  if (auto hit = ctx.cached_leq(v.word(), w.word())) return *hit;
  // The canonical word starts with the smallest left descent of w.
  const int s = w.word().front();
  const WeylElt sw = w.left_mul(s);
  const bool result = v.has_left_descent(s) ? bruhat_leq(v.left_mul(s), sw) : bruhat_leq(v, sw);
  ctx.store_leq(v.word(), w.word(), result);
  return result;
}

bool tuple_leq(const WTuple& a, const WTuple& b) {
  if (a.size() != b.size()) throw InvalidArgument("tuples of different sizes");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!bruhat_leq(a[i], b[i])) return false;
  return true;
}

std::size_t tuple_length(const WTuple& t) {
  std::size_t total = 0;
  for (const auto& x : t) total += x.length();
  return total;
}

WeylElt demazure(const WeylElt& x, const WeylElt& y) {
  require_same_context(x, y);
  WeylElt out = x;
  for (int s : y.word())
    if (!out.has_right_descent(s)) out = out.right_mul(s);
  return out;
}

WeylElt m_star(const WTuple& t) {
  require_tuple(t);
  WeylElt out = t.front();
  for (std::size_t i = 1; i < t.size(); ++i) out = demazure(out, t[i]);
  return out;
}

WeylElt m_bullet(const WTuple& t) {
  require_tuple(t);
  WeylElt out = t.front();
  for (std::size_t i = 1; i < t.size(); ++i) out = out * t[i];
  return out;
}

WeylElt circ_r(const WeylElt& y, const WeylElt& x) {
  require_same_context(x, y);
  WeylElt out = y;
  for (int s : x.word())
    if (out.has_right_descent(s)) out = out.right_mul(s);
  return out;
}

bool is_positive_subexpression(const Context& ctx, std::span<const int> sub, std::span<const int> word) {
  if (sub.size() != word.size()) return false;
  auto prefix = WeylElt::identity(ctx);
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (word[k] == kOne) throw InvalidArgument("expression must not contain placeholders");
    if (sub[k] != kOne && sub[k] != word[k]) return false;
    if (prefix.has_right_descent(word[k])) return false;
    if (sub[k] != kOne) prefix = prefix.right_mul(sub[k]);
  }
  return true;
}

std::optional<Word> greedy_positive_subexpression(const WeylElt& v, std::span<const int> word) {
  Word sub(word.size(), kOne);
  WeylElt u = v;
  for (std::size_t k = word.size(); k-- > 0;) {
    if (u.has_right_descent(word[k])) {
      sub[k] = word[k];
      u = u.right_mul(word[k]);
    }
  }
  if (!u.is_identity()) return std::nullopt;
  return sub;
}

Word positive_subexpression(const WeylElt& v, std::span<const int> reduced) {
  const auto& ctx = v.context();
  if (!is_reduced(ctx, reduced)) throw InvalidArgument("positive_subexpression needs a reduced word");
  auto sub = greedy_positive_subexpression(v, reduced);
  if (!sub) throw InvalidArgument("v is not below the element of the reduced word");
  if (!is_positive_subexpression(ctx, *sub, reduced))
    throw CheckFailure("greedy subexpression failed the positivity condition");
  return *sub;
}

WTuple positive_tuple(const WeylElt& v, const WTuple& w) {
  require_tuple(w);
  require_same_context(v, w.front());
  Word concat;
  std::vector<std::size_t> bounds{0};
  for (const auto& x : w) {
    concat.insert(concat.end(), x.word().begin(), x.word().end());
    bounds.push_back(concat.size());
  }
  auto sub = greedy_positive_subexpression(v, concat);
  if (!sub) throw InvalidArgument("v is not below m_star(w)");
  if (!is_positive_subexpression(v.context(), *sub, concat))
    throw CheckFailure("greedy tuple subexpression failed the positivity condition");
  WTuple out;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    std::span<const int> part(sub->data() + bounds[i], bounds[i + 1] - bounds[i]);
    out.push_back(WeylElt::from_word(v.context(), part));
  }
  if (!(m_bullet(out) == v)) throw CheckFailure("positive tuple does not multiply to v");
  if (!(m_star(out) == v)) throw CheckFailure("positive tuple has m_star different from v");
  return out;
}

Context thickened_context(const Context& base, int n) {
  if (!base) throw InvalidArgument("null Coxeter context");
  return base->thickened(n);
}

namespace {

void require_thickening_of(const Context& base, const Context& thick, std::size_t n) {
  const auto& tc = thick->cartan();
  if (tc.infinity_count() + 1 != n || !(tc.base() == base->cartan()))
    throw ContextMismatch("thickened context does not match the base group and tuple size");
}

}  // namespace

Word th_word(const WTuple& w, const Context& thick) {
  require_tuple(w);
  require_thickening_of(w.front().context(), thick, w.size());
  const int base_rank = static_cast<int>(w.front().rank());
  Word out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out.push_back(base_rank + static_cast<int>(i) - 1);
    out.insert(out.end(), w[i].word().begin(), w[i].word().end());
  }
  return out;
}

WeylElt th(const WTuple& w, const Context& thick) {
  const Word word = th_word(w, thick);
  WeylElt out = WeylElt::from_word(thick, word);
  if (out.length() != tuple_length(w) + w.size() - 1)
    throw CheckFailure("th word is not reduced in the thickened group");
  return out;
}

WeylElt i_embed(const WeylElt& v, const Context& thick) {
  if (!(thick->cartan().base() == v.context()->cartan()))
    throw ContextMismatch("thickened context does not match the base group");
  return WeylElt::from_word(thick, v.word());
}

bool element_less(const WeylElt& a, const WeylElt& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.word() < b.word();
}

std::vector<WeylElt> lower_interval(const WeylElt& w) {
  if (w.is_identity()) return {w};
  const int s = w.word().front();
  auto below = lower_interval(w.left_mul(s));
  std::unordered_set<Word, WordHash> seen;
  std::vector<WeylElt> out;
  for (const auto& u : below)
    if (seen.insert(u.word()).second) out.push_back(u);
  for (const auto& u : below) {
    auto su = u.left_mul(s);
    if (seen.insert(su.word()).second) out.push_back(std::move(su));
  }
  std::sort(out.begin(), out.end(), element_less);
  return out;
}

std::vector<WeylElt> elements_up_to_length(const Context& ctx, std::size_t max_length, std::size_t cap) {
  std::vector<WeylElt> out{WeylElt::identity(ctx)};
  std::vector<WeylElt> level = out;
  for (std::size_t len = 1; len <= max_length && !level.empty(); ++len) {
    std::unordered_set<Word, WordHash> seen;
    std::vector<WeylElt> next;
    for (const auto& x : level)
      for (std::size_t i = 0; i < ctx->rank(); ++i) {
        const int s = static_cast<int>(i);
        if (x.has_right_descent(s)) continue;
        auto y = x.right_mul(s);
        if (seen.insert(y.word()).second) next.push_back(std::move(y));
      }
    if (out.size() + next.size() > cap) throw CapExceeded("element enumeration exceeded its cap");
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  std::sort(out.begin(), out.end(), element_less);
  return out;
}

std::vector<WeylElt> all_elements(const Context& ctx, std::size_t cap) {
  // A finite group has no element longer than cap.
  auto out = elements_up_to_length(ctx, cap, cap);
  return out;
}

WeylElt longest_element(const Context& ctx, std::size_t cap) {
  auto all = all_elements(ctx, cap);
  return all.back();
}

std::vector<WTuple> all_tuples(const std::vector<WeylElt>& elements, std::size_t n) {
  std::vector<WTuple> out{WTuple{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<WTuple> next;
    next.reserve(out.size() * elements.size());
    for (const auto& prefix : out)
      for (const auto& x : elements) {
        auto t = prefix;
        t.push_back(x);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

std::string format_word(const GeneralizedCartanMatrix& cartan, std::span<const int> word) {
  if (word.empty()) return "e";
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) os << ',';
    const int x = word[k];
    if (x == kOne) {
      os << '_';
    } else if (cartan.is_infinity(static_cast<std::size_t>(x))) {
      os << "inf" << (static_cast<std::size_t>(x) - cartan.base_rank() + 1);
    } else {
      os << (x + 1);
    }
  }
  os << ')';
  return os.str();
}

std::string format_element(const WeylElt& w) { return format_word(w.context()->cartan(), w.word()); }

std::string format_tuple(const WTuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += format_element(t[i]);
  }
  return out;
}

nlohmann::json word_to_json(const GeneralizedCartanMatrix& cartan, std::span<const int> word) {
  auto j = nlohmann::json::array();
  for (int x : word) {
    if (x == kOne) {
      j.push_back(0);
    } else if (cartan.is_infinity(static_cast<std::size_t>(x))) {
      j.push_back(-static_cast<int>(static_cast<std::size_t>(x) - cartan.base_rank() + 1));
    } else {
      j.push_back(x + 1);
    }
  }
  return j;
}

Word word_from_json(const GeneralizedCartanMatrix& cartan, const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidArgument("word JSON must be an array");
  Word out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InvalidArgument("word JSON entries must be integers");
    const int v = x.get<int>();
    if (v == 0) {
      out.push_back(kOne);
    } else if (v > 0) {
      if (static_cast<std::size_t>(v) > cartan.base_rank()) throw InvalidArgument("word letter out of range");
      out.push_back(v - 1);
    } else {
      if (static_cast<std::size_t>(-v) > cartan.infinity_count()) throw InvalidArgument("infinity letter out of range");
      out.push_back(static_cast<int>(cartan.base_rank()) - v - 1);
    }
  }
  return out;
}

}  // namespace tnn
