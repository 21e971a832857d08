#include "oracle.hpp"

#include <stdexcept>
#include <unordered_set>

namespace oracle {

namespace {

bool length_ascends(const WeylElt& p, int s) {
  return p.right_mul(s).length() > p.length();
}

bool contains(const std::vector<WeylElt>& xs, const WeylElt& x) {
  for (const auto& y : xs)
    if (y == x) return true;
  return false;
}

}  // namespace

std::vector<WeylElt> subword_products(const Context& ctx, const Word& word) {
  std::unordered_set<Word, tnn::WordHash> seen;
  std::vector<WeylElt> out;
  const std::size_t m = word.size();
  if (m > 24) throw std::runtime_error("subword oracle: word too long");
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    Word sub;
    for (std::size_t k = 0; k < m; ++k)
      if (mask >> k & 1u) sub.push_back(word[k]);
    auto x = WeylElt::from_word(ctx, sub);
    if (seen.insert(x.word()).second) out.push_back(std::move(x));
  }
  return out;
}

bool bruhat_leq(const WeylElt& v, const WeylElt& w) {
  return contains(subword_products(w.context(), w.word()), v);
}

WeylElt demazure(const WeylElt& x, const WeylElt& y) {
  const auto xs = subword_products(x.context(), x.word());
  const auto ys = subword_products(y.context(), y.word());
  std::vector<WeylElt> prods;
  for (const auto& a : xs)
    for (const auto& b : ys) prods.push_back(a * b);
  const WeylElt* best = &prods.front();
  for (const auto& p : prods)
    if (p.length() > best->length()) best = &p;
  const auto below = subword_products(best->context(), best->word());
  for (const auto& p : prods)
    if (!contains(below, p)) throw std::runtime_error("demazure oracle: no unique maximum");
  return *best;
}

WeylElt circ_r(const WeylElt& y, const WeylElt& x) {
  std::vector<WeylElt> prods;
  for (const auto& u : subword_products(x.context(), x.word())) prods.push_back(y * u);
  const WeylElt* best = &prods.front();
  for (const auto& p : prods)
    if (p.length() < best->length()) best = &p;
  for (const auto& p : prods)
    if (!oracle::bruhat_leq(*best, p)) throw std::runtime_error("circ_r oracle: no unique minimum");
  return *best;
}

std::vector<Word> positive_subexpressions(const WeylElt& v, const Word& word) {
  const auto& ctx = v.context();
  const std::size_t m = word.size();
  std::vector<Word> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    Word sub(m, tnn::kOne);
    auto p = WeylElt::identity(ctx);
    bool ok = true;
    for (std::size_t k = 0; k < m && ok; ++k) {
      ok = length_ascends(p, word[k]);
      if (mask >> k & 1u) {
        sub[k] = word[k];
        p = p.right_mul(word[k]);
      }
    }
    if (ok && p == v) out.push_back(std::move(sub));
  }
  return out;
}

bool is_positive_tuple(const WTuple& v, const WTuple& w) {
  const std::size_t n = w.size();
  if (v.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (!oracle::bruhat_leq(v[i], w[i])) return false;
  std::vector<std::vector<WeylElt>> lower_v, lower_w;
  for (std::size_t i = 0; i < n; ++i) {
    lower_v.push_back(subword_products(v[i].context(), v[i].word()));
    lower_w.push_back(subword_products(w[i].context(), w[i].word()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    WeylElt target = v[0];
    for (std::size_t j = 1; j <= i; ++j) target = target * v[j];
    // Enumerate (v'_1..v'_{i-1}) below v and v'_i below w_i.
    std::vector<std::pair<WTuple, WeylElt>> partial{{WTuple{}, WeylElt::identity(v[0].context())}};
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<std::pair<WTuple, WeylElt>> next;
      for (const auto& [t, p] : partial)
        for (const auto& x : lower_v[j]) {
          auto t2 = t;
          t2.push_back(x);
          next.emplace_back(std::move(t2), p * x);
        }
      partial = std::move(next);
    }
    for (const auto& [t, p] : partial)
      for (const auto& x : lower_w[i]) {
        if (!(p * x == target)) continue;
        for (std::size_t j = 0; j < i; ++j)
          if (!(t[j] == v[j])) return false;
        if (!(x == v[i])) return false;
      }
  }
  return true;
}

std::vector<WTuple> positive_tuples(const WeylElt& v, const WTuple& w) {
  std::vector<WTuple> candidates{WTuple{}};
  for (const auto& wi : w) {
    std::vector<WTuple> next;
    for (const auto& t : candidates)
      for (const auto& x : subword_products(wi.context(), wi.word())) {
        auto t2 = t;
        t2.push_back(x);
        next.push_back(std::move(t2));
      }
    candidates = std::move(next);
  }
  std::vector<WTuple> out;
  for (const auto& t : candidates) {
    WeylElt p = t[0];
    for (std::size_t j = 1; j < t.size(); ++j) p = p * t[j];
    if (p == v && is_positive_tuple(t, w)) out.push_back(t);
  }
  return out;
}

DeletionWitness single_deletions(const WeylElt& v, const WTuple& w) {
  DeletionWitness out;
  Word concat;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (int s : w[i].word()) {
      concat.push_back(s);
      owner.push_back(i);
    }
  for (std::size_t l = 0; l < concat.size(); ++l) {
    Word del = concat;
    del.erase(del.begin() + static_cast<long>(l));
    if (!(WeylElt::from_word(v.context(), del) == v)) continue;
    ++out.count;
    WTuple t = w;
    Word factor = w[owner[l]].word();
    std::size_t offset = 0;
    for (std::size_t k = 0; k < l; ++k)
      if (owner[k] == owner[l]) ++offset;
    factor.erase(factor.begin() + static_cast<long>(offset));
    t[owner[l]] = WeylElt::from_word(v.context(), factor);
    out.deleted.push_back(std::move(t));
  }
  return out;
}

BruhatFactorization eliminate(const tnn::RatMat& g) {
  using tnn::RatMat;
  using tnn::Rational;
  const std::size_t k = g.dim();
  RatMat m = g;
  RatMat left = RatMat::identity(k);   // left * g * right = m
  RatMat right = RatMat::identity(k);
  tnn::Permutation perm(k, -1);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t p = k;
    for (std::size_t r = k; r-- > 0;)
      if (sgn(m(r, j)) != 0) {
        p = r;
        break;
      }
    if (p == k) throw std::runtime_error("eliminate: singular matrix");
    perm[j] = static_cast<int>(p);
    const Rational piv = m(p, j);
    for (std::size_t r = 0; r < p; ++r) {
      const Rational f = m(r, j) / piv;
      if (sgn(f) == 0) continue;
      for (std::size_t c = 0; c < k; ++c) {
        m(r, c) -= f * m(p, c);
        left(r, c) -= f * left(p, c);
      }
    }
    for (std::size_t c = j + 1; c < k; ++c) {
      const Rational f = m(p, c) / piv;
      if (sgn(f) == 0) continue;
      for (std::size_t r = 0; r < k; ++r) {
        m(r, c) -= f * m(r, j);
        right(r, c) -= f * right(r, j);
      }
    }
  }
  BruhatFactorization out{left.inverse(), m, right.inverse(), perm};
  if (!out.b1.is_upper_triangular() || !out.b2.is_upper_triangular() || !(out.b1 * out.m * out.b2 == g))
    throw std::runtime_error("eliminate: factorization check failed");
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t r = 0; r < k; ++r)
      if ((sgn(m(r, j)) != 0) != (static_cast<int>(r) == perm[j]))
        throw std::runtime_error("eliminate: result is not monomial");
  return out;
}

}  // namespace oracle
