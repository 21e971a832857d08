#include "tnn/typeA_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "tnn/error.hpp"

namespace tnn {

// ---------------------------------------------------------------------------
// RatMat

RatMat::RatMat(std::size_t k) : k_(k), a_(k * k) {}

RatMat::RatMat(std::initializer_list<std::initializer_list<Rational>> rows) : k_(rows.size()), a_() {
  a_.reserve(k_ * k_);
  for (const auto& r : rows) {
    if (r.size() != k_) throw InvalidArgument("matrix must be square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

RatMat RatMat::identity(std::size_t k) {
  RatMat m(k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = 1;
  return m;
}

RatMat operator*(const RatMat& x, const RatMat& y) {
  if (x.k_ != y.k_) throw InvalidArgument("matrix size mismatch");
  const std::size_t k = x.k_;
  RatMat out(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      const Rational& xil = x(i, l);
      if (sgn(xil) == 0) continue;
      for (std::size_t j = 0; j < k; ++j) out(i, j) += xil * y(l, j);
    }
  return out;
}

Rational RatMat::det() const {
  std::vector<Rational> m = a_;
  Rational d = 1;
  for (std::size_t c = 0; c < k_; ++c) {
    std::size_t p = c;
    while (p < k_ && sgn(m[p * k_ + c]) == 0) ++p;
    if (p == k_) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < k_; ++j) std::swap(m[p * k_ + j], m[c * k_ + j]);
      d = -d;
    }
    const Rational piv = m[c * k_ + c];
    d *= piv;
    for (std::size_t r = c + 1; r < k_; ++r) {
      if (sgn(m[r * k_ + c]) == 0) continue;
      const Rational f = m[r * k_ + c] / piv;
      for (std::size_t j = c; j < k_; ++j) m[r * k_ + j] -= f * m[c * k_ + j];
    }
  }
  return d;
}

RatMat RatMat::inverse() const {
  RatMat m = *this;
  RatMat inv = identity(k_);
  for (std::size_t c = 0; c < k_; ++c) {
    std::size_t p = c;
    while (p < k_ && sgn(m(p, c)) == 0) ++p;
    if (p == k_) throw InvalidArgument("matrix is singular");
    if (p != c)
      for (std::size_t j = 0; j < k_; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rational piv = m(c, c);
    for (std::size_t j = 0; j < k_; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < k_; ++r) {
      if (r == c || sgn(m(r, c)) == 0) continue;
      const Rational f = m(r, c);
      for (std::size_t j = 0; j < k_; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::size_t RatMat::rank(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
  if (r1 <= r0 || c1 <= c0) return 0;
  const std::size_t rows = r1 - r0, cols = c1 - c0;
  std::vector<Rational> m(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i * cols + j] = (*this)(r0 + i, c0 + j);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && sgn(m[p * cols + c]) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m[p * cols + j], m[rank * cols + j]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (sgn(m[r * cols + c]) == 0) continue;
      const Rational f = m[r * cols + c] / m[rank * cols + c];
      for (std::size_t j = c; j < cols; ++j) m[r * cols + j] -= f * m[rank * cols + j];
    }
    ++rank;
  }
  return rank;
}

bool RatMat::is_upper_triangular() const {
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (sgn((*this)(i, j)) != 0) return false;
  return true;
}

bool RatMat::is_lower_triangular() const {
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = i + 1; j < k_; ++j)
      if (sgn((*this)(i, j)) != 0) return false;
  return true;
}

std::string RatMat::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < k_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < k_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
  }
  os << ']';
  return os.str();
}

nlohmann::json to_json(const RatMat& m) {
  auto j = nlohmann::json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(m(r, c).get_str());
    j.push_back(std::move(row));
  }
  return j;
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw InvalidArgument("empty rational");
  const auto slash = s.find('/');
  auto digits_ok = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t start = allow_sign && (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(start), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw InvalidArgument("malformed rational '" + s + "'");
  Rational q;
  q.get_num() = mpz_class(num[0] == '+' ? num.substr(1) : num);
  q.get_den() = mpz_class(den);
  if (sgn(q.get_den()) == 0) throw InvalidArgument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

RatMat ratmat_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidArgument("matrix JSON must be an array of rows");
  const std::size_t k = j.size();
  RatMat m(k);
  for (std::size_t r = 0; r < k; ++r) {
    if (!j[r].is_array() || j[r].size() != k) throw InvalidArgument("matrix JSON must be square");
    for (std::size_t c = 0; c < k; ++c) {
      const auto& x = j[r][c];
      if (x.is_string())
        m(r, c) = parse_rational(x.get<std::string>());
      else if (x.is_number_integer())
        m(r, c) = Rational(x.get<long>());
      else
        throw InvalidArgument("matrix entries must be \"p/q\" strings");
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Type A plumbing

Context sl_weyl_group(std::size_t k) {
  if (k < 2) throw InvalidArgument("SL_k needs k >= 2");
  return CoxeterGroup::create(cartan_of_type(CartanFamily::A, static_cast<int>(k - 1)));
}

std::size_t sl_dimension(const Context& ctx) {
  if (!ctx) throw InvalidArgument("null Coxeter context");
  const int r = static_cast<int>(ctx->rank());
  if (!(ctx->cartan() == cartan_of_type(CartanFamily::A, r)))
    throw ContextMismatch("matrix operations need a type A context");
  return ctx->rank() + 1;
}

namespace {

void check_index(std::size_t k, int i) {
  if (k < 2) throw InvalidArgument("SL_k needs k >= 2");
  if (i < 0 || static_cast<std::size_t>(i) + 1 >= k)
    throw InvalidArgument("generator index " + std::to_string(i) + " out of range for SL_" + std::to_string(k));
}

void check_size(const Context& ctx, const RatMat& g) {
  if (g.dim() != sl_dimension(ctx)) throw InvalidArgument("matrix size does not match the Weyl group");
}

}  // namespace

RatMat x_gen(std::size_t k, int i, const Rational& a) {
  check_index(k, i);
  auto m = RatMat::identity(k);
  m(static_cast<std::size_t>(i), static_cast<std::size_t>(i) + 1) = a;
  return m;
}

RatMat y_gen(std::size_t k, int i, const Rational& a) {
  check_index(k, i);
  auto m = RatMat::identity(k);
  m(static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(i)) = a;
  return m;
}

RatMat sdot(std::size_t k, int i) { return x_gen(k, i, 1) * y_gen(k, i, -1) * x_gen(k, i, 1); }

RatMat torus(std::size_t k, int i, const Rational& t) {
  check_index(k, i);
  if (sgn(t) == 0) throw InvalidArgument("torus parameter must be nonzero");
  auto m = RatMat::identity(k);
  m(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = t;
  m(static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(i) + 1) = 1 / t;
  return m;
}

Permutation to_permutation(const WeylElt& w) {
  const std::size_t k = sl_dimension(w.context());
  Permutation p(k);
  for (std::size_t j = 0; j < k; ++j) p[j] = static_cast<int>(j);
  for (int s : w.word()) std::swap(p[static_cast<std::size_t>(s)], p[static_cast<std::size_t>(s) + 1]);
  return p;
}

WeylElt from_permutation(const Context& ctx, const Permutation& perm) {
  const std::size_t k = sl_dimension(ctx);
  if (perm.size() != k) throw InvalidArgument("permutation has the wrong size");
  std::vector<bool> seen(k, false);
  for (int x : perm) {
    if (x < 0 || static_cast<std::size_t>(x) >= k || seen[static_cast<std::size_t>(x)])
      throw InvalidArgument("not a permutation");
    seen[static_cast<std::size_t>(x)] = true;
  }
  // Strip right descents: w = w' s_j whenever w(j) > w(j+1).
  Permutation p = perm;
  Word reversed;
  for (bool again = true; again;) {
    again = false;
    for (std::size_t j = 0; j + 1 < k; ++j)
      if (p[j] > p[j + 1]) {
        std::swap(p[j], p[j + 1]);
        reversed.push_back(static_cast<int>(j));
        again = true;
        break;
      }
  }
  std::reverse(reversed.begin(), reversed.end());
  return WeylElt::from_word(ctx, reversed);
}

RatMat permutation_matrix(const Permutation& perm) {
  RatMat m(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) m(static_cast<std::size_t>(perm[j]), j) = 1;
  return m;
}

RatMat dot(const WeylElt& w) {
  const std::size_t k = sl_dimension(w.context());
  auto m = RatMat::identity(k);
  for (int s : w.word()) m = m * sdot(k, s);
  return m;
}

WeylElt bruhat_cell(const Context& ctx, const RatMat& g) {
  check_size(ctx, g);
  if (!g.invertible()) throw InvalidArgument("bruhat_cell needs an invertible matrix");
  const std::size_t k = g.dim();
  // r[i][c] = rank of rows >= i, first c columns.
  std::vector<std::vector<std::size_t>> r(k + 1, std::vector<std::size_t>(k + 1, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 1; c <= k; ++c) r[i][c] = g.rank(i, k, 0, c);
  Permutation perm(k, -1);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i)
      if (r[i][j + 1] - r[i][j] == 1) perm[j] = static_cast<int>(i);
  const WeylElt w = from_permutation(ctx, perm);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c <= k; ++c) {
      std::size_t count = 0;
      for (std::size_t l = 0; l < c; ++l)
        if (static_cast<std::size_t>(perm[l]) >= i) ++count;
      if (count != r[i][c]) throw Error("internal: rank conditions are inconsistent");
    }
  return w;
}

WeylElt opposite_cell(const Context& ctx, const RatMat& g) {
  check_size(ctx, g);
  const auto w0 = longest_element(ctx);
  return w0 * bruhat_cell(ctx, dot(w0).inverse() * g);
}

WeylElt opposite_double_cell(const Context& ctx, const RatMat& g) {
  check_size(ctx, g);
  const auto w0 = longest_element(ctx);
  const RatMat d = dot(w0);
  return w0 * bruhat_cell(ctx, d.inverse() * g * d) * w0;
}

bool is_tnn(const RatMat& g, std::size_t max_k) {
  const std::size_t k = g.dim();
  if (k > max_k) throw CapExceeded("is_tnn is limited to k <= " + std::to_string(max_k));
  const std::size_t full = std::size_t{1} << k;
  std::vector<std::vector<std::size_t>> by_size(k + 1);
  for (std::size_t s = 1; s < full; ++s) by_size[static_cast<std::size_t>(std::popcount(s))].push_back(s);
  for (std::size_t sz = 1; sz <= k; ++sz)
    for (auto rows : by_size[sz])
      for (auto cols : by_size[sz]) {
        RatMat minor(sz);
        std::size_t a = 0;
        for (std::size_t i = 0; i < k; ++i) {
          if (!(rows >> i & 1u)) continue;
          std::size_t b = 0;
          for (std::size_t j = 0; j < k; ++j)
            if (cols >> j & 1u) minor(a, b++) = g(i, j);
          ++a;
        }
        if (sgn(minor.det()) < 0) return false;
      }
  return true;
}

RatMat mr_matrix(const Context& ctx, const Word& word, const Word& sub, const std::vector<Rational>& params) {
  const std::size_t k = sl_dimension(ctx);
  if (!is_reduced(ctx, word)) throw InvalidArgument("mr_matrix needs a reduced word");
  if (!is_positive_subexpression(ctx, sub, word))
    throw InvalidArgument("mr_matrix needs a positive subexpression of the word");
  const auto skipped = static_cast<std::size_t>(std::count(sub.begin(), sub.end(), kOne));
  if (params.size() != skipped)
    throw InvalidArgument("expected " + std::to_string(skipped) + " parameters, got " + std::to_string(params.size()));
  auto g = RatMat::identity(k);
  std::size_t next = 0;
  for (std::size_t pos = 0; pos < word.size(); ++pos) {
    if (sub[pos] != kOne) {
      g = g * sdot(k, word[pos]);
    } else {
      const Rational& t = params[next++];
      if (sgn(t) <= 0) throw InvalidArgument("parameters must be positive");
      g = g * y_gen(k, word[pos], t);
    }
  }
  if (checked_mode()) {
    const auto w = WeylElt::from_word(ctx, word);
    const auto v = WeylElt::from_word(ctx, sub);
    if (!(bruhat_cell(ctx, g) == w) || !(opposite_cell(ctx, g) == v))
      throw CheckFailure("cell point is not in the expected Richardson stratum");
  }
  return g;
}

RatMat iota(const RatMat& g) {
  RatMat out = g;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j)
      if ((i + j) % 2 == 1) out(i, j) = -out(i, j);
  return out;
}

RatMat phi_flag(const Context& ctx, const RatMat& g) {
  check_size(ctx, g);
  return iota(dot(longest_element(ctx)).inverse() * g);
}

RatMat flag_canonical(const RatMat& g) {
  if (!g.invertible()) throw InvalidArgument("flag representative must be invertible");
  const std::size_t k = g.dim();
  RatMat m = g;
  std::vector<std::size_t> pivot;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l < j; ++l) {
      const Rational f = m(pivot[l], j);
      if (sgn(f) == 0) continue;
      for (std::size_t r = 0; r < k; ++r) m(r, j) -= f * m(r, l);
    }
    std::size_t p = k;
    for (std::size_t r = k; r-- > 0;)
      if (sgn(m(r, j)) != 0) {
        p = r;
        break;
      }
    if (p == k) throw Error("internal: flag column vanished");
    const Rational s = m(p, j);
    for (std::size_t r = 0; r < k; ++r) m(r, j) /= s;
    pivot.push_back(p);
  }
  return m;
}

bool same_flag(const RatMat& g, const RatMat& h) { return (g.inverse() * h).is_upper_triangular(); }

std::optional<Rational> sl2_chart(const RatMat& g) {
  if (g.dim() != 2) throw InvalidArgument("sl2_chart needs a 2x2 matrix");
  if (!g.invertible()) throw InvalidArgument("flag representative must be invertible");
  if (sgn(g(0, 0)) == 0) return std::nullopt;
  return Rational(g(1, 0) / g(0, 0));
}

std::optional<std::pair<RatMat, RatMat>> lu_decompose(const RatMat& g) {
  const std::size_t k = g.dim();
  RatMat l = RatMat::identity(k);
  RatMat u = g;
  for (std::size_t c = 0; c < k; ++c) {
    if (sgn(u(c, c)) == 0) return std::nullopt;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (sgn(u(r, c)) == 0) continue;
      const Rational f = u(r, c) / u(c, c);
      l(r, c) = f;
      for (std::size_t j = 0; j < k; ++j) u(r, j) -= f * u(c, j);
    }
  }
  return std::pair{l, u};
}

Rational random_positive_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(1, 20);
  Rational q(d(rng), d(rng));
  q.canonicalize();
  return q;
}

RatMat random_upper(std::size_t k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sign(0, 1);
  std::uniform_int_distribution<int> zero(0, 3);
  RatMat b(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      if (j > i && zero(rng) == 0) continue;
      Rational q = random_positive_rational(rng);
      b(i, j) = sign(rng) ? q : Rational(-q);
    }
  return b;
}

}  // namespace tnn
