#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tnn/error.hpp"

using namespace tnn;
using fx::elt;
using fx::word1;

TEST_CASE("group laws in A2") {
  const auto ctx = fx::typeA(2);
  const auto s1 = WeylElt::simple(ctx, 0);
  const auto s2 = WeylElt::simple(ctx, 1);
  CHECK((s1 * s1).is_identity());
  const auto s12 = multiply(s1, s2);
  CHECK(s12.length() == 2);
  CHECK(s12.word() == word1({1, 2}));
  CHECK(multiply(s1, multiply(s2, s1)) == multiply(s2, multiply(s1, s2)));
  CHECK(inverse(s12) == s2 * s1);
  CHECK((s12 * inverse(s12)).is_identity());
  CHECK(longest_element(ctx).length() == 3);
  CHECK(all_elements(ctx).size() == 6);
  CHECK(all_elements(fx::typeA(3)).size() == 24);
  CHECK(all_elements(fx::group(CartanFamily::B, 2)).size() == 8);
  CHECK(all_elements(fx::group(CartanFamily::B, 3)).size() == 48);
  CHECK(all_elements(fx::group(CartanFamily::D, 4)).size() == 192);
}

TEST_CASE("context mismatch and bad vertices") {
  const auto a = fx::typeA(2);
  const auto b = fx::typeA(2);
  CHECK_THROWS_AS(WeylElt::simple(a, 0) * WeylElt::simple(b, 0), ContextMismatch);
  CHECK_THROWS_AS(bruhat_leq(WeylElt::simple(a, 0), WeylElt::simple(b, 0)), ContextMismatch);
  CHECK_THROWS_AS(WeylElt::simple(a, 2), InvalidArgument);
  CHECK_THROWS_AS(WeylElt::simple(a, 0).has_left_descent(-3), InvalidArgument);
  CHECK_THROWS_AS(m_star(WTuple{}), InvalidArgument);
}

TEST_CASE("descents") {
  const auto ctx = fx::typeA(2);
  CHECK(WeylElt::identity(ctx).left_descents().empty());
  CHECK(elt(ctx, {1, 2}).left_descents() == std::vector<int>{0});
  CHECK(elt(ctx, {1, 2}).right_descents() == std::vector<int>{1});

  const auto dihedral = thickened_context(fx::typeA(1), 2);
  const auto w = WeylElt::from_word(dihedral, Word{0, 1, 0});
  CHECK(w.length() == 3);
  CHECK(w.left_descents() == std::vector<int>{0});
  // Cross-check against length changes for all words up to length 3.
  for (const auto& x : elements_up_to_length(dihedral, 3))
    for (int i = 0; i < 2; ++i) {
      CHECK(x.has_left_descent(i) == (x.left_mul(i).length() < x.length()));
      CHECK(x.has_right_descent(i) == (x.right_mul(i).length() < x.length()));
    }
}

TEST_CASE("descent criterion matches length in finite groups") {
  for (auto [fam, r] : {std::pair{CartanFamily::A, 3}, {CartanFamily::B, 3}, {CartanFamily::C, 3}}) {
    const auto ctx = fx::group(fam, r);
    for (const auto& x : all_elements(ctx))
      for (int i = 0; i < r; ++i) {
        CHECK(x.has_left_descent(i) == (x.left_mul(i).length() < x.length()));
        CHECK(x.has_right_descent(i) == (x.right_mul(i).length() < x.length()));
      }
  }
}

TEST_CASE("bruhat order examples") {
  const auto ctx = fx::typeA(2);
  for (const auto& w : all_elements(ctx)) CHECK(bruhat_leq(WeylElt::identity(ctx), w));
  CHECK(bruhat_leq(elt(ctx, {1}), elt(ctx, {2, 1})));
  CHECK_FALSE(bruhat_leq(elt(ctx, {1, 2}), elt(ctx, {2, 1})));
  CHECK(oracle::bruhat_leq(elt(ctx, {1}), elt(ctx, {2, 1})));
  CHECK_FALSE(oracle::bruhat_leq(elt(ctx, {1, 2}), elt(ctx, {2, 1})));
}

TEST_CASE("bruhat order agrees with subword oracle") {
  for (auto [fam, r] : {std::pair{CartanFamily::A, 3}, {CartanFamily::B, 2}, {CartanFamily::B, 3}}) {
    const auto ctx = fx::group(fam, r);
    const auto all = all_elements(ctx);
    for (const auto& w : all) {
      const auto lower = oracle::subword_products(ctx, w.word());
      const auto interval = lower_interval(w);
      CHECK(interval.size() == lower.size());
      for (const auto& v : all) {
        const bool expect = std::find(lower.begin(), lower.end(), v) != lower.end();
        CHECK(bruhat_leq(v, w) == expect);
      }
    }
  }
  // Infinite group: thickened A2 with two factors, bounded length.
  const auto thick = thickened_context(fx::typeA(2), 2);
  const auto elems = elements_up_to_length(thick, 4);
  for (const auto& w : elems) {
    const auto lower = oracle::subword_products(thick, w.word());
    for (const auto& v : elems) {
      const bool expect = std::find(lower.begin(), lower.end(), v) != lower.end();
      CHECK(bruhat_leq(v, w) == expect);
    }
  }
}

TEST_CASE("demazure examples") {
  const auto ctx = fx::typeA(2);
  const auto s1 = elt(ctx, {1});
  CHECK(demazure(s1, s1) == s1);
  CHECK(demazure(s1, elt(ctx, {2})) == elt(ctx, {1, 2}));
  CHECK(m_star({elt(ctx, {1, 2}), elt(ctx, {2, 1})}) == elt(ctx, {1, 2, 1}));
  CHECK(oracle::demazure(elt(ctx, {1, 2}), elt(ctx, {2, 1})) == elt(ctx, {1, 2, 1}));
  CHECK(m_bullet({elt(ctx, {1, 2}), elt(ctx, {2, 1})}) == WeylElt::identity(ctx));
  CHECK(m_star({s1}) == s1);
}

TEST_CASE("circ_r examples") {
  const auto ctx = fx::typeA(2);
  const auto w0 = elt(ctx, {1, 2, 1});
  for (const auto& y : all_elements(ctx)) CHECK(circ_r(y, WeylElt::identity(ctx)) == y);
  for (const auto& x : all_elements(ctx)) CHECK(circ_r(WeylElt::identity(ctx), x).is_identity());
  CHECK(circ_r(w0, elt(ctx, {1})) == elt(ctx, {1, 2}));
  CHECK(oracle::circ_r(w0, elt(ctx, {1})) == elt(ctx, {1, 2}));
}

TEST_CASE("demazure and circ_r against brute force in S3 and S4 and B2") {
  for (auto [fam, r] : {std::pair{CartanFamily::A, 2}, {CartanFamily::A, 3}, {CartanFamily::B, 2}}) {
    const auto ctx = fx::group(fam, r);
    const auto all = all_elements(ctx);
    for (const auto& x : all)
      for (const auto& y : all) {
        REQUIRE(demazure(x, y) == oracle::demazure(x, y));
        REQUIRE(circ_r(y, x) == oracle::circ_r(y, x));
      }
  }
}

TEST_CASE("demazure monoid is associative") {
  const auto s3 = all_elements(fx::typeA(2));
  for (const auto& a : s3)
    for (const auto& b : s3)
      for (const auto& c : s3) CHECK(demazure(demazure(a, b), c) == demazure(a, demazure(b, c)));
  const auto s4 = all_elements(fx::typeA(3));
  std::mt19937 rng(1234);
  std::uniform_int_distribution<std::size_t> pick(0, s4.size() - 1);
  for (int t = 0; t < 500; ++t) {
    const auto &a = s4[pick(rng)], &b = s4[pick(rng)], &c = s4[pick(rng)];
    CHECK(demazure(demazure(a, b), c) == demazure(a, demazure(b, c)));
  }
}

TEST_CASE("positive subexpression examples") {
  const auto ctx = fx::typeA(2);
  const Word w = word1({1, 2, 1});
  CHECK(positive_subexpression(WeylElt::identity(ctx), w) == Word(3, kOne));
  CHECK(positive_subexpression(elt(ctx, {1}), w) == word1({0, 0, 1}));
  CHECK(positive_subexpression(elt(ctx, {1, 2, 1}), w) == w);
  CHECK(oracle::positive_subexpressions(elt(ctx, {1}), w) == std::vector<Word>{word1({0, 0, 1})});
  CHECK_THROWS_AS(positive_subexpression(elt(ctx, {1}), word1({1, 1})), InvalidArgument);
  CHECK_THROWS_AS(positive_subexpression(elt(ctx, {1, 2}), word1({2, 1})), InvalidArgument);
}

TEST_CASE("positive subexpression is unique in S4") {
  const auto ctx = fx::typeA(3);
  const auto all = all_elements(ctx);
  for (const auto& w : all)
    for (const auto& v : lower_interval(w)) {
      const auto found = oracle::positive_subexpressions(v, w.word());
      REQUIRE(found.size() == 1);
      CHECK(found.front() == positive_subexpression(v, w.word()));
    }
}

TEST_CASE("positive tuples") {
  const auto a1 = fx::typeA(1);
  const auto s = elt(a1, {1});
  const auto e = WeylElt::identity(a1);
  CHECK(positive_tuple(s, {s}) == WTuple{s});
  CHECK(positive_tuple(s, {s, s}) == WTuple{e, s});
  CHECK(oracle::is_positive_tuple({e, s}, {s, s}));
  CHECK_FALSE(oracle::is_positive_tuple({s, e}, {s, s}));
  CHECK_THROWS_AS(positive_tuple(s, {e, e}), InvalidArgument);

  const auto a2 = fx::typeA(2);
  const WTuple w{elt(a2, {1, 2}), elt(a2, {2, 1})};
  const auto v = elt(a2, {1, 2});
  const auto got = positive_tuple(v, w);
  CHECK(oracle::positive_tuples(v, w) == std::vector<WTuple>{got});
  CHECK(m_star(got) == v);
}

TEST_CASE("positive tuples agree with definition over A1 and A2, n = 2") {
  for (int r : {1, 2}) {
    const auto ctx = fx::typeA(r);
    const auto all = all_elements(ctx);
    for (const auto& w : all_tuples(all, 2))
      for (const auto& v : lower_interval(m_star(w))) {
        const auto expect = oracle::positive_tuples(v, w);
        REQUIRE(expect.size() == 1);
        CHECK(positive_tuple(v, w) == expect.front());
      }
  }
}

TEST_CASE("thickening words") {
  const auto a1 = fx::typeA(1);
  const auto s = elt(a1, {1});
  const auto t1 = thickened_context(a1, 1);
  CHECK(th_word({s}, t1) == Word{0});
  const auto t2 = thickened_context(a1, 2);
  CHECK(t2 == thickened_context(a1, 2));
  CHECK(th_word({s, s}, t2) == Word{0, 1, 0});
  CHECK(th({s, s}, t2).length() == 3);
  CHECK(format_word(t2->cartan(), th_word({s, s}, t2)) == "(1,inf1,1)");
  CHECK(bruhat_leq(i_embed(s, t2), th({s, s}, t2)));
  CHECK(bruhat_leq(s, m_star({s, s})));
  CHECK_THROWS_AS(th_word({s, s}, t1), ContextMismatch);
  CHECK_THROWS_AS(i_embed(s, thickened_context(fx::typeA(2), 2)), ContextMismatch);
}

TEST_CASE("thickening order equivalences") {
  for (int r : {1, 2}) {
    const auto ctx = fx::typeA(r);
    const auto thick = thickened_context(ctx, 2);
    const auto all = all_elements(ctx);
    const auto tuples = all_tuples(all, 2);
    for (const auto& v : all)
      for (const auto& v2 : all) CHECK(bruhat_leq(v, v2) == bruhat_leq(i_embed(v, thick), i_embed(v2, thick)));
    for (const auto& w : tuples) {
      const auto tw = th(w, thick);
      for (const auto& v : all) CHECK(bruhat_leq(v, m_star(w)) == bruhat_leq(i_embed(v, thick), tw));
      for (const auto& w2 : tuples) CHECK(tuple_leq(w, w2) == bruhat_leq(tw, th(w2, thick)));
    }
  }
}

TEST_CASE("tuple positivity matches the interleaved subexpression") {
  const auto ctx = fx::typeA(1);
  const auto thick = thickened_context(ctx, 2);
  const auto all = all_elements(ctx);
  for (const auto& w : all_tuples(all, 2)) {
    const auto tw = th_word(w, thick);
    for (const auto& v : all_tuples(all, 2)) {
      if (!tuple_leq(v, w)) continue;
      Word sub;
      for (std::size_t i = 0; i < 2; ++i) {
        if (i) sub.push_back(kOne);
        const auto part = positive_subexpression(v[i], w[i].word());
        sub.insert(sub.end(), part.begin(), part.end());
      }
      CHECK(oracle::is_positive_tuple(v, w) == is_positive_subexpression(thick, sub, tw));
    }
  }
}

TEST_CASE("canonical words are canonical") {
  std::mt19937 rng(99);
  const std::vector<Context> ctxs{fx::typeA(2), fx::group(CartanFamily::B, 2),
                                  thickened_context(fx::typeA(1), 2)};
  for (const auto& ctx : ctxs) {
    std::uniform_int_distribution<int> letter(0, static_cast<int>(ctx->rank()) - 1);
    std::uniform_int_distribution<int> len(0, 12);
    for (int t = 0; t < 300; ++t) {
      Word a(static_cast<std::size_t>(len(rng))), b(static_cast<std::size_t>(len(rng)));
      for (auto& x : a) x = letter(rng);
      for (auto& x : b) x = letter(rng);
      const auto x = WeylElt::from_word(ctx, a);
      const auto y = WeylElt::from_word(ctx, b);
      CHECK((x.geom() == y.geom()) == (x.word() == y.word()));
      CHECK(is_reduced(ctx, x.word()));
      CHECK(WeylElt::from_word(ctx, x.word()).geom() == x.geom());
      // Lexicographically smallest among reduced words of the same length.
      for (std::size_t k = 0; k < x.length(); ++k)
        for (int s = 0; s < x.word()[k]; ++s) {
          Word prefix(x.word().begin(), x.word().begin() + static_cast<long>(k));
          const auto p = WeylElt::from_word(ctx, prefix);
          // A smaller letter at position k would have to be a left descent of p^-1 x.
          CHECK_FALSE((p.inverse() * x).has_left_descent(s));
        }
    }
  }
}

TEST_CASE("formatting and json") {
  const auto thick = thickened_context(fx::typeA(2), 3);
  const Word w{0, 2, 1, 3, kOne};
  CHECK(format_word(thick->cartan(), w) == "(1,inf1,2,inf2,_)");
  CHECK(format_word(thick->cartan(), Word{}) == "e");
  const auto j = word_to_json(thick->cartan(), w);
  CHECK(j == nlohmann::json::array({1, -1, 2, -2, 0}));
  CHECK(word_from_json(thick->cartan(), j) == w);
  CHECK_THROWS_AS(word_from_json(thick->cartan(), nlohmann::json::array({3})), InvalidArgument);
  CHECK_THROWS_AS(word_from_json(thick->cartan(), nlohmann::json::array({-3})), InvalidArgument);
}

TEST_CASE("length caps") {
  const auto affine = fx::group(CartanFamily::AffineA, 1);
  CHECK_THROWS_AS(all_elements(affine, 50), CapExceeded);
  CHECK(elements_up_to_length(affine, 4).size() == 9);
}
