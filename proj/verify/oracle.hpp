#pragma once

// Brute-force reference implementations for tests and verify suites. Everything here
// is computed from definitions (subwords, enumeration, elimination) and
// shares no algorithmic path with the library beyond element arithmetic.

#include <cstddef>
#include <optional>
#include <vector>

#include "tnn/coxeter.hpp"
#include "tnn/typeA_matrix.hpp"

namespace oracle {

using tnn::Context;
using tnn::WeylElt;
using tnn::Word;
using tnn::WTuple;

/// Products of all 2^m subwords of `word` (the lower interval of its product
/// when the word is reduced), deduplicated.
std::vector<WeylElt> subword_products(const Context& ctx, const Word& word);

/// v <= w via the subword criterion on the canonical word of w.
bool bruhat_leq(const WeylElt& v, const WeylElt& w);

/// Unique maximum of {x'y' : x' <= x, y' <= y}; throws if no unique maximum.
WeylElt demazure(const WeylElt& x, const WeylElt& y);
/// Unique minimum of {y u : u <= x}; throws if no unique minimum.
WeylElt circ_r(const WeylElt& y, const WeylElt& x);

/// Every subexpression of `word` with product v satisfying the positivity
/// condition, tested by comparing lengths of prefix products.
std::vector<Word> positive_subexpressions(const WeylElt& v, const Word& word);

/// Tuple-level positivity straight from its definition.
bool is_positive_tuple(const WTuple& v, const WTuple& w);
/// All tuples v with product `v` that are positive in w (should be one).
std::vector<WTuple> positive_tuples(const WeylElt& v, const WTuple& w);

/// Number of positions l with s_1 ... (s_l omitted) ... s_m = v, together
/// with the deleted tuples, for the concatenation of the canonical words of w.
struct DeletionWitness {
  std::size_t count = 0;
  std::vector<WTuple> deleted;
};
DeletionWitness single_deletions(const WeylElt& v, const WTuple& w);

/// Explicit Bruhat factorization g = b1 * m * b2 by Gaussian elimination:
/// b1, b2 upper triangular and m monomial with pattern `perm`.
struct BruhatFactorization {
  tnn::RatMat b1, m, b2;
  tnn::Permutation perm;
};
BruhatFactorization eliminate(const tnn::RatMat& g);

}  // namespace oracle
