#pragma once

#include <initializer_list>

#include "tnn/coxeter.hpp"

namespace fx {

inline tnn::Context group(tnn::CartanFamily fam, int rank) {
  return tnn::CoxeterGroup::create(tnn::cartan_of_type(fam, rank));
}
inline tnn::Context typeA(int rank) { return group(tnn::CartanFamily::A, rank); }

/// Element from a 1-based word, as written in the mathematical literature.
inline tnn::WeylElt elt(const tnn::Context& ctx, std::initializer_list<int> one_based) {
  tnn::Word w;
  for (int x : one_based) w.push_back(x - 1);
  return tnn::WeylElt::from_word(ctx, w);
}

inline tnn::Word word1(std::initializer_list<int> one_based) {
  tnn::Word w;
  for (int x : one_based) w.push_back(x == 0 ? tnn::kOne : x - 1);
  return w;
}

}  // namespace fx
