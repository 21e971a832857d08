#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tnn/coxeter.hpp"
#include "tnn/error.hpp"
#include "tnn/typeA_matrix.hpp"

namespace cli {

/// Malformed word text; `position` is the 0-based character offset.
class ParseError : public tnn::InvalidArgument {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// One word: "e" or "" for the identity, "(1,2,inf1)", or bare "1,2".
/// Letters are 1-based vertex positions; inf<l> names the l-th infinity vertex.
tnn::Word parse_word(const tnn::GeneralizedCartanMatrix& cartan, std::string_view text);

/// Words separated by ';' or by ',' between parenthesized groups, e.g.
/// "(1);(2,1)" or "(1),e,(2)".
std::vector<tnn::Word> parse_word_list(const tnn::GeneralizedCartanMatrix& cartan, std::string_view text);

/// "v;w1,w2,..." as used for poset tops, e.g. "e;(1),(1)".
struct TopSpec {
  tnn::Word v;
  std::vector<tnn::Word> w;
};
TopSpec parse_top_spec(const tnn::GeneralizedCartanMatrix& cartan, std::string_view text);

/// Comma-separated rationals "3/2,1,-4".
std::vector<tnn::Rational> parse_rationals(std::string_view text);

}  // namespace cli
