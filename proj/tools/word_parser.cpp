#include "word_parser.hpp"

#include <cctype>

namespace cli {

using tnn::GeneralizedCartanMatrix;
using tnn::Word;

ParseError::ParseError(std::size_t position, const std::string& message)
    : tnn::InvalidArgument("parse error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class Cursor {
 public:
  Cursor(const GeneralizedCartanMatrix& cartan, std::string_view text) : cartan_(cartan), text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::size_t pos() const { return pos_; }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    const std::string found = done() ? "end of input" : std::string("'") + peek() + "'";
    throw ParseError(pos_, what + ", found " + found);
  }

  int letter() {
    skip_space();
    const std::size_t start = pos_;
    bool infinity = false;
    if (text_.substr(pos_, 3) == "inf") {
      infinity = true;
      pos_ += 3;
    }
    const std::size_t digits = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail(infinity ? "expected an index after 'inf'" : "expected a vertex index");
    }
    const unsigned long k = std::stoul(std::string(text_.substr(digits, pos_ - digits)));
    const std::size_t bound = infinity ? cartan_.infinity_count() : cartan_.base_rank();
    if (k < 1 || k > bound)
      throw ParseError(start, "letter '" + std::string(text_.substr(start, pos_ - start)) + "' out of range 1.." +
                                  std::to_string(bound));
    return static_cast<int>(infinity ? cartan_.base_rank() + k - 1 : k - 1);
  }

  // One item: "e", "(letters)", a single bare letter, or nothing. With
  // `bare_list` a bare item may hold several comma-separated letters.
  Word item(bool bare_list) {
    skip_space();
    Word w;
    if (peek() == 'e') {
      ++pos_;
    } else if (accept('(')) {
      if (!accept(')')) {
        do w.push_back(letter());
        while (accept(','));
        expect(')');
      }
    } else if (std::isdigit(static_cast<unsigned char>(peek())) || text_.substr(pos_, 3) == "inf") {
      w.push_back(letter());
      while (bare_list && accept(',')) w.push_back(letter());
    }
    skip_space();
    return w;
  }

 private:
  const GeneralizedCartanMatrix& cartan_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<Word> list_from(Cursor& c) {
  std::vector<Word> out;
  out.push_back(c.item(false));
  while (c.accept(';') || c.accept(',')) out.push_back(c.item(false));
  if (!c.done()) c.fail("expected ';' or ','");
  return out;
}

}  // namespace

Word parse_word(const GeneralizedCartanMatrix& cartan, std::string_view text) {
  Cursor c(cartan, text);
  Word w = c.item(true);
  if (!c.done()) c.fail("expected end of word");
  return w;
}

std::vector<Word> parse_word_list(const GeneralizedCartanMatrix& cartan, std::string_view text) {
  Cursor c(cartan, text);
  return list_from(c);
}

TopSpec parse_top_spec(const GeneralizedCartanMatrix& cartan, std::string_view text) {
  Cursor c(cartan, text);
  TopSpec spec;
  spec.v = c.item(true);
  c.expect(';');
  spec.w = list_from(c);
  return spec;
}

std::vector<tnn::Rational> parse_rationals(std::string_view text) {
  std::vector<tnn::Rational> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string item(text.substr(start, end - start));
    try {
      out.push_back(tnn::parse_rational(item));
    } catch (const tnn::InvalidArgument&) {
      throw ParseError(start, "'" + item + "' is not a rational number");
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace cli
