#pragma once

#include "elcomm/error.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace elcomm::detail {

/// Character cursor shared by the hand-written recursive-descent parsers.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  /// Next character without skipping whitespace.
  char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool consume(std::string_view s) {
    skip_ws();
    if (text_.substr(pos_, s.size()) != s) return false;
    pos_ += s.size();
    return true;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  bool peek_ident_start() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '\''))
        ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }
  bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number");
    return std::string(text_.substr(start, pos_ - start));
  }
  long long small_int() {
    bool neg = consume('-');
    auto d = digits();
    if (d.size() > 9) fail("integer too large");
    long long v = std::stoll(d);
    return neg ? -v : v;
  }

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }
  std::string_view text() const { return text_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, text_, pos_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace elcomm::detail
