#pragma once

// Text expressions over O_n:
//   expression := term (('+'|'-') term)*
//   term       := [complex] word
//   complex    := '(' float [('+'|'-') float 'i'] ')'  or  '(' float ',' float ')'
//   word       := '1' | vtok+          (juxtaposition = product)
//   vtok       := 'v' digits ['*']
// Round-trips the canonical rendering.

#include <cctype>
#include <cstddef>
#include <string>

#include "cuntzkit/algebra.hpp"

namespace cuntzkit {

struct parse_error : std::runtime_error {
  std::size_t position;
  parse_error(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
};

namespace detail {

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, int n) : text_(text), n_(n) {}

  AlgebraElement parse() {
    AlgebraElement total(n_);
    skip_ws();
    if (at_end()) throw parse_error("empty expression", pos_);
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1.0 : 1.0;
    total += parse_term(sign);
    skip_ws();
    while (!at_end()) {
      const char c = take();
      if (c != '+' && c != '-') throw parse_error("expected '+' or '-'", pos_ - 1);
      total += parse_term(c == '-' ? -1.0 : 1.0);
      skip_ws();
    }
    return total;
  }

 private:
  AlgebraElement parse_term(double sign) {
    skip_ws();
    cd coeff(sign);
    if (!at_end() && peek() == '(') coeff *= parse_complex();
    skip_ws();
    AlgebraElement word = AlgebraElement::unit(n_);
    bool any = false;
    while (!at_end()) {
      skip_ws();
      if (at_end() || peek() == '+' || peek() == '-') break;
      if (peek() == '1') {
        take();
        any = true;
        continue;
      }
      if (peek() != 'v') throw parse_error("expected 'v<i>', 'v<i>*' or '1'", pos_);
      take();
      const std::size_t start = pos_;
      long a = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
        a = a * 10 + (take() - '0');
      if (pos_ == start) throw parse_error("expected generator index after 'v'", pos_);
      if (a < 1 || a > n_) throw letter_out_of_range(static_cast<int>(a), n_);
      bool star = false;
      if (!at_end() && peek() == '*') {
        take();
        star = true;
      }
      word = elem_mul(word, star ? AlgebraElement::generator_adjoint(n_, static_cast<int>(a))
                                 : AlgebraElement::generator(n_, static_cast<int>(a)));
      any = true;
    }
    if (!any) throw parse_error("expected a word", pos_);
    word *= coeff;
    return word;
  }

  cd parse_complex() {
    expect('(');
    const double re = parse_float();
    skip_ws();
    if (!at_end() && peek() == ',') {
      take();
      const double im = parse_float();
      expect(')');
      return cd(re, im);
    }
    if (!at_end() && (peek() == '+' || peek() == '-')) {
      const double s = take() == '-' ? -1.0 : 1.0;
      const double im = parse_float();
      skip_ws();
      if (at_end() || take() != 'i') throw parse_error("expected 'i'", pos_ - 1);
      expect(')');
      return cd(re, s * im);
    }
    expect(')');
    return cd(re);
  }

  double parse_float() {
    skip_ws();
    const std::size_t start = pos_;
    if (!at_end() && (peek() == '+' || peek() == '-')) take();
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'))
      take();
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      take();
      if (!at_end() && (peek() == '+' || peek() == '-')) take();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) take();
    }
    if (pos_ == start) throw parse_error("expected a number", pos_);
    try {
      return std::stod(text_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      throw parse_error("malformed number", start);
    }
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || take() != c)
      throw parse_error(std::string("expected '") + c + "'", pos_ == 0 ? 0 : pos_ - 1);
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char take() { return text_[pos_++]; }

  const std::string& text_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline AlgebraElement parse_element(const std::string& text, int n) {
  return detail::ExpressionParser(text, n).parse();
}

}  // namespace cuntzkit
