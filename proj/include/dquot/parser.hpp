#ifndef DQUOT_PARSER_HPP
#define DQUOT_PARSER_HPP

#include <dquot/graded_polynomial.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dquot {

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := atom ('^' positive-integer)*
// atom   := rational | identifier | '(' expr ')'
class PolyParser {
 public:
  PolyParser(std::string_view src, TablePtr table) : src_(src), table_(std::move(table)) {}

  GradedPolynomial parse() {
    GradedPolynomial p = expr();
    skip_ws();
    if (pos_ != src_.size()) throw parse_error(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }
  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  GradedPolynomial expr() {
    GradedPolynomial acc(table_);
    bool negate = false;
    if (peek('+') || peek('-')) negate = src_[pos_++] == '-';
    GradedPolynomial t = term();
    acc += negate ? -t : t;
    while (peek('+') || peek('-')) {
      bool minus = src_[pos_++] == '-';
      GradedPolynomial next = term();
      if (minus) acc -= next;
      else acc += next;
    }
    return acc;
  }

  GradedPolynomial term() {
    GradedPolynomial p = factor();
    while (peek('*')) {
      ++pos_;
      p = p * factor();
    }
    return p;
  }

  GradedPolynomial factor() {
    GradedPolynomial base = atom();
    while (peek('^')) {
      ++pos_;
      skip_ws();
      std::size_t at = pos_;
      std::string d = digits();
      if (d.empty() || d.find_first_not_of('0') == std::string::npos)
        throw parse_error("malformed exponent (expected positive integer)", at);
      if (d.size() > 6) throw parse_error("exponent too large", at);
      unsigned long e = std::stoul(d);
      GradedPolynomial r = GradedPolynomial::constant(table_, Scalar(1));
      for (unsigned long i = 0; i < e; ++i) r = r * base;
      base = r;
    }
    return base;
  }

  GradedPolynomial atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw parse_error("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      GradedPolynomial p = expr();
      if (!peek(')')) throw parse_error("expected ')'", pos_);
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string den = "1";
      if (pos_ < src_.size() && src_[pos_] == '/') {
        std::size_t at = ++pos_;
        den = digits();
        if (den.empty()) throw parse_error("malformed rational literal", at);
        if (den.find_first_not_of('0') == std::string::npos) throw parse_error("division by zero literal", at);
      }
      Scalar q{Integer(num), Integer(den)};
      q.canonicalize();
      return GradedPolynomial::constant(table_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '[') {
        while (pos_ < src_.size() && src_[pos_] != ']') ++pos_;
        if (pos_ == src_.size()) throw parse_error("unterminated '['", start);
        ++pos_;
      }
      std::string name(src_.substr(start, pos_ - start));
      if (!table_->contains(name)) throw parse_error("unknown identifier '" + name + "'", start);
      return GradedPolynomial::generator(table_, table_->id(name));
    }
    throw parse_error(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view src_;
  TablePtr table_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial over the generators of `table`. Products follow the
/// written order, so Koszul signs apply to odd generators.
inline GradedPolynomial parse_poly(std::string_view s, const TablePtr& table) {
  return detail::PolyParser(s, table).parse();
}

/// Table of degree-0 variables in the given order.
inline TablePtr variable_table(const std::vector<std::string>& names) {
  std::vector<GenSym> gens;
  for (const auto& n : names) gens.push_back({n, 0, GenKind::variable, 0});
  return GenTable::build(std::move(gens));
}

}  // namespace dquot

#endif  // DQUOT_PARSER_HPP
