#ifndef DQUOT_NC_POLYNOMIAL_HPP
#define DQUOT_NC_POLYNOMIAL_HPP

#include <dquot/generators.hpp>
#include <dquot/scalar.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dquot {

/// Word in the free associative algebra; letters are never reordered.
using NCWord = std::vector<GenId>;

/// Shortlex: shorter words first, then lexicographic on generator ids.
struct NCWordLess {
  bool operator()(const NCWord& a, const NCWord& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

inline int word_degree(const GenTable& t, const NCWord& w) {
  int d = 0;
  for (GenId g : w) d += t[g].internal_degree;
  return d;
}

/// Element of the free graded algebra k<generators>.
class NCPoly {
 public:
  using Terms = std::map<NCWord, Scalar, NCWordLess>;

  NCPoly() = default;
  explicit NCPoly(TablePtr table) : table_(std::move(table)) {}

  static NCPoly constant(TablePtr table, const Scalar& c) {
    NCPoly p(std::move(table));
    p.add_term({}, c);
    return p;
  }
  static NCPoly letter(TablePtr table, GenId id) {
    NCPoly p(std::move(table));
    p.add_term({id}, Scalar(1));
    return p;
  }
  static NCPoly word(TablePtr table, NCWord w, const Scalar& c = Scalar(1)) {
    NCPoly p(std::move(table));
    p.add_term(std::move(w), c);
    return p;
  }

  const TablePtr& table() const { return table_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const NCWord& w, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::optional<int> internal_degree() const {
    std::optional<int> d;
    for (const auto& [w, c] : terms_) {
      int wd = word_degree(*table_, w);
      if (d && *d != wd) return std::nullopt;
      d = wd;
    }
    return d;
  }

  NCPoly& operator+=(const NCPoly& o) {
    adopt_table(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    adopt_table(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  NCPoly& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator-(NCPoly a) { return a *= Scalar(-1); }
  friend NCPoly operator*(NCPoly a, const Scalar& s) { return a *= s; }
  friend NCPoly operator*(const Scalar& s, NCPoly a) { return a *= s; }

  /// Concatenation product.
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    if (!a.table_ || !b.table_) return NCPoly(a.table_ ? a.table_ : b.table_);
    require_same_table(a.table_, b.table_);
    NCPoly out(a.table_);
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        NCWord w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add_term(w, ca * cb);
      }
    return out;
  }

  friend bool operator==(const NCPoly& a, const NCPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.table_ == b.table_ && a.terms_ == b.terms_;
  }

 private:
  void adopt_table(const NCPoly& o) {
    if (!table_) table_ = o.table_;
    else if (o.table_) require_same_table(table_, o.table_);
  }

  TablePtr table_;
  Terms terms_;
};

/// a*b - (-1)^{|a||b|} b*a for homogeneous a, b.
inline NCPoly graded_commutator(const NCPoly& a, const NCPoly& b) {
  if (a.is_zero() || b.is_zero()) return NCPoly(a.table() ? a.table() : b.table());
  auto da = a.internal_degree();
  auto db = b.internal_degree();
  if (!da || !db) throw structural_error("graded commutator of an inhomogeneous element");
  NCPoly out = a * b;
  NCPoly rev = b * a;
  if ((*da * *db) % 2 != 0) out += rev;
  else out -= rev;
  return out;
}

/// Words printed as space-free letter products, e.g. "x*a_x_y*x".
inline std::string to_string(const NCPoly& p) {
  if (p.is_zero()) return "0";
  const GenTable& t = *p.table();
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [w, c] = *it;
    Scalar mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (w.empty() || mag != 1) {
      os << format_scalar_short(mag);
      need_star = true;
    }
    for (GenId g : w) {
      if (need_star) os << "*";
      os << t[g].name;
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace dquot

#endif  // DQUOT_NC_POLYNOMIAL_HPP
