#ifndef DQUOT_GRADED_POLYNOMIAL_HPP
#define DQUOT_GRADED_POLYNOMIAL_HPP

#include <dquot/generators.hpp>
#include <dquot/scalar.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace dquot {

struct Factor {
  GenId gen;
  std::uint32_t exp;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Product of generator powers stored in canonical generator order.
/// Odd generators never carry an exponent above one.
class Monomial {
 public:
  Monomial() = default;

  /// `factors` must already be sorted by generator with positive exponents.
  explicit Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {
    for (const auto& f : factors_) total_ += f.exp;
  }

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t total_degree() const { return total_; }
  bool is_one() const { return factors_.empty(); }

  std::uint32_t exponent(GenId g) const {
    for (const auto& f : factors_)
      if (f.gen == g) return f.exp;
    return 0;
  }

  int internal_degree(const GenTable& t) const {
    int d = 0;
    for (const auto& f : factors_) d += t[f.gen].internal_degree * static_cast<int>(f.exp);
    return d;
  }
  int form_degree(const GenTable& t) const {
    int d = 0;
    for (const auto& f : factors_) d += t[f.gen].form_degree * static_cast<int>(f.exp);
    return d;
  }
  int parity(const GenTable& t) const {
    int p = 0;
    for (const auto& f : factors_) p += t[f.gen].parity() * static_cast<int>(f.exp);
    return p % 2;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<Factor> factors_;
  std::uint32_t total_ = 0;
};

/// Graded-lexicographic order: total degree first, then the monomial with
/// the larger exponent on the earliest differing generator is larger.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t n = std::min(fa.size(), fb.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (fa[i].gen != fb[i].gen) return fa[i].gen > fb[i].gen;
      if (fa[i].exp != fb[i].exp) return fa[i].exp < fb[i].exp;
    }
    return fa.size() < fb.size();
  }
};

/// Koszul-signed product of two canonical monomials. Returns the sign
/// (+1, -1) or 0 when an odd generator would be squared.
inline int multiply_monomials(const GenTable& t, const Monomial& a, const Monomial& b, Monomial& out) {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::vector<Factor> merged;
  merged.reserve(fa.size() + fb.size());
  int odd_left = 0;
  for (const auto& f : fa) odd_left += t[f.gen].odd() ? 1 : 0;
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].gen < fb[j].gen)) {
      if (t[fa[i].gen].odd()) --odd_left;
      merged.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].gen < fa[i].gen) {
      // fb[j] moves left past every odd factor of `a` still to its right.
      if (t[fb[j].gen].odd() && (odd_left % 2 == 1)) sign = -sign;
      merged.push_back(fb[j++]);
    } else {
      if (t[fa[i].gen].odd()) return 0;
      merged.push_back({fa[i].gen, fa[i].exp + fb[j].exp});
      ++i;
      ++j;
    }
  }
  out = Monomial(std::move(merged));
  return sign;
}

using Assignment = std::vector<std::optional<Scalar>>;
using LinearForm = std::map<GenId, Scalar>;

/// Graded-commutative polynomial with exact rational coefficients, kept in
/// canonical form: zero coefficients never stored.
class GradedPolynomial {
 public:
  using Terms = std::map<Monomial, Scalar, MonomialLess>;

  GradedPolynomial() = default;
  explicit GradedPolynomial(TablePtr table) : table_(std::move(table)) {}

  static GradedPolynomial constant(TablePtr table, const Scalar& c) {
    GradedPolynomial p(std::move(table));
    p.add_term(Monomial(), c);
    return p;
  }
  static GradedPolynomial generator(TablePtr table, GenId id) {
    GradedPolynomial p(std::move(table));
    p.add_term(Monomial({{id, 1}}), Scalar(1));
    return p;
  }
  static GradedPolynomial generator(TablePtr table, const std::string& name) {
    GenId id = table->id(name);
    return generator(std::move(table), id);
  }

  /// Canonical form of the ordered product c * g_0 * g_1 * ... with signs.
  static GradedPolynomial product_of(TablePtr table, const Scalar& c, const std::vector<GenId>& ordered) {
    GradedPolynomial p = constant(table, c);
    for (GenId g : ordered) p = p * generator(table, g);
    return p;
  }

  const TablePtr& table() const { return table_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Coefficient of a monomial (zero when absent).
  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  /// Internal degree if homogeneous (zero counts as homogeneous of any degree).
  std::optional<int> internal_degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
      int md = m.internal_degree(*table_);
      if (d && *d != md) return std::nullopt;
      d = md;
    }
    return d;
  }
  std::optional<int> form_degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
      int md = m.form_degree(*table_);
      if (d && *d != md) return std::nullopt;
      d = md;
    }
    return d;
  }
  std::optional<int> parity() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
      int md = m.parity(*table_);
      if (d && *d != md) return std::nullopt;
      d = md;
    }
    return d;
  }

  GradedPolynomial& operator+=(const GradedPolynomial& o) {
    adopt_table(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GradedPolynomial& operator-=(const GradedPolynomial& o) {
    adopt_table(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  GradedPolynomial& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
  friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
  friend GradedPolynomial operator-(GradedPolynomial a) { return a *= Scalar(-1); }
  friend GradedPolynomial operator*(GradedPolynomial a, const Scalar& s) { return a *= s; }
  friend GradedPolynomial operator*(const Scalar& s, GradedPolynomial a) { return a *= s; }

  friend GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b) {
    return cpoly_mul(a, b);
  }

  /// Graded-commutative product with Koszul signs.
  friend GradedPolynomial cpoly_mul(const GradedPolynomial& a, const GradedPolynomial& b) {
    if (!a.table_ || !b.table_) {
      const auto& t = a.table_ ? a.table_ : b.table_;
      return GradedPolynomial(t);
    }
    require_same_table(a.table_, b.table_);
    GradedPolynomial out(a.table_);
    Monomial m;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        int s = multiply_monomials(*a.table_, ma, mb, m);
        if (s == 0) continue;
        Scalar c = ca * cb;
        if (s < 0) c = -c;
        out.add_term(m, c);
      }
    return out;
  }

  friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.table_ == b.table_ && a.terms_ == b.terms_;
  }

 private:
  void adopt_table(const GradedPolynomial& o) {
    if (!table_) table_ = o.table_;
    else if (o.table_) require_same_table(table_, o.table_);
  }

  TablePtr table_;
  Terms terms_;
};

/// Re-canonicalizes an arbitrary term list; a no-op on canonical input.
inline GradedPolynomial normalize(const GradedPolynomial& p) {
  GradedPolynomial out(p.table());
  for (const auto& [m, c] : p.terms()) {
    std::vector<GenId> ordered;
    for (const auto& f : m.factors())
      for (std::uint32_t e = 0; e < f.exp; ++e) ordered.push_back(f.gen);
    out += GradedPolynomial::product_of(p.table(), c, ordered);
  }
  return out;
}

inline Assignment make_assignment(const GenTable& t) { return Assignment(t.size()); }

namespace detail {
inline const Scalar& lookup(const GenTable& t, const Assignment& pt, GenId g) {
  if (g >= pt.size() || !pt[g]) throw structural_error("degree-0 generator '" + t[g].name + "' is unassigned");
  return *pt[g];
}
inline bool substitutable(const GenSym& g) { return g.internal_degree == 0 && g.form_degree == 0; }
}  // namespace detail

/// Substitutes scalars for the degree-0 generators; everything else stays
/// symbolic.
inline GradedPolynomial evaluate(const GradedPolynomial& p, const Assignment& pt) {
  const GenTable& t = *p.table();
  GradedPolynomial out(p.table());
  for (const auto& [m, c] : p.terms()) {
    Scalar coeff = c;
    std::vector<Factor> rest;
    for (const auto& f : m.factors()) {
      if (detail::substitutable(t[f.gen])) {
        const Scalar& v = detail::lookup(t, pt, f.gen);
        for (std::uint32_t e = 0; e < f.exp; ++e) coeff *= v;
      } else {
        rest.push_back(f);
      }
    }
    // Removing even factors keeps the relative order of the rest: no sign.
    out.add_term(Monomial(std::move(rest)), coeff);
  }
  return out;
}

/// Value of a polynomial with no surviving symbolic part.
inline Scalar evaluate_scalar(const GradedPolynomial& p, const Assignment& pt) {
  GradedPolynomial e = evaluate(p, pt);
  Scalar out(0);
  for (const auto& [m, c] : e.terms()) {
    if (!m.is_one()) throw structural_error("polynomial has non-degree-0 terms");
    out += c;
  }
  return out;
}

/// First-order part of p(pt + eps * direction): the Jacobian row at pt over
/// every generator, with non-degree-0 generators as coordinates vanishing
/// at pt.
inline LinearForm linear_part(const GradedPolynomial& p, const Assignment& pt) {
  const GenTable& t = *p.table();
  LinearForm out;
  auto accumulate = [&out](GenId g, const Scalar& c) {
    if (c == 0) return;
    auto& slot = out[g];
    slot += c;
    if (slot == 0) out.erase(g);
  };
  for (const auto& [m, c] : p.terms()) {
    std::uint32_t vanishing = 0;
    GenId vanishing_gen = 0;
    for (const auto& f : m.factors())
      if (!detail::substitutable(t[f.gen])) {
        vanishing += f.exp;
        vanishing_gen = f.gen;
      }
    if (vanishing >= 2) continue;
    if (vanishing == 1) {
      Scalar coeff = c;
      for (const auto& f : m.factors())
        if (detail::substitutable(t[f.gen]))
          for (std::uint32_t e = 0; e < f.exp; ++e) coeff *= detail::lookup(t, pt, f.gen);
      accumulate(vanishing_gen, coeff);
      continue;
    }
    for (std::size_t k = 0; k < m.factors().size(); ++k) {
      Scalar coeff = c * m.factors()[k].exp;
      for (std::size_t l = 0; l < m.factors().size(); ++l) {
        const auto& f = m.factors()[l];
        std::uint32_t e = (l == k) ? f.exp - 1 : f.exp;
        const Scalar& v = detail::lookup(t, pt, f.gen);
        for (std::uint32_t r = 0; r < e; ++r) coeff *= v;
      }
      accumulate(m.factors()[k].gen, coeff);
    }
  }
  return out;
}

/// Canonical text: terms from largest to smallest monomial, explicit '*'
/// and '^', rationals as "n" or "n/d".
inline std::string to_string(const GradedPolynomial& p) {
  if (p.is_zero()) return "0";
  const GenTable& t = *p.table();
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Scalar mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (m.is_one() || mag != 1) {
      os << format_scalar_short(mag);
      need_star = true;
    }
    for (const auto& f : m.factors()) {
      if (need_star) os << "*";
      os << t[f.gen].name;
      if (f.exp > 1) os << "^" << f.exp;
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace dquot

#endif  // DQUOT_GRADED_POLYNOMIAL_HPP
