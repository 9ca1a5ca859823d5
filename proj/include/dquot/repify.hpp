#ifndef DQUOT_REPIFY_HPP
#define DQUOT_REPIFY_HPP

#include <dquot/derivation.hpp>
#include <dquot/resolution.hpp>

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace dquot {

/// n x n matrix with entries in a graded-commutative algebra.
class CDGAMatrix {
 public:
  CDGAMatrix() = default;
  CDGAMatrix(TablePtr table, std::size_t n) : n_(n), entries_(n * n, GradedPolynomial(table)), table_(std::move(table)) {}

  static CDGAMatrix identity(TablePtr table, std::size_t n) {
    CDGAMatrix m(table, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = GradedPolynomial::constant(table, Scalar(1));
    return m;
  }

  std::size_t n() const { return n_; }
  const TablePtr& table() const { return table_; }
  GradedPolynomial& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
  const GradedPolynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  friend CDGAMatrix operator+(CDGAMatrix a, const CDGAMatrix& b) {
    a.require_shape(b);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] += b.entries_[i];
    return a;
  }
  friend CDGAMatrix operator-(CDGAMatrix a, const CDGAMatrix& b) {
    a.require_shape(b);
    for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] -= b.entries_[i];
    return a;
  }
  friend CDGAMatrix operator*(const Scalar& s, CDGAMatrix a) {
    for (auto& e : a.entries_) e *= s;
    return a;
  }
  /// (AB)^{mu nu} = sum_rho A^{mu rho} B^{rho nu}, rho ascending.
  friend CDGAMatrix operator*(const CDGAMatrix& a, const CDGAMatrix& b) {
    a.require_shape(b);
    CDGAMatrix out(a.table_, a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t j = 0; j < a.n_; ++j)
        for (std::size_t k = 0; k < a.n_; ++k) {
          if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
          out(i, j) += a(i, k) * b(k, j);
        }
    return out;
  }

 private:
  void require_shape(const CDGAMatrix& o) const {
    if (n_ != o.n_) throw structural_error("matrix size mismatch");
    require_same_table(table_, o.table_);
  }

  std::size_t n_ = 0;
  std::vector<GradedPolynomial> entries_;
  TablePtr table_;
};

inline GradedPolynomial matrix_trace(const CDGAMatrix& m) {
  GradedPolynomial t(m.table());
  for (std::size_t i = 0; i < m.n(); ++i) t += m(i, i);
  return t;
}

/// Commutative presentation of V(R, n): entries g[mu,nu] of every free
/// generator plus framing generators frame[mu] of degree 0.
struct ChartPresentation {
  std::shared_ptr<const FreePresentation> free;
  std::size_t n = 0;
  TablePtr table;
  DerivationImages<GradedPolynomial> diff;
  std::vector<std::vector<GenId>> entry_ids;  // [free id][mu * n + nu]
  std::vector<GenId> framing_ids;

  GenId entry(GenId free_gen, std::size_t mu, std::size_t nu) const { return entry_ids[free_gen][mu * n + nu]; }
  GenId framing(std::size_t mu) const { return framing_ids[mu]; }

  /// Matrix of entry generators of a free generator.
  CDGAMatrix generator_matrix(GenId free_gen) const {
    CDGAMatrix m(table, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = GradedPolynomial::generator(table, entry(free_gen, i, j));
    return m;
  }

  /// Mat(w): product of entry matrices, identity for the empty word.
  CDGAMatrix word_matrix(const NCWord& w) const {
    CDGAMatrix m = CDGAMatrix::identity(table, n);
    for (GenId g : w) m = m * generator_matrix(g);
    return m;
  }

  CDGAMatrix matrix_of(const NCPoly& p) const {
    CDGAMatrix out(table, n);
    for (const auto& [w, c] : p.terms()) out = out + c * word_matrix(w);
    return out;
  }

  GradedPolynomial d(const GradedPolynomial& e) const { return extend_derivation(diff, e, 1); }
};

inline std::string entry_name(const std::string& base, std::size_t mu, std::size_t nu) {
  return base + "[" + std::to_string(mu + 1) + "," + std::to_string(nu + 1) + "]";
}
inline std::string framing_name(std::size_t mu) { return "frame[" + std::to_string(mu + 1) + "]"; }

/// d(g^{mu nu}) = Mat(d g)^{mu nu}; framing generators are closed.
inline std::shared_ptr<const ChartPresentation> matricize(std::shared_ptr<const FreePresentation> p, std::size_t n) {
  if (n < 1) throw structural_error("matrix size must be at least 1");
  auto c = std::make_shared<ChartPresentation>();
  c->free = p;
  c->n = n;
  const GenTable& ft = *p->table;
  std::vector<GenSym> gens;
  for (const auto& g : ft.gens())
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gens.push_back({entry_name(g.name, i, j), g.internal_degree, GenKind::matrix_entry, 0});
  for (std::size_t i = 0; i < n; ++i) gens.push_back({framing_name(i), 0, GenKind::framing, 0});
  c->table = GenTable::build(std::move(gens));

  c->entry_ids.assign(ft.size(), std::vector<GenId>(n * n));
  for (GenId g = 0; g < ft.size(); ++g)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c->entry_ids[g][i * n + j] = c->table->id(entry_name(ft[g].name, i, j));
  for (std::size_t i = 0; i < n; ++i) c->framing_ids.push_back(c->table->id(framing_name(i)));

  c->diff.assign(c->table->size(), std::nullopt);
  for (GenId g = 0; g < ft.size(); ++g) {
    CDGAMatrix image = c->matrix_of(*p->diff[g]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c->diff[c->entry(g, i, j)] = image(i, j);
  }
  for (GenId f : c->framing_ids) c->diff[f] = GradedPolynomial(c->table);
  return c;
}

inline DSquaredReport check_d_squared(const ChartPresentation& c) { return check_d_squared(c.table, c.diff); }

/// d-images of the degree -1 entry generators, in generator order: the
/// equations of V(R, n).
inline std::vector<GradedPolynomial> h0_ideal(const ChartPresentation& c) {
  std::vector<GradedPolynomial> out;
  for (GenId g : c.table->ids_of_degree(-1)) out.push_back(*c.diff[g]);
  return out;
}

}  // namespace dquot

#endif  // DQUOT_REPIFY_HPP
