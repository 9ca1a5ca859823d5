#ifndef DQUOT_DERHAM_HPP
#define DQUOT_DERHAM_HPP

#include <dquot/derivation.hpp>
#include <dquot/linalg.hpp>
#include <dquot/points.hpp>
#include <dquot/repify.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dquot {

inline std::string delta_name(const std::string& base) { return "dR(" + base + ")"; }

/// De Rham algebra of a chart: the chart generators g plus symbols dR(g) of
/// form degree 1 and Koszul parity |g| + 1. Both differentials are odd
/// derivations; dint(dR g) = -ddr(d g) makes them anticommute.
class DeRhamAlgebra {
 public:
  explicit DeRhamAlgebra(std::shared_ptr<const ChartPresentation> chart) : chart_(std::move(chart)) {
    const GenTable& ct = *chart_->table;
    std::vector<GenSym> gens = ct.gens();
    for (const auto& g : ct.gens()) gens.push_back({delta_name(g.name), g.internal_degree, g.kind, 1});
    table_ = GenTable::build(std::move(gens));
    // Form degree leads the canonical order, so chart ids carry over.
    for (GenId i = 0; i < ct.size(); ++i)
      if ((*table_)[i].name != ct[i].name) throw structural_error("de Rham table does not extend the chart table");
    for (GenId i = 0; i < ct.size(); ++i) delta_.push_back(table_->id(delta_name(ct[i].name)));

    ddr_images_.assign(table_->size(), std::nullopt);
    dint_images_.assign(table_->size(), std::nullopt);
    for (GenId g = 0; g < ct.size(); ++g) {
      ddr_images_[g] = GradedPolynomial::generator(table_, delta_[g]);
      ddr_images_[delta_[g]] = GradedPolynomial(table_);
    }
    for (GenId g = 0; g < ct.size(); ++g) {
      GradedPolynomial dg = lift(*chart_->diff[g]);
      dint_images_[delta_[g]] = -ddr(dg);
      dint_images_[g] = std::move(dg);
    }
  }

  const TablePtr& table() const { return table_; }
  const ChartPresentation& chart() const { return *chart_; }
  const std::shared_ptr<const ChartPresentation>& chart_ptr() const { return chart_; }

  GenId delta(GenId chart_gen) const { return delta_[chart_gen]; }
  bool is_delta(GenId id) const { return (*table_)[id].form_degree == 1; }
  GenId base_of(GenId delta_gen) const { return delta_gen - static_cast<GenId>(delta_.size()); }

  /// Chart polynomial viewed inside the de Rham algebra.
  GradedPolynomial lift(const GradedPolynomial& p) const {
    GradedPolynomial out(table_);
    if (p.is_zero()) return out;
    require_same_table(p.table(), chart_->table);
    for (const auto& [m, c] : p.terms()) out.add_term(m, c);
    return out;
  }

  GradedPolynomial ddr(const GradedPolynomial& e) const { return extend_derivation(ddr_images_, e, 1); }
  GradedPolynomial dint(const GradedPolynomial& e) const { return extend_derivation(dint_images_, e, 1); }

  CDGAMatrix generator_matrix(GenId free_gen) const {
    CDGAMatrix m(table_, chart_->n);
    for (std::size_t i = 0; i < chart_->n; ++i)
      for (std::size_t j = 0; j < chart_->n; ++j)
        m(i, j) = GradedPolynomial::generator(table_, chart_->entry(free_gen, i, j));
    return m;
  }
  CDGAMatrix delta_matrix(GenId free_gen) const {
    CDGAMatrix m(table_, chart_->n);
    for (std::size_t i = 0; i < chart_->n; ++i)
      for (std::size_t j = 0; j < chart_->n; ++j)
        m(i, j) = GradedPolynomial::generator(table_, delta_[chart_->entry(free_gen, i, j)]);
    return m;
  }

 private:
  std::shared_ptr<const ChartPresentation> chart_;
  TablePtr table_;
  std::vector<GenId> delta_;
  DerivationImages<GradedPolynomial> ddr_images_;
  DerivationImages<GradedPolynomial> dint_images_;
};

inline const char* fermat_relation_text() { return "w^5 + x^5 + y^5 + z^5 + 1"; }

/// Fermat chart input: k[w,x,y,z]/(w^5 + x^5 + y^5 + z^5 + 1).
inline AlgebraInput fermat_input() { return AlgebraInput::parse({"w", "x", "y", "z"}, {fermat_relation_text()}); }

inline void require_fermat(const ChartPresentation& c) {
  const auto& in = c.free->input;
  if (in.variables != std::vector<std::string>{"w", "x", "y", "z"} || in.r() != 1 ||
      !(in.relations[0] == parse_poly(fermat_relation_text(), in.table)))
    throw structural_error("chart does not have the Fermat quintic signature");
}

/// Matrix-valued 1-form
///   (W dX - X dW) U_yz + (W dY - Y dW) U_zx + (W dZ - Z dW) U_xy
/// + (Y dZ - Z dY) U_wx + (Z dX - X dZ) U_wy + (X dY - Y dX) U_wz
/// with U_ij the oriented commutator matrix, d U_ij = [X_i, X_j].
inline CDGAMatrix build_phi_matrix(const DeRhamAlgebra& dr) {
  const ChartPresentation& c = dr.chart();
  require_fermat(c);
  const FreePresentation& f = *c.free;
  enum { w, x, y, z };
  auto mat = [&](int i) { return dr.generator_matrix(f.variable(static_cast<std::size_t>(i))); };
  auto dmat = [&](int i) { return dr.delta_matrix(f.variable(static_cast<std::size_t>(i))); };
  auto u = [&](int i, int j) {
    if (i < j) return dr.generator_matrix(f.commutator_gen(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    return Scalar(-1) * dr.generator_matrix(f.commutator_gen(static_cast<std::size_t>(j), static_cast<std::size_t>(i)));
  };
  auto term = [&](int a, int b, int p, int q) { return (mat(a) * dmat(b) - mat(b) * dmat(a)) * u(p, q); };
  return term(w, x, y, z) + term(w, y, z, x) + term(w, z, x, y) + term(y, z, w, x) + term(z, x, w, y) +
         term(x, y, w, z);
}

/// phi = tr(Phi): internal degree -1, form degree 1.
inline GradedPolynomial build_phi(const DeRhamAlgebra& dr) { return matrix_trace(build_phi_matrix(dr)); }

inline GradedPolynomial omega0(const DeRhamAlgebra& dr) { return dr.ddr(build_phi(dr)); }

struct CloseReport {
  GradedPolynomial omega;
  GradedPolynomial dint_omega;
  GradedPolynomial ddr_omega;
  bool d_closed() const { return dint_omega.is_zero(); }
  bool ddr_closed() const { return ddr_omega.is_zero(); }
  bool pass() const { return d_closed() && ddr_closed(); }
};

inline CloseReport close_check(const DeRhamAlgebra& dr) {
  CloseReport rep;
  rep.omega = omega0(dr);
  rep.dint_omega = dr.dint(rep.omega);
  rep.ddr_omega = dr.ddr(rep.omega);
  return rep;
}

struct PairingResult {
  std::vector<GenId> rows;  // degree-0 chart generators
  std::vector<GenId> cols;  // degree -1 chart generators
  RationalMatrix matrix;
  std::size_t rank = 0;
};

/// Chain-level pairing of a 2-form at a classical point. Entry (r, c) is the
/// coefficient of dR(r) in the contraction of the form with the tangent
/// direction dual to c; contraction passes each 1-form factor with a sign.
/// Negative-degree generators vanish at the point.
inline PairingResult pairing_at(const DeRhamAlgebra& dr, const GradedPolynomial& omega, const MatrixPoint& pt) {
  const ChartPresentation& c = dr.chart();
  ClassicalCheck cc = is_classical_point(pt, c);
  if (!cc.classical) throw structural_error("pairing needs a classical point");
  if (!omega.is_zero()) require_same_table(omega.table(), dr.table());
  Assignment a = chart_assignment(c, pt);
  const GenTable& t = *dr.table();

  PairingResult res;
  res.rows = c.table->ids_of_degree(0);
  res.cols = c.table->ids_of_degree(-1);
  std::map<GenId, std::size_t> row_at, col_at;
  for (std::size_t i = 0; i < res.rows.size(); ++i) row_at[res.rows[i]] = i;
  for (std::size_t j = 0; j < res.cols.size(); ++j) col_at[res.cols[j]] = j;
  res.matrix = RationalMatrix(res.rows.size(), res.cols.size());

  for (const auto& [m, coeff] : omega.terms()) {
    std::optional<GenId> row, col;
    int forms_before_col = 0, forms_seen = 0;
    bool vanishes = false;
    Scalar value = coeff;
    for (const auto& f : m.factors()) {
      const GenSym& g = t[f.gen];
      if (g.form_degree == 1) {
        GenId base = dr.base_of(f.gen);
        if (g.internal_degree == 0 && !row) row = base;
        else if (g.internal_degree == -1 && !col) {
          col = base;
          forms_before_col = forms_seen;
        } else vanishes = true;
        forms_seen += static_cast<int>(f.exp);
      } else if (g.internal_degree == 0) {
        for (std::uint32_t e = 0; e < f.exp; ++e) value *= *a[f.gen];
      } else {
        vanishes = true;
      }
    }
    if (vanishes || !row || !col || forms_seen != 2) continue;
    if (forms_before_col % 2 == 1) value = -value;
    res.matrix(row_at.at(*row), col_at.at(*col)) += value;
  }
  res.rank = rank(res.matrix);
  return res;
}

struct InvarianceReport {
  GradedPolynomial lie_cartan;  // (i_xi ddr + ddr i_xi) omega
  GradedPolynomial lie_direct;  // even derivation g -> [xi, g], dR g -> dR [xi, g]
  bool cartan_consistent() const { return lie_cartan == lie_direct; }
  bool pass() const { return lie_cartan.is_zero() && lie_direct.is_zero() && cartan_consistent(); }
};

/// Infinitesimal conjugation by xi on the chart: g^{mu nu} -> [xi, G]^{mu nu},
/// frame -> xi * frame. Returns images of the chart generators.
inline std::vector<GradedPolynomial> conjugation_images(const ChartPresentation& c, const RationalMatrix& xi) {
  if (xi.rows() != c.n || xi.cols() != c.n) throw structural_error("xi has the wrong size");
  std::vector<GradedPolynomial> out(c.table->size(), GradedPolynomial(c.table));
  CDGAMatrix xm(c.table, c.n);
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t j = 0; j < c.n; ++j) xm(i, j) = GradedPolynomial::constant(c.table, xi(i, j));
  for (GenId g = 0; g < c.free->table->size(); ++g) {
    CDGAMatrix gm = c.generator_matrix(g);
    CDGAMatrix r = xm * gm - gm * xm;
    for (std::size_t i = 0; i < c.n; ++i)
      for (std::size_t j = 0; j < c.n; ++j) out[c.entry(g, i, j)] = r(i, j);
  }
  for (std::size_t i = 0; i < c.n; ++i) {
    GradedPolynomial v(c.table);
    for (std::size_t j = 0; j < c.n; ++j)
      v += GradedPolynomial::generator(c.table, c.framing(j)) * xi(i, j);
    out[c.framing(i)] = v;
  }
  return out;
}

inline InvarianceReport invariance_check(const DeRhamAlgebra& dr, const GradedPolynomial& omega,
                                         const RationalMatrix& xi) {
  const ChartPresentation& c = dr.chart();
  auto rho = conjugation_images(c, xi);
  const std::size_t size = dr.table()->size();
  DerivationImages<GradedPolynomial> contraction(size), lie(size);
  for (GenId g = 0; g < c.table->size(); ++g) {
    GradedPolynomial r = dr.lift(rho[g]);
    contraction[g] = GradedPolynomial(dr.table());
    contraction[dr.delta(g)] = r;
    lie[dr.delta(g)] = dr.ddr(r);
    lie[g] = std::move(r);
  }
  InvarianceReport rep;
  rep.lie_cartan = extend_derivation(contraction, dr.ddr(omega), -1) + dr.ddr(extend_derivation(contraction, omega, -1));
  rep.lie_direct = extend_derivation(lie, omega, 0);
  return rep;
}

}  // namespace dquot

#endif  // DQUOT_DERHAM_HPP
