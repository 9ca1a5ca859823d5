#ifndef DQUOT_TANGENT_HPP
#define DQUOT_TANGENT_HPP

#include <dquot/linalg.hpp>
#include <dquot/parser.hpp>
#include <dquot/points.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dquot {

/// Linearized chart differential at a classical point. T^j is spanned by
/// the duals of the degree -j generators (framing included in T^0).
struct TangentComplex {
  std::vector<GenId> basis0, basis1, basis2;
  RationalMatrix d0;  // rows: T^1, cols: T^0
  RationalMatrix d1;  // rows: T^2, cols: T^1
  // True when the chart has every generator of the resolution (m <= 3, r = 0),
  // so the degree-2 cohomology is exact.
  bool truncation_complete = false;

  std::size_t dim0() const { return basis0.size(); }
  std::size_t dim1() const { return basis1.size(); }
  std::size_t dim2() const { return basis2.size(); }
  bool is_complex() const { return (d1 * d0).is_zero(); }
};

inline TangentComplex tangent_complex_at(const ChartPresentation& c, const MatrixPoint& pt) {
  ClassicalCheck cc = is_classical_point(pt, c);
  if (!cc.classical)
    throw structural_error("not a classical point: image of '" + *cc.witness_generator + "' does not vanish");
  Assignment a = chart_assignment(c, pt);
  TangentComplex t;
  t.basis0 = c.table->ids_of_degree(0);
  t.basis1 = c.table->ids_of_degree(-1);
  t.basis2 = c.table->ids_of_degree(-2);
  t.truncation_complete = c.free->m() <= 3 && c.free->r() == 0;

  auto fill = [&](const std::vector<GenId>& rows, const std::vector<GenId>& cols) {
    std::map<GenId, std::size_t> col_index;
    for (std::size_t j = 0; j < cols.size(); ++j) col_index[cols[j]] = j;
    RationalMatrix mtx(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (const auto& [g, coeff] : linear_part(*c.diff[rows[i]], a)) {
        auto it = col_index.find(g);
        if (it != col_index.end()) mtx(i, it->second) = coeff;
      }
    return mtx;
  };
  t.d0 = fill(t.basis1, t.basis0);
  t.d1 = fill(t.basis2, t.basis1);
  return t;
}

struct CohomologyReport {
  std::size_t h0 = 0, h1 = 0, h2_upper = 0;
  bool h2_exact = false;
  friend bool operator==(const CohomologyReport&, const CohomologyReport&) = default;
};

inline CohomologyReport cohomology_dims(const TangentComplex& t) {
  if (!t.is_complex()) throw structural_error("linearized differential does not square to zero");
  std::size_t r0 = rank(t.d0), r1 = rank(t.d1);
  CohomologyReport rep;
  rep.h0 = t.dim0() - r0;
  rep.h1 = t.dim1() - r1 - r0;
  rep.h2_upper = t.dim2() - r1;
  rep.h2_exact = t.truncation_complete;
  return rep;
}

/// Ext^i(K, G) for the quotient O -> G = sum of skyscrapers at distinct
/// points of A^m with kernel K. Built from the Koszul resolution of each
/// point ideal, evaluated at the point (Hom into the skyscraper); the
/// contributions of distinct points add.
inline std::vector<std::size_t> koszul_ext_oracle(std::size_t m, const std::vector<std::vector<Scalar>>& points) {
  if (m == 0) throw structural_error("oracle needs at least one variable");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != m) throw structural_error("oracle point has the wrong number of coordinates");
    for (std::size_t j = 0; j < i; ++j)
      if (points[i] == points[j]) throw structural_error("repeated points are unsupported by the oracle");
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back("x" + std::to_string(i + 1));
  TablePtr ring = variable_table(names);

  // Basis of F_j: (j+1)-subsets of {0..m-1}, lexicographic.
  std::vector<std::vector<std::vector<std::size_t>>> subsets(m);
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) s.push_back(i);
    subsets[s.size() - 1].push_back(s);
  }
  for (auto& level : subsets) std::sort(level.begin(), level.end());

  std::vector<std::size_t> total(std::max<std::size_t>(m, 3), 0);
  for (const auto& p : points) {
    std::vector<GradedPolynomial> gens;
    for (std::size_t i = 0; i < m; ++i)
      gens.push_back(GradedPolynomial::generator(ring, names[i]) - GradedPolynomial::constant(ring, p[i]));
    Assignment at = make_assignment(*ring);
    for (std::size_t i = 0; i < m; ++i) at[ring->id(names[i])] = p[i];

    // delta[j]: Hom(F_{j-1}, k) -> Hom(F_j, k), the transpose of the
    // evaluated Koszul map F_j -> F_{j-1}; delta[0] = 0.
    std::vector<std::size_t> delta_rank(m + 1, 0);
    for (std::size_t j = 1; j < m; ++j) {
      const auto& src = subsets[j];
      const auto& dst = subsets[j - 1];
      RationalMatrix boundary(dst.size(), src.size());
      for (std::size_t col = 0; col < src.size(); ++col)
        for (std::size_t k = 0; k < src[col].size(); ++k) {
          auto face = src[col];
          std::size_t var = face[k];
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
          std::size_t row = static_cast<std::size_t>(std::lower_bound(dst.begin(), dst.end(), face) - dst.begin());
          Scalar v = evaluate_scalar(gens[var], at);
          boundary(row, col) += (k % 2 == 0) ? v : Scalar(-v);
        }
      delta_rank[j] = rank(boundary.transpose());
    }
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t dim = subsets[j].size();
      std::size_t outgoing = j + 1 < m ? delta_rank[j + 1] : 0;
      total[j] += dim - outgoing - delta_rank[j];
    }
  }
  return total;
}

/// Oracle for k points (i, 0, ..., 0), i = 0..k-1.
inline std::vector<std::size_t> koszul_ext_oracle(std::size_t m, std::size_t k_points) {
  std::vector<std::vector<Scalar>> pts;
  for (std::size_t i = 0; i < k_points; ++i) {
    std::vector<Scalar> p(m, Scalar(0));
    p[0] = static_cast<long>(i);
    pts.push_back(p);
  }
  return koszul_ext_oracle(m, pts);
}

/// Distinct points of A^m underlying a diagonal MatrixPoint, if that is
/// what it is.
inline std::optional<std::vector<std::vector<Scalar>>> diagonal_support(const MatrixPoint& pt) {
  std::vector<std::vector<Scalar>> pts(pt.n(), std::vector<Scalar>(pt.m()));
  for (std::size_t i = 0; i < pt.m(); ++i)
    for (std::size_t r = 0; r < pt.n(); ++r)
      for (std::size_t c = 0; c < pt.n(); ++c) {
        if (r == c) pts[r][i] = pt.matrices[i](r, c);
        else if (pt.matrices[i](r, c) != 0) return std::nullopt;
      }
  std::set<std::vector<Scalar>> unique(pts.begin(), pts.end());
  if (unique.size() != pts.size()) return std::nullopt;
  return pts;
}

struct QuotTangentReport {
  struct DegreeCheck {
    int degree;
    std::string relation;
    bool pass;
  };
  CohomologyReport cohomology;
  bool oracle_available = false;
  std::string oracle_note;
  std::vector<std::size_t> ext;
  std::vector<DegreeCheck> checks;

  bool pass() const {
    if (!oracle_available) return true;
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Compares the chart tangent cohomology at a stable classical point with
/// the Ext oracle: h0 = n^2 + ext0, h1 = ext1, h2 >= ext2 (equality when
/// the truncation is complete).
inline QuotTangentReport quot_tangent_check(const ChartPresentation& c, const MatrixPoint& pt) {
  if (!is_stable(pt)) throw structural_error("quot_tangent_check needs a stable point");
  QuotTangentReport rep;
  rep.cohomology = cohomology_dims(tangent_complex_at(c, pt));
  const std::size_t n = c.n;
  if (c.free->r() != 0) {
    rep.oracle_note = "no oracle: relations present";
    return rep;
  }
  if (c.free->m() > 4) {
    rep.oracle_note = "no oracle: more than four variables";
    return rep;
  }
  auto support = diagonal_support(pt);
  if (!support) {
    rep.oracle_note = "no oracle: point is not diagonal with distinct eigen-tuples";
    return rep;
  }
  rep.oracle_available = true;
  rep.ext = koszul_ext_oracle(c.free->m(), *support);
  const auto& h = rep.cohomology;
  auto s = [](std::size_t v) { return std::to_string(v); };
  rep.checks.push_back({0, s(h.h0) + " = " + s(n * n) + " + " + s(rep.ext[0]), h.h0 == n * n + rep.ext[0]});
  rep.checks.push_back({1, s(h.h1) + " = " + s(rep.ext[1]), h.h1 == rep.ext[1]});
  if (h.h2_exact)
    rep.checks.push_back({2, s(h.h2_upper) + " = " + s(rep.ext[2]), h.h2_upper == rep.ext[2]});
  else
    rep.checks.push_back({2, s(h.h2_upper) + " >= " + s(rep.ext[2]), h.h2_upper >= rep.ext[2]});
  return rep;
}

}  // namespace dquot

#endif  // DQUOT_TANGENT_HPP
