#ifndef DQUOT_POINTS_HPP
#define DQUOT_POINTS_HPP

#include <dquot/linalg.hpp>
#include <dquot/repify.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dquot {

/// (X_1, ..., X_m, v): one n x n matrix per declared variable plus the
/// framing vector.
struct MatrixPoint {
  std::vector<RationalMatrix> matrices;
  std::vector<Scalar> framing;

  std::size_t n() const { return framing.size(); }
  std::size_t m() const { return matrices.size(); }

  void validate() const {
    for (const auto& x : matrices)
      if (x.rows() != n() || x.cols() != n()) throw structural_error("matrix size does not match framing length");
  }
  friend bool operator==(const MatrixPoint&, const MatrixPoint&) = default;
};

/// Values of every degree-0 chart generator at the point.
inline Assignment chart_assignment(const ChartPresentation& c, const MatrixPoint& pt) {
  pt.validate();
  if (pt.n() != c.n || pt.m() != c.free->m())
    throw structural_error("point dimensions (m=" + std::to_string(pt.m()) + ", n=" + std::to_string(pt.n()) +
                           ") do not match the chart (m=" + std::to_string(c.free->m()) +
                           ", n=" + std::to_string(c.n) + ")");
  Assignment a = make_assignment(*c.table);
  for (std::size_t i = 0; i < pt.m(); ++i)
    for (std::size_t mu = 0; mu < c.n; ++mu)
      for (std::size_t nu = 0; nu < c.n; ++nu) a[c.entry(c.free->variable(i), mu, nu)] = pt.matrices[i](mu, nu);
  for (std::size_t mu = 0; mu < c.n; ++mu) a[c.framing(mu)] = pt.framing[mu];
  return a;
}

struct ClassicalCheck {
  bool classical = true;
  std::optional<std::string> witness_generator;  // degree -1 generator whose image fails
  std::optional<GradedPolynomial> witness;
};

inline ClassicalCheck is_classical_point(const MatrixPoint& pt, const ChartPresentation& c) {
  Assignment a = chart_assignment(c, pt);
  for (GenId g : c.table->ids_of_degree(-1)) {
    if (evaluate_scalar(*c.diff[g], a) != 0) return {false, (*c.table)[g].name, *c.diff[g]};
  }
  return {};
}

/// Dimensions of the Krylov closure of span(v) under the X_i, one entry
/// per round; stops once the dimension is stable (at most n - 1 rounds).
inline std::vector<std::size_t> krylov_dimensions(const MatrixPoint& pt) {
  pt.validate();
  const std::size_t n = pt.n();
  std::vector<std::vector<Scalar>> basis;
  auto try_add = [&](const std::vector<Scalar>& v) {
    basis.push_back(v);
    if (rank_of_vectors(basis, n) < basis.size()) {
      basis.pop_back();
      return false;
    }
    return true;
  };
  try_add(pt.framing);
  std::vector<std::size_t> dims{basis.size()};
  for (std::size_t round = 1; round < std::max<std::size_t>(n, 1); ++round) {
    auto current = basis;
    for (const auto& x : pt.matrices)
      for (const auto& b : current) try_add(x.apply(b));
    dims.push_back(basis.size());
    if (basis.size() == current.size() || basis.size() == n) break;
  }
  return dims;
}

/// Framed surjectivity: the closure of v under all X_i is the whole space.
inline bool is_stable(const MatrixPoint& pt) { return krylov_dimensions(pt).back() == pt.n(); }

/// X_i = diag of the i-th coordinates, v = all-ones. Every tuple must satisfy
/// the relations of `input`.
inline MatrixPoint diag_point(const AlgebraInput& input, const std::vector<std::vector<Scalar>>& points) {
  if (points.empty()) throw structural_error("diag_point needs at least one point");
  MatrixPoint pt;
  const std::size_t n = points.size(), m = input.m();
  for (const auto& p : points) {
    if (p.size() != m) throw structural_error("point has the wrong number of coordinates");
    Assignment a = make_assignment(*input.table);
    for (std::size_t i = 0; i < m; ++i) a[input.table_id(i)] = p[i];
    for (std::size_t l = 0; l < input.r(); ++l)
      if (evaluate_scalar(input.relations[l], a) != 0)
        throw structural_error("point violates relation " + std::to_string(l + 1));
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Scalar> d;
    for (const auto& p : points) d.push_back(p[i]);
    pt.matrices.push_back(RationalMatrix::diagonal(d));
  }
  pt.framing.assign(n, Scalar(1));
  return pt;
}

/// g . (X_1..X_m, v) = (g X_i g^{-1}, g v).
inline MatrixPoint gl_action(const RationalMatrix& g, const MatrixPoint& pt) {
  pt.validate();
  if (g.rows() != pt.n() || g.cols() != pt.n()) throw structural_error("group element has the wrong size");
  RationalMatrix gi = inverse(g);
  MatrixPoint out;
  for (const auto& x : pt.matrices) out.matrices.push_back(g * x * gi);
  out.framing = g.apply(pt.framing);
  return out;
}

}  // namespace dquot

#endif  // DQUOT_POINTS_HPP
