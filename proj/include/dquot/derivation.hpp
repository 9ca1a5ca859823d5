#ifndef DQUOT_DERIVATION_HPP
#define DQUOT_DERIVATION_HPP

#include <dquot/graded_polynomial.hpp>
#include <dquot/nc_polynomial.hpp>

#include <optional>
#include <vector>

namespace dquot {

/// Generator images of a derivation, indexed by GenId.
template <class Poly>
using DerivationImages = std::vector<std::optional<Poly>>;

namespace detail {

inline GradedPolynomial single_term(const TablePtr& t, std::vector<Factor> factors, const Scalar& c) {
  GradedPolynomial p(t);
  p.add_term(Monomial(std::move(factors)), c);
  return p;
}

template <class Poly>
const Poly& require_image(const DerivationImages<Poly>& images, const GenTable& t, GenId g) {
  if (g >= images.size() || !images[g])
    throw structural_error("derivation has no image for generator '" + t[g].name + "'");
  return *images[g];
}

}  // namespace detail

/// Unique derivation of total degree `degree_shift` extending `images`:
/// D(ab) = D(a) b + (-1)^{shift |a|} a D(b). Commutative layer.
inline GradedPolynomial extend_derivation(const DerivationImages<GradedPolynomial>& images,
                                          const GradedPolynomial& e, int degree_shift) {
  if (e.is_zero()) return GradedPolynomial(e.table());
  const TablePtr& tp = e.table();
  const GenTable& t = *tp;
  const bool odd_shift = degree_shift % 2 != 0;
  GradedPolynomial out(tp);
  for (const auto& [m, c] : e.terms()) {
    const auto& fs = m.factors();
    int prefix_parity = 0;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const GenId g = fs[k].gen;
      const GradedPolynomial& img = detail::require_image(images, t, g);
      if (!img.is_zero()) {
        Scalar coeff = c * fs[k].exp;
        if (odd_shift && prefix_parity % 2 == 1) coeff = -coeff;
        std::vector<Factor> left(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(k));
        if (fs[k].exp > 1) left.push_back({g, fs[k].exp - 1});
        std::vector<Factor> right(fs.begin() + static_cast<std::ptrdiff_t>(k) + 1, fs.end());
        out += detail::single_term(tp, std::move(left), coeff) * img *
               detail::single_term(tp, std::move(right), Scalar(1));
      }
      prefix_parity += t[g].parity() * static_cast<int>(fs[k].exp);
    }
  }
  return out;
}

/// Free (noncommutative) layer of the same extension.
inline NCPoly extend_derivation(const DerivationImages<NCPoly>& images, const NCPoly& e, int degree_shift) {
  if (e.is_zero()) return NCPoly(e.table());
  const TablePtr& tp = e.table();
  const GenTable& t = *tp;
  const bool odd_shift = degree_shift % 2 != 0;
  NCPoly out(tp);
  for (const auto& [w, c] : e.terms()) {
    int prefix_parity = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const NCPoly& img = detail::require_image(images, t, w[k]);
      if (!img.is_zero()) {
        Scalar coeff = c;
        if (odd_shift && prefix_parity % 2 == 1) coeff = -coeff;
        NCWord left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        NCWord right(w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
        out += NCPoly::word(tp, std::move(left), coeff) * img * NCPoly::word(tp, std::move(right));
      }
      prefix_parity += t[w[k]].parity();
    }
  }
  return out;
}

}  // namespace dquot

#endif  // DQUOT_DERIVATION_HPP
