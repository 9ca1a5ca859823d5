#include "test_support.hpp"

#include <gtest/gtest.h>

namespace dquot {
namespace {

class FermatDeRham : public ::testing::Test {
 protected:
  static std::shared_ptr<const DeRhamAlgebra> at(std::size_t n) {
    static std::map<std::size_t, std::shared_ptr<const DeRhamAlgebra>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const DeRhamAlgebra>(matricize(testing::fermat_free(), n));
    return slot;
  }
  static GradedPolynomial g(const DeRhamAlgebra& dr, const std::string& name) {
    return GradedPolynomial::generator(dr.table(), name);
  }
  static GradedPolynomial dg(const DeRhamAlgebra& dr, const std::string& name) {
    return GradedPolynomial::generator(dr.table(), delta_name(name));
  }
};

TEST_F(FermatDeRham, SymbolsHaveShiftedParity) {
  auto dr = at(1);
  const GenTable& t = *dr->table();
  for (GenId id = 0; id < dr->chart().table->size(); ++id) {
    const GenSym& d = t[dr->delta(id)];
    EXPECT_EQ(d.form_degree, 1);
    EXPECT_EQ(d.internal_degree, t[id].internal_degree);
    EXPECT_EQ(d.parity(), (t[id].parity() + 1) % 2);
    EXPECT_EQ(dr->base_of(dr->delta(id)), id);
  }
}

TEST_F(FermatDeRham, DdrExamples) {
  auto dr = at(1);
  auto x = g(*dr, "x[1,1]"), y = g(*dr, "y[1,1]");
  EXPECT_EQ(dr->ddr(x * y), dg(*dr, "x[1,1]") * y + x * dg(*dr, "y[1,1]"));
  EXPECT_TRUE(dr->ddr(GradedPolynomial::constant(dr->table(), Scalar(4))).is_zero());
  EXPECT_TRUE(dr->ddr(dg(*dr, "s_1[1,1]")).is_zero());
}

TEST_F(FermatDeRham, DintExamples) {
  auto dr = at(2);
  const auto& c = dr->chart();
  GenId u = c.table->id("a_x_y[1,2]");
  EXPECT_EQ(dr->dint(g(*dr, "a_x_y[1,2]")), dr->lift(*c.diff[u]));
  EXPECT_TRUE(dr->dint(dg(*dr, "w[2,1]")).is_zero());
  EXPECT_EQ(dr->dint(dg(*dr, "a_x_y[1,2]")), -dr->ddr(dr->lift(*c.diff[u])));
}

TEST_F(FermatDeRham, PhiAtRankOne) {
  auto dr = at(1);
  auto G = [&](const char* v) { return g(*dr, std::string(v) + "[1,1]"); };
  auto D = [&](const char* v) { return dg(*dr, std::string(v) + "[1,1]"); };
  auto term = [&](const char* a, const char* b, GradedPolynomial u) { return (G(a) * D(b) - G(b) * D(a)) * u; };
  GradedPolynomial expected = term("w", "x", G("a_y_z")) + term("w", "y", -G("a_x_z")) + term("w", "z", G("a_x_y")) +
                              term("y", "z", G("a_w_x")) + term("z", "x", G("a_w_y")) + term("x", "y", G("a_w_z"));
  GradedPolynomial phi = build_phi(*dr);
  EXPECT_EQ(phi, expected);
  EXPECT_EQ(phi.size(), 12u);
  // Moving dR(x) past the odd U_yz flips the sign of the canonical monomial.
  const GenTable& t = *dr->table();
  auto mono = GradedPolynomial::product_of(dr->table(), Scalar(1),
                                           {t.id("w[1,1]"), t.id("a_y_z[1,1]"), t.id(delta_name("x[1,1]"))});
  ASSERT_EQ(mono.size(), 1u);
  EXPECT_EQ(phi.coefficient(mono.terms().begin()->first), Scalar(-1));
}

TEST_F(FermatDeRham, PhiSizeGrowsCubically) {
  for (std::size_t n : {1u, 2u, 3u}) EXPECT_EQ(build_phi(*at(n)).size(), 12 * n * n * n) << n;
}

TEST_F(FermatDeRham, Bidegrees) {
  for (std::size_t n : {1u, 2u}) {
    auto phi = build_phi(*at(n));
    EXPECT_EQ(phi.internal_degree(), -1);
    EXPECT_EQ(phi.form_degree(), 1);
    auto omega = omega0(*at(n));
    EXPECT_EQ(omega.internal_degree(), -1);
    EXPECT_EQ(omega.form_degree(), 2);
  }
}

TEST_F(FermatDeRham, ClosedAtRankOne) {
  auto rep = close_check(*at(1));
  EXPECT_EQ(rep.omega.size(), 18u);
  EXPECT_TRUE(rep.d_closed());
  EXPECT_TRUE(rep.ddr_closed());
  EXPECT_TRUE(rep.pass());
}

// At rank two the internal differential of omega0 is the de Rham derivative
// of d(phi), a 1-form in the degree-0 entries that is not closed.
TEST_F(FermatDeRham, RankTwoObstruction) {
  auto dr = at(2);
  auto rep = close_check(*dr);
  EXPECT_TRUE(rep.ddr_closed());
  auto dphi = dr->dint(build_phi(*dr));
  EXPECT_EQ(rep.dint_omega, -dr->ddr(dphi));
  for (const auto& [m, c] : dphi.terms())
    for (const auto& f : m.factors()) EXPECT_EQ((*dr->table())[f.gen].internal_degree, 0);
  EXPECT_FALSE(rep.d_closed());
  EXPECT_EQ(rep.dint_omega.size(), 216u);
}

TEST(DeRham, RejectsNonFermatCharts) {
  DeRhamAlgebra dr(matricize(testing::resolve(testing::corpus()[3]), 1));
  EXPECT_THROW(build_phi(dr), structural_error);
}

TEST(DeRham, AxiomsOnRandomElements) {
  Sampler s(2718);
  for (const auto& e : testing::corpus()) {
    for (std::size_t n : {1u, 2u}) {
      DeRhamAlgebra dr(matricize(testing::resolve(e), n));
      auto ids = all_ids(*dr.table());
      const int samples = n == 1 ? 1000 : 200;
      for (int k = 0; k < samples; ++k) {
        GradedPolynomial x = s.polynomial(dr.table(), ids, 3, 3);
        ASSERT_TRUE(dr.ddr(dr.ddr(x)).is_zero()) << e.label;
        ASSERT_TRUE(dr.dint(dr.dint(x)).is_zero()) << e.label;
        ASSERT_TRUE((dr.dint(dr.ddr(x)) + dr.ddr(dr.dint(x))).is_zero()) << e.label;
      }
    }
  }
}

TEST_F(FermatDeRham, PairingAtRationalPoint) {
  auto dr = at(1);
  auto res = pairing_at(*dr, omega0(*dr), testing::scalar_point({-1, 0, 0, 0}));
  EXPECT_EQ(res.rank, 3u);
  const GenTable& t = *dr->chart().table;
  std::map<std::pair<std::string, std::string>, Scalar> nonzero;
  for (std::size_t r = 0; r < res.rows.size(); ++r)
    for (std::size_t c = 0; c < res.cols.size(); ++c)
      if (res.matrix(r, c) != 0) nonzero[{t[res.rows[r]].name, t[res.cols[c]].name}] = res.matrix(r, c);
  // U_zx = -a_x_z, so the (Y, U_zx) entry -1 reads +1 against a_x_z.
  std::map<std::pair<std::string, std::string>, Scalar> expected{{{"x[1,1]", "a_y_z[1,1]"}, Scalar(-1)},
                                                                 {{"y[1,1]", "a_x_z[1,1]"}, Scalar(1)},
                                                                 {{"z[1,1]", "a_x_y[1,1]"}, Scalar(-1)}};
  EXPECT_EQ(nonzero, expected);
}

TEST_F(FermatDeRham, PairingNeedsClassicalPoint) {
  auto dr = at(1);
  EXPECT_THROW(pairing_at(*dr, omega0(*dr), testing::scalar_point({0, 0, 0, 0})), structural_error);
}

TEST_F(FermatDeRham, SyzygyColumnIsZero) {
  Sampler s(6);
  testing::CorpusEntry fermat = testing::corpus()[4];
  for (std::size_t n : {1u, 2u}) {
    auto dr = at(n);
    auto omega = omega0(*dr);
    for (int k = 0; k < 6; ++k) {
      auto pt = testing::sample_tuple(fermat, dr->chart().free->input, n, s, 0);
      auto res = pairing_at(*dr, omega, pt);
      for (std::size_t c = 0; c < res.cols.size(); ++c) {
        if ((*dr->chart().table)[res.cols[c]].name.rfind("s_1[", 0) != 0) continue;
        for (std::size_t r = 0; r < res.rows.size(); ++r) EXPECT_EQ(res.matrix(r, c), 0);
      }
    }
  }
}

TEST_F(FermatDeRham, PairingRankInvariantUnderConjugation) {
  auto dr = at(2);
  auto omega = omega0(*dr);
  Sampler s(13);
  testing::CorpusEntry fermat = testing::corpus()[4];
  for (int k = 0; k < 5; ++k) {
    auto pt = testing::sample_tuple(fermat, dr->chart().free->input, 2, s, 0);
    auto r0 = pairing_at(*dr, omega, pt).rank;
    for (int j = 0; j < 4; ++j) EXPECT_EQ(pairing_at(*dr, omega, gl_action(s.invertible_matrix(2), pt)).rank, r0);
  }
}

TEST_F(FermatDeRham, InvarianceUnderInfinitesimalConjugation) {
  {
    auto dr = at(1);
    auto omega = omega0(*dr);
    RationalMatrix xi(1, 1);
    xi(0, 0) = Scalar(7, 3);
    EXPECT_TRUE(invariance_check(*dr, omega, xi).pass());
  }
  auto dr = at(2);
  auto omega = omega0(*dr);
  EXPECT_TRUE(invariance_check(*dr, omega, RationalMatrix::identity(2)).pass());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      RationalMatrix e(2, 2);
      e(i, j) = 1;
      auto rep = invariance_check(*dr, omega, e);
      EXPECT_TRUE(rep.cartan_consistent()) << i << j;
      EXPECT_TRUE(rep.pass()) << i << j;
    }
}

TEST_F(FermatDeRham, CartanFormulaOnRandomForms) {
  auto dr = at(2);
  Sampler s(41);
  auto ids = all_ids(*dr->table());
  for (int k = 0; k < 100; ++k) {
    GradedPolynomial form = s.polynomial(dr->table(), ids, 3, 3);
    RationalMatrix xi = s.matrix(2);
    auto rep = invariance_check(*dr, form, xi);
    ASSERT_TRUE(rep.cartan_consistent()) << to_string(form);
  }
}

TEST_F(FermatDeRham, NonInvariantFormIsDetected) {
  auto dr = at(2);
  RationalMatrix e(2, 2);
  e(0, 1) = 1;
  auto rep = invariance_check(*dr, dr->ddr(g(*dr, "w[1,1]")) * dg(*dr, "x[2,2]"), e);
  EXPECT_TRUE(rep.cartan_consistent());
  EXPECT_FALSE(rep.pass());
}

}  // namespace
}  // namespace dquot
