#include "test_support.hpp"

#include <gtest/gtest.h>

namespace dquot {
namespace {

using testing::q;

NCPoly word_of(const TablePtr& t, std::initializer_list<const char*> letters, Scalar c = Scalar(1)) {
  NCWord w;
  for (const char* l : letters) w.push_back(t->id(l));
  return NCPoly::word(t, w, c);
}

std::vector<std::string> names_of_degree(const GenTable& t, int degree) {
  std::vector<std::string> out;
  for (GenId g : t.ids_of_degree(degree)) out.push_back(t[g].name);
  return out;
}

TEST(LiftToFree, SortsLettersByOrder) {
  auto in = AlgebraInput::parse({"x", "y"}, {"y*x"});
  auto p = build_resolution(in);
  EXPECT_EQ(lift_to_free(in.relations[0], {"x", "y"}, p.table), word_of(p.table, {"x", "y"}));
  EXPECT_EQ(lift_to_free(in.relations[0], {"y", "x"}, p.table), word_of(p.table, {"y", "x"}));
}

TEST(LiftToFree, PowerBecomesRepeatedLetter) {
  auto in = AlgebraInput::parse({"w"}, {"w^5"});
  auto p = build_resolution(in);
  EXPECT_EQ(lift_to_free(in.relations[0], {"w"}, p.table), word_of(p.table, {"w", "w", "w", "w", "w"}));
}

TEST(LiftToFree, FermatRelationHasFiveTerms) {
  auto p = build_resolution(fermat_input());
  NCPoly expected = word_of(p.table, {"w", "w", "w", "w", "w"}) + word_of(p.table, {"x", "x", "x", "x", "x"}) +
                    word_of(p.table, {"y", "y", "y", "y", "y"}) + word_of(p.table, {"z", "z", "z", "z", "z"}) +
                    NCPoly::constant(p.table, q(1));
  NCPoly lifted = lift_to_free(p.input.relations[0], p.lift_order, p.table);
  EXPECT_EQ(lifted.size(), 5u);
  EXPECT_EQ(lifted, expected);
  EXPECT_EQ(*p.diff[p.syzygy(0)], expected);
}

TEST(LiftToFree, UnknownVariableIsAnError) {
  auto in = AlgebraInput::parse({"x", "y"}, {"x*y"});
  auto p = build_resolution(in);
  EXPECT_THROW(lift_to_free(in.relations[0], {"x"}, p.table), structural_error);
  EXPECT_THROW(AlgebraInput::parse({"x"}, {"x*q"}), parse_error);
}

class FermatResolution : public ::testing::Test {
 protected:
  FreePresentation p = build_resolution(fermat_input());
  NCPoly letter(const char* n) const { return NCPoly::letter(p.table, p.table->id(n)); }
};

TEST_F(FermatResolution, CommutatorLiftOfSingleLetter) {
  EXPECT_EQ(commutator_lift(p, 0, letter("x")), letter("a_w_x"));
  // Reversed orientation picks up a sign.
  EXPECT_EQ(commutator_lift(p, 1, letter("w")), -letter("a_w_x"));
  EXPECT_TRUE(commutator_lift(p, 0, letter("w")).is_zero());
}

TEST_F(FermatResolution, CommutatorLiftOfFifthPower) {
  NCPoly expected(p.table);
  for (int i = 0; i < 5; ++i) {
    NCWord left(static_cast<std::size_t>(i), p.table->id("x")), right(static_cast<std::size_t>(4 - i), p.table->id("x"));
    expected += NCPoly::word(p.table, left) * letter("a_w_x") * NCPoly::word(p.table, right);
  }
  NCPoly x5 = word_of(p.table, {"x", "x", "x", "x", "x"});
  EXPECT_EQ(commutator_lift(p, 0, x5), expected);
  EXPECT_EQ(p.d(commutator_lift(p, 0, x5)), graded_commutator(letter("w"), x5));
}

TEST_F(FermatResolution, CommutatorLiftOfConstantVanishes) {
  EXPECT_TRUE(commutator_lift(p, 0, NCPoly::constant(p.table, q(1))).is_zero());
}

TEST_F(FermatResolution, CommutatorLiftRejectsNegativeDegrees) {
  EXPECT_THROW(commutator_lift(p, 0, letter("s_1")), structural_error);
}

TEST_F(FermatResolution, GeneratorCounts) {
  EXPECT_EQ(p.table->ids_of_degree(0).size(), 4u);
  EXPECT_EQ(names_of_degree(*p.table, -1),
            (std::vector<std::string>{"a_w_x", "a_w_y", "a_w_z", "a_x_y", "a_x_z", "a_y_z", "s_1"}));
  EXPECT_EQ(names_of_degree(*p.table, -2), (std::vector<std::string>{"v_w_x_y", "v_w_x_z", "v_w_y_z", "v_x_y_z",
                                                                     "t_w_1", "t_x_1", "t_y_1", "t_z_1"}));
  EXPECT_EQ(p.table->size(), 19u);
}

TEST_F(FermatResolution, CorrectionDifferential) {
  // d(t_w) = [w, s] - sum_i (x^i a_wx x^{4-i} + y^i a_wy y^{4-i} + z^i a_wz z^{4-i})
  NCPoly expected = graded_commutator(letter("w"), letter("s_1"));
  for (const char* v : {"x", "y", "z"}) {
    NCPoly a = letter((std::string("a_w_") + v).c_str());
    for (int i = 0; i < 5; ++i) {
      NCWord left(static_cast<std::size_t>(i), p.table->id(v)), right(static_cast<std::size_t>(4 - i), p.table->id(v));
      expected -= NCPoly::word(p.table, left) * a * NCPoly::word(p.table, right);
    }
  }
  EXPECT_EQ(*p.diff[p.table->id("t_w_1")], expected);
}

TEST_F(FermatResolution, JacobiDifferential) {
  // d(v_xyz) = [x, a_yz] + [y, a_zx] + [z, a_xy] with a_zx = -a_xz.
  NCPoly expected = graded_commutator(letter("x"), letter("a_y_z")) -
                    graded_commutator(letter("y"), letter("a_x_z")) +
                    graded_commutator(letter("z"), letter("a_x_y"));
  EXPECT_EQ(*p.diff[p.table->id("v_x_y_z")], expected);
}

TEST_F(FermatResolution, DSquaredVanishes) {
  auto rep = check_d_squared(p);
  EXPECT_TRUE(rep.ok()) << ::testing::PrintToString(rep.failures());
  EXPECT_EQ(rep.entries.size(), p.table->size());
}

TEST_F(FermatResolution, PlusSignOnCorrectionBreaksDSquared) {
  FreePresentation bad = p;
  NCPoly f = *p.diff[p.syzygy(0)];
  for (std::size_t j = 0; j < p.m(); ++j)
    bad.diff[p.correction(j, 0)] =
        graded_commutator(NCPoly::letter(p.table, p.variable(j)), NCPoly::letter(p.table, p.syzygy(0))) +
        commutator_lift(p, j, f);
  auto failures = check_d_squared(bad).failures();
  EXPECT_EQ(failures, (std::vector<std::string>{"t_w_1", "t_x_1", "t_y_1", "t_z_1"}));
}

TEST(BuildResolution, SingleVariableHasNoNegativeGenerators) {
  auto p = build_resolution(AlgebraInput::parse({"x"}, {}));
  EXPECT_EQ(p.table->size(), 1u);
  EXPECT_TRUE(check_d_squared(p).ok());
}

TEST(BuildResolution, ThreeVariablePattern) {
  auto p = build_resolution(AlgebraInput::parse({"x", "y", "z"}, {}));
  EXPECT_EQ(names_of_degree(*p.table, 0), (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(names_of_degree(*p.table, -1), (std::vector<std::string>{"a_x_y", "a_x_z", "a_y_z"}));
  EXPECT_EQ(names_of_degree(*p.table, -2), (std::vector<std::string>{"v_x_y_z"}));
  EXPECT_TRUE(check_d_squared(p).ok());
}

TEST(BuildResolution, FlippedCommutatorSignIsCaught) {
  auto p = build_resolution(AlgebraInput::parse({"x", "y", "z"}, {}));
  FreePresentation bad = p;
  GenId a = p.table->id("a_x_y");
  bad.diff[a] = -*p.diff[a];
  auto rep = check_d_squared(bad);
  EXPECT_EQ(rep.failures(), (std::vector<std::string>{"v_x_y_z"}));
}

TEST(BuildResolution, CorpusSatisfiesDSquared) {
  for (const auto& e : testing::corpus()) {
    auto rep = check_d_squared(*testing::resolve(e));
    EXPECT_TRUE(rep.ok()) << e.label << ": " << ::testing::PrintToString(rep.failures());
  }
}

TEST(BuildResolution, InvalidInputs) {
  EXPECT_THROW(AlgebraInput::parse({}, {}), structural_error);
  EXPECT_THROW(AlgebraInput::parse({"x", "x"}, {}), structural_error);
  EXPECT_THROW(AlgebraInput::parse({"x"}, {"x - x"}), structural_error);
  auto in = AlgebraInput::parse({"x", "y"}, {});
  EXPECT_THROW(build_resolution(in, std::vector<std::string>{"x", "z"}), structural_error);
}

TEST(BuildResolution, IsDeterministic) {
  for (const auto& e : testing::corpus()) {
    std::string first = to_json(*testing::resolve(e)).dump();
    std::string second = to_json(*testing::resolve(e)).dump();
    EXPECT_EQ(first, second) << e.label;
  }
}

TEST(CommutatorLift, DifferentialIsCommutatorOnRandomPolynomials) {
  auto in = AlgebraInput::parse({"w", "x", "y", "z"}, {});
  auto p = build_resolution(in);
  std::vector<GenId> vars = all_ids(*in.table);
  Sampler s(77);
  for (int k = 0; k < 150; ++k) {
    std::size_t nvars = 1 + s.index(4);
    std::vector<GenId> pool(vars.begin(), vars.begin() + static_cast<long>(nvars));
    GradedPolynomial f = s.polynomial(in.table, pool, 4, 5);
    std::vector<std::string> order = in.variables;
    std::shuffle(order.begin(), order.end(), s.engine());
    NCPoly lifted = lift_to_free(f, order, p.table);
    std::size_t j = s.index(4);
    NCPoly xi = commutator_lift(p, j, lifted);
    ASSERT_EQ(p.d(xi), graded_commutator(NCPoly::letter(p.table, p.variable(j)), lifted)) << to_string(f);
  }
}

// Lifting order only moves d(s) by commutators, so the classical locus and its
// linearization do not depend on it.
TEST(BuildResolution, ClassicalLocusIndependentOfOrdering) {
  auto in = AlgebraInput::parse({"x", "y", "z"}, {"x*y*z + 2*x^2*y - z - 3"});
  std::vector<std::vector<std::string>> orders{{"x", "y", "z"}, {"z", "y", "x"}, {"y", "x", "z"}};
  std::vector<std::shared_ptr<const ChartPresentation>> charts;
  for (const auto& o : orders)
    charts.push_back(matricize(std::make_shared<const FreePresentation>(build_resolution(in, o)), 2));
  EXPECT_NE(to_string(*charts[0]->diff[charts[0]->entry(charts[0]->free->syzygy(0), 0, 1)]),
            to_string(*charts[1]->diff[charts[1]->entry(charts[1]->free->syzygy(0), 0, 1)]));

  // Points on the surface: pick x, y, solve for z = (2x^2 y - 3) / (1 - xy).
  auto on_surface = [](Scalar x, Scalar y) {
    Scalar z = (2 * x * x * y - 3) / (1 - x * y);
    return std::vector<Scalar>{x, y, z};
  };
  Sampler s(5);
  for (int k = 0; k < 40; ++k) {
    Scalar x = s.scalar(), y = s.scalar();
    if (x * y == 1) continue;
    Scalar x2 = x + 1, y2 = y + 1;  // distinct eigenvalues in Y
    if (x2 * y2 == 1) continue;
    MatrixPoint pt = diag_point(in, {on_surface(x, y), on_surface(x2, y2)});
    MatrixPoint moved = gl_action(s.invertible_matrix(2), pt);
    std::optional<CohomologyReport> ref;
    for (const auto& c : charts) {
      ASSERT_TRUE(is_classical_point(moved, *c).classical);
      auto h = cohomology_dims(tangent_complex_at(*c, moved));
      if (ref) EXPECT_EQ(h, *ref);
      else ref = h;
    }
    // A non-commuting perturbation is rejected under every ordering.
    MatrixPoint off = moved;
    off.matrices[0](0, 1) += 1;
    for (const auto& c : charts) EXPECT_FALSE(is_classical_point(off, *c).classical);
  }
}

}  // namespace
}  // namespace dquot
