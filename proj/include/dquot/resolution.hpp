#ifndef DQUOT_RESOLUTION_HPP
#define DQUOT_RESOLUTION_HPP

#include <dquot/derivation.hpp>
#include <dquot/nc_polynomial.hpp>
#include <dquot/parser.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace dquot {

/// R = k[x_1..x_m]/(f_1..f_r): variables in declared order plus relations
/// over the variable table.
struct AlgebraInput {
  std::vector<std::string> variables;
  TablePtr table;
  std::vector<GradedPolynomial> relations;

  static AlgebraInput parse(const std::vector<std::string>& variables, const std::vector<std::string>& relations) {
    AlgebraInput in;
    in.variables = variables;
    in.validate_names();
    in.table = variable_table(variables);
    for (const auto& r : relations) in.relations.push_back(parse_poly(r, in.table));
    in.validate();
    return in;
  }

  std::size_t m() const { return variables.size(); }
  std::size_t r() const { return relations.size(); }

  /// Variable-table id of the i-th declared variable.
  GenId table_id(std::size_t i) const { return table->id(variables[i]); }

  std::size_t declared_index(const std::string& name) const {
    auto it = std::find(variables.begin(), variables.end(), name);
    if (it == variables.end()) throw structural_error("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - variables.begin());
  }

  void validate() const {
    validate_names();
    for (std::size_t l = 0; l < relations.size(); ++l) {
      if (relations[l].is_zero()) throw structural_error("relation " + std::to_string(l + 1) + " is zero");
      require_same_table(relations[l].table(), table);
    }
  }

 private:
  void validate_names() const {
    if (variables.empty()) throw structural_error("at least one variable is required");
    for (std::size_t i = 0; i < variables.size(); ++i) {
      const auto& v = variables[i];
      bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_');
      for (char c : v) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
      if (!ok) throw structural_error("invalid variable name '" + v + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (variables[j] == v) throw structural_error("duplicate variable '" + v + "'");
    }
  }
};

/// Semi-free resolution of R as an associative dga, truncated below
/// internal degree -2.
struct FreePresentation {
  AlgebraInput input;
  std::vector<std::string> lift_order;  // letter order used to lift commutative monomials
  TablePtr table;
  DerivationImages<NCPoly> diff;
  int lowest_degree = -2;

  std::size_t m() const { return input.m(); }
  std::size_t r() const { return input.r(); }

  GenId variable(std::size_t i) const { return table->id(input.variables[i]); }
  GenId commutator_gen(std::size_t i, std::size_t j) const {
    return table->id("a_" + input.variables[i] + "_" + input.variables[j]);
  }
  GenId syzygy(std::size_t l) const { return table->id("s_" + std::to_string(l + 1)); }
  GenId jacobi(std::size_t i, std::size_t j, std::size_t k) const {
    return table->id("v_" + input.variables[i] + "_" + input.variables[j] + "_" + input.variables[k]);
  }
  GenId correction(std::size_t j, std::size_t l) const {
    return table->id("t_" + input.variables[j] + "_" + std::to_string(l + 1));
  }

  /// A(i,j): a_ij for i<j, -a_ji for i>j, 0 for i=j; d A(i,j) = [x_i, x_j].
  NCPoly oriented_commutator(std::size_t i, std::size_t j) const {
    if (i == j) return NCPoly(table);
    if (i < j) return NCPoly::letter(table, commutator_gen(i, j));
    return -NCPoly::letter(table, commutator_gen(j, i));
  }

  NCPoly d(const NCPoly& e) const { return extend_derivation(diff, e, 1); }
};

/// Word of a commutative monomial with letters sorted by `order`
/// (variable names, earliest first). Coefficients carry over.
inline NCPoly lift_to_free(const GradedPolynomial& f, const std::vector<std::string>& order,
                           const TablePtr& free_table) {
  const GenTable& vt = *f.table();
  NCPoly out(free_table);
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::pair<std::size_t, GenId>> letters;
    for (const auto& fac : m.factors()) {
      const std::string& name = vt[fac.gen].name;
      auto it = std::find(order.begin(), order.end(), name);
      if (it == order.end()) throw structural_error("variable '" + name + "' missing from the lift order");
      if (!free_table->contains(name)) throw structural_error("unknown variable '" + name + "'");
      for (std::uint32_t e = 0; e < fac.exp; ++e)
        letters.emplace_back(static_cast<std::size_t>(it - order.begin()), free_table->id(name));
    }
    std::stable_sort(letters.begin(), letters.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    NCWord w;
    for (const auto& l : letters) w.push_back(l.second);
    out.add_term(w, c);
  }
  return out;
}

/// xi with d(xi) = [x_j, f_lift]: each letter x_i of each word is replaced
/// in turn by A(j, i).
inline NCPoly commutator_lift(const FreePresentation& p, std::size_t j, const NCPoly& f_lift) {
  const GenTable& t = *p.table;
  NCPoly out(p.table);
  for (const auto& [w, c] : f_lift.terms()) {
    for (GenId g : w)
      if (t[g].internal_degree != 0) throw structural_error("commutator_lift needs a degree-0 polynomial");
    for (std::size_t l = 0; l < w.size(); ++l) {
      std::size_t i = p.input.declared_index(t[w[l]].name);
      NCPoly a = p.oriented_commutator(j, i);
      if (a.is_zero()) continue;
      NCWord left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(l));
      NCWord right(w.begin() + static_cast<std::ptrdiff_t>(l) + 1, w.end());
      out += NCPoly::word(p.table, left, c) * a * NCPoly::word(p.table, right);
    }
  }
  return out;
}

/// Builds the resolution: x_i (0); a_ij, s_l (-1); v_ijk, t_jl (-2).
inline FreePresentation build_resolution(const AlgebraInput& input,
                                         std::optional<std::vector<std::string>> lift_order = std::nullopt) {
  input.validate();
  FreePresentation p;
  p.input = input;
  p.lift_order = lift_order ? *lift_order : input.variables;
  {
    auto sorted = p.lift_order, declared = input.variables;
    std::sort(sorted.begin(), sorted.end());
    std::sort(declared.begin(), declared.end());
    if (sorted != declared) throw structural_error("lift order must be a permutation of the variables");
  }
  const auto& v = input.variables;
  const std::size_t m = v.size(), r = input.r();

  std::vector<GenSym> gens;
  for (const auto& x : v) gens.push_back({x, 0, GenKind::variable, 0});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) gens.push_back({"a_" + v[i] + "_" + v[j], -1, GenKind::commutator, 0});
  for (std::size_t l = 0; l < r; ++l) gens.push_back({"s_" + std::to_string(l + 1), -1, GenKind::relation_syzygy, 0});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        gens.push_back({"v_" + v[i] + "_" + v[j] + "_" + v[k], -2, GenKind::jacobi, 0});
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = 0; l < r; ++l)
      gens.push_back({"t_" + v[j] + "_" + std::to_string(l + 1), -2, GenKind::correction, 0});
  p.table = GenTable::build(std::move(gens));
  p.diff.assign(p.table->size(), std::nullopt);

  auto letter = [&](std::size_t i) { return NCPoly::letter(p.table, p.variable(i)); };

  for (std::size_t i = 0; i < m; ++i) p.diff[p.variable(i)] = NCPoly(p.table);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      p.diff[p.commutator_gen(i, j)] = graded_commutator(letter(i), letter(j));

  std::vector<NCPoly> lifted;
  for (std::size_t l = 0; l < r; ++l) {
    lifted.push_back(lift_to_free(input.relations[l], p.lift_order, p.table));
    p.diff[p.syzygy(l)] = lifted.back();
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        p.diff[p.jacobi(i, j, k)] = graded_commutator(letter(i), p.oriented_commutator(j, k)) +
                                    graded_commutator(letter(j), p.oriented_commutator(k, i)) +
                                    graded_commutator(letter(k), p.oriented_commutator(i, j));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = 0; l < r; ++l)
      p.diff[p.correction(j, l)] = graded_commutator(letter(j), NCPoly::letter(p.table, p.syzygy(l))) -
                                   commutator_lift(p, j, lifted[l]);
  return p;
}

/// d(d(g)) for every generator, rendered canonically.
struct DSquaredReport {
  struct Entry {
    std::string generator;
    std::string d_squared;
    bool zero;
  };
  std::vector<Entry> entries;
  bool ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.zero; });
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& e : entries)
      if (!e.zero) out.push_back(e.generator);
    return out;
  }
};

template <class Poly>
DSquaredReport check_d_squared(const TablePtr& table, const DerivationImages<Poly>& diff) {
  DSquaredReport rep;
  for (GenId g = 0; g < table->size(); ++g) {
    if (!diff[g]) throw structural_error("generator '" + (*table)[g].name + "' has no differential");
    Poly dd = extend_derivation(diff, *diff[g], 1);
    rep.entries.push_back({(*table)[g].name, to_string(dd), dd.is_zero()});
  }
  return rep;
}

inline DSquaredReport check_d_squared(const FreePresentation& p) { return check_d_squared(p.table, p.diff); }

}  // namespace dquot

#endif  // DQUOT_RESOLUTION_HPP
