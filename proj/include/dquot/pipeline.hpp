#ifndef DQUOT_PIPELINE_HPP
#define DQUOT_PIPELINE_HPP

#include <dquot/derham.hpp>
#include <dquot/random.hpp>
#include <dquot/serialize.hpp>
#include <dquot/tangent.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dquot {

inline const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> tasks{"resolve", "repify", "h0", "stable", "tangent", "form-check", "pair", "selfcheck"};
  return tasks;
}

struct Manifest {
  std::vector<std::string> variables;
  std::vector<std::string> relations;
  std::size_t n = 1;
  std::optional<std::vector<std::string>> ordering;
  std::vector<MatrixPoint> points;
  std::vector<std::string> tasks;
  bool extended = false;

  static Manifest from_json(const json& j) {
    Manifest m;
    m.variables = j.at("variables").get<std::vector<std::string>>();
    if (j.contains("relations")) m.relations = j.at("relations").get<std::vector<std::string>>();
    if (j.contains("n")) {
      long n = j.at("n").get<long>();
      if (n < 1) throw structural_error("manifest n must be positive");
      m.n = static_cast<std::size_t>(n);
    }
    if (j.contains("ordering") && !j.at("ordering").is_null())
      m.ordering = j.at("ordering").get<std::vector<std::string>>();
    if (j.contains("points"))
      for (const auto& p : j.at("points")) m.points.push_back(point_from_json(p));
    if (j.contains("tasks")) m.tasks = j.at("tasks").get<std::vector<std::string>>();
    if (j.contains("extended")) m.extended = j.at("extended").get<bool>();
    m.validate();
    return m;
  }

  static Manifest load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw structural_error("cannot open manifest '" + path + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw structural_error("manifest is not valid JSON: " + std::string(e.what()));
    }
    return from_json(j);
  }

  void validate() const {
    AlgebraInput::parse(variables, relations);
    if (ordering) {
      auto a = *ordering, b = variables;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) throw structural_error("ordering must be a permutation of the variables");
    }
    for (const auto& t : tasks)
      if (std::find(known_tasks().begin(), known_tasks().end(), t) == known_tasks().end())
        throw structural_error("unknown task '" + t + "'");
    for (const auto& p : points)
      if (p.n() != n || p.m() != variables.size())
        throw structural_error("point dimensions do not match n and the variable count");
  }

  json to_json() const {
    json pts = json::array();
    for (const auto& p : points) pts.push_back(dquot::to_json(p));
    return {{"variables", variables}, {"relations", relations}, {"n", n},
            {"ordering", ordering ? json(*ordering) : json(nullptr)}, {"points", pts},
            {"tasks", tasks}, {"extended", extended}};
  }
};

namespace detail {

/// Lazily built objects shared by the tasks of one run.
class PipelineContext {
 public:
  explicit PipelineContext(const Manifest& m) : manifest_(m) {}

  const AlgebraInput& input() {
    if (!input_) input_ = AlgebraInput::parse(manifest_.variables, manifest_.relations);
    return *input_;
  }
  std::shared_ptr<const FreePresentation> free() {
    if (!free_) free_ = std::make_shared<const FreePresentation>(build_resolution(input(), manifest_.ordering));
    return free_;
  }
  std::shared_ptr<const ChartPresentation> chart() {
    if (!chart_) chart_ = matricize(free(), manifest_.n);
    return chart_;
  }
  const DeRhamAlgebra& derham() {
    if (!derham_) derham_ = std::make_unique<DeRhamAlgebra>(chart());
    return *derham_;
  }
  const Manifest& manifest() const { return manifest_; }

 private:
  const Manifest& manifest_;
  std::optional<AlgebraInput> input_;
  std::shared_ptr<const FreePresentation> free_;
  std::shared_ptr<const ChartPresentation> chart_;
  std::unique_ptr<DeRhamAlgebra> derham_;
};

inline json degree_counts(const GenTable& t) {
  json out = json::object();
  for (int d = 0; d >= -2; --d) out[std::to_string(d)] = t.ids_of_degree(d).size();
  return out;
}

inline json task_resolve(PipelineContext& ctx) {
  auto p = ctx.free();
  DSquaredReport d2 = check_d_squared(*p);
  return {{"task", "resolve"}, {"pass", d2.ok()}, {"generators_by_degree", degree_counts(*p->table)},
          {"d_squared_failures", d2.failures()}, {"presentation", to_json(*p)}};
}

inline json task_repify(PipelineContext& ctx) {
  auto c = ctx.chart();
  DSquaredReport d2 = check_d_squared(*c);
  return {{"task", "repify"}, {"pass", d2.ok()}, {"n", c->n}, {"generators_by_degree", degree_counts(*c->table)},
          {"d_squared_failures", d2.failures()}, {"presentation", to_json(*c)}};
}

inline json task_h0(PipelineContext& ctx) {
  auto c = ctx.chart();
  json ideal = json::array();
  for (GenId g : c->table->ids_of_degree(-1))
    ideal.push_back({{"generator", (*c->table)[g].name}, {"image", to_string(*c->diff[g])}});
  return {{"task", "h0"}, {"pass", true}, {"count", ideal.size()}, {"ideal", ideal}};
}

inline json task_stable(PipelineContext& ctx) {
  auto c = ctx.chart();
  json pts = json::array();
  bool pass = true;
  for (std::size_t i = 0; i < ctx.manifest().points.size(); ++i) {
    const auto& pt = ctx.manifest().points[i];
    ClassicalCheck cc = is_classical_point(pt, *c);
    pass = pass && cc.classical;
    json witness = nullptr;
    if (!cc.classical) witness = {{"generator", *cc.witness_generator}, {"polynomial", to_string(*cc.witness)}};
    pts.push_back({{"index", i}, {"classical", cc.classical}, {"witness", witness}, {"stable", is_stable(pt)},
                   {"krylov_dimensions", krylov_dimensions(pt)}});
  }
  return {{"task", "stable"}, {"pass", pass}, {"points", pts}};
}

inline json task_tangent(PipelineContext& ctx) {
  auto c = ctx.chart();
  json pts = json::array();
  bool pass = true;
  for (std::size_t i = 0; i < ctx.manifest().points.size(); ++i) {
    const auto& pt = ctx.manifest().points[i];
    json entry = {{"index", i}};
    try {
      TangentComplex t = tangent_complex_at(*c, pt);
      CohomologyReport h = cohomology_dims(t);
      entry["dims"] = {t.dim0(), t.dim1(), t.dim2()};
      entry["cohomology"] = {{"h0", h.h0}, {"h1", h.h1}, {"h2_upper", h.h2_upper}, {"h2_exact", h.h2_exact}};
      if (is_stable(pt)) {
        QuotTangentReport q = quot_tangent_check(*c, pt);
        json checks = json::array();
        for (const auto& ch : q.checks)
          checks.push_back({{"degree", ch.degree}, {"relation", ch.relation}, {"pass", ch.pass}});
        entry["oracle"] = {{"available", q.oracle_available}, {"note", q.oracle_note}, {"ext", q.ext},
                           {"checks", checks}, {"pass", q.pass()}};
        pass = pass && q.pass();
      } else {
        entry["oracle"] = {{"available", false}, {"note", "no oracle: point is not stable"}};
      }
    } catch (const structural_error& e) {
      entry["error"] = e.what();
      pass = false;
    }
    pts.push_back(entry);
  }
  return {{"task", "tangent"}, {"pass", pass}, {"points", pts}};
}

inline json form_check_at(const DeRhamAlgebra& dr) {
  GradedPolynomial phi = build_phi(dr);
  CloseReport rep = close_check(dr);
  return {{"n", dr.chart().n},
          {"pass", rep.pass()},
          {"phi_terms", phi.size()},
          {"omega_terms", rep.omega.size()},
          {"omega_internal_degree", rep.omega.internal_degree().value_or(0)},
          {"omega_form_degree", rep.omega.form_degree().value_or(0)},
          {"dint_omega_zero", rep.d_closed()},
          {"dint_omega_terms", rep.dint_omega.size()},
          {"ddr_omega_zero", rep.ddr_closed()}};
}

/// Closure of the Fermat 2-form at the manifest n; --extended sweeps n = 1..3.
inline json task_form_check(PipelineContext& ctx) {
  json sizes = json::array();
  bool pass = true;
  auto add = [&](const json& r) {
    pass = pass && r.at("pass").get<bool>();
    sizes.push_back(r);
  };
  add(form_check_at(ctx.derham()));
  if (ctx.manifest().extended)
    for (std::size_t n = 1; n <= 3; ++n) {
      if (n == ctx.manifest().n) continue;
      DeRhamAlgebra dr(matricize(ctx.free(), n));
      add(form_check_at(dr));
    }
  return {{"task", "form-check"}, {"pass", pass}, {"sizes", sizes}};
}

inline json task_pair(PipelineContext& ctx) {
  const DeRhamAlgebra& dr = ctx.derham();
  GradedPolynomial omega = omega0(dr);
  const GenTable& ct = *dr.chart().table;
  json pts = json::array();
  bool pass = true;
  for (std::size_t i = 0; i < ctx.manifest().points.size(); ++i) {
    json entry = {{"index", i}};
    try {
      PairingResult pr = pairing_at(dr, omega, ctx.manifest().points[i]);
      json entries = json::array();
      for (std::size_t r = 0; r < pr.rows.size(); ++r)
        for (std::size_t c = 0; c < pr.cols.size(); ++c)
          if (pr.matrix(r, c) != 0)
            entries.push_back({{"row", ct[pr.rows[r]].name}, {"col", ct[pr.cols[c]].name},
                               {"value", format_scalar(pr.matrix(r, c))}});
      entry["rank"] = pr.rank;
      entry["entries"] = entries;
    } catch (const structural_error& e) {
      entry["error"] = e.what();
      pass = false;
    }
    pts.push_back(entry);
  }
  return {{"task", "pair"}, {"pass", pass}, {"points", pts}};
}

/// Matrix-arithmetic evaluation of relation l at a point, letters multiplied
/// in the presentation's lift order.
inline RationalMatrix relation_matrix(const FreePresentation& p, std::size_t l, const MatrixPoint& pt) {
  const std::size_t n = pt.n();
  RationalMatrix out(n, n);
  const GenTable& vt = *p.input.table;
  for (const auto& [m, c] : p.input.relations[l].terms()) {
    std::vector<std::size_t> letters;
    for (const auto& f : m.factors())
      for (std::uint32_t e = 0; e < f.exp; ++e) letters.push_back(p.input.declared_index(vt[f.gen].name));
    auto rank_of = [&](std::size_t i) {
      return std::find(p.lift_order.begin(), p.lift_order.end(), p.input.variables[i]) - p.lift_order.begin();
    };
    std::stable_sort(letters.begin(), letters.end(), [&](auto a, auto b) { return rank_of(a) < rank_of(b); });
    RationalMatrix prod = RationalMatrix::identity(n);
    for (auto i : letters) prod = prod * pt.matrices[i];
    out = out + c * prod;
  }
  return out;
}

inline bool satisfies_by_matrix_arithmetic(const FreePresentation& p, const MatrixPoint& pt) {
  for (std::size_t i = 0; i < pt.m(); ++i)
    for (std::size_t j = i + 1; j < pt.m(); ++j)
      if (!commutator(pt.matrices[i], pt.matrices[j]).is_zero()) return false;
  for (std::size_t l = 0; l < p.r(); ++l)
    if (!relation_matrix(p, l, pt).is_zero()) return false;
  return true;
}

inline json task_selfcheck(PipelineContext& ctx) {
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    checks.push_back({{"name", name}, {"pass", ok}, {"detail", detail}});
    all = all && ok;
  };
  auto free = ctx.free();
  auto chart = ctx.chart();
  Sampler s(0x5eed);

  DSquaredReport fd = check_d_squared(*free);
  record("free d^2 = 0", fd.ok(), std::to_string(fd.entries.size()) + " generators");
  DSquaredReport cd = check_d_squared(*chart);
  record("chart d^2 = 0", cd.ok(), std::to_string(cd.entries.size()) + " generators");

  {
    std::size_t samples = 0, mismatches = 0;
    std::vector<MatrixPoint> pool = ctx.manifest().points;
    for (std::size_t k = 0; k < 40; ++k) {
      MatrixPoint pt;
      if (!ctx.manifest().points.empty() && k % 2 == 0) {
        pt = gl_action(s.invertible_matrix(chart->n), ctx.manifest().points[k / 2 % ctx.manifest().points.size()]);
        if (k % 4 == 2) pt.matrices[s.index(pt.m())](s.index(pt.n()), s.index(pt.n())) += s.nonzero_scalar();
      } else {
        for (std::size_t i = 0; i < free->m(); ++i) pt.matrices.push_back(s.matrix(chart->n));
        pt.framing.assign(chart->n, Scalar(1));
      }
      pool.push_back(pt);
    }
    for (const auto& pt : pool) {
      ++samples;
      if (is_classical_point(pt, *chart).classical != satisfies_by_matrix_arithmetic(*free, pt)) ++mismatches;
    }
    record("h0 ideal matches matrix arithmetic", mismatches == 0,
           std::to_string(samples) + " samples, " + std::to_string(mismatches) + " mismatches");
  }

  {
    const DeRhamAlgebra& dr = ctx.derham();
    auto ids = all_ids(*dr.table());
    std::size_t bad = 0;
    const std::size_t samples = 200;
    for (std::size_t k = 0; k < samples; ++k) {
      GradedPolynomial e = s.polynomial(dr.table(), ids, 2, 3);
      bool ok = dr.ddr(dr.ddr(e)).is_zero() && dr.dint(dr.dint(e)).is_zero() &&
                (dr.dint(dr.ddr(e)) + dr.ddr(dr.dint(e))).is_zero();
      if (!ok) ++bad;
    }
    record("de Rham identities", bad == 0, std::to_string(samples) + " samples, " + std::to_string(bad) + " failures");
  }

  {
    std::size_t bad = 0;
    for (const auto& pt : ctx.manifest().points)
      for (int k = 0; k < 10; ++k) {
        MatrixPoint q = gl_action(s.invertible_matrix(chart->n), pt);
        if (is_classical_point(q, *chart).classical != is_classical_point(pt, *chart).classical ||
            is_stable(q) != is_stable(pt))
          ++bad;
      }
    record("GL-invariance of classical and stable loci", bad == 0,
           std::to_string(ctx.manifest().points.size() * 10) + " conjugations");
  }
  return {{"task", "selfcheck"}, {"pass", all}, {"checks", checks}};
}

}  // namespace detail

/// Runs the manifest's tasks in order. Task failures are recorded in the
/// report; malformed input throws.
inline json run(const Manifest& m, const std::string& command) {
  auto start = std::chrono::steady_clock::now();
  detail::PipelineContext ctx(m);
  json results = json::array();
  bool all = true;
  for (const auto& task : m.tasks) {
    json r;
    try {
      if (task == "resolve") r = detail::task_resolve(ctx);
      else if (task == "repify") r = detail::task_repify(ctx);
      else if (task == "h0") r = detail::task_h0(ctx);
      else if (task == "stable") r = detail::task_stable(ctx);
      else if (task == "tangent") r = detail::task_tangent(ctx);
      else if (task == "form-check") r = detail::task_form_check(ctx);
      else if (task == "pair") r = detail::task_pair(ctx);
      else if (task == "selfcheck") r = detail::task_selfcheck(ctx);
      else throw structural_error("unknown task '" + task + "'");
    } catch (const structural_error& e) {
      r = {{"task", task}, {"pass", false}, {"error", e.what()}};
    }
    all = all && r.at("pass").get<bool>();
    results.push_back(std::move(r));
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return {{"command", command},
          {"input_hash", fnv1a64(m.to_json().dump())},
          {"pass", all},
          {"results", results},
          {"wall_time_ms", elapsed.count()}};
}

/// Report without the wall-time field, for byte comparisons.
inline json strip_wall_time(json report) {
  report.erase("wall_time_ms");
  return report;
}

}  // namespace dquot

#endif  // DQUOT_PIPELINE_HPP
