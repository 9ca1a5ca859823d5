#ifndef DQUOT_SERIALIZE_HPP
#define DQUOT_SERIALIZE_HPP

#include <dquot/points.hpp>
#include <dquot/repify.hpp>
#include <dquot/resolution.hpp>

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace dquot {

using json = nlohmann::ordered_json;

inline json generators_to_json(const GenTable& t) {
  json out = json::array();
  for (const auto& g : t.gens())
    out.push_back({{"name", g.name}, {"degree", g.internal_degree}, {"kind", kind_name(g.kind)}});
  return out;
}

inline json relations_to_json(const AlgebraInput& in) {
  json out = json::array();
  for (const auto& r : in.relations) out.push_back(to_string(r));
  return out;
}

inline json to_json(const FreePresentation& p) {
  json diff = json::array();
  for (GenId g = 0; g < p.table->size(); ++g) {
    json terms = json::array();
    for (auto it = p.diff[g]->terms().rbegin(); it != p.diff[g]->terms().rend(); ++it) {
      json word = json::array();
      for (GenId l : it->first) word.push_back((*p.table)[l].name);
      terms.push_back({{"coefficient", format_scalar(it->second)}, {"word", word}});
    }
    diff.push_back({{"generator", (*p.table)[g].name}, {"image", to_string(*p.diff[g])}, {"terms", terms}});
  }
  return {{"format", "dquot.free_presentation/1"},
          {"variables", p.input.variables},
          {"relations", relations_to_json(p.input)},
          {"lift_order", p.lift_order},
          {"lowest_degree", p.lowest_degree},
          {"generators", generators_to_json(*p.table)},
          {"differential", diff}};
}

inline json to_json(const ChartPresentation& c) {
  json diff = json::array();
  for (GenId g = 0; g < c.table->size(); ++g)
    diff.push_back({{"generator", (*c.table)[g].name}, {"image", to_string(*c.diff[g])}});
  return {{"format", "dquot.chart_presentation/1"},
          {"n", c.n},
          {"variables", c.free->input.variables},
          {"relations", relations_to_json(c.free->input)},
          {"lift_order", c.free->lift_order},
          {"generators", generators_to_json(*c.table)},
          {"differential", diff}};
}

inline json to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_scalar(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const MatrixPoint& pt) {
  json mats = json::array();
  for (const auto& x : pt.matrices) mats.push_back(to_json(x));
  json frame = json::array();
  for (const auto& v : pt.framing) frame.push_back(format_scalar(v));
  return {{"matrices", mats}, {"framing", frame}};
}

inline Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw structural_error("scalars must be \"num/den\" strings or integers");
}

inline RationalMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw structural_error("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw structural_error("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json(j[i][k]);
  }
  return m;
}

inline MatrixPoint point_from_json(const json& j) {
  MatrixPoint pt;
  for (const auto& mj : j.at("matrices")) pt.matrices.push_back(matrix_from_json(mj));
  for (const auto& v : j.at("framing")) pt.framing.push_back(scalar_from_json(v));
  pt.validate();
  return pt;
}

/// FNV-1a, 64 bit; stable across platforms.
inline std::string fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace dquot

#endif  // DQUOT_SERIALIZE_HPP
