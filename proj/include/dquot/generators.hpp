#ifndef DQUOT_GENERATORS_HPP
#define DQUOT_GENERATORS_HPP

#include <dquot/scalar.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace dquot {

using GenId = std::uint32_t;

/// Role of a generator; participates in the canonical order.
enum class GenKind : int {
  variable = 0,
  commutator,
  relation_syzygy,
  jacobi,
  correction,
  matrix_entry,
  framing,
};

inline const char* kind_name(GenKind k) {
  switch (k) {
    case GenKind::variable: return "variable";
    case GenKind::commutator: return "commutator";
    case GenKind::relation_syzygy: return "relation-syzygy";
    case GenKind::jacobi: return "jacobi";
    case GenKind::correction: return "correction";
    case GenKind::matrix_entry: return "matrix-entry";
    case GenKind::framing: return "framing";
  }
  return "unknown";
}

inline GenKind kind_from_name(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(GenKind::framing); ++k)
    if (s == kind_name(static_cast<GenKind>(k))) return static_cast<GenKind>(k);
  throw structural_error("unknown generator kind '" + s + "'");
}

/// A free generator. `form_degree` is 1 only for de Rham symbols.
struct GenSym {
  std::string name;
  int internal_degree = 0;
  GenKind kind = GenKind::variable;
  int form_degree = 0;

  /// Koszul parity: total degree mod 2.
  int parity() const { return std::abs(internal_degree + form_degree) % 2; }
  bool odd() const { return parity() == 1; }

  friend bool operator==(const GenSym&, const GenSym&) = default;
};

/// Canonical generator order: form degree ascending, then internal degree
/// descending, then kind, then name.
inline bool canonical_less(const GenSym& a, const GenSym& b) {
  return std::make_tuple(a.form_degree, -a.internal_degree, static_cast<int>(a.kind), a.name) <
         std::make_tuple(b.form_degree, -b.internal_degree, static_cast<int>(b.kind), b.name);
}

/// Immutable generator registry. Ids are positions in canonical order, so
/// comparing ids compares generators.
class GenTable {
 public:
  static std::shared_ptr<const GenTable> build(std::vector<GenSym> gens) {
    std::sort(gens.begin(), gens.end(), canonical_less);
    auto table = std::shared_ptr<GenTable>(new GenTable());
    table->gens_ = std::move(gens);
    for (GenId i = 0; i < table->gens_.size(); ++i) {
      const auto& g = table->gens_[i];
      if (g.internal_degree > 0) throw structural_error("generator '" + g.name + "' has positive degree");
      if (!table->by_name_.emplace(g.name, i).second)
        throw structural_error("duplicate generator name '" + g.name + "'");
    }
    return table;
  }

  std::size_t size() const { return gens_.size(); }
  const GenSym& operator[](GenId id) const { return gens_[id]; }
  const std::vector<GenSym>& gens() const { return gens_; }

  bool contains(const std::string& name) const { return by_name_.count(name) != 0; }
  GenId id(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw structural_error("unknown generator '" + name + "'");
    return it->second;
  }

  std::vector<GenId> ids_of_degree(int internal_degree, int form_degree = 0) const {
    std::vector<GenId> out;
    for (GenId i = 0; i < gens_.size(); ++i)
      if (gens_[i].internal_degree == internal_degree && gens_[i].form_degree == form_degree) out.push_back(i);
    return out;
  }

 private:
  GenTable() = default;
  std::vector<GenSym> gens_;
  std::unordered_map<std::string, GenId> by_name_;
};

using TablePtr = std::shared_ptr<const GenTable>;

inline void require_same_table(const TablePtr& a, const TablePtr& b) {
  if (a != b) throw structural_error("operands live over different generator tables");
}

}  // namespace dquot

#endif  // DQUOT_GENERATORS_HPP
