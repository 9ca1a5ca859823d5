#ifndef DQUOT_RANDOM_HPP
#define DQUOT_RANDOM_HPP

#include <dquot/graded_polynomial.hpp>
#include <dquot/linalg.hpp>

#include <random>
#include <vector>

namespace dquot {

/// Deterministic sampling of small exact objects for self-checks.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  std::size_t index(std::size_t size) { return static_cast<std::size_t>(integer(0, static_cast<long>(size) - 1)); }

  /// Small rational with numerator in [-3, 3] and denominator in [1, 3].
  Scalar scalar() {
    Scalar q(integer(-3, 3), integer(1, 3));
    q.canonicalize();
    return q;
  }
  Scalar nonzero_scalar() {
    Scalar q;
    do q = scalar();
    while (q == 0);
    return q;
  }

  RationalMatrix matrix(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = scalar();
    return m;
  }

  RationalMatrix invertible_matrix(std::size_t n) {
    for (;;) {
      RationalMatrix m = matrix(n);
      if (rank(m) == n) return m;
    }
  }

  /// Sum of up to `max_terms` products of up to `max_factors` generators
  /// drawn from `ids` (in random order), each with a random coefficient.
  GradedPolynomial polynomial(const TablePtr& t, const std::vector<GenId>& ids, int max_terms = 3,
                              int max_factors = 3) {
    GradedPolynomial p(t);
    const int terms = static_cast<int>(integer(1, max_terms));
    for (int k = 0; k < terms; ++k) {
      std::vector<GenId> word;
      const int factors = static_cast<int>(integer(0, max_factors));
      for (int f = 0; f < factors; ++f) word.push_back(ids[index(ids.size())]);
      p += GradedPolynomial::product_of(t, nonzero_scalar(), word);
    }
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<GenId> all_ids(const GenTable& t) {
  std::vector<GenId> ids(t.size());
  for (GenId i = 0; i < t.size(); ++i) ids[i] = i;
  return ids;
}

}  // namespace dquot

#endif  // DQUOT_RANDOM_HPP
