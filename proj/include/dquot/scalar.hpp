#ifndef DQUOT_SCALAR_HPP
#define DQUOT_SCALAR_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dquot {

/// Exact rational coefficient. GMP keeps it reduced with a positive
/// denominator after canonicalize().
using Scalar = mpq_class;
using Integer = mpz_class;

/// Thrown for inconsistent inputs: mixed generator tables, missing
/// images, dimension mismatches, preconditions on points.
class structural_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Scalar make_scalar(long num, long den = 1) {
  if (den == 0) throw structural_error("zero denominator");
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "num/den" or "num".
inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (num.size() > 1 && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw structural_error("malformed rational '" + s + "'");
  Integer n(num), d(den);
  if (d == 0) throw structural_error("zero denominator in '" + s + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

/// Always "num/den", the wire format for every serialized scalar.
inline std::string format_scalar(const Scalar& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// "3", "-1/2": the form used inside printed polynomials.
inline std::string format_scalar_short(const Scalar& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace dquot

#endif  // DQUOT_SCALAR_HPP
