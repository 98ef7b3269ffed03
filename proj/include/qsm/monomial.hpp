#ifndef QSM_MONOMIAL_HPP
#define QSM_MONOMIAL_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace qsm {

/// Exponent vector of a monomial in a fixed number of variables.
struct Monomial {
  std::vector<std::uint8_t> exps;

  Monomial() = default;
  explicit Monomial(int nvars) : exps(static_cast<std::size_t>(nvars), 0) {}
  Monomial(std::initializer_list<std::uint8_t> e) : exps(e) {}

  int nvars() const { return static_cast<int>(exps.size()); }

  int degree() const {
    int d = 0;
    for (auto e : exps) d += e;
    return d;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial out = *this;
    for (std::size_t k = 0; k < exps.size(); ++k) out.exps[k] = static_cast<std::uint8_t>(out.exps[k] + o.exps[k]);
    return out;
  }

  bool operator==(const Monomial& o) const { return exps == o.exps; }

  std::string str() const {
    std::string s;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      if (exps[k] == 0) continue;
      if (!s.empty()) s += '*';
      s += "x" + std::to_string(k + 1);
      if (exps[k] > 1) s += "^" + std::to_string(static_cast<int>(exps[k]));
    }
    if (s.empty()) s = "1";
    return s;
  }
};

/// Graded lexicographic order, greatest first, so a polynomial map iterates
/// from its leading term.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) return da > db;
    return a.exps > b.exps;
  }
};

}  // namespace qsm

#endif
