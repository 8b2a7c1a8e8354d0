#pragma once

#include <Eigen/Core>
#include <complex>
#include <map>
#include <numeric>
#include <vector>

#include "sing/errors.hpp"

namespace sing {

using Complex = std::complex<double>;
using ExpVec = std::vector<int>;  // one non-negative exponent per variable

// Coefficients of magnitude below this are dropped after multiplication.
// Underflow guard only; it never alters math at working precision.
inline constexpr double kMulDropThreshold = 1e-300;

// Graded lexicographic order with x > y > z (higher total degree first,
// then lexicographically larger exponent vector first). Term iteration and
// serialization follow this order, leading term first, so evaluation order
// and JSON output are deterministic.
struct GrlexDescending {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da > db;
    for (std::size_t j = 0; j < a.size() && j < b.size(); ++j)
      if (a[j] != b[j]) return a[j] > b[j];
    return a.size() > b.size();
  }
};

// Sparse multivariate polynomial with complex double coefficients. Exact in
// structure (exponent maps), approximate in coefficients. Immutable by
// convention once built: all arithmetic returns new values.
class MultiPoly {
 public:
  using TermMap = std::map<ExpVec, Complex, GrlexDescending>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {
    if (nvars < 0) throw InputError("MultiPoly: negative nvars");
  }

  static MultiPoly zero(int nvars) { return MultiPoly(nvars); }

  static MultiPoly constant(int nvars, Complex c) {
    MultiPoly p(nvars);
    p.add_term(ExpVec(nvars, 0), c);
    return p;
  }

  static MultiPoly monomial(int nvars, ExpVec e, Complex c) {
    MultiPoly p(nvars);
    p.add_term(std::move(e), c);
    return p;
  }

  static MultiPoly variable(int nvars, int j) {
    if (j < 0 || j >= nvars) throw InputError("MultiPoly::variable: index");
    ExpVec e(nvars, 0);
    e[j] = 1;
    return monomial(nvars, std::move(e), Complex(1.0, 0.0));
  }

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // Total degree; 0 for the zero polynomial.
  int total_degree() const {
    if (terms_.empty()) return 0;
    // leading entry has maximal degree under grlex-descending order
    const ExpVec& e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
  }

  // Accumulates c into the coefficient at e; erases exact-zero results.
  void add_term(ExpVec e, Complex c) {
    if (int(e.size()) != nvars_)
      throw InputError("MultiPoly::add_term: exponent arity mismatch");
    for (int v : e)
      if (v < 0) throw InputError("MultiPoly::add_term: negative exponent");
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (std::abs(it->second) == 0.0) terms_.erase(it);
    } else if (std::abs(it->second) == 0.0) {
      terms_.erase(it);
    }
  }

  Complex coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Complex(0.0) : it->second;
  }

  bool operator==(const MultiPoly& other) const {
    return nvars_ == other.nvars_ && terms_ == other.terms_;
  }

 private:
  int nvars_;
  TermMap terms_;
};

inline void require_same_ring(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars())
    throw InputError("polynomial arithmetic: nvars mismatch");
}

inline MultiPoly add(const MultiPoly& a, const MultiPoly& b) {
  require_same_ring(a, b);
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms()) r.add_term(e, c);
  return r;
}

inline MultiPoly scale(const MultiPoly& a, Complex k) {
  MultiPoly r(a.nvars());
  if (std::abs(k) == 0.0) return r;
  for (const auto& [e, c] : a.terms()) r.add_term(e, c * k);
  return r;
}

inline MultiPoly negate(const MultiPoly& a) { return scale(a, Complex(-1.0)); }

inline MultiPoly sub(const MultiPoly& a, const MultiPoly& b) {
  return add(a, negate(b));
}

inline MultiPoly mul(const MultiPoly& a, const MultiPoly& b) {
  require_same_ring(a, b);
  MultiPoly r(a.nvars());
  ExpVec e(a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (int j = 0; j < a.nvars(); ++j) e[j] = ea[j] + eb[j];
      r.add_term(e, ca * cb);
    }
  }
  // underflow guard
  MultiPoly out(a.nvars());
  for (const auto& [ee, cc] : r.terms())
    if (std::abs(cc) >= kMulDropThreshold) out.add_term(ee, cc);
  return out;
}

inline MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return add(a, b); }
inline MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return sub(a, b); }
inline MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return mul(a, b); }
inline MultiPoly operator-(const MultiPoly& a) { return negate(a); }
inline MultiPoly operator*(Complex k, const MultiPoly& a) { return scale(a, k); }

// Formal partial derivative with respect to variable var_index.
inline MultiPoly derivative(const MultiPoly& p, int var_index) {
  if (var_index < 0 || var_index >= p.nvars())
    throw InputError("derivative: variable index out of range");
  MultiPoly r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var_index] == 0) continue;
    ExpVec e2 = e;
    e2[var_index] -= 1;
    r.add_term(std::move(e2), c * double(e[var_index]));
  }
  return r;
}

// Exact term-by-term evaluation in canonical order.
inline Complex evaluate(const MultiPoly& p, const Eigen::VectorXcd& x) {
  if (x.size() != p.nvars())
    throw InputError("evaluate: point dimension mismatch");
  Complex sum(0.0);
  for (const auto& [e, c] : p.terms()) {
    Complex t = c;
    for (int j = 0; j < p.nvars(); ++j)
      for (int k = 0; k < e[j]; ++k) t *= x[j];
    sum += t;
  }
  return sum;
}

// Re-homes p into a ring with new_nvars variables, mapping variable j to
// variable j+offset. Used to place per-point equations into the multi-point
// systems (blocks of 3 unknowns per source point).
inline MultiPoly embed(const MultiPoly& p, int offset, int new_nvars) {
  if (offset < 0 || offset + p.nvars() > new_nvars)
    throw InputError("embed: block does not fit in target ring");
  MultiPoly r(new_nvars);
  for (const auto& [e, c] : p.terms()) {
    ExpVec e2(new_nvars, 0);
    for (int j = 0; j < p.nvars(); ++j) e2[offset + j] = e[j];
    r.add_term(std::move(e2), c);
  }
  return r;
}

// True when every term has total degree deg (the zero polynomial is
// homogeneous of every degree).
inline bool is_homogeneous(const MultiPoly& p, int deg) {
  for (const auto& [e, c] : p.terms()) {
    (void)c;
    if (std::accumulate(e.begin(), e.end(), 0) != deg) return false;
  }
  return true;
}

// Sum of |coefficients|; the scale reference for relative residuals.
inline double coeff_norm_l1(const MultiPoly& p) {
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) {
    (void)e;
    s += std::abs(c);
  }
  return s;
}

// Sum of |c| * prod_j |x_j|^e_j: the largest magnitude p could reach at x
// without cancellation. The right scale for deciding whether p(x) is zero;
// unlike a coefficient-norm bound it ignores variables p does not involve.
inline double value_majorant(const MultiPoly& p, const Eigen::VectorXcd& x) {
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double t = std::abs(c);
    for (int j = 0; j < p.nvars(); ++j)
      for (int k = 0; k < e[j]; ++k) t *= std::abs(x[j]);
    s += t;
  }
  return s;
}

// |p(x)| relative to its cancellation-free majorant at x.
inline double scaled_value(const MultiPoly& p, const Eigen::VectorXcd& x) {
  return std::abs(evaluate(p, x)) / std::max(value_majorant(p, x), 1e-30);
}

// The part of p of total degree exactly deg.
inline MultiPoly degree_part(const MultiPoly& p, int deg) {
  MultiPoly r(p.nvars());
  for (const auto& [e, c] : p.terms())
    if (std::accumulate(e.begin(), e.end(), 0) == deg) r.add_term(e, c);
  return r;
}

// Coefficient-wise comparison over the union of the term sets, relative to
// the larger coefficient magnitude. Identities that are exact over the
// rationals (Euler, product rules) hold only to rounding in doubles; this
// is the matching equality notion.
inline bool approx_equal(const MultiPoly& a, const MultiPoly& b,
                         double rtol = 1e-12) {
  if (a.nvars() != b.nvars()) return false;
  double scale = 1e-300;
  for (const auto& [e, c] : a.terms()) {
    (void)e;
    scale = std::max(scale, std::abs(c));
  }
  for (const auto& [e, c] : b.terms()) {
    (void)e;
    scale = std::max(scale, std::abs(c));
  }
  for (const auto& [e, c] : a.terms())
    if (std::abs(c - b.coeff(e)) > rtol * scale) return false;
  for (const auto& [e, c] : b.terms())
    if (std::abs(c - a.coeff(e)) > rtol * scale) return false;
  return true;
}

}  // namespace sing
