#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sing/multipoly.hpp"
#include "sing/rng.hpp"

namespace sing {

// An ordered tuple of polynomials sharing one variable ring, with declared
// component total degrees. For the maps C^3 -> C^3 studied here the tuple
// has 3 components in 3 variables, but the type carries any arity so that
// leading forms with a vanished top part (degree flagged, component zero)
// remain representable.
struct PolyMap {
  std::vector<MultiPoly> components;
  std::vector<int> degrees;

  int nvars() const { return components.empty() ? 0 : components[0].nvars(); }
  int size() const { return int(components.size()); }
};

// Builds a map from components; degrees are the actual total degrees.
inline PolyMap make_polymap(std::vector<MultiPoly> components) {
  PolyMap F;
  for (std::size_t i = 1; i < components.size(); ++i)
    require_same_ring(components[0], components[i]);
  F.degrees.reserve(components.size());
  for (const auto& c : components) F.degrees.push_back(c.total_degree());
  F.components = std::move(components);
  return F;
}

// Validates the declared-degree invariant; zero components are accepted
// only when allow_zero is set (leading forms may legitimately vanish).
inline void validate_polymap(const PolyMap& F, bool allow_zero = false) {
  if (F.components.size() != F.degrees.size())
    throw InputError("PolyMap: degrees/components size mismatch");
  for (int i = 0; i < F.size(); ++i) {
    if (F.components[i].is_zero()) {
      if (!allow_zero) throw InputError("PolyMap: zero component");
      continue;
    }
    if (F.components[i].total_degree() != F.degrees[i])
      throw InputError("PolyMap: declared degree differs from actual");
  }
}

inline Eigen::VectorXcd evaluate(const PolyMap& F, const Eigen::VectorXcd& x) {
  Eigen::VectorXcd y(F.size());
  for (int i = 0; i < F.size(); ++i) y[i] = evaluate(F.components[i], x);
  return y;
}

// Matrix of formal partials, row i = gradient of component i.
inline std::vector<std::vector<MultiPoly>> jacobian_matrix(const PolyMap& F) {
  std::vector<std::vector<MultiPoly>> rows;
  rows.reserve(F.size());
  for (const auto& f : F.components) {
    std::vector<MultiPoly> row;
    row.reserve(F.nvars());
    for (int j = 0; j < F.nvars(); ++j) row.push_back(derivative(f, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Eigen::MatrixXcd evaluate_jacobian(const PolyMap& F,
                                          const Eigen::VectorXcd& x) {
  Eigen::MatrixXcd M(F.size(), F.nvars());
  for (int i = 0; i < F.size(); ++i)
    for (int j = 0; j < F.nvars(); ++j)
      M(i, j) = evaluate(derivative(F.components[i], j), x);
  return M;
}

// Top-degree homogeneous part of each component. When a component has no
// part of its declared degree the output component is zero and the matching
// flag is set; declared degrees are kept.
inline PolyMap leading_form(const PolyMap& F,
                            std::vector<bool>* vanished = nullptr) {
  PolyMap out;
  out.degrees = F.degrees;
  if (vanished) vanished->assign(F.size(), false);
  for (int i = 0; i < F.size(); ++i) {
    MultiPoly top = degree_part(F.components[i], F.degrees[i]);
    if (top.is_zero() && vanished) (*vanished)[i] = true;
    out.components.push_back(std::move(top));
  }
  return out;
}

inline bool is_homogeneous(const PolyMap& F) {
  for (int i = 0; i < F.size(); ++i)
    if (!is_homogeneous(F.components[i], F.degrees[i])) return false;
  return true;
}

// The degree-weighted rescaling F_t: each monomial of total degree k in
// component i picks up the factor t^(d_i - k). deform(F,1) = F, the leading
// form is fixed for every t, and the limit t -> 0 is the leading form (not
// reachable here: t = 0 is rejected).
inline PolyMap deform(const PolyMap& F, Complex t) {
  if (F.nvars() != 3) throw InputError("deform: map must have 3 variables");
  if (std::abs(t) == 0.0)
    throw InputError("deform: t must be nonzero (the t=0 limit is the leading form)");
  PolyMap out;
  out.degrees = F.degrees;
  for (int i = 0; i < F.size(); ++i) {
    MultiPoly g(F.nvars());
    for (const auto& [e, c] : F.components[i].terms()) {
      const int k = std::accumulate(e.begin(), e.end(), 0);
      Complex factor(1.0);
      for (int r = 0; r < F.degrees[i] - k; ++r) factor *= t;
      for (int r = 0; r < k - F.degrees[i]; ++r) factor /= t;
      g.add_term(e, c * factor);
    }
    out.components.push_back(std::move(g));
  }
  return out;
}

namespace detail {
// All exponent vectors in nvars variables with total degree exactly d,
// listed in canonical (grlex-descending ties by lex) order.
inline void exponents_of_degree(int nvars, int d, ExpVec& prefix,
                                std::vector<ExpVec>& out) {
  if (int(prefix.size()) == nvars - 1) {
    ExpVec e = prefix;
    e.push_back(d);
    out.push_back(std::move(e));
    return;
  }
  for (int k = d; k >= 0; --k) {
    prefix.push_back(k);
    exponents_of_degree(nvars, d - k, prefix, out);
    prefix.pop_back();
  }
}
}  // namespace detail

inline std::vector<ExpVec> monomial_basis(int nvars, int degree,
                                          bool homogeneous) {
  std::vector<ExpVec> out;
  ExpVec prefix;
  for (int d = degree; d >= (homogeneous ? degree : 0); --d)
    detail::exponents_of_degree(nvars, d, prefix, out);
  return out;
}

// Dense random map in 3 variables with coefficients sampled independently
// and uniformly from the annulus 0.5 <= |c| <= 1.5. Component i draws from
// its own stream derived as derive_seed(seed, kMapComponent, i), so the
// output is bit-identical for identical (degrees, homogeneous, seed).
inline PolyMap random_map(const std::array<int, 3>& degrees, bool homogeneous,
                          std::uint64_t seed) {
  PolyMap out;
  for (int i = 0; i < 3; ++i) {
    if (degrees[i] < 1) throw InputError("random_map: degrees must be >= 1");
    Rng rng(derive_seed(seed, seed_tag::kMapComponent, std::uint64_t(i)));
    MultiPoly f(3);
    for (const ExpVec& e : monomial_basis(3, degrees[i], homogeneous))
      f.add_term(e, rng.annulus(0.5, 1.5));
    out.components.push_back(std::move(f));
    out.degrees.push_back(degrees[i]);
  }
  return out;
}

// A random affine-linear polynomial c0 + c.x in nvars variables, or the
// patch form c.x - 1 when patch is set (so solutions live on c.x = 1).
inline MultiPoly random_affine_form(int nvars, std::uint64_t seed, bool patch) {
  Rng rng(seed);
  MultiPoly l(nvars);
  for (int j = 0; j < nvars; ++j) {
    ExpVec e(nvars, 0);
    e[j] = 1;
    l.add_term(std::move(e), rng.annulus(0.5, 1.5));
  }
  l.add_term(ExpVec(nvars, 0),
             patch ? Complex(-1.0) : rng.annulus(0.5, 1.5));
  return l;
}

}  // namespace sing
