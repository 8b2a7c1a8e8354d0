#include "sing/jets.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "sing/errors.hpp"
#include "sing/rng.hpp"

namespace sing {

namespace {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

MultiPoly det3(const PolyMatrix& m) {
  const auto& a = m[0];
  const auto& b = m[1];
  const auto& c = m[2];
  MultiPoly r = a[0] * (b[1] * c[2] - b[2] * c[1]);
  r = r - a[1] * (b[0] * c[2] - b[2] * c[0]);
  r = r + a[2] * (b[0] * c[1] - b[1] * c[0]);
  return r;
}

void require_map33(const PolyMap& F, const char* what) {
  if (F.size() != 3 || F.nvars() != 3)
    throw InputError(std::string(what) + ": map must be C^3 -> C^3");
}

std::array<MultiPoly, 3> gradient(const MultiPoly& p) {
  return {derivative(p, 0), derivative(p, 1), derivative(p, 2)};
}

}  // namespace

MultiPoly jacobian_det(const PolyMap& F) {
  require_map33(F, "jacobian_det");
  return det3(jacobian_matrix(F));
}

MultiPoly bordered_det(const PolyMap& F, int order, int i) {
  require_map33(F, "bordered_det");
  if (i < 1 || i > 3) throw InputError("bordered_det: row index out of range");
  if (order != 1 && order != 2) throw InputError("bordered_det: order must be 1 or 2");
  PolyMatrix rows = jacobian_matrix(F);
  const MultiPoly replacement =
      order == 1 ? jacobian_det(F) : bordered_det(F, 1, i);
  const auto g = gradient(replacement);
  rows[i - 1] = {g[0], g[1], g[2]};
  return det3(rows);
}

const char* to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::ZeroFiber: return "ZeroFiber";
    case SystemKind::Fold: return "Fold";
    case SystemKind::Cusp: return "Cusp";
    case SystemKind::Swallowtail: return "Swallowtail";
    case SystemKind::DoubleFoldCurve: return "DoubleFoldCurve";
    case SystemKind::CuspFoldPair: return "CuspFoldPair";
    case SystemKind::TripleFold: return "TripleFold";
    case SystemKind::TangencyProbe: return "TangencyProbe";
    case SystemKind::CorankTwoProbe: return "CorankTwoProbe";
    case SystemKind::PairVanishProbe: return "PairVanishProbe";
  }
  return "?";
}

const char* to_string(SingLabel label) {
  switch (label) {
    case SingLabel::Regular: return "Regular";
    case SingLabel::Fold: return "Fold";
    case SingLabel::Cusp: return "Cusp";
    case SingLabel::Swallowtail: return "Swallowtail";
    case SingLabel::CorankGE2: return "CorankGE2";
    case SingLabel::DegenerateOrWorse: return "DegenerateOrWorse";
  }
  return "?";
}

namespace {

// Random linear combinations of the nine 2x2 minors of dF; the rank<=1
// locus solves every combination, so two generic ones cut it out.
MultiPoly minor_combination(const PolyMatrix& dF, std::uint64_t seed) {
  Rng rng(seed);
  MultiPoly acc(3);
  for (int r1 = 0; r1 < 2; ++r1)
    for (int r2 = r1 + 1; r2 < 3; ++r2)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = c1 + 1; c2 < 3; ++c2) {
          MultiPoly m = dF[r1][c1] * dF[r2][c2] - dF[r1][c2] * dF[r2][c1];
          acc = acc + rng.annulus(0.5, 1.5) * m;
        }
  return acc;
}

// det([dF(p) | dF(q)] * R) for a seeded random complex 6x3 matrix R: a
// generic combination of all maximal minors (Cauchy-Binet), degree s1. It
// vanishes wherever rank [dF(p)|dF(q)] <= 2.
MultiPoly tangency_minor(const PolyMatrix& dF, int total_vars,
                         std::uint64_t seed) {
  Rng rng(seed);
  // columns 0..2: dF at block p (offset 0); 3..5: dF at block q (offset 3)
  PolyMatrix wide(3, std::vector<MultiPoly>(6, MultiPoly(total_vars)));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      wide[r][c] = embed(dF[r][c], 0, total_vars);
      wide[r][3 + c] = embed(dF[r][c], 3, total_vars);
    }
  PolyMatrix prod(3, std::vector<MultiPoly>(3, MultiPoly(total_vars)));
  for (int c = 0; c < 6; ++c)
    for (int b = 0; b < 3; ++b) {
      const Complex r = rng.annulus(0.5, 1.5);
      for (int a = 0; a < 3; ++a)
        prod[a][b] = prod[a][b] + r * wide[a][c];
    }
  return det3(prod);
}

MultiPoly patch_form(int total_vars, std::uint64_t seed) {
  // c.p - 1 on the first block of 3 unknowns
  MultiPoly l3 = random_affine_form(3, seed, /*patch=*/true);
  return embed(l3, 0, total_vars);
}

struct Assembly {
  std::vector<MultiPoly> eqs;
  std::vector<MultiPoly> verify;
  std::vector<int> blocks;
  std::string note;
};

}  // namespace

SingularitySystem build_system(const PolyMap& F, SystemKind kind,
                               const BuildOptions& opt) {
  require_map33(F, "build_system");
  validate_polymap(F, /*allow_zero=*/opt.germ_mode);
  const int chart = opt.chart;
  if (chart < 1 || chart > 3)
    throw ConfigError("build_system: chart must be 1..3");
  if (opt.germ_mode && !is_homogeneous(F))
    throw InputError("build_system: germ mode requires a homogeneous map");

  const MultiPoly J = jacobian_det(F);
  const PolyMatrix dF = jacobian_matrix(F);

  auto slice = [&](int total_vars, int ordinal) -> MultiPoly {
    if (int(opt.slices.size()) > ordinal) {
      const MultiPoly& given = opt.slices[ordinal];
      if (given.nvars() != total_vars)
        throw ConfigError("build_system: slice ring mismatch");
      return given;
    }
    return random_affine_form(total_vars,
                              derive_seed(opt.seed, seed_tag::kSlice,
                                          std::uint64_t(ordinal)),
                              /*patch=*/false);
  };
  auto patch = [&](int total_vars) -> MultiPoly {
    if (!opt.slices.empty()) {
      const MultiPoly& given = opt.slices[0];
      if (given.nvars() != total_vars)
        throw ConfigError("build_system: patch ring mismatch");
      return given;
    }
    return patch_form(total_vars, derive_seed(opt.seed, seed_tag::kPatch, 0));
  };
  // F(p) - F(q) as equations in the wide ring
  auto image_match = [&](int total_vars, int off_a, int off_b,
                         std::vector<MultiPoly>& out) {
    for (int i = 0; i < 3; ++i)
      out.push_back(embed(F.components[i], off_a, total_vars) -
                    embed(F.components[i], off_b, total_vars));
  };

  Assembly a;
  switch (kind) {
    case SystemKind::Swallowtail: {
      a.blocks = {3};
      if (!opt.germ_mode) {
        a.eqs = {J, bordered_det(F, 1, chart), bordered_det(F, 2, chart)};
      } else {
        a.eqs = {J, bordered_det(F, 1, chart), patch(3)};
        a.verify = {bordered_det(F, 2, chart)};
        a.note = "germ: J_{2,i} verified at endpoints";
      }
      break;
    }
    case SystemKind::Cusp: {
      if (opt.germ_mode)
        throw ConfigError("build_system: Cusp slice is an affine census kind");
      a.blocks = {3};
      a.eqs = {J, bordered_det(F, 1, chart), slice(3, 0)};
      break;
    }
    case SystemKind::Fold: {
      if (opt.germ_mode)
        throw ConfigError("build_system: Fold slice is an affine census kind");
      a.blocks = {3};
      a.eqs = {J, slice(3, 0), slice(3, 1)};
      break;
    }
    case SystemKind::CuspFoldPair: {
      a.blocks = {3, 3};
      image_match(6, 0, 3, a.eqs);
      a.eqs.push_back(embed(J, 0, 6));
      a.eqs.push_back(embed(bordered_det(F, 1, chart), 0, 6));
      if (!opt.germ_mode) {
        a.eqs.push_back(embed(J, 3, 6));
      } else {
        a.eqs.push_back(patch(6));
        a.verify = {embed(J, 3, 6)};
        a.note = "germ: J(q) verified at endpoints";
      }
      break;
    }
    case SystemKind::TripleFold: {
      a.blocks = {3, 3, 3};
      image_match(9, 0, 3, a.eqs);
      image_match(9, 0, 6, a.eqs);
      a.eqs.push_back(embed(J, 0, 9));
      a.eqs.push_back(embed(J, 3, 9));
      if (!opt.germ_mode) {
        a.eqs.push_back(embed(J, 6, 9));
      } else {
        a.eqs.push_back(patch(9));
        a.verify = {embed(J, 6, 9)};
        a.note = "germ: J(r) verified at endpoints";
      }
      break;
    }
    case SystemKind::DoubleFoldCurve: {
      if (opt.germ_mode)
        throw ConfigError(
            "build_system: DoubleFoldCurve slice is an affine census kind");
      a.blocks = {3, 3};
      image_match(6, 0, 3, a.eqs);
      a.eqs.push_back(embed(J, 0, 6));
      a.eqs.push_back(embed(J, 3, 6));
      a.eqs.push_back(slice(6, 0));
      break;
    }
    case SystemKind::TangencyProbe: {
      a.blocks = {3, 3};
      image_match(6, 0, 3, a.eqs);
      a.eqs.push_back(embed(J, 0, 6));
      const MultiPoly minor =
          tangency_minor(dF, 6, derive_seed(opt.seed, seed_tag::kMinor, 0));
      if (!opt.germ_mode) {
        a.eqs.push_back(embed(J, 3, 6));
        a.eqs.push_back(minor);
      } else {
        a.eqs.push_back(minor);
        a.eqs.push_back(patch(6));
        a.verify = {embed(J, 3, 6)};
        a.note = "germ: J(q) and the full rank test verified at endpoints";
      }
      break;
    }
    case SystemKind::CorankTwoProbe: {
      a.blocks = {3};
      const MultiPoly m1 =
          minor_combination(dF, derive_seed(opt.seed, seed_tag::kMinor, 1));
      const MultiPoly m2 =
          minor_combination(dF, derive_seed(opt.seed, seed_tag::kMinor, 2));
      if (!opt.germ_mode) {
        a.eqs = {J, m1, m2};
      } else {
        a.eqs = {m1, m2, patch(3)};
        a.verify = {J};
        a.note = "germ: rank dF <= 1 verified at endpoints";
      }
      break;
    }
    case SystemKind::ZeroFiber: {
      if (!opt.germ_mode)
        throw ConfigError("build_system: ZeroFiber is a germ-mode kind");
      a.blocks = {3};
      a.eqs = {F.components[0], F.components[1], patch(3)};
      a.verify = {F.components[2]};
      a.note = "germ: third component verified at endpoints";
      break;
    }
    case SystemKind::PairVanishProbe: {
      if (!opt.germ_mode)
        throw ConfigError("build_system: PairVanishProbe is a germ-mode kind");
      a.blocks = {3};
      const int pi = opt.pair_i, pj = opt.pair_j;
      if (pi < 1 || pi > 3 || pj < 0 || pj > 3 || pi == pj)
        throw ConfigError("build_system: bad PairVanishProbe component pair");
      if (pj == 0) {
        // single-component probe {f_i, J, patch}: finitely many rays expected
        a.eqs = {F.components[pi - 1], J, patch(3)};
        a.note = "germ: single-component critical rays probe";
      } else {
        a.eqs = {F.components[pi - 1], F.components[pj - 1], patch(3)};
        a.verify = {J};
        a.note = "germ: J verified at endpoints";
      }
      break;
    }
  }

  SingularitySystem out;
  out.kind = kind;
  out.chart = chart;
  out.point_blocks = a.blocks;
  out.verify_polys = a.verify;
  out.note = a.note;

  const int total_vars = a.eqs.empty() ? 0 : a.eqs[0].nvars();
  if (int(a.eqs.size()) != total_vars)
    throw ConfigError("build_system: assembly is not square");
  for (const auto& e : a.eqs) {
    if (e.is_zero()) out.degenerate = true;
    else if (e.total_degree() == 0) out.inconsistent = true;
  }
  if (!out.degenerate) out.system = make_square_system(std::move(a.eqs));
  else {
    out.system.nvars = total_vars;  // equations withheld from the tracker
    out.note += (out.note.empty() ? "" : "; ");
    out.note += "degenerate equation detected at build time";
  }
  return out;
}

// ---------------------------------------------------------------------------

JetCache::JetCache(const PolyMap& F) : F_(F), J_(jacobian_det(F)) {
  gradJ_ = gradient(J_);
  for (int i = 1; i <= 3; ++i) {
    J1_[i - 1] = bordered_det(F, 1, i);
    // J_{2,i} reuses J_{1,i} instead of recomputing it
    PolyMatrix rows = jacobian_matrix(F);
    rows[i - 1] = {derivative(J1_[i - 1], 0), derivative(J1_[i - 1], 1),
                   derivative(J1_[i - 1], 2)};
    J2_[i - 1] = det3(rows);
  }
}

PointClass classify_point(const JetCache& jets, const Eigen::Vector3cd& p,
                          const ClassifyTolerances& tol) {
  PointClass out;
  Eigen::VectorXcd px = p;
  const Eigen::Matrix3cd dF = evaluate_jacobian(jets.map(), px);
  Eigen::JacobiSVD<Eigen::Matrix3cd> svd(dF, Eigen::ComputeFullV);
  const Eigen::Vector3d sv = svd.singularValues();

  if (sv[0] <= 0.0) {
    out.corank = 3;
    out.label = SingLabel::CorankGE2;
    return out;
  }
  out.sigma_ratio = sv[2] / sv[0];
  out.corank = 0;
  for (int k = 0; k < 3; ++k)
    if (sv[k] / sv[0] < tol.rank_tol) out.corank++;
  if (out.corank == 0) {
    out.label = SingLabel::Regular;
    return out;
  }
  if (out.corank >= 2) {
    out.label = SingLabel::CorankGE2;
    return out;
  }

  // corank 1: kernel direction decides fold vs cusp-or-worse
  const Eigen::Vector3cd v = svd.matrixV().col(2);
  Eigen::Vector3cd gJ;
  for (int j = 0; j < 3; ++j) gJ[j] = evaluate(jets.gradJ()[j], px);
  const double gnorm = gJ.norm();
  const double gscale = std::max(
      {value_majorant(jets.gradJ()[0], px), value_majorant(jets.gradJ()[1], px),
       value_majorant(jets.gradJ()[2], px), 1e-30});
  if (gnorm < tol.zero_tol * gscale) {
    // critical set itself is singular here; worse than a cusp
    out.label = SingLabel::DegenerateOrWorse;
    return out;
  }
  // complex-bilinear pairing (no conjugation): sum_j dJ/dx_j * v_j
  const Complex pairing = (gJ.array() * v.array()).sum();
  out.kernel_grad = std::abs(pairing) / gnorm;
  if (out.kernel_grad >= tol.zero_tol * tol.ambiguous_factor) {
    out.label = SingLabel::Fold;
    return out;
  }
  if (out.kernel_grad >= tol.zero_tol) {
    out.label = SingLabel::DegenerateOrWorse;
    return out;
  }

  // chart with the best-conditioned kept row pair
  int best_chart = 0;
  double best_quality = -1.0;
  for (int i = 1; i <= 3; ++i) {
    Eigen::MatrixXcd rows(2, 3);
    int r = 0;
    for (int k = 0; k < 3; ++k)
      if (k != i - 1) rows.row(r++) = dF.row(k);
    Eigen::JacobiSVD<Eigen::MatrixXcd> rsvd(rows);
    const double q = rsvd.singularValues()[1] / sv[0];
    if (q > best_quality) {
      best_quality = q;
      best_chart = i;
    }
  }
  out.chart_used = best_chart;
  out.chart_quality = best_quality;
  if (best_quality < tol.rank_tol) {
    out.label = SingLabel::DegenerateOrWorse;
    return out;
  }

  const MultiPoly& j2 = jets.J2(best_chart);
  out.j2_scaled = scaled_value(j2, px);
  if (out.j2_scaled >= tol.zero_tol * tol.ambiguous_factor)
    out.label = SingLabel::Cusp;
  else if (out.j2_scaled >= tol.zero_tol)
    out.label = SingLabel::DegenerateOrWorse;
  else
    out.label = SingLabel::Swallowtail;
  return out;
}

}  // namespace sing
