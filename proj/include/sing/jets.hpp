#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sing/polymap.hpp"
#include "sing/tracker.hpp"

namespace sing {

// Determinant of the 3x3 Jacobian matrix of F, expanded symbolically.
// Total degree <= d1+d2+d3-3, with equality for generic F.
MultiPoly jacobian_det(const PolyMap& F);

// Bordered determinants. order 1: the Jacobian matrix with row grad(f_i)
// replaced by grad(J). order 2: row grad(f_i) replaced by grad(J_{1,i}).
// i is 1-based (1..3).
MultiPoly bordered_det(const PolyMap& F, int order, int i);

// Defining systems for the singularity classes and genericity probes.
enum class SystemKind {
  ZeroFiber,        // germ mode: common zero of the leading forms
  Fold,             // critical surface, twice sliced
  Cusp,             // cusp curve, once sliced
  Swallowtail,      // {J, J_{1,i}, J_{2,i}}
  DoubleFoldCurve,  // fold pairs with equal image, once sliced
  CuspFoldPair,     // cusp at p, critical q with equal image
  TripleFold,       // three critical points with equal image
  TangencyProbe,    // fold pair with tangent discriminant branches
  CorankTwoProbe,   // rank of dF <= 1
  PairVanishProbe   // germ mode: f_i = f_j = J = 0
};

const char* to_string(SystemKind kind);

struct SingularitySystem {
  SquareSystem system;
  SystemKind kind = SystemKind::Swallowtail;
  int chart = 0;                 // 1..3 where J_{1,i} is involved, else 0
  std::vector<int> point_blocks; // unknown partition, e.g. {3,3,3}
  bool inconsistent = false;     // contains a nonzero constant equation
  bool degenerate = false;       // an equation vanished identically
  // Equations held out of the square assembly (germ mode); the census
  // verifies them at endpoints. Same ring as system.equations.
  std::vector<MultiPoly> verify_polys;
  std::string note;
};

struct BuildOptions {
  int chart = 1;            // row index for J_{1,i}/J_{2,i}
  bool germ_mode = false;   // homogeneous map probed on an affine patch
  int pair_i = 1;           // PairVanishProbe: first component (1-based)
  int pair_j = 2;           // second component; 0 selects {f_i, J, patch}
  std::vector<MultiPoly> slices;  // optional explicit slice/patch forms
  std::uint64_t seed = 0;   // drives generated slices, patches, minors
};

// Assembles the square defining system for the requested kind. Systems are
// square by construction; a nonzero-constant equation marks the result
// inconsistent and a vanished equation marks it degenerate (neither is
// handed to the tracker by the census).
SingularitySystem build_system(const PolyMap& F, SystemKind kind,
                               const BuildOptions& opt);

// ---------------------------------------------------------------------------
// Point classification
// ---------------------------------------------------------------------------

enum class SingLabel {
  Regular,
  Fold,
  Cusp,
  Swallowtail,
  CorankGE2,
  DegenerateOrWorse
};

const char* to_string(SingLabel label);

struct ClassifyTolerances {
  double rank_tol = 1e-8;          // singular value ratio threshold
  double zero_tol = 1e-6;          // scaled |value| below this is zero
  double ambiguous_factor = 10.0;  // gray zone multiplier above zero_tol
};

struct PointClass {
  SingLabel label = SingLabel::Regular;
  int corank = 0;
  int chart_used = 0;          // 0 when no chart decision was needed
  double sigma_ratio = 0.0;    // smallest/largest singular value of dF
  double kernel_grad = 0.0;    // scaled |grad(J) . v| at the kernel vector
  double j2_scaled = 0.0;      // scaled |J_{2,i}| in the chosen chart
  double chart_quality = 0.0;  // conditioning of the kept row pair
};

// Precomputed jets of one map: J, its gradient, and the bordered
// determinants of every chart. Build once per map, share across endpoint
// classifications (values are immutable).
class JetCache {
 public:
  explicit JetCache(const PolyMap& F);

  const PolyMap& map() const { return F_; }
  const MultiPoly& J() const { return J_; }
  const std::array<MultiPoly, 3>& gradJ() const { return gradJ_; }
  const MultiPoly& J1(int i) const { return J1_[i - 1]; }
  const MultiPoly& J2(int i) const { return J2_[i - 1]; }

 private:
  PolyMap F_;
  MultiPoly J_;
  std::array<MultiPoly, 3> gradJ_;
  std::array<MultiPoly, 3> J1_;
  std::array<MultiPoly, 3> J2_;
};

// Rank/kernel ladder: singular values of dF(p) give the corank; at corank 1
// the kernel direction v decides fold (grad(J).v != 0) versus cusp-or-worse,
// and J_{2,i} in the best-conditioned chart separates cusps from
// swallowtail-or-worse. Numerically ambiguous points come back as
// DegenerateOrWorse with diagnostics.
PointClass classify_point(const JetCache& jets, const Eigen::Vector3cd& p,
                          const ClassifyTolerances& tol = {});

}  // namespace sing
