#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sing/invariants.hpp"
#include "sing/jets.hpp"
#include "sing/polymap.hpp"
#include "sing/tracker.hpp"

namespace sing {

// Census classes. A3/A2A1/A1cube are the discrete counts; A2slice and
// A1sqslice check the cusp-curve and double-fold-curve degrees against the
// closed forms.
enum class CensusClass { A3, A2A1, A1cube, A2slice, A1sqslice };

const char* to_string(CensusClass c);
// Accepts the CLI spellings A3, A2A1, A1cube, A2, A1sq.
CensusClass parse_census_class(const std::string& name);

struct CensusSettings {
  TrackSettings track;
  ClassifyTolerances classify;
  // Multi-point distinctness, relative to the point norms. Diagonal points
  // of the multi-point systems carry multiplicity (the fiber at a cusp is a
  // triple root), so under rounding they split into regular-looking
  // configurations separated by residual^(1/m) -- about 1e-4 at corrector
  // tolerance 1e-10 -- while genuine configurations sit O(1) apart. The
  // threshold must stay well above that split scale: keep it at or above
  // ~30 * cbrt(corrector_tol).
  double distinct_tol = 1e-3;
  double witness_tol = 1e-6;    // held-out equation zero test (germ probes)
  double failure_budget = 0.05; // path failure fraction before inconclusive
  bool override_gate = false;
  // Also probe the census map itself for unstable multi-singularities
  // (cusp pairs with equal image, tangent fold pairs). Off by default to
  // bound runtime.
  bool stability_probes = false;
  // Solve every class system a second time under an independent gamma and
  // merge the verified configurations. Two gammas agree on the solution set
  // for generic systems, so a disagreement flags paths captured by the
  // positive-dimensional components (possible at higher degrees). Doubles
  // the path budget; off by default.
  bool gamma_cross_check = false;
  std::uint64_t seed = 0;
};

struct DiscardedCounts {
  long long at_infinity = 0;
  long long diagonal = 0;
  long long failed_verification = 0;
  long long singular = 0;
  long long total() const {
    return at_infinity + diagonal + failed_verification + singular;
  }
};

struct ClassBlock {
  std::string class_name;
  long long total_paths = 0;
  long long raw_endpoints = 0;    // finite regular clusters + infinite +
                                  // singular path endpoints
  long long filtered_count = 0;   // verified census configurations
  int symmetry_factor = 1;
  long long final_count = 0;      // filtered / symmetry factor
  long long formula_count = 0;    // closed-form expectation
  bool match = false;
  bool inconclusive = false;
  DiscardedCounts discarded;
  PathStats path_stats;
  std::string note;
  // A1sqslice only: which convention reproduced the closed form
  std::string convention;         // "raw", "halved", "undetermined", ""
  long long raw_slice_count = 0;
  long long halved_slice_count = 0;
};

enum class ProbeStatus { Pass, Fail, Skipped, Inconclusive };
const char* to_string(ProbeStatus s);

struct ConditionReport {
  std::string name;
  ProbeStatus status = ProbeStatus::Skipped;
  std::vector<Eigen::VectorXcd> witnesses;  // verified offending points
  std::string detail;
};

struct CensusReport {
  std::array<int, 3> degrees{1, 1, 1};
  std::uint64_t seed = 0;
  bool gate_admissible = true;
  std::string gate_reason;
  bool gate_overridden = false;
  std::vector<ClassBlock> classes;
  std::vector<ConditionReport> stability;  // filled when stability_probes
  bool all_match = false;
  bool inconclusive = false;
};

// Runs the numeric census for the requested classes against the map F and
// compares with the closed-form table. F's degrees must pass the gate
// unless override_gate is set (results are then marked unsupported).
CensusReport run_census(const PolyMap& F,
                        const std::vector<CensusClass>& classes,
                        const CensusSettings& settings);

// Convenience: draws the dense random map of the given degrees first
// (seeded from settings.seed).
CensusReport run_census_random(const std::array<int, 3>& degrees,
                               const std::vector<CensusClass>& classes,
                               const CensusSettings& settings);

// ---------------------------------------------------------------------------
// Germ checker
// ---------------------------------------------------------------------------

struct GermReport {
  std::array<int, 3> degrees{1, 1, 1};
  std::uint64_t seed = 0;
  bool gate_admissible = true;
  std::string gate_reason;
  std::vector<ConditionReport> conditions;
  // "finitely-determined-evidence", "counterexample-found", "inconclusive"
  std::string verdict;
};

// Probes the genericity conditions of the admissibility criterion on a
// homogeneous map, two independent affine patches per condition. Blocked
// degree triples short-circuit to counterexample-found without solving.
GermReport check_germ(const PolyMap& F0, const CensusSettings& settings);

// ---------------------------------------------------------------------------
// Deformation experiment
// ---------------------------------------------------------------------------

struct DeformPoint {
  Complex t;
  long long a3_count = 0;
  long long formula_count = 0;
  bool match = false;
  bool inconclusive = false;
  double max_solution_norm = 0.0;
};

struct DeformReport {
  std::array<int, 3> degrees{1, 1, 1};
  std::uint64_t seed = 0;
  std::vector<DeformPoint> points;
};

// Runs the A3 census on the degree-weighted rescalings of F: the count is
// expected constant in t and the solutions contract toward the origin as
// t -> 0. Diagnostic, not a gate.
DeformReport deformation_experiment(const PolyMap& F,
                                    const std::vector<Complex>& t_values,
                                    const CensusSettings& settings);

}  // namespace sing
