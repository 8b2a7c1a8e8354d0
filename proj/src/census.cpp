#include "sing/census.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "sing/errors.hpp"
#include "sing/rng.hpp"

namespace sing {

namespace {

int class_id(CensusClass c) { return int(c); }

SystemKind kind_of(CensusClass c) {
  switch (c) {
    case CensusClass::A3: return SystemKind::Swallowtail;
    case CensusClass::A2A1: return SystemKind::CuspFoldPair;
    case CensusClass::A1cube: return SystemKind::TripleFold;
    case CensusClass::A2slice: return SystemKind::Cusp;
    case CensusClass::A1sqslice: return SystemKind::DoubleFoldCurve;
  }
  throw ConfigError("unknown census class");
}

long long formula_of(CensusClass c, const InvariantTable& t) {
  switch (c) {
    case CensusClass::A3: return t.countA3;
    case CensusClass::A2A1: return t.countA2A1;
    case CensusClass::A1cube: return t.countA1cube;
    case CensusClass::A2slice: return t.countA2;
    case CensusClass::A1sqslice: return t.countA1sq;
  }
  throw ConfigError("unknown census class");
}

std::vector<Eigen::Vector3cd> split_blocks(const Eigen::VectorXcd& x,
                                           const std::vector<int>& blocks) {
  std::vector<Eigen::Vector3cd> out;
  int off = 0;
  for (int b : blocks) {
    out.push_back(x.segment(off, b));
    off += b;
  }
  return out;
}

bool blocks_distinct(const std::vector<Eigen::Vector3cd>& pts, double tol) {
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const double scale = std::max(1.0, std::max(pts[a].norm(), pts[b].norm()));
      if ((pts[a] - pts[b]).norm() < tol * scale) return false;
    }
  return true;
}

struct ClassContext {
  const PolyMap& F;
  const JetCache& jets;
  const CensusSettings& st;
};

// Blockwise verification that a regular endpoint is a genuine census
// configuration of its class.
bool verify_configuration(const ClassContext& ctx, CensusClass cls,
                          const std::vector<Eigen::Vector3cd>& pts) {
  const ClassifyTolerances& ct = ctx.st.classify;
  switch (cls) {
    case CensusClass::A3:
      return classify_point(ctx.jets, pts[0], ct).label ==
             SingLabel::Swallowtail;
    case CensusClass::A2A1:
      return classify_point(ctx.jets, pts[0], ct).label == SingLabel::Cusp &&
             classify_point(ctx.jets, pts[1], ct).label == SingLabel::Fold;
    case CensusClass::A1cube: {
      for (const auto& p : pts)
        if (classify_point(ctx.jets, p, ct).label != SingLabel::Fold)
          return false;
      // images must agree to tolerance (they are equations of the system;
      // re-checked here as an independent residual)
      Eigen::VectorXcd p0 = pts[0], p1 = pts[1], p2 = pts[2];
      const Eigen::VectorXcd y0 = evaluate(ctx.F, p0);
      const Eigen::VectorXcd y1 = evaluate(ctx.F, p1);
      const Eigen::VectorXcd y2 = evaluate(ctx.F, p2);
      const double s = std::max({1.0, y0.norm(), y1.norm(), y2.norm()});
      return (y0 - y1).norm() < ctx.st.witness_tol * s &&
             (y0 - y2).norm() < ctx.st.witness_tol * s;
    }
    case CensusClass::A2slice:
      return classify_point(ctx.jets, pts[0], ct).label == SingLabel::Cusp;
    case CensusClass::A1sqslice:
      return classify_point(ctx.jets, pts[0], ct).label == SingLabel::Fold &&
             classify_point(ctx.jets, pts[1], ct).label == SingLabel::Fold;
  }
  return false;
}

ClassBlock run_class(const ClassContext& ctx, CensusClass cls,
                     const InvariantTable& table) {
  ClassBlock blk;
  blk.class_name = to_string(cls);
  blk.formula_count = formula_of(cls, table);
  blk.symmetry_factor = cls == CensusClass::A1cube ? 6 : 1;

  BuildOptions opt;
  opt.chart = 1;  // census systems fix chart 1; endpoints are re-verified
  opt.seed = derive_seed(ctx.st.seed, seed_tag::kCensusClass,
                         std::uint64_t(class_id(cls)));
  SingularitySystem sys = build_system(ctx.F, kind_of(cls), opt);
  if (sys.degenerate) {
    blk.inconclusive = true;
    blk.note = "degenerate defining system: " + sys.note;
    return blk;
  }
  if (sys.inconsistent) {
    // a nonzero constant equation: empty solution set by construction
    blk.note = "inconsistent defining system; zero solutions";
    blk.match = blk.formula_count == 0;
    return blk;
  }

  TrackSettings ts = ctx.st.track;
  ts.seed = opt.seed;
  SolutionSet sol = solve(sys.system, ts);
  blk.total_paths = sol.total_paths;
  blk.path_stats = sol.path_stats;
  blk.discarded.at_infinity = sol.path_stats.diverged_to_infinity;
  blk.discarded.singular = sol.path_stats.singular_endpoint;
  blk.raw_endpoints = static_cast<long long>(sol.solutions.size()) +
                      sol.path_stats.diverged_to_infinity +
                      sol.path_stats.singular_endpoint;

  std::vector<Eigen::VectorXcd> verified;
  for (const Solution& s : sol.solutions) {
    const auto pts = split_blocks(s.point, sys.point_blocks);
    if (pts.size() > 1 && !blocks_distinct(pts, ctx.st.distinct_tol)) {
      blk.discarded.diagonal++;
      continue;
    }
    if (verify_configuration(ctx, cls, pts))
      verified.push_back(s.point);
    else
      blk.discarded.failed_verification++;
  }
  blk.filtered_count = static_cast<long long>(verified.size());

  if (sol.total_paths > 0 &&
      double(sol.path_stats.failed) >
          ctx.st.failure_budget * double(sol.total_paths)) {
    blk.inconclusive = true;
    blk.note = "path failure rate above budget";
  }

  if (ctx.st.gamma_cross_check) {
    // same system, independent gamma: endpoints a jumped path abandoned in
    // the first run show up here (and vice versa)
    TrackSettings ts2 = ts;
    ts2.seed = derive_seed(opt.seed, seed_tag::kGamma, 777);
    SolutionSet sol2 = solve(sys.system, ts2);
    long long recovered = 0;
    for (const Solution& s : sol2.solutions) {
      const auto pts = split_blocks(s.point, sys.point_blocks);
      if (pts.size() > 1 && !blocks_distinct(pts, ctx.st.distinct_tol))
        continue;
      if (!verify_configuration(ctx, cls, pts)) continue;
      bool known = false;
      for (const auto& v : verified)
        if ((v - s.point).norm() <= ts.dedup_radius) known = true;
      if (!known) {
        verified.push_back(s.point);
        ++recovered;
      }
    }
    if (sol2.total_paths > 0 &&
        double(sol2.path_stats.failed) >
            ctx.st.failure_budget * double(sol2.total_paths)) {
      blk.inconclusive = true;
      blk.note += (blk.note.empty() ? "" : "; ");
      blk.note += "cross-check run above the failure budget";
    }
    if (recovered > 0) {
      blk.filtered_count += recovered;
      blk.raw_endpoints += recovered;
      blk.note += (blk.note.empty() ? "" : "; ");
      blk.note += "gamma cross-check recovered " + std::to_string(recovered) +
                  " configurations";
    }
  }

  if (cls == CensusClass::A1sqslice) {
    blk.raw_slice_count = blk.filtered_count;
    blk.halved_slice_count =
        blk.filtered_count % 2 == 0 ? blk.filtered_count / 2 : -1;
    if (blk.raw_slice_count == blk.formula_count) {
      blk.convention = "raw";
      blk.symmetry_factor = 1;
    } else if (blk.halved_slice_count == blk.formula_count) {
      blk.convention = "halved";
      blk.symmetry_factor = 2;
    } else {
      blk.convention = "undetermined";
      blk.symmetry_factor = 1;
    }
    blk.final_count = blk.filtered_count / blk.symmetry_factor;
    blk.match = blk.convention != "undetermined";
    return blk;
  }

  if (blk.filtered_count % blk.symmetry_factor != 0) {
    blk.inconclusive = true;
    blk.note += (blk.note.empty() ? "" : "; ");
    blk.note += "filtered count not divisible by the symmetry factor";
    blk.final_count = blk.filtered_count / blk.symmetry_factor;
  } else {
    blk.final_count = blk.filtered_count / blk.symmetry_factor;
  }
  blk.match = !blk.inconclusive && blk.final_count == blk.formula_count;
  return blk;
}

bool worse_than_fold(SingLabel l) {
  return l == SingLabel::Cusp || l == SingLabel::Swallowtail ||
         l == SingLabel::CorankGE2 || l == SingLabel::DegenerateOrWorse;
}

// Stability sanity probes on the census map itself: a stable map has no
// two cusps sharing an image and no tangent fold pair.
ConditionReport stability_probe(const ClassContext& ctx, SystemKind kind,
                                const std::string& name,
                                std::uint64_t probe_id) {
  ConditionReport rep;
  rep.name = name;
  BuildOptions opt;
  opt.chart = 1;
  opt.seed = derive_seed(ctx.st.seed, seed_tag::kProbe, probe_id);
  const SingularitySystem sys = build_system(ctx.F, kind, opt);
  if (sys.degenerate) {
    rep.status = ProbeStatus::Fail;
    rep.detail = "degenerate defining system";
    return rep;
  }
  if (sys.inconsistent) {
    rep.status = ProbeStatus::Pass;
    return rep;
  }
  TrackSettings ts = ctx.st.track;
  ts.seed = opt.seed;
  const SolutionSet sol = solve(sys.system, ts);
  rep.status = ProbeStatus::Pass;
  if (sol.total_paths > 0 &&
      double(sol.path_stats.failed) >
          ctx.st.failure_budget * double(sol.total_paths))
    rep.status = ProbeStatus::Inconclusive;

  for (const Solution& s : sol.solutions) {
    const auto pts = split_blocks(s.point, sys.point_blocks);
    if (!blocks_distinct(pts, ctx.st.distinct_tol)) continue;
    bool witness = false;
    if (kind == SystemKind::CuspFoldPair) {
      witness = worse_than_fold(classify_point(ctx.jets, pts[0],
                                               ctx.st.classify).label) &&
                worse_than_fold(classify_point(ctx.jets, pts[1],
                                               ctx.st.classify).label);
    } else if (kind == SystemKind::TangencyProbe) {
      Eigen::MatrixXcd wide(3, 6);
      Eigen::VectorXcd p = pts[0], q = pts[1];
      wide.leftCols<3>() = evaluate_jacobian(ctx.F, p);
      wide.rightCols<3>() = evaluate_jacobian(ctx.F, q);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(wide);
      const auto& sv = svd.singularValues();
      witness = sv[0] > 0.0 && sv[2] / sv[0] < ctx.st.classify.rank_tol;
    }
    if (witness) {
      rep.status = ProbeStatus::Fail;
      rep.witnesses.push_back(s.point);
    }
  }
  return rep;
}

}  // namespace

const char* to_string(CensusClass c) {
  switch (c) {
    case CensusClass::A3: return "A3";
    case CensusClass::A2A1: return "A2A1";
    case CensusClass::A1cube: return "A1cube";
    case CensusClass::A2slice: return "A2";
    case CensusClass::A1sqslice: return "A1sq";
  }
  return "?";
}

CensusClass parse_census_class(const std::string& name) {
  if (name == "A3") return CensusClass::A3;
  if (name == "A2A1") return CensusClass::A2A1;
  if (name == "A1cube" || name == "A1^3") return CensusClass::A1cube;
  if (name == "A2") return CensusClass::A2slice;
  if (name == "A1sq" || name == "A1^2") return CensusClass::A1sqslice;
  throw InputError("unknown census class: " + name);
}

const char* to_string(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::Pass: return "pass";
    case ProbeStatus::Fail: return "fail";
    case ProbeStatus::Skipped: return "skipped";
    case ProbeStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

CensusReport run_census(const PolyMap& F,
                        const std::vector<CensusClass>& classes,
                        const CensusSettings& settings) {
  if (F.size() != 3 || F.nvars() != 3)
    throw InputError("run_census: map must be C^3 -> C^3");
  validate_polymap(F);
  CensusReport rep;
  rep.degrees = {F.degrees[0], F.degrees[1], F.degrees[2]};
  rep.seed = settings.seed;

  const DegreeTriple d{F.degrees[0], F.degrees[1], F.degrees[2]};
  const GateResult gate = determinacy_gate(d);
  rep.gate_admissible = gate.admissible;
  rep.gate_reason = gate.reason;
  if (!gate.admissible) {
    if (!settings.override_gate)
      throw InputError("run_census: degrees blocked by the gate (" +
                       gate.reason + "); pass the override flag to force");
    rep.gate_overridden = true;
  }

  const InvariantTable table = compute_invariants(d);
  const JetCache jets(F);
  const ClassContext ctx{F, jets, settings};

  rep.all_match = true;
  for (CensusClass c : classes) {
    rep.classes.push_back(run_class(ctx, c, table));
    const ClassBlock& blk = rep.classes.back();
    if (blk.inconclusive) rep.inconclusive = true;
    if (!blk.match) rep.all_match = false;
  }
  if (settings.stability_probes) {
    rep.stability.push_back(stability_probe(ctx, SystemKind::CuspFoldPair,
                                            "cusp_pair", 101));
    rep.stability.push_back(stability_probe(ctx, SystemKind::TangencyProbe,
                                            "fold_tangency", 102));
    for (const ConditionReport& c : rep.stability) {
      if (c.status == ProbeStatus::Fail) rep.all_match = false;
      if (c.status == ProbeStatus::Inconclusive) rep.inconclusive = true;
    }
  }
  return rep;
}

CensusReport run_census_random(const std::array<int, 3>& degrees,
                               const std::vector<CensusClass>& classes,
                               const CensusSettings& settings) {
  const PolyMap F = random_map(degrees, /*homogeneous=*/false, settings.seed);
  return run_census(F, classes, settings);
}

// ---------------------------------------------------------------------------
// Germ checker
// ---------------------------------------------------------------------------

namespace {

struct ProbeOutcome {
  ProbeStatus status = ProbeStatus::Pass;
  std::vector<Eigen::VectorXcd> witnesses;
  long long regular_solutions = 0;
  long long singular_paths = 0;
};

// Witness predicates get the split blocks and the full endpoint.
enum class ProbeId : std::uint64_t {
  ZeroFiber = 1,
  Pair12 = 2,
  Pair13 = 3,
  Pair23 = 4,
  Single1 = 5,
  Single2 = 6,
  Single3 = 7,
  Triple = 8,
  SwallowChart1 = 9,
  SwallowChart2 = 10,
  SwallowChart3 = 11,
  CorankTwo = 12,
  CuspFold = 13,
  Tangency = 14,
};

struct GermContext {
  const PolyMap& F0;
  const JetCache& jets;
  const CensusSettings& st;
};

bool verify_holdouts(const SingularitySystem& sys, const Eigen::VectorXcd& x,
                     double tol) {
  for (const MultiPoly& v : sys.verify_polys)
    if (scaled_value(v, x) >= tol) return false;
  return true;
}

// Runs one probe under one patch and scans regular endpoints for verified
// witnesses.
ProbeOutcome run_probe(const GermContext& ctx, SystemKind kind, ProbeId id,
                       int patch_index, int chart = 1, int pair_i = 1,
                       int pair_j = 2) {
  BuildOptions opt;
  opt.chart = chart;
  opt.germ_mode = true;
  opt.pair_i = pair_i;
  opt.pair_j = pair_j;
  opt.seed = derive_seed(ctx.st.seed, seed_tag::kProbe,
                         std::uint64_t(id) * 2 + std::uint64_t(patch_index));
  SingularitySystem sys = build_system(ctx.F0, kind, opt);

  ProbeOutcome out;
  if (sys.degenerate) {
    out.status = ProbeStatus::Fail;
    // an identically vanishing defining equation is itself a witness of
    // degeneracy (e.g. J == 0); no point to report
    return out;
  }
  if (sys.inconsistent) return out;  // empty probe variety: pass

  TrackSettings ts = ctx.st.track;
  ts.seed = opt.seed;
  SolutionSet sol = solve(sys.system, ts);
  out.singular_paths = sol.path_stats.singular_endpoint;
  out.regular_solutions = static_cast<long long>(sol.solutions.size());
  if (sol.total_paths > 0 &&
      double(sol.path_stats.failed) >
          ctx.st.failure_budget * double(sol.total_paths))
    out.status = ProbeStatus::Inconclusive;

  const ClassifyTolerances& ct = ctx.st.classify;
  const double wtol = ctx.st.witness_tol;
  for (const Solution& s : sol.solutions) {
    const auto pts = split_blocks(s.point, sys.point_blocks);
    bool witness = false;
    switch (kind) {
      case SystemKind::ZeroFiber:
      case SystemKind::PairVanishProbe:
        if (pair_j != 0 || kind == SystemKind::ZeroFiber)
          witness = verify_holdouts(sys, s.point, wtol);
        break;
      case SystemKind::Swallowtail: {
        const SingLabel l = classify_point(ctx.jets, pts[0], ct).label;
        witness = l == SingLabel::Swallowtail || l == SingLabel::CorankGE2 ||
                  l == SingLabel::DegenerateOrWorse;
        break;
      }
      case SystemKind::CorankTwoProbe:
        witness =
            classify_point(ctx.jets, pts[0], ct).label == SingLabel::CorankGE2;
        break;
      case SystemKind::CuspFoldPair: {
        if (!verify_holdouts(sys, s.point, wtol)) break;
        if (!blocks_distinct(pts, ctx.st.distinct_tol)) break;
        const SingLabel l = classify_point(ctx.jets, pts[0], ct).label;
        witness = l == SingLabel::Cusp || l == SingLabel::Swallowtail ||
                  l == SingLabel::CorankGE2 || l == SingLabel::DegenerateOrWorse;
        break;
      }
      case SystemKind::TripleFold: {
        if (!verify_holdouts(sys, s.point, wtol)) break;
        if (!blocks_distinct(pts, ctx.st.distinct_tol)) break;
        bool nonzero = true;
        for (const auto& b : pts)
          if (b.norm() < ctx.st.distinct_tol) nonzero = false;
        witness = nonzero;
        break;
      }
      case SystemKind::TangencyProbe: {
        if (!verify_holdouts(sys, s.point, wtol)) break;
        if (!blocks_distinct(pts, ctx.st.distinct_tol)) break;
        Eigen::MatrixXcd wide(3, 6);
        Eigen::VectorXcd p = pts[0], q = pts[1];
        wide.leftCols<3>() = evaluate_jacobian(ctx.F0, p);
        wide.rightCols<3>() = evaluate_jacobian(ctx.F0, q);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(wide);
        const auto& sv = svd.singularValues();
        witness = sv[0] > 0.0 && sv[2] / sv[0] < ct.rank_tol;
        break;
      }
      default:
        break;
    }
    if (witness) {
      out.status = ProbeStatus::Fail;
      out.witnesses.push_back(s.point);
    }
  }
  return out;
}

// Merges the two patch runs of one condition: fail dominates, then
// inconclusive, then pass.
void merge_outcomes(ConditionReport& rep, const ProbeOutcome& a,
                    const ProbeOutcome& b) {
  auto worse = [](ProbeStatus x, ProbeStatus y) {
    auto rank = [](ProbeStatus s) {
      switch (s) {
        case ProbeStatus::Fail: return 3;
        case ProbeStatus::Inconclusive: return 2;
        case ProbeStatus::Pass: return 1;
        case ProbeStatus::Skipped: return 0;
      }
      return 0;
    };
    return rank(x) >= rank(y) ? x : y;
  };
  rep.status = worse(worse(a.status, b.status), rep.status);
  for (const auto& w : a.witnesses) rep.witnesses.push_back(w);
  for (const auto& w : b.witnesses) rep.witnesses.push_back(w);
}

}  // namespace

GermReport check_germ(const PolyMap& F0, const CensusSettings& settings) {
  if (F0.size() != 3 || F0.nvars() != 3)
    throw InputError("check_germ: map must be C^3 -> C^3");
  validate_polymap(F0);
  if (!is_homogeneous(F0))
    throw InputError("check_germ: map must be homogeneous");

  GermReport rep;
  rep.degrees = {F0.degrees[0], F0.degrees[1], F0.degrees[2]};
  rep.seed = settings.seed;

  const DegreeTriple d{F0.degrees[0], F0.degrees[1], F0.degrees[2]};
  const GateResult gate = determinacy_gate(d);
  rep.gate_admissible = gate.admissible;
  rep.gate_reason = gate.reason;
  if (!gate.admissible) {
    // no finitely determined germ exists at these degrees: a map on the
    // blocked ray structure is many-to-one on rays, no solving needed
    rep.verdict = "counterexample-found";
    ConditionReport c;
    c.name = "gate";
    c.status = ProbeStatus::Fail;
    c.detail = gate.reason;
    rep.conditions.push_back(std::move(c));
    return rep;
  }

  const JetCache jets(F0);
  const GermContext ctx{F0, jets, settings};

  auto run_condition = [&](const std::string& name, SystemKind kind,
                           ProbeId id, int chart = 1, int pair_i = 1,
                           int pair_j = 2) -> ConditionReport {
    ConditionReport c;
    c.name = name;
    c.status = ProbeStatus::Skipped;
    const ProbeOutcome a = run_probe(ctx, kind, id, 0, chart, pair_i, pair_j);
    const ProbeOutcome b = run_probe(ctx, kind, id, 1, chart, pair_i, pair_j);
    merge_outcomes(c, a, b);
    c.detail = "regular endpoints " + std::to_string(a.regular_solutions) +
               "/" + std::to_string(b.regular_solutions) +
               ", singular paths " + std::to_string(a.singular_paths) + "/" +
               std::to_string(b.singular_paths);
    return c;
  };

  // (1) the leading forms vanish only at the origin
  rep.conditions.push_back(run_condition("1_zero_fiber", SystemKind::ZeroFiber,
                                         ProbeId::ZeroFiber));

  // (2) no critical ray meets two component hypersurfaces at once; when two
  // degrees share gcd 2 the third component's critical rays must be finite
  {
    ConditionReport c;
    c.name = "2_pair_vanish";
    c.status = ProbeStatus::Skipped;
    const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    const ProbeId ids[3] = {ProbeId::Pair12, ProbeId::Pair13, ProbeId::Pair23};
    for (int k = 0; k < 3; ++k) {
      const ProbeOutcome a =
          run_probe(ctx, SystemKind::PairVanishProbe, ids[k], 0, 1,
                    pairs[k][0], pairs[k][1]);
      const ProbeOutcome b =
          run_probe(ctx, SystemKind::PairVanishProbe, ids[k], 1, 1,
                    pairs[k][0], pairs[k][1]);
      merge_outcomes(c, a, b);
    }
    // single-component clause
    const int ds[3] = {d.d1, d.d2, d.d3};
    const ProbeId sids[3] = {ProbeId::Single1, ProbeId::Single2,
                             ProbeId::Single3};
    for (int i = 0; i < 3; ++i) {
      const int other1 = ds[(i + 1) % 3], other2 = ds[(i + 2) % 3];
      if (std::gcd(other1, other2) == 2) {
        const ProbeOutcome a = run_probe(ctx, SystemKind::PairVanishProbe,
                                         sids[i], 0, 1, i + 1, 0);
        const ProbeOutcome b = run_probe(ctx, SystemKind::PairVanishProbe,
                                         sids[i], 1, 1, i + 1, 0);
        merge_outcomes(c, a, b);
        c.detail += (c.detail.empty() ? "" : "; ");
        c.detail += "component " + std::to_string(i + 1) +
                    " critical rays probed: " +
                    std::to_string(a.regular_solutions) + "/" +
                    std::to_string(b.regular_solutions) + " on patch";
      }
    }
    rep.conditions.push_back(std::move(c));
  }

  // (4) no three critical points share an image off the origin
  rep.conditions.push_back(
      run_condition("4_triple_fold", SystemKind::TripleFold, ProbeId::Triple));

  // (5) off the origin only folds and cusps: swallowtail-or-worse probe on
  // every chart, plus the corank >= 2 probe
  {
    ConditionReport c;
    c.name = "5_swallowtail";
    c.status = ProbeStatus::Skipped;
    const ProbeId cids[3] = {ProbeId::SwallowChart1, ProbeId::SwallowChart2,
                             ProbeId::SwallowChart3};
    for (int chart = 1; chart <= 3; ++chart) {
      const ProbeOutcome a =
          run_probe(ctx, SystemKind::Swallowtail, cids[chart - 1], 0, chart);
      const ProbeOutcome b =
          run_probe(ctx, SystemKind::Swallowtail, cids[chart - 1], 1, chart);
      merge_outcomes(c, a, b);
      c.detail += (chart > 1 ? "; " : "");
      c.detail += "chart " + std::to_string(chart) + ": " +
                  std::to_string(a.regular_solutions) + "/" +
                  std::to_string(b.regular_solutions) + " candidates";
    }
    rep.conditions.push_back(std::move(c));
  }
  rep.conditions.push_back(run_condition(
      "5_corank2", SystemKind::CorankTwoProbe, ProbeId::CorankTwo));

  // (6) a cusp shares its image with no other critical point
  rep.conditions.push_back(run_condition(
      "6_cusp_fold_pair", SystemKind::CuspFoldPair, ProbeId::CuspFold));

  // (7) fold pairs have normal-crossing discriminant branches
  rep.conditions.push_back(run_condition(
      "7_tangency", SystemKind::TangencyProbe, ProbeId::Tangency));

  bool any_fail = false, any_inconclusive = false;
  for (const auto& c : rep.conditions) {
    if (c.status == ProbeStatus::Fail) any_fail = true;
    if (c.status == ProbeStatus::Inconclusive) any_inconclusive = true;
  }
  rep.verdict = any_fail ? "counterexample-found"
                         : (any_inconclusive ? "inconclusive"
                                             : "finitely-determined-evidence");
  return rep;
}

DeformReport deformation_experiment(const PolyMap& F,
                                    const std::vector<Complex>& t_values,
                                    const CensusSettings& settings) {
  DeformReport rep;
  rep.degrees = {F.degrees[0], F.degrees[1], F.degrees[2]};
  rep.seed = settings.seed;
  const DegreeTriple d{F.degrees[0], F.degrees[1], F.degrees[2]};
  const InvariantTable table = compute_invariants(d);

  for (const Complex& t : t_values) {
    const PolyMap Ft = deform(F, t);
    const JetCache jets(Ft);
    const ClassContext ctx{Ft, jets, settings};

    BuildOptions opt;
    opt.chart = 1;
    opt.seed = derive_seed(settings.seed, seed_tag::kCensusClass,
                           std::uint64_t(class_id(CensusClass::A3)));
    SingularitySystem sys = build_system(Ft, SystemKind::Swallowtail, opt);

    DeformPoint pt;
    pt.t = t;
    pt.formula_count = table.countA3;
    if (sys.degenerate) {
      pt.inconclusive = true;
      rep.points.push_back(pt);
      continue;
    }
    TrackSettings ts = settings.track;
    ts.seed = opt.seed;
    SolutionSet sol = solve(sys.system, ts);
    if (sol.total_paths > 0 &&
        double(sol.path_stats.failed) >
            settings.failure_budget * double(sol.total_paths))
      pt.inconclusive = true;
    for (const Solution& s : sol.solutions) {
      const auto pts = split_blocks(s.point, sys.point_blocks);
      if (verify_configuration(ctx, CensusClass::A3, pts)) {
        pt.a3_count++;
        pt.max_solution_norm = std::max(pt.max_solution_norm, s.point.norm());
      }
    }
    pt.match = !pt.inconclusive && pt.a3_count == pt.formula_count;
    rep.points.push_back(pt);
  }
  return rep;
}

}  // namespace sing
