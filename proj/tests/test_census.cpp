#include <doctest.h>

#include "sing/census.hpp"
#include "test_helpers.hpp"

using namespace sing;
using namespace sing::testing;

namespace {

CensusSettings quick_settings(std::uint64_t seed) {
  CensusSettings s;
  s.seed = seed;
  s.track.seed = seed;
  s.track.parallelism = 2;
  return s;
}

const ClassBlock& block(const CensusReport& rep, const char* name) {
  for (const auto& b : rep.classes)
    if (b.class_name == name) return b;
  REQUIRE(false);
  throw std::logic_error("missing class");
}

}  // namespace

TEST_CASE("census (1,2,2): swallowtail count matches the closed form") {
  const CensusReport rep = run_census_random(
      {1, 2, 2}, {CensusClass::A3}, quick_settings(101));
  const ClassBlock& a3 = block(rep, "A3");
  CHECK(a3.formula_count == 2);
  CHECK(a3.final_count == 2);
  CHECK(a3.match);
  CHECK(!rep.inconclusive);
  // conservation: every finite endpoint is either kept or discarded
  CHECK(a3.raw_endpoints ==
        a3.filtered_count + a3.discarded.total());
}

TEST_CASE("census: component order does not change counts") {
  const PolyMap F = random_map({1, 2, 2}, false, 55);
  const PolyMap G = make_polymap(
      {F.components[2], F.components[0], F.components[1]});
  const CensusReport ra =
      run_census(F, {CensusClass::A3}, quick_settings(77));
  const CensusReport rb =
      run_census(G, {CensusClass::A3}, quick_settings(77));
  CHECK(block(ra, "A3").final_count == block(rb, "A3").final_count);
}

TEST_CASE("census rejects blocked degrees without the override") {
  CHECK_THROWS_AS(run_census_random({3, 3, 5}, {CensusClass::A3},
                                    quick_settings(1)),
                  InputError);
  CensusSettings s = quick_settings(1);
  s.override_gate = true;
  const CensusReport rep =
      run_census_random({3, 3, 5}, {CensusClass::A3}, s);
  CHECK(rep.gate_overridden);
  CHECK(!rep.gate_admissible);
}

TEST_CASE("deformation experiment: homogeneous maps are fixed points") {
  const PolyMap H = random_map({1, 2, 2}, true, 404);
  const CensusSettings s = quick_settings(404);
  const DeformReport rep =
      deformation_experiment(H, {Complex(1.0), Complex(0.5)}, s);
  REQUIRE(rep.points.size() == 2);
  CHECK(rep.points[0].a3_count == rep.points[1].a3_count);
  CHECK(rep.points[0].max_solution_norm ==
        rep.points[1].max_solution_norm);
}

TEST_CASE("germ gate short-circuit") {
  const PolyMap H = random_map({3, 3, 5}, true, 8);
  const GermReport rep = check_germ(H, quick_settings(8));
  CHECK(rep.verdict == "counterexample-found");
  CHECK(!rep.gate_admissible);
  REQUIRE(rep.conditions.size() == 1);
  CHECK(rep.conditions[0].name == "gate");
}

TEST_CASE("germ checker requires homogeneous input") {
  const PolyMap F = random_map({2, 2, 3}, false, 8);
  CHECK_THROWS_AS(check_germ(F, quick_settings(8)), InputError);
}

TEST_CASE("census class name round trip") {
  CHECK(parse_census_class("A3") == CensusClass::A3);
  CHECK(parse_census_class("A1sq") == CensusClass::A1sqslice);
  CHECK(parse_census_class("A1cube") == CensusClass::A1cube);
  CHECK_THROWS_AS(parse_census_class("A9"), InputError);
}

TEST_CASE("census (1,2,3): counts are seed independent") {
  for (std::uint64_t seed : {7ull, 17ull, 27ull}) {
    const CensusReport rep = run_census_random(
        {1, 2, 3}, {CensusClass::A3}, quick_settings(seed));
    CHECK(block(rep, "A3").final_count == 16);
  }
}

TEST_CASE("deformation experiment: invariant count, contracting solutions") {
  const PolyMap F = random_map({1, 2, 2}, false, 63);
  const CensusSettings s = quick_settings(63);
  const DeformReport rep = deformation_experiment(
      F, {Complex(1.0), Complex(0.5), Complex(0.25)}, s);
  REQUIRE(rep.points.size() == 3);
  for (const auto& p : rep.points) {
    CHECK(p.a3_count == 2);
    CHECK(p.match);
  }
  // singularities contract toward the origin as t shrinks
  CHECK(rep.points[1].max_solution_norm < rep.points[0].max_solution_norm);
  CHECK(rep.points[2].max_solution_norm < rep.points[1].max_solution_norm);
}

TEST_CASE("every swallowtail lies on the cusp curve") {
  // solve the A3 system directly and substitute its verified endpoints
  // into the cusp equations of the best-conditioned chart
  const PolyMap F = random_map({1, 2, 2}, false, 91);
  const JetCache jets(F);
  BuildOptions opt;
  opt.chart = 1;
  opt.seed = 91;
  const SingularitySystem sys = build_system(F, SystemKind::Swallowtail, opt);
  TrackSettings ts;
  ts.seed = 91;
  ts.parallelism = 2;
  const SolutionSet sol = solve(sys.system, ts);
  int swallowtails = 0;
  for (const Solution& s : sol.solutions) {
    Eigen::Vector3cd p = s.point;
    const PointClass pc = classify_point(jets, p, {});
    if (pc.label != SingLabel::Swallowtail) continue;
    ++swallowtails;
    CHECK(scaled_value(jets.J(), s.point) < 1e-8);
    CHECK(scaled_value(jets.J1(pc.chart_used), s.point) < 1e-8);
  }
  CHECK(swallowtails == 2);
}

TEST_CASE("critical surface slice count equals s1") {
  const PolyMap F = random_map({1, 2, 2}, false, 14);
  BuildOptions opt;
  opt.seed = 14;
  const SingularitySystem sys = build_system(F, SystemKind::Fold, opt);
  TrackSettings ts;
  ts.seed = 14;
  const SolutionSet sol = solve(sys.system, ts);
  CHECK(sol.solutions.size() == 2);  // s1 = 1+2+2-3
}

TEST_CASE("gamma cross-check is a no-op on clean runs") {
  CensusSettings s = quick_settings(101);
  s.gamma_cross_check = true;
  const CensusReport rep =
      run_census_random({1, 2, 2}, {CensusClass::A3}, s);
  const ClassBlock& b = block(rep, "A3");
  CHECK(b.final_count == 2);
  CHECK(b.match);
  CHECK(b.note.find("recovered") == std::string::npos);
}

TEST_CASE("stability probes pass on a generic census map") {
  CensusSettings s = quick_settings(12);
  s.stability_probes = true;
  const CensusReport rep =
      run_census_random({1, 2, 2}, {CensusClass::A3}, s);
  REQUIRE(rep.stability.size() == 2);
  for (const auto& c : rep.stability) {
    CHECK(c.status == ProbeStatus::Pass);
    CHECK(c.witnesses.empty());
  }
  CHECK(rep.all_match);
}
