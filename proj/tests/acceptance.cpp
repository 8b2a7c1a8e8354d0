// Acceptance suite. Runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion; exits nonzero if any ran criterion
// fails. The stretch census (c8) only runs with --nightly.
//
// usage: acceptance <path-to-cli-binary> [--nightly]

#include <sys/wait.h>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sing/census.hpp"
#include "sing/json_io.hpp"

using namespace sing;

namespace {

std::string g_cli_path;
int g_parallel = 2;

struct Line {
  int id;
  bool ran = true;
  bool pass = false;
  double seconds = 0.0;
  std::string label;
  std::string detail;
};

std::vector<Line> g_lines;

template <typename Fn>
void criterion(int id, const std::string& label, double budget_seconds,
               Fn&& body) {
  Line line;
  line.id = id;
  line.label = label;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    line.pass = body(line.detail);
  } catch (const std::exception& e) {
    line.pass = false;
    line.detail = std::string("exception: ") + e.what();
  }
  line.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (line.pass && line.seconds > budget_seconds) {
    line.pass = false;
    line.detail += (line.detail.empty() ? "" : "; ");
    line.detail += "runtime budget exceeded (" + std::to_string(budget_seconds) +
                   " s)";
  }
  g_lines.push_back(std::move(line));
}

void skip(int id, const std::string& label, const std::string& why) {
  Line line;
  line.id = id;
  line.label = label;
  line.ran = false;
  line.pass = true;
  line.detail = why;
  g_lines.push_back(std::move(line));
}

CensusSettings settings_for(std::uint64_t seed) {
  CensusSettings s;
  s.seed = seed;
  s.track.seed = seed;
  s.track.parallelism = g_parallel;
  return s;
}

const ClassBlock* find_block(const CensusReport& rep, const char* name) {
  for (const auto& b : rep.classes)
    if (b.class_name == name) return &b;
  return nullptr;
}

bool counts_equal(const CensusReport& rep, const char* name, long long expect,
                  std::string& detail) {
  const ClassBlock* b = find_block(rep, name);
  if (!b) {
    detail += std::string(name) + " block missing; ";
    return false;
  }
  if (b->inconclusive) {
    detail += std::string(name) + " inconclusive (" + b->note + "); ";
    return false;
  }
  if (b->final_count != expect) {
    detail += std::string(name) + "=" + std::to_string(b->final_count) +
              " want " + std::to_string(expect) + "; ";
    return false;
  }
  return true;
}

std::string run_cli(const std::string& args, const std::string& out_path,
                    int* exit_code) {
  const std::string cmd =
      g_cli_path + " " + args + " > " + out_path + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  if (exit_code) *exit_code = WEXITSTATUS(rc);
  std::ifstream in(out_path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------

bool c1_formula_table(std::string& detail) {
  struct Row {
    int d[3];
    long long a2, a1sq, a3, a2a1, a1cube;
  };
  const Row rows[] = {
      {{1, 1, 1}, 0, 0, 0, 0, 0},
      {{2, 2, 3}, 17, 126, 68, 408, 400},
      {{1, 2, 3}, 8, 20, 16, 24, 4},
      {{1, 2, 2}, 3, 2, 2, 0, 0},
  };
  (void)compute_invariants({2, 2, 3});  // warm up
  for (const Row& r : rows) {
    const auto t0 = std::chrono::steady_clock::now();
    const InvariantTable t = compute_invariants({r.d[0], r.d[1], r.d[2]});
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (t.countA2 != r.a2 || t.countA1sq != r.a1sq || t.countA3 != r.a3 ||
        t.countA2A1 != r.a2a1 || t.countA1cube != r.a1cube) {
      detail = "mismatch at (" + std::to_string(r.d[0]) + "," +
               std::to_string(r.d[1]) + "," + std::to_string(r.d[2]) + ")";
      return false;
    }
    if (dt > 1e-3) {
      detail = "table evaluation took " + std::to_string(dt) + " s";
      return false;
    }
  }
  return true;
}

bool c2_gate(std::string& detail) {
  if (!determinacy_gate({2, 2, 3}).admissible ||
      !determinacy_gate({2, 3, 4}).admissible) {
    detail = "admissible triple rejected";
    return false;
  }
  const GateResult a = determinacy_gate({3, 3, 5});
  const GateResult b = determinacy_gate({2, 4, 6});
  if (a.admissible || a.reason.find("gcd(d1,d2)") == std::string::npos) {
    detail = "(3,3,5) must block on a pairwise gcd";
    return false;
  }
  if (b.admissible || b.reason.find("gcd(d1,d2,d3)") == std::string::npos) {
    detail = "(2,4,6) must block on the triple gcd";
    return false;
  }
  // CLI surface: exit codes and the documented report keys
  int rc = 0;
  const std::string blocked =
      run_cli("gate 3 3 5", "/tmp/singcensus_gate.json", &rc);
  if (rc != 1 || blocked.find("gcd(d1,d2)=3") == std::string::npos) {
    detail = "gate CLI: expected exit 1 naming gcd(d1,d2)=3";
    return false;
  }
  (void)run_cli("gate 2 2 3", "/tmp/singcensus_gate.json", &rc);
  if (rc != 0) {
    detail = "gate CLI: expected exit 0 for (2,2,3)";
    return false;
  }
  const std::string inv =
      run_cli("invariants 2 2 3", "/tmp/singcensus_inv.json", &rc);
  if (rc != 0 || inv.find("\"countA3\":68") == std::string::npos) {
    detail = "invariants CLI: expected \"countA3\":68";
    return false;
  }
  return true;
}

bool c3_divisibility(std::string& detail) {
  int checked = 0;
  for (int d1 = 1; d1 <= 8; ++d1)
    for (int d2 = d1; d2 <= 8; ++d2)
      for (int d3 = d2; d3 <= 8; ++d3) {
        if (!determinacy_gate({d1, d2, d3}).admissible) continue;
        const InvariantTable t = compute_invariants({d1, d2, d3});  // asserts /6
        if (t.countA2 < 0 || t.countA1sq < 0 || t.countA3 < 0 ||
            t.countA2A1 < 0 || t.countA1cube < 0) {
          detail = "negative count at (" + std::to_string(d1) + "," +
                   std::to_string(d2) + "," + std::to_string(d3) + ")";
          return false;
        }
        ++checked;
      }
  detail = std::to_string(checked) + " admissible triples";
  return checked > 0;
}

bool c4_tracker_baseline(std::string& detail) {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const PolyMap F = random_map({2, 2, 2}, false, seed);
    const SquareSystem sys = make_square_system(
        {F.components[0], F.components[1], F.components[2]});
    TrackSettings ts;
    ts.seed = seed;
    ts.parallelism = g_parallel;
    const SolutionSet sol = solve(sys, ts);
    if (sol.total_paths != 8 || sol.path_stats.total() != 8) {
      detail = "path conservation failed at seed " + std::to_string(seed);
      return false;
    }
    if (sol.solutions.size() != 8) {
      detail = "seed " + std::to_string(seed) + ": " +
               std::to_string(sol.solutions.size()) + " solutions, want 8";
      return false;
    }
    for (const Solution& s : sol.solutions)
      if (!(s.residual < 1e-8)) {
        detail = "residual " + std::to_string(s.residual);
        return false;
      }
  }
  // the same system through the solve subcommand
  {
    const PolyMap F = random_map({2, 2, 2}, false, 1);
    const SquareSystem sys = make_square_system(
        {F.components[0], F.components[1], F.components[2]});
    std::ofstream out("/tmp/singcensus_sys.json");
    out << square_system_to_json(sys);
    out.close();
    int rc = 0;
    const std::string text =
        run_cli("solve --system /tmp/singcensus_sys.json --seed 1",
                "/tmp/singcensus_sol.json", &rc);
    if (rc != 0 || text.find("\"converged\":8") == std::string::npos) {
      detail = "solve CLI: expected 8 converged paths";
      return false;
    }
  }
  return true;
}

bool c5_normal_forms(std::string& detail) {
  const PolyMap fold = make_polymap(
      {MultiPoly::variable(3, 0), MultiPoly::variable(3, 1),
       MultiPoly::monomial(3, {0, 0, 2}, 1.0)});
  const PolyMap cusp = make_polymap(
      {MultiPoly::variable(3, 0), MultiPoly::variable(3, 1),
       MultiPoly::monomial(3, {0, 0, 3}, 1.0) +
           MultiPoly::monomial(3, {0, 1, 1}, 1.0)});
  const PolyMap versal = make_polymap(
      {MultiPoly::variable(3, 0), MultiPoly::variable(3, 1),
       MultiPoly::monomial(3, {0, 0, 4}, 1.0) +
           MultiPoly::monomial(3, {1, 0, 2}, 1.0) +
           MultiPoly::monomial(3, {0, 1, 1}, 1.0)});

  const ClassifyTolerances tol;  // rank threshold 1e-8
  const Eigen::Vector3cd origin = Eigen::Vector3cd::Zero();
  if (classify_point(JetCache(fold), origin, tol).label != SingLabel::Fold) {
    detail = "fold fixture misclassified";
    return false;
  }
  if (classify_point(JetCache(cusp), origin, tol).label != SingLabel::Cusp) {
    detail = "cusp fixture misclassified";
    return false;
  }
  if (classify_point(JetCache(versal), origin, tol).label !=
      SingLabel::Swallowtail) {
    detail = "swallowtail fixture misclassified";
    return false;
  }

  // the swallowtail system of the versal fixture has the origin as its
  // unique solution (chart 3; charts 1 and 2 are blind on a normal form
  // whose first two rows are coordinate projections)
  BuildOptions opt;
  opt.chart = 3;
  opt.seed = 7;
  const SingularitySystem sys =
      build_system(versal, SystemKind::Swallowtail, opt);
  TrackSettings ts;
  ts.seed = 7;
  ts.parallelism = g_parallel;
  const SolutionSet sol = solve(sys.system, ts);
  if (sol.solutions.size() != 1) {
    detail = "swallowtail system: " + std::to_string(sol.solutions.size()) +
             " finite solutions, want 1";
    return false;
  }
  if (sol.solutions[0].point.norm() > 1e-8) {
    detail = "swallowtail system solution is off the origin";
    return false;
  }
  return true;
}

bool c6_census_small(std::string& detail) {
  for (std::uint64_t seed : {11ull, 22ull, 33ull}) {
    const CensusReport rep = run_census_random(
        {1, 2, 2},
        {CensusClass::A3, CensusClass::A2A1, CensusClass::A1cube,
         CensusClass::A2slice},
        settings_for(seed));
    std::string local;
    bool ok = counts_equal(rep, "A3", 2, local) &&
              counts_equal(rep, "A2A1", 0, local) &&
              counts_equal(rep, "A1cube", 0, local) &&
              counts_equal(rep, "A2", 3, local);
    if (!ok) {
      detail = "seed " + std::to_string(seed) + ": " + local;
      return false;
    }
  }
  // map file round trip through the CLI: random-map then census --map
  int rc = 0;
  (void)run_cli("random-map --degrees 1 2 2 --seed 11 -o /tmp/singcensus_map.json",
                "/tmp/singcensus_rm.out", &rc);
  if (rc != 0) {
    detail = "random-map CLI failed";
    return false;
  }
  const std::string rep =
      run_cli("census --map /tmp/singcensus_map.json --classes A3 --seed 11",
              "/tmp/singcensus_census.json", &rc);
  if (rc != 0 || rep.find("\"all_match\":true") == std::string::npos) {
    detail = "census --map CLI: expected all_match=true, exit 0";
    return false;
  }
  return true;
}

bool c7_census_medium(std::string& detail) {
  const CensusReport rep = run_census_random(
      {1, 2, 3},
      {CensusClass::A3, CensusClass::A2A1, CensusClass::A1cube},
      settings_for(5));
  std::string local;
  if (!(counts_equal(rep, "A3", 16, local) &&
        counts_equal(rep, "A2A1", 24, local) &&
        counts_equal(rep, "A1cube", 4, local))) {
    detail = local;
    return false;
  }
  const ClassBlock* cube = find_block(rep, "A1cube");
  if (cube->filtered_count != 24) {
    detail = "A1cube ordered count " + std::to_string(cube->filtered_count) +
             ", want 24 before the factor-6 quotient";
    return false;
  }
  return true;
}

bool c8_census_stretch(std::string& detail) {
  const CensusReport rep = run_census_random(
      {2, 2, 3},
      {CensusClass::A3, CensusClass::A2A1, CensusClass::A1cube},
      settings_for(9));
  std::string local;
  if (!(counts_equal(rep, "A3", 68, local) &&
        counts_equal(rep, "A2A1", 408, local) &&
        counts_equal(rep, "A1cube", 400, local))) {
    detail = local;
    return false;
  }
  const ClassBlock* a3 = find_block(rep, "A3");
  const ClassBlock* a2a1 = find_block(rep, "A2A1");
  const ClassBlock* cube = find_block(rep, "A1cube");
  if (a3->total_paths != 192 || a2a1->total_paths != 1152 ||
      cube->total_paths != 9216) {
    detail = "path totals " + std::to_string(a3->total_paths) + "/" +
             std::to_string(a2a1->total_paths) + "/" +
             std::to_string(cube->total_paths) + ", want 192/1152/9216";
    return false;
  }
  if (cube->filtered_count != 2400) {
    detail = "A1cube ordered count " + std::to_string(cube->filtered_count) +
             ", want 2400";
    return false;
  }
  for (const ClassBlock* b : {a3, a2a1, cube})
    if (double(b->path_stats.failed) > 0.05 * double(b->total_paths)) {
      detail = std::string(b->class_name) + " failure rate above 5%";
      return false;
    }
  return true;
}

bool c9_germ_positive(std::string& detail) {
  for (std::uint64_t seed : {101ull, 202ull, 303ull}) {
    const PolyMap H = random_map({2, 2, 3}, true, seed);
    const GermReport rep = check_germ(H, settings_for(seed));
    if (rep.verdict != "finitely-determined-evidence") {
      detail = "seed " + std::to_string(seed) + ": verdict " + rep.verdict;
      for (const auto& c : rep.conditions)
        if (c.status != ProbeStatus::Pass)
          detail += "; " + c.name + "=" + to_string(c.status);
      return false;
    }
  }
  return true;
}

bool c10_germ_negative(std::string& detail) {
  const PolyMap H = make_polymap({MultiPoly::monomial(3, {2, 0, 0}, 1.0),
                                  MultiPoly::monomial(3, {0, 2, 0}, 1.0),
                                  MultiPoly::monomial(3, {0, 0, 3}, 1.0)});
  const GermReport rep = check_germ(H, settings_for(13));
  if (rep.verdict != "counterexample-found") {
    detail = "verdict " + rep.verdict;
    return false;
  }
  const ConditionReport* corank = nullptr;
  for (const auto& c : rep.conditions)
    if (c.name == "5_corank2") corank = &c;
  if (!corank || corank->status != ProbeStatus::Fail ||
      corank->witnesses.empty()) {
    detail = "corank-2 probe did not produce a witness";
    return false;
  }
  // the witness must sit on a coordinate axis with dF of rank exactly 1
  bool axis_witness = false;
  for (const auto& w : corank->witnesses) {
    if (w.size() != 3) continue;
    int near_zero = 0;
    for (int j = 0; j < 3; ++j)
      if (std::abs(w[j]) < 1e-6) ++near_zero;
    if (near_zero != 2) continue;
    const Eigen::MatrixXcd dF = evaluate_jacobian(H, w);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dF);
    const auto& sv = svd.singularValues();
    if (sv[0] > 1e-8 && sv[1] / sv[0] < 1e-8) axis_witness = true;
  }
  if (!axis_witness) {
    detail = "no axis witness of verified rank 1";
    return false;
  }

  const GermReport blocked =
      check_germ(random_map({3, 3, 5}, true, 13), settings_for(13));
  if (blocked.verdict != "counterexample-found" ||
      blocked.conditions.size() != 1 || blocked.conditions[0].name != "gate") {
    detail = "(3,3,5) did not short-circuit via the gate";
    return false;
  }
  return true;
}

bool c11_determinism(std::string& detail) {
  const std::string base =
      "census --degrees 1 2 2 --classes A3,A2A1,A1cube,A2 --seed 11";
  int rc1 = 0, rc8 = 0;
  const std::string out1 =
      run_cli(base + " --parallel 1", "/tmp/singcensus_c11_p1.json", &rc1);
  const std::string out8 =
      run_cli(base + " --parallel 8", "/tmp/singcensus_c11_p8.json", &rc8);
  if (out1.empty() || out8.empty()) {
    detail = "CLI produced no output";
    return false;
  }
  if (rc1 != 0 || rc8 != 0) {
    detail = "CLI exit codes " + std::to_string(rc1) + "/" +
             std::to_string(rc8);
    return false;
  }
  if (out1 != out8) {
    detail = "reports differ between parallelism 1 and 8";
    return false;
  }
  return true;
}

bool c12_a1sq_convention(std::string& detail) {
  std::string first;
  for (const std::array<int, 3> degrees :
       {std::array<int, 3>{1, 2, 2}, std::array<int, 3>{1, 2, 3}})
    for (std::uint64_t seed : {41ull, 42ull}) {
      const CensusReport rep = run_census_random(
          degrees, {CensusClass::A1sqslice}, settings_for(seed));
      const ClassBlock* b = find_block(rep, "A1sq");
      if (!b || b->inconclusive) {
        detail = "A1sq run inconclusive";
        return false;
      }
      if (b->convention != "raw" && b->convention != "halved") {
        detail = "convention undetermined (raw=" +
                 std::to_string(b->raw_slice_count) +
                 ", formula=" + std::to_string(b->formula_count) + ")";
        return false;
      }
      if (first.empty()) first = b->convention;
      if (b->convention != first) {
        detail = "convention flipped between runs (" + first + " vs " +
                 b->convention + ")";
        return false;
      }
    }
  detail = "convention=" + first;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <cli-path> [--nightly]\n";
    return 2;
  }
  g_cli_path = argv[1];
  bool nightly = false;
  for (int i = 2; i < argc; ++i)
    if (std::string(argv[i]) == "--nightly") nightly = true;
  const unsigned hw = std::thread::hardware_concurrency();
  g_parallel = int(hw == 0 ? 2 : std::min(8u, hw));

  criterion(1, "formula table exact", 10.0, c1_formula_table);
  criterion(2, "admissibility gate exact", 1.0, c2_gate);
  criterion(3, "divisibility and non-negativity to degree 8", 1.0,
            c3_divisibility);
  criterion(4, "tracker baseline (2,2,2): 8 regular solutions", 5.0,
            c4_tracker_baseline);
  criterion(5, "normal-form classification and unique swallowtail", 1.0,
            c5_normal_forms);
  criterion(6, "census (1,2,2), 3 seeds", 60.0, c6_census_small);
  criterion(7, "census (1,2,3)", 600.0, c7_census_medium);
  if (nightly)
    criterion(8, "census stretch (2,2,3)", 3600.0, c8_census_stretch);
  else
    skip(8, "census stretch (2,2,3)", "optional nightly; pass --nightly");
  criterion(9, "germ checker positive (2,2,3), 3 seeds", 900.0,
            c9_germ_positive);
  criterion(10, "germ checker negative and gate short-circuit", 60.0,
            c10_germ_negative);
  criterion(11, "byte-identical reports across parallelism", 120.0,
            c11_determinism);
  criterion(12, "A1^2 slice convention determination", 300.0,
            c12_a1sq_convention);

  bool all_pass = true;
  for (const Line& line : g_lines) {
    const char* status = line.ran ? (line.pass ? "PASS" : "FAIL") : "SKIP";
    std::printf("%s c%02d %s (%.2f s)%s%s\n", status, line.id,
                line.label.c_str(), line.seconds,
                line.detail.empty() ? "" : " -- ", line.detail.c_str());
    if (line.ran && !line.pass) all_pass = false;
  }
  return all_pass ? 0 : 1;
}
