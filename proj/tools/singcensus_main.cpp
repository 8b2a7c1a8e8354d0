// singcensus: closed-form counts of the stable singularities of generic
// polynomial maps C^3 -> C^3, a gcd admissibility gate for homogeneous map
// germs, and a numerical verification path via homotopy continuation.
//
// Reports go to stdout as JSON; diagnostics go to stderr.
// Exit codes: 0 success/match, 1 mismatch/counterexample, 2 usage or schema
// error, 3 inconclusive run.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sing/census.hpp"
#include "sing/json_io.hpp"

namespace {

using namespace sing;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot open output file: " + out_path);
  out << text << "\n";
}

std::vector<CensusClass> parse_classes(const std::string& csv) {
  std::vector<CensusClass> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_census_class(item));
  if (out.empty()) throw InputError("no census classes requested");
  return out;
}

struct CommonOpts {
  std::uint64_t seed = 1;  // documented fixed default, never time-based
  int parallel = 1;
  double corrector_tol = 1e-10;
  double dedup_radius = 1e-6;
  double rank_tol = 1e-8;
  double zero_tol = 1e-6;
  double distinct_tol = 1e-3;
  double failure_budget = 0.05;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "root seed for all randomness");
  cmd->add_option("--parallel", o.parallel, "worker threads for path tracking");
  cmd->add_option("--corrector-tol", o.corrector_tol, "Newton corrector tolerance");
  cmd->add_option("--dedup-radius", o.dedup_radius, "endpoint clustering radius");
  cmd->add_option("--rank-tol", o.rank_tol, "singular value ratio threshold");
  cmd->add_option("--zero-tol", o.zero_tol, "scaled zero test threshold");
  cmd->add_option("--distinct-tol", o.distinct_tol, "multi-point distinctness threshold");
  cmd->add_option("--failure-budget", o.failure_budget, "path failure fraction before inconclusive");
}

CensusSettings to_settings(const CommonOpts& o) {
  CensusSettings s;
  s.seed = o.seed;
  s.track.seed = o.seed;
  s.track.parallelism = o.parallel;
  s.track.corrector_tol = o.corrector_tol;
  s.track.dedup_radius = o.dedup_radius;
  s.classify.rank_tol = o.rank_tol;
  s.classify.zero_tol = o.zero_tol;
  s.distinct_tol = o.distinct_tol;
  s.failure_budget = o.failure_budget;
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"stable singularity counts of polynomial maps C^3 -> C^3"};
  app.require_subcommand(1);

  // invariants d1 d2 d3
  auto* inv = app.add_subcommand("invariants", "closed-form count table");
  std::vector<int> inv_d;
  inv->add_option("degrees", inv_d, "d1 d2 d3")->expected(3)->required();

  // gate d1 d2 d3
  auto* gate = app.add_subcommand("gate", "finite-determinacy admissibility gate");
  std::vector<int> gate_d;
  gate->add_option("degrees", gate_d, "d1 d2 d3")->expected(3)->required();

  // random-map
  auto* rmap = app.add_subcommand("random-map", "draw a dense random map");
  std::vector<int> rmap_d;
  bool rmap_homog = false;
  std::uint64_t rmap_seed = 1;
  std::string rmap_out;
  rmap->add_option("--degrees", rmap_d, "d1 d2 d3")->expected(3)->required();
  rmap->add_flag("--homogeneous", rmap_homog, "top-degree parts only");
  rmap->add_option("--seed", rmap_seed, "generator seed");
  rmap->add_option("-o,--output", rmap_out, "output path (default stdout)");

  // census
  auto* cen = app.add_subcommand("census", "numeric census vs the closed forms");
  std::vector<int> cen_d;
  std::string cen_map, cen_classes = "A3,A2A1,A1cube";
  bool cen_override = false;
  CommonOpts cen_o;
  cen->add_option("--degrees", cen_d, "d1 d2 d3 (random map)")->expected(3);
  cen->add_option("--map", cen_map, "PolyMap JSON file");
  cen->add_option("--classes", cen_classes,
                  "comma list from A3,A2A1,A1cube,A2,A1sq");
  cen->add_flag("--override-gate", cen_override,
                "run despite a blocked degree triple");
  bool cen_stability = false;
  cen->add_flag("--stability-probes", cen_stability,
                "also probe for cusp pairs and tangent fold pairs");
  bool cen_cross = false;
  cen->add_flag("--gamma-cross-check", cen_cross,
                "solve each class twice under independent gammas and merge");
  add_common(cen, cen_o);

  // check-germ
  auto* germ = app.add_subcommand("check-germ", "probe the genericity conditions");
  std::vector<int> germ_d;
  std::string germ_map;
  CommonOpts germ_o;
  germ->add_option("--degrees", germ_d, "d1 d2 d3 (random homogeneous map)")
      ->expected(3);
  germ->add_option("--map", germ_map, "homogeneous PolyMap JSON file");
  add_common(germ, germ_o);

  // solve
  auto* slv = app.add_subcommand("solve", "homotopy-solve a square system");
  std::string slv_sys;
  CommonOpts slv_o;
  slv->add_option("--system", slv_sys, "SquareSystem JSON file")->required();
  add_common(slv, slv_o);

  // deform
  auto* def = app.add_subcommand("deform", "degree-weighted rescaling experiment");
  std::string def_map, def_ts = "1,0.5,0.25";
  double def_emit = 0.0;
  bool def_emit_set = false;
  CommonOpts def_o;
  def->add_option("--map", def_map, "PolyMap JSON file")->required();
  def->add_option("--t", def_ts, "comma list of deformation parameters");
  def->add_option("--emit", def_emit, "print the deformed map for this t and exit")
      ->each([&](const std::string&) { def_emit_set = true; });
  add_common(def, def_o);

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  int exit_code = 0;

  if (*inv) {
    const DegreeTriple d{inv_d[0], inv_d[1], inv_d[2]};
    const InvariantTable t = compute_invariants(d);
    if (!t.admissible)
      std::cerr << "warning: triple blocked (" << t.blocking_reason
                << "); counts carry no guarantee outside the gate\n";
    write_output(invariant_table_to_json(d, t), "");
  } else if (*gate) {
    const DegreeTriple d{gate_d[0], gate_d[1], gate_d[2]};
    const GateResult g = determinacy_gate(d);
    std::cout << "{\"admissible\":" << (g.admissible ? "true" : "false")
              << ",\"reason\":\"" << g.reason << "\"}\n";
    exit_code = g.admissible ? 0 : 1;
  } else if (*rmap) {
    const PolyMap F = random_map({rmap_d[0], rmap_d[1], rmap_d[2]},
                                 rmap_homog, rmap_seed);
    write_output(polymap_to_json(F), rmap_out);
  } else if (*cen) {
    if (cen_d.empty() == cen_map.empty())
      throw InputError("census: pass exactly one of --degrees or --map");
    CensusSettings s = to_settings(cen_o);
    s.override_gate = cen_override;
    s.stability_probes = cen_stability;
    s.gamma_cross_check = cen_cross;
    const std::vector<CensusClass> classes = parse_classes(cen_classes);
    const CensusReport rep =
        cen_map.empty()
            ? run_census_random({cen_d[0], cen_d[1], cen_d[2]}, classes, s)
            : run_census(polymap_from_json(read_file(cen_map)), classes, s);
    write_output(census_report_to_json(rep), "");
    exit_code = rep.inconclusive ? 3 : (rep.all_match ? 0 : 1);
  } else if (*germ) {
    if (germ_d.empty() == germ_map.empty())
      throw InputError("check-germ: pass exactly one of --degrees or --map");
    const CensusSettings s = to_settings(germ_o);
    const PolyMap F0 =
        germ_map.empty()
            ? random_map({germ_d[0], germ_d[1], germ_d[2]}, true,
                         derive_seed(s.seed, seed_tag::kGermMap))
            : polymap_from_json(read_file(germ_map));
    const GermReport rep = check_germ(F0, s);
    write_output(germ_report_to_json(rep), "");
    exit_code = rep.verdict == "finitely-determined-evidence"
                    ? 0
                    : (rep.verdict == "inconclusive" ? 3 : 1);
  } else if (*slv) {
    const SquareSystem sys = square_system_from_json(read_file(slv_sys));
    const CensusSettings s = to_settings(slv_o);
    const SolutionSet sol = solve(sys, s.track);
    write_output(solution_set_to_json(sol), "");
  } else if (*def) {
    const PolyMap F = polymap_from_json(read_file(def_map));
    if (def_emit_set) {
      write_output(polymap_to_json(deform(F, Complex(def_emit, 0.0))), "");
    } else {
      std::vector<Complex> ts;
      std::stringstream ss(def_ts);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) ts.push_back(Complex(std::stod(item), 0.0));
      if (ts.empty()) throw InputError("deform: no t values");
      const CensusSettings s = to_settings(def_o);
      const DeformReport rep = deformation_experiment(F, ts, s);
      write_output(deform_report_to_json(rep), "");
      bool ok = true;
      for (const auto& p : rep.points)
        if (!p.match) ok = false;
      exit_code = ok ? 0 : 1;
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  std::cerr << "elapsed "
            << std::chrono::duration<double>(t1 - t0).count() << " s\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
