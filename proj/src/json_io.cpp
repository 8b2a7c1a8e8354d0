#include "sing/json_io.hpp"

#include <json.hpp>

#include "sing/errors.hpp"

namespace sing {

namespace {

using Json = nlohmann::ordered_json;

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Json point_to_json(const Eigen::VectorXcd& x) {
  Json arr = Json::array();
  for (int i = 0; i < x.size(); ++i) arr.push_back(complex_to_json(x[i]));
  return arr;
}

Json terms_to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["e"] = e;
    t["c"] = complex_to_json(c);
    terms.push_back(std::move(t));
  }
  return terms;
}

MultiPoly terms_from_json(const Json& jterms, int nvars, bool strict,
                          const std::string& where) {
  if (!jterms.is_array())
    throw ParseError(where + ": \"terms\" must be an array");
  MultiPoly p(nvars);
  int k = 0;
  for (const Json& t : jterms) {
    const std::string here = where + ".terms[" + std::to_string(k++) + "]";
    if (!t.is_object() || !t.contains("e") || !t.contains("c"))
      throw ParseError(here + ": term needs \"e\" and \"c\"");
    const Json& je = t["e"];
    const Json& jc = t["c"];
    if (!je.is_array() || int(je.size()) != nvars)
      throw ParseError(here + ": exponent list must have " +
                       std::to_string(nvars) + " entries");
    ExpVec e;
    for (const Json& v : je) {
      if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ParseError(here + ": exponents must be non-negative integers");
      e.push_back(v.get<int>());
    }
    if (!jc.is_array() || jc.size() != 2 || !jc[0].is_number() ||
        !jc[1].is_number())
      throw ParseError(here + ": coefficient must be [re,im]");
    const Complex c(jc[0].get<double>(), jc[1].get<double>());
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw ParseError(here + ": non-finite coefficient");
    if (std::abs(c) == 0.0) {
      if (strict) throw ParseError(here + ": zero coefficient stored");
      continue;  // dropped per the non-strict contract
    }
    p.add_term(std::move(e), c);
  }
  return p;
}

Json parse_text(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    throw ParseError(std::string(what) + ": malformed JSON");
  return j;
}

Json path_stats_to_json(const PathStats& ps) {
  Json j;
  j["converged"] = ps.converged;
  j["diverged_to_infinity"] = ps.diverged_to_infinity;
  j["singular_endpoint"] = ps.singular_endpoint;
  j["failed"] = ps.failed;
  return j;
}

Json class_block_to_json(const ClassBlock& blk) {
  Json j;
  j["total_paths"] = blk.total_paths;
  j["raw_endpoints"] = blk.raw_endpoints;
  j["filtered_count"] = blk.filtered_count;
  j["symmetry_factor"] = blk.symmetry_factor;
  j["final_count"] = blk.final_count;
  j["formula_count"] = blk.formula_count;
  j["match"] = blk.match;
  j["inconclusive"] = blk.inconclusive;
  Json disc;
  disc["at_infinity"] = blk.discarded.at_infinity;
  disc["diagonal"] = blk.discarded.diagonal;
  disc["failed_verification"] = blk.discarded.failed_verification;
  disc["singular"] = blk.discarded.singular;
  j["discarded"] = std::move(disc);
  j["path_stats"] = path_stats_to_json(blk.path_stats);
  if (!blk.convention.empty()) {
    j["convention"] = blk.convention;
    j["raw_slice_count"] = blk.raw_slice_count;
    j["halved_slice_count"] = blk.halved_slice_count;
  }
  if (!blk.note.empty()) j["note"] = blk.note;
  return j;
}

}  // namespace

std::string polymap_to_json(const PolyMap& F) {
  Json j;
  j["nvars"] = F.nvars();
  j["degrees"] = F.degrees;
  Json comps = Json::array();
  for (const auto& f : F.components) {
    Json c;
    c["terms"] = terms_to_json(f);
    comps.push_back(std::move(c));
  }
  j["components"] = std::move(comps);
  return j.dump();
}

PolyMap polymap_from_json(const std::string& text, bool strict) {
  const Json j = parse_text(text, "PolyMap");
  if (!j.is_object() || !j.contains("nvars") || !j.contains("degrees") ||
      !j.contains("components"))
    throw ParseError("PolyMap: need \"nvars\", \"degrees\", \"components\"");
  if (!j["nvars"].is_number_integer() || j["nvars"].get<int>() < 1)
    throw ParseError("PolyMap: \"nvars\" must be a positive integer");
  const int nvars = j["nvars"].get<int>();
  PolyMap F;
  for (const Json& d : j["degrees"]) {
    if (!d.is_number_integer())
      throw ParseError("PolyMap: degrees must be integers");
    F.degrees.push_back(d.get<int>());
  }
  int i = 0;
  for (const Json& c : j["components"]) {
    const std::string where = "components[" + std::to_string(i++) + "]";
    if (!c.is_object() || !c.contains("terms"))
      throw ParseError(where + ": component needs \"terms\"");
    F.components.push_back(terms_from_json(c["terms"], nvars, strict, where));
  }
  if (F.components.size() != F.degrees.size())
    throw ParseError("PolyMap: degrees/components length mismatch");
  validate_polymap(F, /*allow_zero=*/true);
  return F;
}

std::string square_system_to_json(const SquareSystem& sys) {
  Json j;
  j["nvars"] = sys.nvars;
  Json eqs = Json::array();
  for (const auto& e : sys.equations) {
    Json q;
    q["terms"] = terms_to_json(e);
    eqs.push_back(std::move(q));
  }
  j["equations"] = std::move(eqs);
  j["declared_degrees"] = sys.declared_degrees;
  return j.dump();
}

SquareSystem square_system_from_json(const std::string& text) {
  const Json j = parse_text(text, "SquareSystem");
  if (!j.is_object() || !j.contains("nvars") || !j.contains("equations"))
    throw ParseError("SquareSystem: need \"nvars\" and \"equations\"");
  const int nvars = j["nvars"].get<int>();
  if (nvars < 1) throw ParseError("SquareSystem: nvars must be positive");
  std::vector<MultiPoly> eqs;
  int i = 0;
  for (const Json& q : j["equations"]) {
    const std::string where = "equations[" + std::to_string(i++) + "]";
    if (!q.is_object() || !q.contains("terms"))
      throw ParseError(where + ": equation needs \"terms\"");
    eqs.push_back(terms_from_json(q["terms"], nvars, false, where));
  }
  if (int(eqs.size()) != nvars)
    throw ParseError("SquareSystem: " + std::to_string(eqs.size()) +
                     " equations in " + std::to_string(nvars) + " unknowns");
  return make_square_system(std::move(eqs));
}

std::string solution_set_to_json(const SolutionSet& sol) {
  Json j;
  j["total_paths"] = sol.total_paths;
  j["path_stats"] = path_stats_to_json(sol.path_stats);
  Json arr = Json::array();
  for (const Solution& s : sol.solutions) {
    Json e;
    e["point"] = point_to_json(s.point);
    e["residual"] = s.residual;
    e["condition"] = s.condition;
    e["cluster_size"] = s.cluster_size;
    arr.push_back(std::move(e));
  }
  j["solutions"] = std::move(arr);
  j["singular_points"] = [&] {
    Json sp = Json::array();
    for (const auto& p : sol.singular_points) sp.push_back(point_to_json(p));
    return sp;
  }();
  return j.dump();
}

std::string invariant_table_to_json(const DegreeTriple& d,
                                    const InvariantTable& t) {
  Json j;
  j["degrees"] = Json::array({d.d1, d.d2, d.d3});
  j["s1"] = t.s1;
  j["s2"] = t.s2;
  j["s3"] = t.s3;
  j["P"] = t.P;
  j["c1"] = t.c1;
  j["c2"] = t.c2;
  j["c3"] = t.c3;
  j["countA2"] = t.countA2;
  j["countA1sq"] = t.countA1sq;
  j["countA3"] = t.countA3;
  j["countA2A1"] = t.countA2A1;
  j["countA1cube"] = t.countA1cube;
  j["admissible"] = t.admissible;
  j["blocking_reason"] = t.blocking_reason;
  return j.dump();
}

namespace {

Json condition_to_json(const ConditionReport& c) {
  Json e;
  e["status"] = to_string(c.status);
  Json ws = Json::array();
  for (const auto& w : c.witnesses) ws.push_back(point_to_json(w));
  e["witnesses"] = std::move(ws);
  if (!c.detail.empty()) e["detail"] = c.detail;
  return e;
}

}  // namespace

std::string census_report_to_json(const CensusReport& rep) {
  Json j;
  j["degrees"] = rep.degrees;
  j["seed"] = rep.seed;
  Json gate;
  gate["admissible"] = rep.gate_admissible;
  gate["reason"] = rep.gate_reason;
  gate["overridden"] = rep.gate_overridden;
  j["gate"] = std::move(gate);
  Json classes;
  for (const ClassBlock& blk : rep.classes)
    classes[blk.class_name] = class_block_to_json(blk);
  j["classes"] = std::move(classes);
  if (!rep.stability.empty()) {
    Json st;
    for (const ConditionReport& c : rep.stability)
      st[c.name] = condition_to_json(c);
    j["stability"] = std::move(st);
  }
  j["all_match"] = rep.all_match;
  j["inconclusive"] = rep.inconclusive;
  return j.dump();
}

std::string germ_report_to_json(const GermReport& rep) {
  Json j;
  j["degrees"] = rep.degrees;
  j["seed"] = rep.seed;
  Json gate;
  gate["admissible"] = rep.gate_admissible;
  gate["reason"] = rep.gate_reason;
  j["gate"] = std::move(gate);
  Json conds;
  for (const ConditionReport& c : rep.conditions)
    conds[c.name] = condition_to_json(c);
  j["conditions"] = std::move(conds);
  j["verdict"] = rep.verdict;
  return j.dump();
}

std::string deform_report_to_json(const DeformReport& rep) {
  Json j;
  j["degrees"] = rep.degrees;
  j["seed"] = rep.seed;
  Json pts = Json::array();
  for (const DeformPoint& p : rep.points) {
    Json e;
    e["t"] = complex_to_json(p.t);
    e["a3_count"] = p.a3_count;
    e["formula_count"] = p.formula_count;
    e["match"] = p.match;
    e["inconclusive"] = p.inconclusive;
    e["max_solution_norm"] = p.max_solution_norm;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  return j.dump();
}

}  // namespace sing
