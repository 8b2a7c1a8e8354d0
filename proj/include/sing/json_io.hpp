#pragma once

#include <string>

#include "sing/census.hpp"
#include "sing/invariants.hpp"
#include "sing/polymap.hpp"
#include "sing/tracker.hpp"

namespace sing {

// PolyMap interchange schema (terms in canonical order, leading first):
//   {"nvars":3,"degrees":[d1,d2,d3],
//    "components":[{"terms":[{"e":[e1,e2,e3],"c":[re,im]},...]},...]}
std::string polymap_to_json(const PolyMap& F);
// strict: a stored zero coefficient is a schema violation; otherwise such
// terms are silently dropped. Errors name the offending component/term.
PolyMap polymap_from_json(const std::string& text, bool strict = false);

// SquareSystem: {"nvars":n,"equations":[{"terms":[...]},...]} with the same
// term schema; declared degrees are recomputed on load.
std::string square_system_to_json(const SquareSystem& sys);
SquareSystem square_system_from_json(const std::string& text);

std::string solution_set_to_json(const SolutionSet& sol);

std::string invariant_table_to_json(const DegreeTriple& d,
                                    const InvariantTable& t);

std::string census_report_to_json(const CensusReport& rep);
std::string germ_report_to_json(const GermReport& rep);
std::string deform_report_to_json(const DeformReport& rep);

}  // namespace sing
