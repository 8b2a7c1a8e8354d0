#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "sing/errors.hpp"

namespace sing {

struct DegreeTriple {
  int d1 = 1, d2 = 1, d3 = 1;
};

// Closed-form quantities for one degree triple. All values are exact
// integers; arithmetic runs in 128 bits internally so no admissible desk
// range can overflow silently.
struct InvariantTable {
  std::int64_t s1 = 0, s2 = 0, s3 = 0;
  std::int64_t P = 0;
  std::int64_t c1 = 0, c2 = 0, c3 = 0;
  std::int64_t countA2 = 0;
  std::int64_t countA1sq = 0;
  std::int64_t countA3 = 0;
  std::int64_t countA2A1 = 0;
  std::int64_t countA1cube = 0;
  bool admissible = false;
  std::string blocking_reason;  // empty when admissible
};

struct GateResult {
  bool admissible = false;
  std::string reason;  // names the violated condition when blocked
};

// Admissible iff every pairwise gcd is <= 2 and the triple gcd is 1.
GateResult determinacy_gate(const DegreeTriple& d);

// Evaluates every closed-form count. Works for non-admissible triples too
// (admissible=false, blocking_reason set); callers decide whether to warn.
// Throws InternalError if the A1^3 bracket is not divisible by 6.
InvariantTable compute_invariants(const DegreeTriple& d);

}  // namespace sing
