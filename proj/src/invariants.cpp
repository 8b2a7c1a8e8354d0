#include "sing/invariants.hpp"

namespace sing {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v, const char* what) {
  if (v > Wide(INT64_MAX) || v < Wide(INT64_MIN))
    throw InternalError(std::string("invariant overflow in ") + what);
  return std::int64_t(v);
}

int gcd2(int a, int b) { return std::gcd(a, b); }

}  // namespace

GateResult determinacy_gate(const DegreeTriple& d) {
  const int g12 = gcd2(d.d1, d.d2);
  const int g13 = gcd2(d.d1, d.d3);
  const int g23 = gcd2(d.d2, d.d3);
  if (g12 > 2)
    return {false, "gcd(d1,d2)=" + std::to_string(g12) + " exceeds 2"};
  if (g13 > 2)
    return {false, "gcd(d1,d3)=" + std::to_string(g13) + " exceeds 2"};
  if (g23 > 2)
    return {false, "gcd(d2,d3)=" + std::to_string(g23) + " exceeds 2"};
  const int g = gcd2(g12, d.d3);
  if (g > 1)
    return {false, "gcd(d1,d2,d3)=" + std::to_string(g) + " exceeds 1"};
  return {true, ""};
}

InvariantTable compute_invariants(const DegreeTriple& d) {
  if (d.d1 < 1 || d.d2 < 1 || d.d3 < 1)
    throw InputError("compute_invariants: degrees must be positive");

  const Wide d1 = d.d1, d2 = d.d2, d3 = d.d3;
  const Wide s1 = d1 + d2 + d3 - 3;
  const Wide s2 = (d1 - 1) * (d2 - 1) + (d1 - 1) * (d3 - 1) + (d2 - 1) * (d3 - 1);
  const Wide s3 = (d1 - 1) * (d2 - 1) * (d3 - 1);
  const Wide P = d1 * d2 * d3;
  const Wide c1 = s1;
  const Wide c2 = s2 - s1;
  const Wide c3 = s3 - 2 * s2 + s1;

  const Wide a2 = c1 * c1 + c2;
  const Wide a1sq = (P - 2) * s1 * s1 - 2 * a2;
  const Wide a3 = c1 * c1 * c1 + 3 * c1 * c2 + 2 * c3;
  const Wide a2a1 = (P - 3) * s1 * a2 - 3 * a3;
  const Wide bracket = (P * P - 3 * P + 2) * s1 * s1 * s1 - 6 * a2a1 -
                       6 * a3 - 3 * s1 * a1sq - 4 * s1 * a2;
  const GateResult gate = determinacy_gate(d);
  std::string note = gate.reason;
  if (bracket % 6 != 0) {
    // integrality is part of the oracle on admissible triples; beyond the
    // gate the multi-point formulas are not meaningful counts and the
    // bracket can genuinely miss divisibility (e.g. (3,3,5))
    if (gate.admissible)
      throw InternalError("A1^3 bracket not divisible by 6 for admissible (" +
                          std::to_string(d.d1) + "," + std::to_string(d.d2) +
                          "," + std::to_string(d.d3) + ")");
    note += "; A1^3 bracket not divisible by 6, count truncated";
  }
  const Wide a1cube = bracket / 6;

  InvariantTable t;
  t.s1 = narrow(s1, "s1");
  t.s2 = narrow(s2, "s2");
  t.s3 = narrow(s3, "s3");
  t.P = narrow(P, "P");
  t.c1 = narrow(c1, "c1");
  t.c2 = narrow(c2, "c2");
  t.c3 = narrow(c3, "c3");
  t.countA2 = narrow(a2, "countA2");
  t.countA1sq = narrow(a1sq, "countA1sq");
  t.countA3 = narrow(a3, "countA3");
  t.countA2A1 = narrow(a2a1, "countA2A1");
  t.countA1cube = narrow(a1cube, "countA1cube");
  t.admissible = gate.admissible;
  t.blocking_reason = note;
  return t;
}

}  // namespace sing
