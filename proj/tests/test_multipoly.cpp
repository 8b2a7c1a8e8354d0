#include <doctest.h>

#include "sing/rng.hpp"
#include "test_helpers.hpp"

using namespace sing;
using namespace sing::testing;

namespace {

// dense random polynomial for property checks
MultiPoly random_poly(int deg, std::uint64_t seed) {
  Rng rng(seed);
  MultiPoly p(3);
  for (const ExpVec& e : monomial_basis(3, deg, false))
    p.add_term(e, rng.annulus(0.5, 1.5));
  return p;
}

Eigen::VectorXcd random_point(std::uint64_t seed, double radius) {
  Rng rng(seed);
  return pt3(radius * rng.annulus(0.1, 1.0), radius * rng.annulus(0.1, 1.0),
             radius * rng.annulus(0.1, 1.0));
}

}  // namespace

TEST_CASE("evaluate: direct arithmetic") {
  const MultiPoly p = mono3(2, 1, 0);  // x^2 y
  CHECK(evaluate(p, pt3(2, 3, 7)) == Complex(12.0));

  const MultiPoly zero(3);
  CHECK(evaluate(zero, pt3(1, 2, 3)) == Complex(0.0));

  // third component of the swallowtail fixture at (1,1,1)
  const MultiPoly f3 = mono3(0, 0, 4) + mono3(0, 2, 1) + mono3(1, 0, 1);
  CHECK(evaluate(f3, pt3(1, 1, 1)) == Complex(3.0));

  CHECK_THROWS_AS(evaluate(p, Eigen::VectorXcd::Zero(2)), InputError);
}

TEST_CASE("derivative: formal partials") {
  const MultiPoly f3 = mono3(0, 0, 4) + mono3(0, 2, 1) + mono3(1, 0, 1);
  const MultiPoly expect =
      scale(mono3(0, 0, 3), 4.0) + mono3(0, 2, 0) + mono3(1, 0, 0);
  CHECK(derivative(f3, 2) == expect);

  CHECK(derivative(C3(5.0), 0).is_zero());

  CHECK(derivative(mono3(2, 3, 0), 1) == scale(mono3(2, 2, 0), 3.0));

  CHECK_THROWS_AS(derivative(f3, 3), InputError);
  CHECK_THROWS_AS(derivative(f3, -1), InputError);
}

TEST_CASE("ring operations") {
  const MultiPoly lhs = (X() + Y()) * (X() - Y());
  CHECK(lhs == mono3(2, 0, 0) - mono3(0, 2, 0));

  const MultiPoly p = random_poly(3, 7);
  CHECK(add(p, scale(p, Complex(-1.0))).is_zero());

  CHECK(scale(mono3(2, 0, 0), Complex(0, 3)) ==
        MultiPoly::monomial(3, {2, 0, 0}, Complex(0, 3)));

  CHECK_THROWS_AS(add(MultiPoly::variable(2, 0), X()), InputError);
}

TEST_CASE("evaluate is multiplicative on products") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const MultiPoly p = random_poly(3, 2 * s);
    const MultiPoly q = random_poly(2, 2 * s + 1);
    const Eigen::VectorXcd x = random_point(100 + s, 5.0);
    const Complex lhs = evaluate(mul(p, q), x);
    const Complex rhs = evaluate(p, x) * evaluate(q, x);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("derivative commutes with addition; mixed partials commute") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const MultiPoly p = random_poly(4, 3 * s);
    const MultiPoly q = random_poly(3, 3 * s + 2);
    for (int j = 0; j < 3; ++j)
      CHECK(approx_equal(derivative(add(p, q), j),
                         add(derivative(p, j), derivative(q, j)), 1e-13));
    // mixed partials share the same multiset of integer factors: exact
    CHECK(derivative(derivative(p, 0), 2) == derivative(derivative(p, 2), 0));
    CHECK(derivative(derivative(p, 1), 2) == derivative(derivative(p, 2), 1));
  }
}

TEST_CASE("Euler identity for homogeneous parts") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    Rng rng(500 + s);
    MultiPoly p(3);
    const int d = 2 + int(s % 4);
    for (const ExpVec& e : monomial_basis(3, d, true))
      p.add_term(e, rng.annulus(0.5, 1.5));
    MultiPoly euler(3);
    for (int j = 0; j < 3; ++j)
      euler = euler + MultiPoly::variable(3, j) * derivative(p, j);
    CHECK(approx_equal(euler, scale(p, double(d)), 1e-13));
  }
}

TEST_CASE("canonical term order is graded lexicographic, leading first") {
  MultiPoly p = mono3(0, 0, 1) + mono3(2, 0, 0) + mono3(0, 1, 0) + C3(1.0);
  std::vector<ExpVec> order;
  for (const auto& [e, c] : p.terms()) {
    (void)c;
    order.push_back(e);
  }
  // degree first, then x > y > z: x^2, y, z, 1
  CHECK(order ==
        std::vector<ExpVec>{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
}
