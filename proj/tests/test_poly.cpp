#include <doctest.h>

#include <random>

#include "carnot/jet.hpp"

using namespace carnot;

namespace {

Poly random_poly(std::mt19937& rng, int nvars, int terms, int maxdeg) {
  std::uniform_int_distribution<int> var(0, nvars - 1), deg(0, maxdeg), coef(-5, 5);
  Poly p;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (int k = deg(rng); k > 0; --k) m = m * Monomial::var(var(rng));
    mpq_class c(coef(rng), 1 + std::abs(coef(rng)));
    c.canonicalize();
    p += Poly::monomial(m, c);
  }
  return p;
}

}  // namespace

TEST_CASE("poly arithmetic and evaluation") {
  Poly x = Poly::var(0), y = Poly::var(1);
  Poly p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  CHECK(p.total_degree() == 2);
  CHECK(p.eval(std::vector<mpq_class>{3, 2}) == 5);
  CHECK(p.derivative(0) == mpq_class(2) * x);
  CHECK((x * x * y).degree_in(0) == 2);
  CHECK(Poly(mpq_class(0)).is_zero());
  CHECK((x - x).is_zero());
}

TEST_CASE("exact division and gcd") {
  Poly x = Poly::var(0), y = Poly::var(1);
  Poly a = (x + y) * (x + Poly(2)), b = (x + y) * (y - Poly(1));
  auto q = divide_exact(a, x + y);
  REQUIRE(q);
  CHECK(*q == x + Poly(2));
  CHECK(!divide_exact(a, y - Poly(1)));
  CHECK(gcd(a, b) == x + y);
}

TEST_CASE("laurent monomials evaluate and divide") {
  Monomial inv = Monomial::var(0, -2);
  Poly p = Poly::monomial(inv, mpq_class(3));
  CHECK(p.eval(std::vector<mpq_class>{mpq_class(1, 2)}) == 12);
  CHECK_THROWS_AS(p.eval(std::vector<mpq_class>{0}), std::domain_error);
  CHECK(p.derivative(0) == Poly::monomial(Monomial::var(0, -3), mpq_class(-6)));
}

TEST_CASE("ring axioms and Leibniz rule on random polynomials") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Poly a = random_poly(rng, 4, 5, 3), b = random_poly(rng, 4, 5, 3), c = random_poly(rng, 4, 4, 2);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * b == b * a);
    CHECK((a * b).derivative(1) == a.derivative(1) * b + a * b.derivative(1));
    std::vector<mpq_class> pt{mpq_class(1, 3), mpq_class(-2), mpq_class(5, 7), mpq_class(1)};
    CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
  }
}

TEST_CASE("truncated products drop high base degree") {
  Poly x = Poly::var(0), p = Poly::var(2);
  Poly a = Poly(1) + x + x * x, b = Poly(1) + x * p;
  Poly t = Poly::mul_truncated(a, b, 2, 1);
  CHECK(t == (a * b).truncated(2, 1));
  CHECK(t == Poly(1) + x + x * p);
}

TEST_CASE("jet inverse is a series inverse") {
  // f = p (1 + x), 1/f = p^-1 (1 - x + x^2 - ...)
  Poly x = Poly::var(0), p = Poly::var(1);
  Jet f(p * (Poly(1) + x), 1, 4);
  Jet g = f.inverse();
  Jet one = f * g;
  CHECK(one.poly() == Poly(1));
  CHECK(g.at_origin() == Poly::monomial(Monomial::var(1, -1), 1));
}

TEST_CASE("rationals convert to the nearest double") {
  CHECK(to_double(mpq_class(4) / 5) == 0.8);
  CHECK(to_double(mpq_class(-1) / 3) == -1.0 / 3);
  CHECK(to_double(mpq_class(1) / 10) == 0.1);
}
