#include <doctest.h>

#include "carnot/ratfunc.hpp"

using namespace carnot;

TEST_CASE("rational functions are reduced") {
  Poly x = Poly::var(0), y = Poly::var(1);
  RatFunc r((x * x - y * y), (x - y) * mpq_class(2));
  CHECK(r.den() == Poly(1));
  CHECK(r == RatFunc(mpq_class(1, 2) * (x + y)));
  CHECK(RatFunc(x, x) == RatFunc(mpq_class(1)));
}

TEST_CASE("field operations") {
  Poly x = Poly::var(0), y = Poly::var(1);
  RatFunc a(Poly(1), x), b(Poly(1), y);
  RatFunc s = a + b;
  CHECK(s == RatFunc(x + y, x * y));
  CHECK((a / b) == RatFunc(y, x));
  CHECK((s - a) == b);
  CHECK((s * RatFunc(x * y)) == RatFunc(x + y));
  CHECK_THROWS((a / RatFunc()));
}

TEST_CASE("quotient rule and evaluation") {
  Poly x = Poly::var(0), y = Poly::var(1);
  RatFunc f(x * y, x + y);
  RatFunc df = f.derivative(0);
  CHECK(df == RatFunc(y * y, (x + y) * (x + y)));
  std::vector<mpq_class> pt{mpq_class(1, 2), mpq_class(3)};
  CHECK(f.eval(pt) == mpq_class(3, 7));
  CHECK(std::abs(f.eval(std::vector<double>{0.5, 3.0}) - 3.0 / 7) < 1e-15);
  CHECK_THROWS_AS(f.eval(std::vector<mpq_class>{1, -1}), std::domain_error);
}
