#include <doctest.h>

#include <random>

#include "carnot/frame_fields.hpp"

using namespace carnot;

namespace {

VecField<Poly> random_field(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> var(0, 2 * n - 1), coef(-3, 3), deg(0, 2);
  VecField<Poly> v(n);
  for (auto& c : v.c) {
    Monomial m;
    for (int k = deg(rng); k > 0; --k) m = m * Monomial::var(var(rng));
    c = Poly::monomial(m, coef(rng));
  }
  return v;
}

VecField<Poly> coordinate(int n, int k) {
  VecField<Poly> v(n);
  v.c[k] = Poly(1);
  return v;
}

}  // namespace

TEST_CASE("bracket is antisymmetric and satisfies Jacobi") {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto a = random_field(rng, 2), b = random_field(rng, 2), c = random_field(rng, 2);
    CHECK(lie_bracket(a, b) == -lie_bracket(b, a));
    auto jac = lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) +
               lie_bracket(c, lie_bracket(a, b));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("sigma pairing conventions") {
  const int n = 3;
  auto dp1 = coordinate(n, n), dx1 = coordinate(n, 0);
  CHECK(sigma_field(dp1, dx1) == Poly(1));
  CHECK(sigma_field(dx1, dp1) == Poly(-1));
  std::mt19937 rng(2);
  auto v = random_field(rng, n);
  CHECK(sigma_field(v, v).is_zero());
  std::vector<mpq_class> a{1, 2, 3, 4, 5, 6}, b{0, 1, 0, 1, 0, 0};
  CHECK(sigma_pair(a, b) == 5 * 1 - 1 * 1);
}

TEST_CASE("frame brackets lift from the structure table") {
  GroupModel m = build_group(GroupKind::Goursat, 4);
  auto X1 = m.frame_field(0), X2 = m.frame_field(1), X3 = m.frame_field(2);
  CHECK(lie_bracket(X1, X2) == X3);
}

TEST_CASE("Hamiltonian field against the Euler field and d/dh4") {
  GroupModel g5 = build_group(GroupKind::Goursat, 5);
  CanonicalFields f5 = canonical_fields(g5);
  CHECK(lie_bracket(f5.Hvec, f5.euler) == -f5.Hvec);
  // sigma(e, H) = 2H
  CHECK(sigma_field(f5.euler, f5.Hvec) == f5.H * mpq_class(2));

  GroupModel c = build_group(GroupKind::Cartan);
  CanonicalFields fc = canonical_fields(c);
  CHECK(lie_bracket(fc.Hvec, fc.dh[3]) == -(fc.h[0] * fc.dh[2]));
}

TEST_CASE("ratfunc and jet fields agree with polynomial fields") {
  GroupModel m = build_group(GroupKind::Goursat, 4);
  CanonicalFields f = canonical_fields(m);
  auto pr = lie_bracket(f.Hvec, f.dh[3]);
  auto rr = lie_bracket(to_ratfunc(f.Hvec), to_ratfunc(f.dh[3]));
  CHECK(rr == to_ratfunc(pr));
  auto jr = lie_bracket(to_jet(f.Hvec, 6), to_jet(f.dh[3], 6));
  std::vector<mpq_class> p{mpq_class(3, 5), mpq_class(4, 5), 2, -1};
  std::vector<mpq_class> z(4, 0);
  z.insert(z.end(), p.begin(), p.end());
  CHECK(eval_at_origin(jr, p) == eval_field(pr, z));
}
