#pragma once

#include <climits>

#include "carnot/poly.hpp"

namespace carnot {

// Truncated Taylor expansion in the base variables [0, nbase) around the
// origin, with the fiber variables kept symbolic (negative fiber exponents
// are allowed). Terms of base degree above order() are unknown and dropped.
class Jet {
 public:
  static constexpr int kExact = INT_MAX / 4;

  Jet() = default;
  Jet(Poly p, int nbase, int order = kExact);
  static Jet constant(const mpq_class& c, int nbase) { return Jet(Poly(c), nbase); }

  const Poly& poly() const { return p_; }
  int order() const { return order_; }
  int nbase() const { return nbase_; }
  bool is_zero() const { return p_.is_zero(); }

  Jet operator-() const { return Jet(-p_, nbase_, order_); }
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, const mpq_class& c) {
    a.p_ *= c;
    return a;
  }

  Jet derivative(int var) const;
  Jet truncated(int order) const;

  // 1/f as a series: the base-degree-zero part of f must be a single
  // monomial in the fiber variables.
  Jet inverse() const;

  // Value at base point 0 as a Laurent polynomial in the fiber variables.
  Poly at_origin() const { return p_.base_degree_part(nbase_, 0); }

 private:
  Poly p_;
  int nbase_ = 0;
  int order_ = kExact;
};

}  // namespace carnot
