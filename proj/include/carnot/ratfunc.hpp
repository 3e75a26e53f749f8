#pragma once

#include "carnot/poly.hpp"

namespace carnot {

// Quotient of polynomials, kept reduced: gcd(num, den) = 1 and den has
// leading coefficient 1. Zero is 0/1.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(Poly num);  // NOLINT: polynomials embed implicitly
  RatFunc(Poly num, Poly den);
  explicit RatFunc(const mpq_class& c) : num_(c), den_(1) {}

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.is_constant(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc derivative(int var) const;

  // Throws std::domain_error when the denominator vanishes at the point.
  mpq_class eval(const std::vector<mpq_class>& point) const;
  double eval(const std::vector<double>& point) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  Poly num_, den_;
  void normalize();
};

}  // namespace carnot
