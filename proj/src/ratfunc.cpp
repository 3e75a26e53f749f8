#include "carnot/ratfunc.hpp"

#include <stdexcept>

namespace carnot {

namespace {

Poly quotient(const Poly& a, const Poly& b) {
  if (b.is_constant()) return a * mpq_class(1 / b.constant_term());
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("RatFunc: inexact division by gcd");
  return *q;
}

}  // namespace

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(1) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("RatFunc with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = quotient(num_, g);
      den_ = quotient(den_, g);
    }
  }
  mpq_class lc = den_.leading().c;
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_constant()) normalize();
    else if (num_.is_zero()) den_ = Poly(1);
    return *this;
  }
  Poly g = gcd(den_, o.den_);
  Poly a = quotient(den_, g);
  Poly b = quotient(o.den_, g);
  num_ = num_ * b + o.num_ * a;
  den_ = den_ * b;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (is_poly() && o.is_poly()) {
    num_ = num_ * o.num_;
    return *this;
  }
  // cross-cancel before multiplying to keep operands small
  Poly g1 = gcd(num_, o.den_);
  Poly g2 = gcd(o.num_, den_);
  Poly n = quotient(num_, g1) * quotient(o.num_, g2);
  Poly d = quotient(den_, g2) * quotient(o.den_, g1);
  num_ = std::move(n);
  den_ = std::move(d);
  mpq_class lc = den_.leading().c;
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("RatFunc division by zero");
  return a * RatFunc(b.den_, b.num_);
}

RatFunc RatFunc::derivative(int var) const {
  if (is_poly()) return RatFunc(num_.derivative(var));
  Poly dn = num_.derivative(var);
  Poly dd = den_.derivative(var);
  if (dd.is_zero()) return RatFunc(dn, den_);
  return RatFunc(dn * den_ - num_ * dd, den_ * den_);
}

mpq_class RatFunc::eval(const std::vector<mpq_class>& point) const {
  mpq_class d = den_.eval(point);
  if (d == 0) throw std::domain_error("RatFunc: denominator vanishes");
  return num_.eval(point) / d;
}

double RatFunc::eval(const std::vector<double>& point) const {
  return num_.eval(point) / den_.eval(point);
}

std::string RatFunc::to_string(const std::vector<std::string>& names) const {
  if (is_poly()) return num_.to_string(names);
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

}  // namespace carnot
