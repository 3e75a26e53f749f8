#include "carnot/jet.hpp"

#include <algorithm>
#include <stdexcept>

namespace carnot {

Jet::Jet(Poly p, int nbase, int order) : nbase_(nbase), order_(order) {
  p_ = order < kExact ? p.truncated(nbase, order) : std::move(p);
}

Jet& Jet::operator+=(const Jet& o) {
  int ord = std::min(order_, o.order_);
  nbase_ = std::max(nbase_, o.nbase_);
  p_ += o.p_;
  if (ord < order_ && ord < kExact) p_ = p_.truncated(nbase_, ord);
  order_ = ord;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) { return *this += -o; }

Jet operator*(const Jet& a, const Jet& b) {
  int nb = std::max(a.nbase_, b.nbase_);
  int ord = std::min(a.order_, b.order_);
  Jet r;
  r.nbase_ = nb;
  r.order_ = ord;
  r.p_ = ord < Jet::kExact ? Poly::mul_truncated(a.p_, b.p_, nb, ord) : a.p_ * b.p_;
  return r;
}

Jet Jet::derivative(int var) const {
  Jet r;
  r.nbase_ = nbase_;
  r.order_ = (var < nbase_ && order_ < kExact) ? order_ - 1 : order_;
  r.p_ = p_.derivative(var);
  return r;
}

Jet Jet::truncated(int order) const {
  if (order >= order_) return *this;
  return Jet(p_, nbase_, order);
}

Jet Jet::inverse() const {
  Poly lead = p_.base_degree_part(nbase_, 0);
  if (!lead.is_monomial()) throw std::domain_error("Jet::inverse: leading part is not a monomial");
  const Term& lt = lead.leading();
  Monomial inv_m = Monomial::one() / lt.m;
  mpq_class inv_c = 1 / lt.c;
  Poly linv = Poly::monomial(inv_m, inv_c);
  if (order_ >= kExact && p_.is_monomial()) return Jet(linv, nbase_, kExact);
  if (order_ >= kExact)
    throw std::domain_error("Jet::inverse: exact non-monomial needs a finite order");
  // 1/(L + R) = L^-1 sum_j (-R/L)^j, and R has base degree >= 1.
  Poly ratio = -(p_ - lead).times_monomial(inv_m, inv_c);
  Poly term(1), sum(1);
  for (int j = 1; j <= order_; ++j) {
    term = Poly::mul_truncated(term, ratio, nbase_, order_);
    if (term.is_zero()) break;
    sum += term;
  }
  return Jet(sum.times_monomial(inv_m, inv_c), nbase_, order_);
}

}  // namespace carnot
