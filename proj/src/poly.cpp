#include "carnot/poly.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace carnot {

double to_double(const mpq_class& q) {
  mpfr_t r;
  mpfr_init2(r, 53);
  mpfr_set_q(r, q.get_mpq_t(), MPFR_RNDN);
  double d = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clear(r);
  return d;
}

Monomial Monomial::var(int i, int power) {
  Monomial m;
  m.e[i] = static_cast<int8_t>(power);
  m.deg = static_cast<int16_t>(power);
  return m;
}

int Monomial::degree_in(int first, int last) const {
  int s = 0;
  for (int i = first; i < last; ++i) s += e[i];
  return s;
}

bool Monomial::divides(const Monomial& other) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > other.e[i]) return false;
  return true;
}

bool Monomial::nonnegative() const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] < 0) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    int v = a.e[i] + b.e[i];
    if (v > 127 || v < -128) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = static_cast<int8_t>(v);
  }
  r.deg = static_cast<int16_t>(a.deg + b.deg);
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<int8_t>(a.e[i] - b.e[i]);
  r.deg = static_cast<int16_t>(a.deg - b.deg);
  return r;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::min(a.e[i], b.e[i]);
    d += r.e[i];
  }
  r.deg = static_cast<int16_t>(d);
  return r;
}

bool deglex_greater(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  return false;
}

size_t MonomialHash::operator()(const Monomial& m) const {
  uint64_t h = 1469598103934665603ull;
  for (int i = 0; i < kMaxVars; ++i) {
    h ^= static_cast<uint8_t>(m.e[i]);
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

Poly::Poly(const mpq_class& c) {
  if (c != 0) terms_.push_back({Monomial::one(), c});
}

Poly Poly::var(int i, int power) {
  Poly p;
  p.terms_.push_back({Monomial::var(i, power), mpq_class(1)});
  return p;
}

Poly Poly::monomial(const Monomial& m, const mpq_class& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void Poly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return deglex_greater(a.m, b.m); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().m == t.m) {
      out.back().c += t.c;
    } else {
      if (!out.empty() && out.back().c == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().c == 0) out.pop_back();
  terms_ = std::move(out);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].m.deg == 0 &&
                            terms_[0].m == Monomial::one());
}

mpq_class Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().m == Monomial::one()) return terms_.back().c;
  for (const auto& t : terms_)
    if (t.m == Monomial::one()) return t.c;
  return 0;
}

int Poly::total_degree() const { return terms_.empty() ? -1 : terms_.front().m.deg; }

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.m.e[var]);
  return d;
}

int Poly::min_degree_in(int var) const {
  if (terms_.empty()) return 0;
  int d = terms_.front().m.e[var];
  for (const auto& t : terms_) d = std::min<int>(d, t.m.e[var]);
  return d;
}

bool Poly::uses_var(int var) const {
  for (const auto& t : terms_)
    if (t.m.e[var] != 0) return true;
  return false;
}

int Poly::num_vars_used() const {
  int hi = 0;
  for (const auto& t : terms_)
    for (int i = kMaxVars - 1; i >= hi; --i)
      if (t.m.e[i] != 0) {
        hi = i + 1;
        break;
      }
  return hi;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

Poly merge_add(const Poly& a, const Poly& b, bool subtract) {
  Poly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() ||
        (i < a.terms_.size() && deglex_greater(a.terms_[i].m, b.terms_[j].m))) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || deglex_greater(b.terms_[j].m, a.terms_[i].m)) {
      r.terms_.push_back(b.terms_[j++]);
      if (subtract) r.terms_.back().c = -r.terms_.back().c;
    } else {
      mpq_class c = subtract ? mpq_class(a.terms_[i].c - b.terms_[j].c)
                             : mpq_class(a.terms_[i].c + b.terms_[j].c);
      if (c != 0) r.terms_.push_back({a.terms_[i].m, c});
      ++i;
      ++j;
    }
  }
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  *this = merge_add(*this, o, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  *this = merge_add(*this, o, true);
  return *this;
}

Poly& Poly::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.c *= c;
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

namespace {

Poly multiply_impl(const Poly& a, const Poly& b, int nbase, int max_deg) {
  if (a.is_zero() || b.is_zero()) return Poly();
  const bool trunc = max_deg >= 0;
  if (b.size() == 1 && !trunc) return a.times_monomial(b.leading().m, b.leading().c);
  if (a.size() == 1 && !trunc) return b.times_monomial(a.leading().m, a.leading().c);
  std::unordered_map<Monomial, mpq_class, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  std::vector<int> bdeg;
  if (trunc) {
    bdeg.reserve(b.size());
    for (const auto& t : b.terms()) bdeg.push_back(t.m.degree_in(0, nbase));
  }
  mpq_class prod;
  for (const auto& ta : a.terms()) {
    int da = trunc ? ta.m.degree_in(0, nbase) : 0;
    if (trunc && da > max_deg) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      const auto& tb = b.terms()[j];
      if (trunc && da + bdeg[j] > max_deg) continue;
      prod = ta.c * tb.c;
      auto [it, fresh] = acc.try_emplace(ta.m * tb.m, prod);
      if (!fresh) it->second += prod;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, std::move(c)});
  return Poly::from_terms(std::move(terms));
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) { return multiply_impl(a, b, 0, -1); }

Poly Poly::mul_truncated(const Poly& a, const Poly& b, int nbase, int max_deg) {
  if (max_deg < 0) return Poly();
  return multiply_impl(a, b, nbase, max_deg);
}

Poly Poly::truncated(int nbase, int max_deg) const {
  Poly r;
  for (const auto& t : terms_)
    if (t.m.degree_in(0, nbase) <= max_deg) r.terms_.push_back(t);
  return r;
}

Poly Poly::base_degree_part(int nbase, int deg) const {
  Poly r;
  for (const auto& t : terms_)
    if (t.m.degree_in(0, nbase) == deg) r.terms_.push_back(t);
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

Poly Poly::times_monomial(const Monomial& m, const mpq_class& c) const {
  Poly r;
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
  // multiplying by a monomial preserves the degree-lex order
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly result(1);
  Poly base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

Poly Poly::derivative(int var) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    int e = t.m.e[var];
    if (e == 0) continue;
    Term d{t.m, t.c * e};
    d.m.e[var] = static_cast<int8_t>(e - 1);
    d.m.deg = static_cast<int16_t>(d.m.deg - 1);
    out.push_back(std::move(d));
  }
  // lowering one exponent can reorder terms of equal degree, so re-sort
  return from_terms(std::move(out));
}

mpq_class Poly::eval(const std::vector<mpq_class>& point) const {
  mpq_class sum = 0;
  for (const auto& t : terms_) {
    mpq_class v = t.c;
    for (int i = 0; i < kMaxVars; ++i) {
      int e = t.m.e[i];
      if (e == 0) continue;
      if (i >= static_cast<int>(point.size()))
        throw std::invalid_argument("evaluation point has too few coordinates");
      if (e < 0 && point[i] == 0) throw std::domain_error("negative power of zero");
      mpq_class base = e > 0 ? point[i] : mpq_class(1 / point[i]);
      int a = std::abs(e);
      for (int k = 0; k < a; ++k) v *= base;
    }
    sum += v;
  }
  return sum;
}

double Poly::eval(const std::vector<double>& point) const {
  double sum = 0;
  for (const auto& t : terms_) {
    double v = to_double(t.c);
    for (int i = 0; i < kMaxVars; ++i) {
      int e = t.m.e[i];
      if (e == 0) continue;
      if (i >= static_cast<int>(point.size()))
        throw std::invalid_argument("evaluation point has too few coordinates");
      v *= std::pow(point[i], e);
    }
    sum += v;
  }
  return sum;
}

std::vector<Poly> Poly::coefficients_in(int var) const {
  std::vector<Poly> out(degree_in(var) + 1);
  std::vector<std::vector<Term>> buckets(out.size());
  for (const auto& t : terms_) {
    int e = t.m.e[var];
    Term r = t;
    r.m.e[var] = 0;
    r.m.deg = static_cast<int16_t>(r.m.deg - e);
    buckets[e].push_back(std::move(r));
  }
  for (size_t k = 0; k < out.size(); ++k) out[k] = from_terms(std::move(buckets[k]));
  return out;
}

Poly Poly::from_coefficients(const std::vector<Poly>& coeffs, int var) {
  std::vector<Term> terms;
  for (size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms()) {
      Term r = t;
      r.m.e[var] = static_cast<int8_t>(r.m.e[var] + k);
      r.m.deg = static_cast<int16_t>(r.m.deg + k);
      terms.push_back(std::move(r));
    }
  return from_terms(std::move(terms));
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial::one();
  Monomial g = terms_.front().m;
  for (const auto& t : terms_) g = monomial_gcd(g, t.m);
  return g;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  mpq_class inv = 1 / terms_.front().c;
  Poly r = *this;
  r *= inv;
  return r;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool is_one = (t.m == Monomial::one());
    if (c != 1 || is_one) {
      os << c.get_str();
      if (!is_one) os << "*";
    }
    bool firstvar = true;
    for (int i = 0; i < kMaxVars; ++i) {
      int e = t.m.e[i];
      if (e == 0) continue;
      if (!firstvar) os << "*";
      firstvar = false;
      os << (i < static_cast<int>(names.size()) ? names[i] : "v" + std::to_string(i));
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return Poly();
  if (b.is_monomial()) {
    const auto& lb = b.leading();
    Poly q;
    std::vector<Term> terms;
    terms.reserve(a.size());
    mpq_class inv = 1 / lb.c;
    for (const auto& t : a.terms()) {
      if (!lb.m.divides(t.m)) return std::nullopt;
      terms.push_back({t.m / lb.m, t.c * inv});
    }
    return Poly::from_terms(std::move(terms));
  }
  Poly r = a;
  std::vector<Term> q;
  const auto& lb = b.leading();
  mpq_class inv = 1 / lb.c;
  while (!r.is_zero()) {
    const auto& lr = r.leading();
    if (!lb.m.divides(lr.m)) return std::nullopt;
    Monomial qm = lr.m / lb.m;
    mpq_class qc = lr.c * inv;
    q.push_back({qm, qc});
    r -= b.times_monomial(qm, qc);
  }
  return Poly::from_terms(std::move(q));
}

namespace {

int first_var(const Poly& p) {
  for (int i = 0; i < kMaxVars; ++i)
    if (p.uses_var(i)) return i;
  return -1;
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("gcd: expected exact division");
  return *q;
}

Poly gcd_impl(const Poly& a, const Poly& b);

// gcd of all coefficients of p viewed as a polynomial in var, combined with g0.
Poly content_in(const Poly& p, int var, Poly g) {
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_impl(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

Poly prem(const Poly& a, const Poly& b, int var) {
  int db = b.degree_in(var);
  auto bc = b.coefficients_in(var);
  const Poly& lcb = bc.back();
  Poly r = a;
  while (!r.is_zero()) {
    int dr = r.degree_in(var);
    if (dr < db) break;
    Poly lcr = r.coefficients_in(var).back();
    r = lcb * r - lcr * Poly::var(var, dr - db) * b;
  }
  return r;
}

Poly primitive_in(const Poly& p, int var) {
  Poly c = content_in(p, var, Poly());
  if (c.is_constant()) return p.monic();
  return exact_div(p, c).monic();
}

Poly gcd_impl(const Poly& a0, const Poly& b0) {
  if (a0.is_zero()) return b0.monic();
  if (b0.is_zero()) return a0.monic();
  if (a0.is_constant() || b0.is_constant()) return Poly(1);
  if (a0 == b0) return a0.monic();

  Monomial ma = a0.monomial_content();
  Monomial mb = b0.monomial_content();
  Monomial mg = monomial_gcd(ma, mb);
  Poly a = a0.is_monomial() ? Poly(1) : exact_div(a0, Poly::monomial(ma, 1));
  Poly b = b0.is_monomial() ? Poly(1) : exact_div(b0, Poly::monomial(mb, 1));
  Poly mono = Poly::monomial(mg, 1);
  if (a.is_constant() || b.is_constant()) return mono;

  // A variable present in only one argument cannot appear in the gcd.
  for (int v = 0; v < kMaxVars; ++v) {
    bool ua = a.uses_var(v), ub = b.uses_var(v);
    if (ua && !ub) return mono * content_in(a, v, b.monic());
    if (ub && !ua) return mono * content_in(b, v, a.monic());
  }

  // Shared main variable: pick the one with smallest degree in b.
  int var = -1, best = 1 << 30;
  for (int v = 0; v < kMaxVars; ++v) {
    if (!a.uses_var(v)) continue;
    int d = std::min(a.degree_in(v), b.degree_in(v));
    if (d < best) {
      best = d;
      var = v;
    }
  }
  if (var < 0) var = first_var(a);

  // quick exits: one divides the other
  if (a.degree_in(var) >= b.degree_in(var)) {
    if (divide_exact(a, b)) return mono * b.monic();
  } else if (divide_exact(b, a)) {
    return mono * a.monic();
  }

  Poly ca = content_in(a, var, Poly());
  Poly cb = content_in(b, var, Poly());
  Poly cg = gcd_impl(ca, cb);
  Poly pa = ca.is_constant() ? a : exact_div(a, ca);
  Poly pb = cb.is_constant() ? b : exact_div(b, cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  while (true) {
    Poly r = prem(pa, pb, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      pb = Poly(1);
      break;
    }
    pa = pb;
    pb = primitive_in(r, var);
  }
  Poly g = pb.is_constant() ? Poly(1) : primitive_in(pb, var);
  return (mono * cg * g).monic();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcd_impl(a, b); }

}  // namespace carnot
