#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace carnot {

// Nearest double to q (mpq_class::get_d truncates toward zero).
double to_double(const mpq_class& q);

// Upper bound on the number of polynomial variables (2n for a group of dimension n).
inline constexpr int kMaxVars = 24;

// Exponent vector. Negative exponents are allowed so the same type can carry
// Laurent jets; RatFunc only ever stores non-negative ones.
struct Monomial {
  std::array<int8_t, kMaxVars> e{};
  int16_t deg = 0;

  static Monomial one() { return {}; }
  static Monomial var(int i, int power = 1);

  int degree_in(int first, int last) const;  // sum of e[first..last)
  bool divides(const Monomial& other) const;
  bool nonnegative() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.e == b.e;
  }
};

Monomial monomial_gcd(const Monomial& a, const Monomial& b);

// Degree-lexicographic: true when a sorts strictly before b (a is the larger).
bool deglex_greater(const Monomial& a, const Monomial& b);

struct MonomialHash {
  size_t operator()(const Monomial& m) const;
};

struct Term {
  Monomial m;
  mpq_class c;
};

// Sparse multivariate polynomial over Q. Terms are kept sorted in decreasing
// degree-lexicographic order with nonzero coefficients, so structural
// equality is mathematical equality.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpq_class& c);
  static Poly constant(const mpq_class& c) { return Poly(c); }
  static Poly var(int i, int power = 1);
  static Poly monomial(const Monomial& m, const mpq_class& c);
  static Poly from_terms(std::vector<Term> terms);  // sorts and merges

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  mpq_class constant_term() const;
  int total_degree() const;
  int degree_in(int var) const;
  int min_degree_in(int var) const;
  bool uses_var(int var) const;
  int num_vars_used() const;  // 1 + highest variable index present

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const mpq_class& c);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const mpq_class& c) { return a *= c; }
  friend Poly operator*(const mpq_class& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly times_monomial(const Monomial& m, const mpq_class& c) const;
  Poly pow(unsigned k) const;
  Poly derivative(int var) const;

  // Product dropping every term whose degree in variables [0, nbase) exceeds max_deg.
  static Poly mul_truncated(const Poly& a, const Poly& b, int nbase, int max_deg);
  Poly truncated(int nbase, int max_deg) const;
  Poly base_degree_part(int nbase, int deg) const;

  // Exact evaluation; throws std::domain_error on a negative power of zero.
  mpq_class eval(const std::vector<mpq_class>& point) const;
  double eval(const std::vector<double>& point) const;

  // Collect by powers of one variable: result[k] is the coefficient of var^k.
  std::vector<Poly> coefficients_in(int var) const;
  static Poly from_coefficients(const std::vector<Poly>& coeffs, int var);

  Monomial monomial_content() const;
  Poly monic() const;  // divide by the leading coefficient

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::vector<Term> terms_;
  void canonicalize();
  friend Poly merge_add(const Poly& a, const Poly& b, bool subtract);
};

// Exact quotient a / b when b divides a, nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

// Greatest common divisor normalized to leading coefficient 1 (zero if both zero).
Poly gcd(const Poly& a, const Poly& b);

}  // namespace carnot
