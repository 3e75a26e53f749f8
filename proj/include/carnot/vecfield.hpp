#pragma once

#include <string>
#include <vector>

#include "carnot/errors.hpp"
#include "carnot/jet.hpp"
#include "carnot/ratfunc.hpp"

namespace carnot {

// Vector field on T*R^n in canonical coordinates. Component k < n is the
// coefficient of d/dx_k, component n + k the coefficient of d/dp_k. The
// coefficient ring S is Poly, RatFunc or Jet; variable index k is x_k and
// n + k is p_k.
template <class S>
struct VecField {
  int n = 0;
  std::vector<S> c;

  VecField() = default;
  explicit VecField(int dim) : n(dim), c(2 * dim) {}

  S& x(int i) { return c[i]; }
  S& p(int i) { return c[n + i]; }
  const S& x(int i) const { return c[i]; }
  const S& p(int i) const { return c[n + i]; }

  bool is_zero() const {
    for (const auto& s : c)
      if (!s.is_zero()) return false;
    return true;
  }
  bool is_vertical() const {
    for (int i = 0; i < n; ++i)
      if (!c[i].is_zero()) return false;
    return true;
  }
};

// v * df/dvar, with the zero shortcut chosen per ring.
inline Poly mul_deriv(const Poly& v, const Poly& f, int var) {
  if (v.is_zero()) return Poly();
  return v * f.derivative(var);
}
inline RatFunc mul_deriv(const RatFunc& v, const RatFunc& f, int var) {
  if (v.is_zero()) return RatFunc();
  return v * f.derivative(var);
}
inline Jet mul_deriv(const Jet& v, const Jet& f, int var) {
  if (v.is_zero()) {
    int ord = std::min(v.order(), var < f.nbase() && f.order() < Jet::kExact ? f.order() - 1
                                                                               : f.order());
    return Jet(Poly(), std::max(v.nbase(), f.nbase()), ord);
  }
  return v * f.derivative(var);
}

// Directional derivative V(f).
template <class S>
S apply(const VecField<S>& v, const S& f) {
  S r;
  for (int k = 0; k < 2 * v.n; ++k) r += mul_deriv(v.c[k], f, k);
  return r;
}

// [V, W] = DW.V - DV.W, the commutator V W - W V of derivations.
template <class S>
VecField<S> lie_bracket(const VecField<S>& v, const VecField<S>& w) {
  if (v.n != w.n) throw Error(ErrorCode::DimensionMismatch, "lie_bracket: dimension mismatch");
  VecField<S> r(v.n);
  for (int k = 0; k < 2 * v.n; ++k) r.c[k] = apply(v, w.c[k]) - apply(w, v.c[k]);
  return r;
}

template <class S>
VecField<S> operator+(VecField<S> a, const VecField<S>& b) {
  if (a.n != b.n) throw Error(ErrorCode::DimensionMismatch, "field sum: dimension mismatch");
  for (size_t k = 0; k < a.c.size(); ++k) a.c[k] += b.c[k];
  return a;
}
template <class S>
VecField<S> operator-(VecField<S> a, const VecField<S>& b) {
  if (a.n != b.n) throw Error(ErrorCode::DimensionMismatch, "field difference: dimension mismatch");
  for (size_t k = 0; k < a.c.size(); ++k) a.c[k] -= b.c[k];
  return a;
}
template <class S>
VecField<S> operator-(VecField<S> a) {
  for (auto& s : a.c) s = -s;
  return a;
}
template <class S>
VecField<S> operator*(const S& f, VecField<S> a) {
  for (auto& s : a.c) s = f * s;
  return a;
}
template <class S>
bool operator==(const VecField<S>& a, const VecField<S>& b) {
  if (a.n != b.n) return false;
  for (size_t k = 0; k < a.c.size(); ++k)
    if (!(a.c[k] == b.c[k])) return false;
  return true;
}

// sigma(V, W) = sum_i (V_{p_i} W_{x_i} - V_{x_i} W_{p_i}), so sigma(d/dp_1, d/dx_1) = 1.
template <class S>
S sigma_field(const VecField<S>& v, const VecField<S>& w) {
  if (v.n != w.n) throw Error(ErrorCode::DimensionMismatch, "sigma: dimension mismatch");
  S r;
  for (int i = 0; i < v.n; ++i) {
    r += v.p(i) * w.x(i);
    r -= v.x(i) * w.p(i);
  }
  return r;
}

// Same pairing on tangent vectors given as coordinate arrays (x part, p part).
template <class T>
T sigma_pair(const std::vector<T>& v, const std::vector<T>& w) {
  if (v.size() != w.size() || v.size() % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch, "sigma_pair: dimension mismatch");
  size_t n = v.size() / 2;
  T r = 0;
  for (size_t i = 0; i < n; ++i) r += v[n + i] * w[i] - v[i] * w[n + i];
  return r;
}

template <class S, class T>
std::vector<T> eval_field(const VecField<S>& v, const std::vector<T>& point) {
  std::vector<T> out(v.c.size());
  for (size_t k = 0; k < v.c.size(); ++k) out[k] = v.c[k].eval(point);
  return out;
}

// Jet fields evaluated at base point 0 and fiber point p.
std::vector<mpq_class> eval_at_origin(const VecField<Jet>& v, const std::vector<mpq_class>& p);

VecField<RatFunc> to_ratfunc(const VecField<Poly>& v);
VecField<Jet> to_jet(const VecField<Poly>& v, int order = Jet::kExact);
VecField<Jet> to_jet(const VecField<RatFunc>& v, int order);

std::vector<std::string> canonical_names(int n);

// Plain-text dump, one "d/<var>: <coefficient>" line per nonzero component.
template <class S>
std::string dump(const VecField<S>& v) {
  auto names = canonical_names(v.n);
  std::string out;
  for (int k = 0; k < 2 * v.n; ++k) {
    if (v.c[k].is_zero()) continue;
    out += "d/" + names[k] + ": " + v.c[k].to_string(names) + "\n";
  }
  return out.empty() ? "0\n" : out;
}

}  // namespace carnot
