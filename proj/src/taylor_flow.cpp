#include "carnot/taylor_flow.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace carnot {

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits_(Real::default_precision()) {
  Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits_); }

Real to_real(const mpq_class& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

namespace {

struct MonoKey {
  std::vector<int> e;
  bool operator<(const MonoKey& o) const {
    int da = 0, db = 0;
    for (int x : e) da += x;
    for (int x : o.e) db += x;
    if (da != db) return da < db;
    return e < o.e;
  }
};

// Series of every monomial needed, built as var * parent.
class MonomialSeries {
 public:
  explicit MonomialSeries(int nvars) : nvars_(nvars) {}

  int add(const Monomial& m) {
    MonoKey k{std::vector<int>(m.e.begin(), m.e.begin() + nvars_)};
    return add_key(k);
  }

  void finalize() {
    // indices were handed out on insertion; order evaluation by degree
    order_.resize(keys_.size());
    for (size_t i = 0; i < keys_.size(); ++i) order_[i] = static_cast<int>(i);
    std::sort(order_.begin(), order_.end(),
              [&](int a, int b) { return keys_[a] < keys_[b]; });
    series_.assign(keys_.size(), {});
  }

  // Coefficient k of every monomial, given z_0..z_k.
  void step(int k, const std::vector<std::vector<Real>>& z) {
    for (int idx : order_) {
      auto& s = series_[idx];
      const auto& key = keys_[idx];
      Real v;
      if (var_[idx] < 0) {
        v = k == 0 ? Real(1) : Real(0);
      } else if (parent_[idx] < 0) {
        v = z[k][var_[idx]];
      } else {
        const auto& ps = series_[parent_[idx]];
        v = 0;
        int var = var_[idx];
        for (int j = 0; j <= k; ++j) v += z[j][var] * ps[k - j];
      }
      (void)key;
      s.push_back(v);
    }
  }

  const Real& coeff(int idx, int k) const { return series_[idx][k]; }

 private:
  int nvars_;
  std::map<MonoKey, int> index_;
  std::vector<MonoKey> keys_;
  std::vector<int> var_, parent_;  // var_ = -1 for the constant; parent_ = -1 for a bare variable
  std::vector<int> order_;
  std::vector<std::vector<Real>> series_;

  int add_key(const MonoKey& k) {
    auto it = index_.find(k);
    if (it != index_.end()) return it->second;
    int v = -1;
    for (int i = 0; i < nvars_; ++i)
      if (k.e[i] > 0) {
        v = i;
        break;
      }
    int parent = -1;
    if (v >= 0) {
      MonoKey pk = k;
      pk.e[v] -= 1;
      bool is_one = std::all_of(pk.e.begin(), pk.e.end(), [](int x) { return x == 0; });
      if (!is_one) parent = add_key(pk);
    }
    int idx = static_cast<int>(keys_.size());
    keys_.push_back(k);
    var_.push_back(v);
    parent_.push_back(parent);
    index_[k] = idx;
    return idx;
  }
};

struct CompiledSeriesPoly {
  std::vector<std::pair<int, Real>> terms;  // (monomial index, coefficient)
};

CompiledSeriesPoly compile(const Poly& p, MonomialSeries& ms) {
  CompiledSeriesPoly c;
  for (const auto& t : p.terms()) {
    if (!t.m.nonnegative()) throw std::invalid_argument("Taylor flow needs polynomial fields");
    c.terms.push_back({ms.add(t.m), to_real(t.c)});
  }
  return c;
}

Real eval_coeff(const CompiledSeriesPoly& c, const MonomialSeries& ms, int k) {
  Real s = 0;
  for (const auto& [idx, coef] : c.terms) s += coef * ms.coeff(idx, k);
  return s;
}

}  // namespace

TaylorFlow::TaylorFlow(const GroupModel& m, const std::vector<mpq_class>& p0, const Real& t_max,
                       unsigned bits, int max_terms) {
  const int n = m.n;
  dim_ = 2 * n;
  FlowPolys fp = flow_polys(m);
  MonomialSeries ms(dim_);
  std::vector<CompiledSeriesPoly> rhs;
  for (const auto& r : fp.rhs) rhs.push_back(compile(r, ms));
  struct Entry {
    int i, j;
    CompiledSeriesPoly p;
  };
  std::vector<Entry> jac;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (!fp.jac[i][j].is_zero()) jac.push_back({i, j, compile(fp.jac[i][j], ms)});
  ms.finalize();

  std::vector<Real> z0(dim_, Real(0));
  for (int i = 0; i < n; ++i) z0[n + i] = to_real(p0.at(i));
  z_.push_back(z0);
  RealMatrix I(dim_, std::vector<Real>(dim_, Real(0)));
  for (int i = 0; i < dim_; ++i) I[i][i] = 1;
  M_.push_back(I);
  std::vector<std::vector<std::vector<Real>>> J;  // J[k] as sparse values in jac order

  Real eps = pow(Real(2), -static_cast<int>(bits));
  int small_run = 0;
  for (int k = 0; k + 1 < max_terms; ++k) {
    ms.step(k, z_);
    std::vector<Real> zn(dim_);
    for (int i = 0; i < dim_; ++i) zn[i] = eval_coeff(rhs[i], ms, k) / (k + 1);
    std::vector<Real> jk;
    for (const auto& e : jac) jk.push_back(eval_coeff(e.p, ms, k));
    J.push_back({jk});
    RealMatrix Mn(dim_, std::vector<Real>(dim_, Real(0)));
    for (int j = 0; j <= k; ++j) {
      const auto& Jj = J[j][0];
      const auto& Mk = M_[k - j];
      for (size_t e = 0; e < jac.size(); ++e) {
        if (Jj[e] == 0) continue;
        const auto& row = Mk[jac[e].j];
        auto& out = Mn[jac[e].i];
        for (int c = 0; c < dim_; ++c)
          if (row[c] != 0) out[c] += Jj[e] * row[c];
      }
    }
    for (auto& row : Mn)
      for (auto& v : row) v /= (k + 1);
    z_.push_back(zn);
    M_.push_back(Mn);

    Real mag = 0;
    for (const auto& v : zn) mag = std::max(mag, Real(abs(v)));
    for (const auto& row : Mn)
      for (const auto& v : row) mag = std::max(mag, Real(abs(v)));
    Real scaled = mag * pow(t_max, k + 1);
    small_run = scaled < eps ? small_run + 1 : 0;
    if (small_run >= 3) {
      converged_ = true;
      break;
    }
  }
}

std::vector<Real> TaylorFlow::state(const Real& t) const {
  std::vector<Real> out(dim_, Real(0));
  for (int k = terms() - 1; k >= 0; --k)
    for (int i = 0; i < dim_; ++i) out[i] = out[i] * t + z_[k][i];
  return out;
}

RealMatrix TaylorFlow::variational(const Real& t) const {
  RealMatrix out(dim_, std::vector<Real>(dim_, Real(0)));
  for (int k = static_cast<int>(M_.size()) - 1; k >= 0; --k)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) out[i][j] = out[i][j] * t + M_[k][i][j];
  return out;
}

std::vector<Real> solve_linear(RealMatrix A, std::vector<Real> b, Real* condition) {
  const int n = static_cast<int>(A.size());
  RealMatrix inv(n, std::vector<Real>(n, Real(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  Real normA = 0;
  for (const auto& row : A) {
    Real s = 0;
    for (const auto& v : row) s += abs(v);
    normA = std::max(normA, s);
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (abs(A[r][c]) > abs(A[piv][c])) piv = r;
    if (A[piv][c] == 0) {
      if (condition) *condition = std::numeric_limits<double>::infinity();
      throw std::domain_error("singular matrix");
    }
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    std::swap(inv[c], inv[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Real f = A[r][c] / A[c][c];
      for (int k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      for (int k = 0; k < n; ++k) inv[r][k] -= f * inv[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Real> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = b[i] / A[i][i];
    for (auto& v : inv[i]) v /= A[i][i];
  }
  if (condition) {
    Real normI = 0;
    for (const auto& row : inv) {
      Real s = 0;
      for (const auto& v : row) s += abs(v);
      normI = std::max(normI, s);
    }
    *condition = normA * normI;
  }
  return x;
}

}  // namespace carnot
