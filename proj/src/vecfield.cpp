#include "carnot/vecfield.hpp"

namespace carnot {

std::vector<mpq_class> eval_at_origin(const VecField<Jet>& v, const std::vector<mpq_class>& p) {
  std::vector<mpq_class> point(2 * v.n);
  for (int i = 0; i < v.n; ++i) point[v.n + i] = p.at(i);
  std::vector<mpq_class> out(v.c.size());
  for (size_t k = 0; k < v.c.size(); ++k) {
    if (v.c[k].order() < 0) throw std::logic_error("jet truncated below order 0");
    out[k] = v.c[k].at_origin().eval(point);
  }
  return out;
}

VecField<RatFunc> to_ratfunc(const VecField<Poly>& v) {
  VecField<RatFunc> r(v.n);
  for (size_t k = 0; k < v.c.size(); ++k) r.c[k] = RatFunc(v.c[k]);
  return r;
}

VecField<Jet> to_jet(const VecField<Poly>& v, int order) {
  VecField<Jet> r(v.n);
  for (size_t k = 0; k < v.c.size(); ++k) r.c[k] = Jet(v.c[k], v.n, order);
  return r;
}

VecField<Jet> to_jet(const VecField<RatFunc>& v, int order) {
  VecField<Jet> r(v.n);
  for (size_t k = 0; k < v.c.size(); ++k) {
    Jet num(v.c[k].num(), v.n, order);
    if (v.c[k].is_poly()) {
      r.c[k] = num;
    } else {
      r.c[k] = num * Jet(v.c[k].den(), v.n, order).inverse();
    }
  }
  return r;
}

std::vector<std::string> canonical_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) names.push_back("p" + std::to_string(i));
  return names;
}

}  // namespace carnot
