#include "chatelet/fibration.hpp"

#include <algorithm>

namespace chatelet {

int BiPoly::xdegree() const {
  for (int i = static_cast<int>(coeff_by_xdeg.size()) - 1; i >= 0; --i)
    if (!coeff_by_xdeg[i].is_zero()) return i;
  return -1;
}

RatPoly BiPoly::at_u(const Rat& u0) const {
  std::vector<Rat> c;
  for (const auto& g : coeff_by_xdeg) c.push_back(g.eval(u0));
  return RatPoly(std::move(c));
}

NFPoly BiPoly::at_u_nf(const NumberFieldPtr& F, const NFElement& u0) const {
  std::vector<NFElement> c;
  for (const auto& g : coeff_by_xdeg) {
    NFElement acc = F->zero();
    for (int i = g.degree(); i >= 0; --i)
      acc = F->add(F->mul(acc, u0), F->from_rational(g.coeff(i)));
    if (g.is_zero()) acc = F->zero();
    c.push_back(acc);
  }
  return NFPoly::make(F, std::move(c));
}

BiPoly BiPoly::dx() const {
  BiPoly d;
  for (size_t i = 1; i < coeff_by_xdeg.size(); ++i)
    d.coeff_by_xdeg.push_back(coeff_by_xdeg[i] * Rat(static_cast<long>(i)));
  return d;
}

std::string BiPoly::to_string() const {
  std::string s;
  for (int i = 0; i < static_cast<int>(coeff_by_xdeg.size()); ++i) {
    if (coeff_by_xdeg[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coeff_by_xdeg[i].to_string("u") + ")";
    if (i > 0) {
      s += "*x";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

void BundleSpec::validate() const {
  if (Pinf.degree() != 4 || P0.degree() != 4)
    throw invalid_input("bundle: quartics required");
  if (resultant(Pinf, P0) == 0) throw invalid_input("bundle: P_inf, P_0 share a root");
  if (discriminant(Pinf) == 0 || discriminant(P0) == 0)
    throw invalid_input("bundle: quartics must be separable");
  if (w_inf.is_zero() && w_0.is_zero()) throw invalid_input("bundle: zero weights");
  if (w_inf.degree() > 2 || w_0.degree() > 2)
    throw invalid_input("bundle: weights must have degree <= 2");
  if (!w_inf.is_zero() && !w_0.is_zero()) {
    RatPoly g = RatPoly::gcd(w_inf, w_0);
    if (g.degree() > 0) throw invalid_input("bundle: weights share a root");
  }
}

BiPoly section_poly(const BundleSpec& spec) {
  BiPoly s;
  int d = std::max(spec.Pinf.degree(), spec.P0.degree());
  for (int i = 0; i <= d; ++i) {
    RatPoly c = spec.w_inf * spec.Pinf.coeff(i) + spec.w_0 * spec.P0.coeff(i);
    s.coeff_by_xdeg.push_back(c);
  }
  return s;
}

BiPoly section_poly_chart(const BundleSpec& spec, bool u_at_infinity,
                          bool x_at_infinity) {
  BiPoly s = section_poly(spec);
  if (u_at_infinity) {
    // u -> 1/u scaled by u^2 (weights are bihomogeneous of degree 2)
    for (auto& g : s.coeff_by_xdeg) {
      std::vector<Rat> c(3, Rat(0));
      for (int i = 0; i <= g.degree(); ++i) c[2 - i] = g[i];
      g = RatPoly(std::move(c));
    }
  }
  if (x_at_infinity) {
    // x -> 1/x scaled by x^4
    std::vector<RatPoly> c(5);
    for (int i = 0; i <= 4; ++i)
      c[4 - i] = (i < static_cast<int>(s.coeff_by_xdeg.size())) ? s.coeff_by_xdeg[i]
                                                                : RatPoly();
    s.coeff_by_xdeg = std::move(c);
  }
  return s;
}

RatPoly resultant_x(const BiPoly& f, const BiPoly& g) {
  int df = f.xdegree(), dg = g.xdegree();
  if (df < 0 || dg < 0) throw invalid_input("resultant_x of zero polynomial");
  // degree bound in u: sum over Sylvester rows of the max u-degrees
  long bound = 0;
  long fu = 0, gu = 0;
  for (const auto& c : f.coeff_by_xdeg) fu = std::max<long>(fu, c.degree());
  for (const auto& c : g.coeff_by_xdeg) gu = std::max<long>(gu, c.degree());
  bound = static_cast<long>(dg) * fu + static_cast<long>(df) * gu;
  // sample at u = 0, 1, -1, 2, -2, ... skipping points where either leading
  // coefficient vanishes (the specialization would drop degree)
  std::vector<Rat> xs, ys;
  long k = 0;
  while (static_cast<long>(xs.size()) < bound + 1) {
    Rat u0 = (k % 2 == 0) ? Rat(k / 2) : Rat(-(k / 2 + 1));
    ++k;
    if (k > 8 * (bound + 4)) throw search_exhausted("resultant_x: sampling stalled");
    if (f.coeff_by_xdeg[df].eval(u0) == 0) continue;
    if (g.coeff_by_xdeg[dg].eval(u0) == 0) continue;
    xs.push_back(u0);
    ys.push_back(resultant(f.at_u(u0), g.at_u(u0)));
  }
  // Lagrange interpolation (Newton form)
  size_t n = xs.size();
  std::vector<Rat> dd = ys;  // divided differences
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  RatPoly acc = RatPoly::constant(dd[n - 1]);
  for (size_t i = n - 1; i-- > 0;) {
    RatPoly lin({-xs[i], Rat(1)});
    acc = acc * lin + RatPoly::constant(dd[i]);
  }
  return acc;
}

BranchLocus branch_locus_u(const BundleSpec& spec) {
  spec.validate();
  BiPoly s = section_poly(spec);
  BranchLocus out;
  RatPoly r = resultant_x(s, s.dx());
  if (r.is_zero()) {
    // the fiber is non-separable for every u: rejected upstream by validate,
    // kept as a guard
    out.poly = r;
    out.degenerate = true;
    out.at_infinity = true;
    return out;
  }
  out.poly = r.squarefree_part();
  out.degenerate = (out.poly.degree() == 0);
  // branch at u = (1:0): the chart fiber there is w_inf's top coefficient
  // driving P_inf; non-separable iff disc of the u=infinity fiber vanishes
  BiPoly sinf = section_poly_chart(spec, true, false);
  RatPoly fiber_inf = sinf.at_u(Rat(0));
  out.at_infinity = fiber_inf.degree() < 4 || discriminant(fiber_inf) == 0;
  return out;
}

bool branch_disjoint(const BundleSpec& spec) {
  if (spec.gamma_branch.is_zero()) throw invalid_input("gamma branch polynomial is zero");
  BranchLocus R = branch_locus_u(spec);
  if (R.degenerate) return !R.at_infinity || !spec.gamma_branch_at_infinity;
  RatPoly g = RatPoly::gcd(R.poly, spec.gamma_branch);
  if (g.degree() > 0) return false;
  if (R.at_infinity && spec.gamma_branch_at_infinity) return false;
  return true;
}

}  // namespace chatelet
