// Pencils of quartics over P^1: the section s'(u,x) = w_inf(u) P_inf(x) +
// w_0(u) P_0(x), its branch locus in u via resultants, and disjointness from
// a covering map's branch locus.

#ifndef CHATELET_FIBRATION_HPP
#define CHATELET_FIBRATION_HPP

#include "chatelet/numfield.hpp"
#include "chatelet/ratpoly.hpp"

namespace chatelet {

// Polynomial in x whose coefficients are polynomials in u.
struct BiPoly {
  std::vector<RatPoly> coeff_by_xdeg;  // index = degree in x

  int xdegree() const;
  // Substitute a rational value for u.
  RatPoly at_u(const Rat& u0) const;
  // Substitute an NF element for u (coefficients land in the field).
  NFPoly at_u_nf(const NumberFieldPtr& F, const NFElement& u0) const;
  BiPoly dx() const;  // partial derivative in x
  std::string to_string() const;
};

struct BundleSpec {
  RatPoly Pinf, P0;        // degree-4 quartics, coprime, separable
  RatPoly w_inf, w_0;      // weights in u, degree <= 2, no common root
  RatPoly gamma_branch;    // affine branch polynomial of the covering map
  bool gamma_branch_at_infinity = true;  // is (1:0) a branch point of gamma
  TriPoly curve_eqn;       // informational (point-substitution checks)
  NumberFieldPtr curve_field;

  void validate() const;  // res(Pinf,P0) != 0, discs != 0, weights coprime
};

// s'(u,x) in the affine chart u1 = x1 = 1.
BiPoly section_poly(const BundleSpec& spec);
// The same section in the other charts: substitute u -> 1/u (scaled by u^2)
// and/or x -> 1/x (scaled by x^4).
BiPoly section_poly_chart(const BundleSpec& spec, bool u_at_infinity, bool x_at_infinity);

struct BranchLocus {
  RatPoly poly;      // squarefree part of res_x(s', ds'/dx), up to a constant
  bool degenerate;   // fiber independent of u (constant branch data)
  bool at_infinity;  // the fiber over u = (1:0) is non-separable
};

BranchLocus branch_locus_u(const BundleSpec& spec);

// True iff the branch locus of the projection and gamma's branch locus do
// not meet (gcd of the affine parts constant, and not both branched at
// infinity).
bool branch_disjoint(const BundleSpec& spec);

// res_x of two BiPolys via evaluation at rational u-values and Lagrange
// interpolation (sample points with vanishing x-leading coefficient are
// skipped).
RatPoly resultant_x(const BiPoly& f, const BiPoly& g);

}  // namespace chatelet

#endif
