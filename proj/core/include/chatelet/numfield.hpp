// Number fields L = Q[theta]/(f) for monic integer f: element arithmetic,
// signatures, prime-splitting classification, split-prime search, and
// embeddings into the supported local models (Q_p for split residues,
// UnramQuad for inert quadratic residues, exact sign data at real places).

#ifndef CHATELET_NUMFIELD_HPP
#define CHATELET_NUMFIELD_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "chatelet/localfield.hpp"
#include "chatelet/ratpoly.hpp"

namespace chatelet {

class NumberField;
using NumberFieldPtr = std::shared_ptr<const NumberField>;

// Element as a polynomial in theta of degree < deg f, coordinates in Q.
struct NFElement {
  NumberFieldPtr field;
  std::vector<Rat> coords;  // length = degree of the field

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_value() const;  // requires is_rational()
  std::string to_string() const;
};

class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  // f monic with integer coefficients, squarefree; irreducibility is
  // certified by finding a prime < 100 with f irreducible mod p, else the
  // field carries an "unverified" flag that propagates into reports.
  static NumberFieldPtr create(const RatPoly& f);
  // The rational field Q (degree 1, f = x).
  static NumberFieldPtr rationals();

  const RatPoly& defining_poly() const { return f_; }
  int degree() const { return f_.degree(); }
  const Rat& disc() const { return disc_; }
  bool irreducibility_certified() const { return certified_; }
  bool is_rational_field() const { return f_.degree() == 1; }

  NFElement zero() const;
  NFElement one() const;
  NFElement theta() const;
  NFElement from_rational(const Rat& q) const;
  NFElement from_coords(std::vector<Rat> coords) const;

  NFElement add(const NFElement& a, const NFElement& b) const;
  NFElement sub(const NFElement& a, const NFElement& b) const;
  NFElement mul(const NFElement& a, const NFElement& b) const;
  NFElement neg(const NFElement& a) const;
  NFElement inv(const NFElement& a) const;
  NFElement pow(const NFElement& a, long e) const;

  // Norm = resultant of f and the coordinate polynomial.
  Rat norm(const NFElement& a) const;

  // (r, s): real and complex-pair embedding counts.
  std::pair<int, int> signature() const;

 private:
  RatPoly f_;
  Rat disc_;
  bool certified_ = false;
};

// Splitting data of an unramified rational prime.
struct SplittingType {
  bool ramified = false;
  std::vector<int> residue_degrees;  // ascending, sums to deg f when unramified
};

SplittingType splitting_type(const NumberFieldPtr& F, const Int& p);

// p unramified with all residue degrees 1.
bool splits_completely(const NumberFieldPtr& F, const Int& p);

// The `count` smallest completely split primes > lower, not in avoid, not
// dividing 2 disc(f). Guaranteed by Chebotarev; a safety cap throws
// search_exhausted.
std::vector<Int> find_split_primes(const NumberFieldPtr& F, int count, const Int& lower,
                                   const std::vector<Int>& avoid = {});

// A place of L.
struct PlaceOfL {
  enum Kind {
    RealEmb,        // index into the ascending real roots of f
    ComplexEmb,     // index of a conjugate pair
    FiniteSupported,  // unramified, residue degree 1 or 2
    FiniteOther,    // ramified / residue degree > 2 / dyadic extension
  } kind = FiniteSupported;
  Int p = 0;          // underlying rational prime (finite kinds)
  int index = 0;      // deterministic index (sorted factors / sorted roots)
  int residue_degree = 1;
  bool ramified = false;
  std::string to_string() const;
};

// All places of L above a rational prime, deterministically indexed:
// factors of f mod p sorted lexicographically by coefficient list.
std::vector<PlaceOfL> places_above(const NumberFieldPtr& F, const Int& p);
// Archimedean places.
std::vector<PlaceOfL> archimedean_places(const NumberFieldPtr& F);

// Local model of a supported finite place (Q_p or UnramQuad).
LocalField local_model(const NumberFieldPtr& F, const PlaceOfL& w);

// Image of x in the completion at w to relative precision N. Finite places
// embed theta as the Hensel-lifted root of the place's factor of f mod p.
// Throws unsupported_place for FiniteOther.
LocalElement local_embed(const NumberFieldPtr& F, const NFElement& x, const PlaceOfL& w,
                         long N);

// Exact sign of x under the real embedding w (-1, 0, +1).
int real_sign(const NumberFieldPtr& F, const NFElement& x, const PlaceOfL& w);

// Isolating interval with rational endpoints for theta under embedding w.
std::pair<Rat, Rat> real_isolating_interval(const NumberFieldPtr& F, const PlaceOfL& w);

// Univariate polynomial with NF coefficients, lowest degree first.
struct NFPoly {
  NumberFieldPtr field;
  std::vector<NFElement> coeffs;

  static NFPoly from_rational(const NumberFieldPtr& F, const RatPoly& f);
  static NFPoly make(const NumberFieldPtr& F, std::vector<NFElement> coeffs);
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  NFElement coeff(int i) const;
  const NFElement& lc() const;
  NFElement eval(const NFElement& x) const;
  NFPoly mul(const NFPoly& o) const;
  NFPoly scale(const NFElement& s) const;
  NFPoly add(const NFPoly& o) const;
  NFPoly derivative() const;
  bool equals(const NFPoly& o) const;
  bool all_rational() const;
  RatPoly to_rational() const;  // requires all_rational()
  std::string to_string(const std::string& var = "x") const;
};

// Resultant and discriminant over the field (Euclidean algorithm).
NFElement nf_resultant(const NFPoly& f, const NFPoly& g);
NFElement nf_discriminant(const NFPoly& f);

// Homogeneous polynomial in (w0, w1, w2) with NF coefficients.
struct TriPoly {
  struct Term {
    int e0, e1, e2;
    NFElement coeff;
  };
  std::vector<Term> terms;
};

// True iff eqn(pt) = 0 in F; pt not all zero.
bool verify_projective_point(const NumberFieldPtr& F, const TriPoly& eqn,
                             const std::array<NFElement, 3>& pt);

}  // namespace chatelet

#endif
