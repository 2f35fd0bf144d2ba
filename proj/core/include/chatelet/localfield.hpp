// Finite-precision certified models of R, Q_p, and the unramified quadratic
// extension of Q_p (p odd). Elements carry a valuation, a unit residue to a
// tracked relative precision, and arithmetic propagates precision
// conservatively, so every reported digit is certified.

#ifndef CHATELET_LOCALFIELD_HPP
#define CHATELET_LOCALFIELD_HPP

#include <optional>
#include <string>

#include "chatelet/ratpoly.hpp"
#include "chatelet/rational.hpp"

namespace chatelet {

struct criterion_failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LocalField {
  enum Kind { Real, Padic, UnramQuad } kind = Real;
  Int p = 0;  // residue characteristic for finite kinds
  Int d = 0;  // residue of delta^2, a nonresidue mod p (UnramQuad only)

  static LocalField real() { return {Real, 0, 0}; }
  static LocalField padic(const Int& p) { return {Padic, p, 0}; }
  // d defaults to the smallest positive nonresidue mod p.
  static LocalField unram_quad(const Int& p, std::optional<Int> d = std::nullopt);

  bool finite() const { return kind != Real; }
  int residue_degree() const { return kind == UnramQuad ? 2 : 1; }
  // Residue field size p^f.
  Int q() const { return kind == UnramQuad ? p * p : p; }
  bool operator==(const LocalField& o) const {
    return kind == o.kind && p == o.p && d == o.d;
  }
  std::string to_string() const;
};

// Residue-ring element a + b*delta (b = 0 over Q_p).
struct Res2 {
  Int a = 0, b = 0;
};

// Arithmetic in (Z/p^k)[delta]/(delta^2 - d); plain Z/p^k when F is Padic.
Res2 res_mul(const LocalField& F, const Res2& x, const Res2& y, const Int& mod);
Res2 res_add(const Res2& x, const Res2& y, const Int& mod);
Res2 res_sub(const Res2& x, const Res2& y, const Int& mod);
Res2 res_inv(const LocalField& F, const Res2& x, const Int& mod);
bool res_is_zero(const Res2& x);
// Quadratic character of a unit residue over the residue field F_q;
// for UnramQuad computed through the norm to F_p.
int residue_chi(const LocalField& F, const Res2& u);

// Certified square class of a nonzero element: valuation plus enough of the
// unit to pin the class (mod p for odd p, mod 8 for p = 2, a residue pair
// for UnramQuad). Over R the class is just the sign.
struct SquareClass {
  LocalField F;
  long val = 0;
  Res2 unit;  // reduced mod p (odd), mod 8 (p=2); unused over R
  int sign = 0;  // R only
  bool is_square() const;
  // Hilbert symbol of two classes over the same field.
  static int pair(const SquareClass& x, const SquareClass& y);
};

class LocalElement {
 public:
  LocalElement() = default;

  static LocalElement exact_zero(const LocalField& F);
  // value = p^val * unit, unit known mod p^relprec (relprec >= 1).
  static LocalElement from_unit(const LocalField& F, long val, Res2 unit, long relprec);
  // value known only to be 0 mod p^abs_prec.
  static LocalElement approx_zero(const LocalField& F, long abs_prec);
  static LocalElement from_real(const Rat& value);

  const LocalField& field() const { return F_; }
  bool is_exact_zero() const { return state_ == kExactZero; }
  bool is_approx_zero() const { return state_ == kApproxZero; }
  bool certified_nonzero() const { return state_ == kUnit || (state_ == kReal && real_ != 0); }

  // Valuation of a certified-nonzero finite element.
  long val() const;
  long relprec() const;
  // Absolute precision: the value is known mod p^abs_prec.
  long abs_prec() const;
  const Res2& unit() const { return unit_; }
  const Rat& real_value() const { return real_; }

  LocalElement operator+(const LocalElement& o) const;
  LocalElement operator-(const LocalElement& o) const;
  LocalElement operator*(const LocalElement& o) const;
  LocalElement operator/(const LocalElement& o) const;
  LocalElement operator-() const;

  // Multiply by p^k.
  LocalElement shift(long k) const;

  std::optional<SquareClass> square_class() const;

  std::string to_string() const;

 private:
  enum State { kExactZero, kApproxZero, kUnit, kReal };
  LocalField F_;
  State state_ = kExactZero;
  long val_ = 0;      // valuation (kUnit) or absolute precision bound (kApproxZero)
  long relprec_ = 0;  // kUnit
  Res2 unit_;
  Rat real_;
  friend LocalElement add_impl(const LocalElement&, const LocalElement&, bool);
};

// Embedding of an exact rational with relative precision N >= 1.
LocalElement embed_rational(const Rat& q, const LocalField& F, long N);

// True iff x is a nonzero square in its field. Enforces the precision
// floors (>=3 dyadic, >=1 odd); throws insufficient_precision otherwise.
bool is_square(const LocalElement& x);
bool is_rational_square_in(const Rat& q, const LocalField& F);

// Evaluate a rational polynomial at a local element (coefficients embedded
// exactly at the element's working precision).
LocalElement eval_at(const RatPoly& f, const LocalElement& x);

// Newton lift: root of f congruent to x0, requires v(f(x0)) > 2 v(f'(x0)).
LocalElement hensel_lift_root(const RatPoly& f, const LocalElement& x0);

// Square class of f(x0) if certified stable at the element's precision,
// std::nullopt (Unstable) otherwise: the caller raises precision.
std::optional<SquareClass> stable_square_class(const RatPoly& f, const LocalElement& x0);

inline constexpr long kDefaultPrecision = 8;
inline constexpr long kPrecisionCap = 256;

}  // namespace chatelet

#endif
