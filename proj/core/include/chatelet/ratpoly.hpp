// Univariate polynomials over Q, coefficients lowest degree first.
// Resultants, discriminants, Sturm sequences, exact sign analysis over R.

#ifndef CHATELET_RATPOLY_HPP
#define CHATELET_RATPOLY_HPP

#include <optional>
#include <string>
#include <vector>

#include "chatelet/rational.hpp"

namespace chatelet {

class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static RatPoly constant(const Rat& a) { return RatPoly({a}); }
  // x^k
  static RatPoly monomial(int k, const Rat& a = Rat(1));

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const Rat& operator[](size_t i) const { return c_[i]; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  const Rat& lc() const;

  Rat eval(const Rat& x) const;
  RatPoly derivative() const;

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly operator*(const Rat& s) const;
  RatPoly operator-() const { return *this * Rat(-1); }
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

  // Euclidean division, divisor nonzero.
  static void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
  // Exact division; throws invalid_input if the remainder is nonzero.
  RatPoly divexact(const RatPoly& b) const;

  // Monic gcd (zero polynomial if both zero).
  static RatPoly gcd(const RatPoly& a, const RatPoly& b);

  RatPoly squarefree_part() const;

  // Substitute x -> s*x (scale) and x -> x^k helpers.
  RatPoly compose_scale(const Rat& s) const;
  // Reverse coefficients: x^deg * p(1/x).
  RatPoly reversed() const;

  // Multiply by common denominator, divide by integer content; sign of lc kept.
  RatPoly primitive_integer_part() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

// Sylvester resultant. Zero iff f,g share a root over the closure.
// Throws invalid_input if both zero.
Rat resultant(const RatPoly& f, const RatPoly& g);

// disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f), n = deg f >= 1.
Rat discriminant(const RatPoly& f);

// Endpoint of a real interval, rational or infinite.
struct RealBound {
  enum Kind { MinusInf, Finite, PlusInf } kind = Finite;
  Rat value;
  static RealBound minus_inf() { return {MinusInf, Rat(0)}; }
  static RealBound plus_inf() { return {PlusInf, Rat(0)}; }
  static RealBound at(const Rat& v) { return {Finite, v}; }
};

// Number of real roots of squarefree f in (lo, hi], Sturm-exact.
int real_root_count(const RatPoly& f, const RealBound& lo, const RealBound& hi);
inline int real_root_count(const RatPoly& f) {
  return real_root_count(f, RealBound::minus_inf(), RealBound::plus_inf());
}

// True iff f(x) >= 0 for some real x; exact. f == 0 gives true.
bool exists_nonneg_value(const RatPoly& f);

// Disjoint isolating intervals (lo, hi] with rational endpoints, one per real
// root of squarefree f, sorted ascending.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const RatPoly& f);

// Bound B with all real roots in (-B, B).
Rat root_bound(const RatPoly& f);

}  // namespace chatelet

#endif
