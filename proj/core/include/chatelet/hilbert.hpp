// Hilbert symbols (a,b)_v over R, Q_p, and unramified quadratic extensions,
// a brute-force conic oracle independent of the symbol formulas, and
// deterministic samplers producing elements with a prescribed symbol.

#ifndef CHATELET_HILBERT_HPP
#define CHATELET_HILBERT_HPP

#include <optional>

#include "chatelet/localfield.hpp"
#include "chatelet/rational.hpp"

namespace chatelet {

struct effort_exhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A place of Q: the real place or a finite prime.
struct QPlace {
  bool infinite = false;
  Int p = 0;
  static QPlace inf() { return {true, 0}; }
  static QPlace prime(const Int& p) { return {false, p}; }
  bool operator==(const QPlace& o) const { return infinite == o.infinite && p == o.p; }
  bool operator<(const QPlace& o) const {
    if (infinite != o.infinite) return infinite;  // infinity sorts first
    return p < o.p;
  }
  std::string to_string() const { return infinite ? "inf" : p.get_str(); }
  LocalField completion() const {
    return infinite ? LocalField::real() : LocalField::padic(p);
  }
};

SquareClass square_class_of(const Rat& a, const QPlace& v);

// (a,b)_v via the classical valuation/character formulas. a, b nonzero.
int hilbert_symbol(const Rat& a, const Rat& b, const QPlace& v);

// Same over an unramified quadratic extension; both elements nonzero in the
// same UnramQuad field.
int hilbert_symbol_ext(const LocalElement& a, const LocalElement& b);

// Decides solvability of y^2 - a z^2 = c over K_v by projective enumeration
// of residue classes mod p^k, k <= effort, with Hensel certification of
// candidate zeros and exhaustion certification of emptiness. Sign analysis
// at the real place. Never consults the symbol formulas.
bool conic_oracle(const Rat& a, const Rat& c, const QPlace& v, int effort = 6);

// Deterministically-first rational x with (a,x)_v = target; integral at a
// finite v when want_unit. Search order: |x| ascending, positive first.
// Throws unsatisfiable when the preconditions exclude a solution.
Rat sample_with_symbol(const Rat& a, const QPlace& v, int target, bool want_unit);

// Finite support of (a,b): the real place, 2, and primes dividing either
// numerator or denominator.
std::vector<QPlace> symbol_support(const Rat& a, const Rat& b);

}  // namespace chatelet

#endif
