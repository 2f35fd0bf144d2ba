// Local condition language over Q and the deterministic solver realizing
// weak approximation on the affine line: hard congruences are pinned by
// CRT, the remaining conditions filter an ascending candidate stream, so
// identical inputs always produce the identical, smallest witness.

#ifndef CHATELET_CHOOSER_HPP
#define CHATELET_CHOOSER_HPP

#include <optional>
#include <string>
#include <vector>

#include "chatelet/hilbert.hpp"
#include "chatelet/numfield.hpp"
#include "chatelet/rational.hpp"

namespace chatelet {

struct LocalConstraint {
  enum Kind {
    SignAt,           // sign of x at the real place
    RealRange,        // lo < x < hi (either bound may be infinite)
    SquareAt,         // x in K_v^{x2}
    NonsquareAt,      // x not in K_v^{x2}
    ValParity,        // v_p(x) parity
    ValEquals,        // v_p(x) = n
    ValShifted,       // v_p(x - shift) = n  (covers conditions on bc+1 etc.)
    UnitAt,           // v_p(x) = 0
    HilbertEq,        // (ref, x)_v = target
    IntegralOutside,  // v_q(x) >= 0 at every finite q outside the given set
  } kind;

  QPlace place;  // unused for IntegralOutside
  int sign = +1;            // SignAt
  RealBound lo, hi;         // RealRange
  int parity = 0;           // ValParity: 0 even, 1 odd
  long n = 0;               // ValEquals / ValShifted
  Rat shift;                // ValShifted
  Rat ref;                  // HilbertEq
  int target = +1;          // HilbertEq
  std::vector<Int> support;  // IntegralOutside

  static LocalConstraint sign_at(int s);
  static LocalConstraint real_range(const RealBound& lo, const RealBound& hi);
  static LocalConstraint square_at(const QPlace& v);
  static LocalConstraint nonsquare_at(const QPlace& v);
  static LocalConstraint val_parity(const Int& p, int parity);
  static LocalConstraint val_equals(const Int& p, long n);
  static LocalConstraint val_shifted(const Int& p, const Rat& shift, long n);
  static LocalConstraint unit_at(const Int& p);
  static LocalConstraint hilbert_eq(const QPlace& v, const Rat& ref, int target);
  static LocalConstraint integral_outside(std::vector<Int> support);

  std::string describe() const;
};

struct ConstraintSet {
  std::vector<LocalConstraint> constraints;
  // Primes at which denominators are permitted (the ring O_S[1/2] etc.).
  std::vector<Int> denominator_support;
};

struct Violation {
  LocalConstraint constraint;
  std::string datum;  // the computed local quantity that failed
};

// Empty iff every constraint holds for x != 0.
std::vector<Violation> check_constraints(const Rat& x, const ConstraintSet& cs);

// Deterministically-first rational satisfying cs. Per-place consistency is
// analyzed before the search; throws unsatisfiable / search_exhausted.
Rat solve_constraints(const ConstraintSet& cs, long cap = 1000000);

// The parameter choice shared by all three construction recipes: a is
// integral, not a global square, a square at every dyadic place, negative
// at the real places of S, odd valuation at the finite places of S.
struct ChoiceTrace {
  std::vector<QPlace> S_effective;  // S, or the substituted split place when S was empty
  ConstraintSet constraints;
  Rat a;
  std::vector<QPlace> S_prime;
  // Place of S certifying a is a nonsquare in L (split place with odd
  // valuation / negative sign), when S splits completely in L.
  std::optional<QPlace> nonsquare_in_L_certificate;
};

ChoiceTrace choose_a(const NumberFieldPtr& L, std::vector<QPlace> S);

// S' = {real v : a < 0} + {odd p : v_p(a) odd}, the set where a fails to be
// a local square for sign/valuation reasons.
std::vector<QPlace> sprime_of(const Rat& a);

}  // namespace chatelet

#endif
