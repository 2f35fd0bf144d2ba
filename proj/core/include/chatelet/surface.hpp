// Chatelet surface analysis: y^2 - a z^2 = P(x) with a nonsquare and P a
// separable quartic. Local solvability and Brauer local-invariant sets at
// every place, finite bad-place certificates, and reciprocity-based global
// verdicts.

#ifndef CHATELET_SURFACE_HPP
#define CHATELET_SURFACE_HPP

#include <optional>
#include <set>
#include <vector>

#include "chatelet/chooser.hpp"
#include "chatelet/hilbert.hpp"
#include "chatelet/numfield.hpp"

namespace chatelet {

struct missing_factorization : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// P = k * f1 * f2 with f1, f2 quadratic; f1 is the factor generating the
// Brauer class (a, f1).
struct Factorization {
  NFElement k;
  NFPoly f1, f2;
};

struct ChateletSurface {
  NumberFieldPtr field;
  NFElement a;
  NFPoly P;
  std::optional<Factorization> fac;

  // Validates: a nonzero, deg P = 4, disc P nonzero, and the product
  // identity when a factorization is given.
  static ChateletSurface make(NumberFieldPtr field, NFElement a, NFPoly P,
                              std::optional<Factorization> fac = std::nullopt);
  static ChateletSurface over_q(const Rat& a, const RatPoly& P,
                                std::optional<std::pair<RatPoly, RatPoly>> factors =
                                    std::nullopt,
                                const Rat& k = Rat(1));

  std::string equation() const;
};

struct BrauerGenerator {
  NFElement a;
  NFPoly f1;
  static BrauerGenerator of(const ChateletSurface& V);
};

// Local invariant values in Q/Z: 0 or 1/2.
enum class Inv { Zero, Half };

struct LocalAnalysis {
  PlaceOfL place;
  bool solvable = false;
  bool invariants_known = false;         // false when V carries no factorization
  std::set<Inv> invariants;              // empty iff unsolvable
  std::string certificate;
};

struct Verdict {
  enum Classification {
    LocallyInsolvable,
    HasseCounterexampleBM,
    RationalPointsExistWAFailsOff,
    RationalPointsExistWAHolds,
    Undetermined,  // partial result only (some place had no supported model)
  };
  bool adelic_nonempty = false;
  enum ForcedSum { Sum0, SumHalf, Mixed } forced_sum = Sum0;
  Classification classification = LocallyInsolvable;
  std::vector<PlaceOfL> witness_places;  // insolvable places / two-valued places
  std::vector<LocalAnalysis> table;      // one row per bad place
  std::vector<std::string> notes;        // provenance (e.g. conditional inputs)
  std::optional<std::array<Rat, 3>> rational_point;
  bool partial = false;
  std::vector<std::pair<PlaceOfL, std::string>> unsupported;
  std::string classification_name() const;
};

// Places outside which V is certified solvable with invariant set {0}:
// real places where a is negative, dyadic places, and finite places dividing
// a, lc(P), disc(P), and (when factored) res(f1,f2) and lc(f1) lc(f2).
std::vector<PlaceOfL> bad_places(const ChateletSurface& V);

// Exact local decision at a supported place.
LocalAnalysis analyze_place(const ChateletSurface& V, const PlaceOfL& w);
bool locally_solvable(const ChateletSurface& V, const PlaceOfL& w);
// Requires a factorization; the exact set of inv_w(A(P_w)) over local points.
std::set<Inv> invariant_set(const ChateletSurface& V, const PlaceOfL& w);

Verdict global_analysis(const ChateletSurface& V);

// Base change of a surface over Q to L: per-place analyses at the places of
// L over the bad primes (split places delegate to the Q_p result, inert
// quadratic places run in the unramified quadratic model, complex places are
// trivial). Throws unsupported_place with a reason when a bad place of L has
// no supported model.
struct ExtensionAnalysis {
  std::vector<LocalAnalysis> entries;
  bool adelic_nonempty = false;
  Verdict::ForcedSum forced_sum = Verdict::Sum0;
  // Number of places contributing a forced 1/2 (sum = count/2 mod 1).
  int half_count = 0;
  bool no_rational_point_by_reciprocity = false;
  bool partial = false;
  std::vector<std::pair<PlaceOfL, std::string>> unsupported;
};

ExtensionAnalysis analyze_over_extension(const ChateletSurface& V, const NumberFieldPtr& L);

// Best-effort small search for an affine rational point (x, y, z); never
// used for negative conclusions.
std::optional<std::array<Rat, 3>> find_rational_point(const ChateletSurface& V,
                                                      long height = 50);

// Sum of local invariants of a global point at the bad places (reciprocity
// check helper for tests).
int invariant_sum_at_point(const ChateletSurface& V, const Rat& x);

// Test hook: residue-enumeration threshold (places with p above it use the
// valuation-parity analyzer). Returns the previous value.
long set_enumeration_threshold(long p_max);

}  // namespace chatelet

#endif
