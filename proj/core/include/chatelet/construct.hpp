// The three construction recipes: given L/Q and a finite set S of real or
// odd places splitting completely in L, build (a, b, c) and the surface so
// that, by design,
//   - insolvable_on_s:   no local points exactly at S,
//   - two_valued_on_s:   Brauer invariants take both values exactly at S,
//   - forced_half_on_s:  Brauer invariants constant 1/2 exactly at S.

#ifndef CHATELET_CONSTRUCT_HPP
#define CHATELET_CONSTRUCT_HPP

#include "chatelet/chooser.hpp"
#include "chatelet/surface.hpp"

namespace chatelet {

enum class Recipe { InsolvableOnS, TwoValuedOnS, ForcedHalfOnS };
std::string recipe_name(Recipe r);

struct ConstructionTrace {
  Recipe recipe;
  std::vector<QPlace> S, S_prime, S_doubleprime;
  std::optional<Int> v1, v2;  // auxiliary split primes (two-valued / forced-half)
  Rat a, b, c;
  ConstraintSet a_constraints, b_constraints, c_constraints;
  std::optional<std::array<Rat, 3>> known_point;  // (0, b, 0) for two_valued
  // Validation re-derives S', S'' from (a, b) so stale data cannot pass.
  bool validate(std::string* why = nullptr) const;
};

struct Construction {
  ChateletSurface surface;
  ConstructionTrace trace;
};

// Checks one parameter triple against the recipe's constraint sets (the
// closed-form conditions on a, then b given a, then c given a and b).
// Returns the violation list (empty = the triple is admissible).
std::vector<Violation> check_recipe_parameters(Recipe r, const NumberFieldPtr& L,
                                               const std::vector<QPlace>& S, const Rat& a,
                                               const Rat& b, const Rat& c,
                                               std::optional<Int> v1 = std::nullopt,
                                               std::optional<Int> v2 = std::nullopt);

Construction construct_insolvable_on_s(const NumberFieldPtr& L,
                                       const std::vector<QPlace>& S);
Construction construct_two_valued_on_s(const NumberFieldPtr& L,
                                       const std::vector<QPlace>& S);
Construction construct_forced_half_on_s(const NumberFieldPtr& L,
                                        const std::vector<QPlace>& S);
Construction construct(Recipe r, const NumberFieldPtr& L, const std::vector<QPlace>& S);

}  // namespace chatelet

#endif
