#include "chatelet/construct.hpp"

#include <algorithm>
#include <set>

namespace chatelet {

namespace {

bool contains_inf(const std::vector<QPlace>& S) {
  for (const auto& v : S)
    if (v.infinite) return true;
  return false;
}

std::vector<Int> finite_primes(const std::vector<QPlace>& S) {
  std::vector<Int> out;
  for (const auto& v : S)
    if (!v.infinite) out.push_back(v.p);
  return out;
}

bool in_places(const std::vector<QPlace>& S, const QPlace& v) {
  return std::find(S.begin(), S.end(), v) != S.end();
}

void require_valid_s(const NumberFieldPtr& L, const std::vector<QPlace>& S) {
  for (const auto& v : S) {
    if (!v.infinite && v.p == 2)
      throw invalid_input("S must avoid dyadic places");
    if (v.infinite) {
      auto [r, s] = L->signature();
      if (s != 0)
        throw invalid_input("the real place does not split completely in L");
    } else if (!splits_completely(L, v.p)) {
      throw invalid_input("place " + v.p.get_str() + " does not split completely in L");
    }
  }
}

// b-conditions for the insolvable and forced-half recipes (signs at the real
// place, prescribed symbols against a at the finite places of S and S').
ConstraintSet b_constraints_sym(const Rat& a, const std::vector<QPlace>& S,
                                const std::vector<QPlace>& Sp, bool want_unit,
                                bool denoms_at_2) {
  ConstraintSet cs;
  if (contains_inf(S)) cs.constraints.push_back(LocalConstraint::sign_at(-1));
  else if (contains_inf(Sp))
    cs.constraints.push_back(LocalConstraint::sign_at(+1));
  for (const auto& v : S) {
    if (v.infinite) continue;
    cs.constraints.push_back(LocalConstraint::hilbert_eq(v, a, -1));
    if (want_unit) cs.constraints.push_back(LocalConstraint::unit_at(v.p));
  }
  for (const auto& v : Sp) {
    if (v.infinite || in_places(S, v)) continue;
    cs.constraints.push_back(LocalConstraint::hilbert_eq(v, a, +1));
    if (want_unit) cs.constraints.push_back(LocalConstraint::unit_at(v.p));
  }
  cs.constraints.push_back(LocalConstraint::integral_outside({}));
  if (denoms_at_2) cs.denominator_support = {Int(2)};
  return cs;
}

std::vector<QPlace> sdoubleprime_of(const Rat& b, bool odd_val_only) {
  std::vector<QPlace> out;
  for (const auto& p : prime_support(b)) {
    if (p == 2) continue;
    long v = val_p(b, p);
    if (odd_val_only ? (v % 2 != 0) : (v != 0)) out.push_back(QPlace::prime(p));
  }
  return out;
}

std::pair<Int, Int> pick_v1_v2(const NumberFieldPtr& L, const std::vector<QPlace>& Sp,
                               const std::vector<QPlace>& Spp,
                               const std::vector<QPlace>& S) {
  std::vector<Int> avoid = finite_primes(Sp);
  for (const auto& p : finite_primes(Spp)) avoid.push_back(p);
  for (const auto& p : finite_primes(S)) avoid.push_back(p);
  auto ps = find_split_primes(L, 2, Int(2), avoid);
  return {ps[0], ps[1]};
}

}  // namespace

std::string recipe_name(Recipe r) {
  switch (r) {
    case Recipe::InsolvableOnS:
      return "insolvable-on-s";
    case Recipe::TwoValuedOnS:
      return "two-valued-on-s";
    case Recipe::ForcedHalfOnS:
      return "forced-half-on-s";
  }
  return "?";
}

bool ConstructionTrace::validate(std::string* why) const {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  // S' and S'' must match what a and b actually give
  auto sp = sprime_of(a);
  if (sp != S_prime) return fail("stored S' differs from sprime_of(a)");
  for (const auto& v : S)
    if (!in_places(S_prime, v)) return fail("S not contained in S'");
  if (recipe != Recipe::InsolvableOnS || b != 0) {
    bool odd_only = (recipe == Recipe::InsolvableOnS);
    auto spp = sdoubleprime_of(b, odd_only);
    if (spp != S_doubleprime) return fail("stored S'' differs from derived");
  }
  if (recipe == Recipe::ForcedHalfOnS) {
    for (const auto& v : S_doubleprime)
      if (in_places(S_prime, v)) return fail("S' and S'' must be disjoint");
  }
  if (v1 && v2 && *v1 == *v2) return fail("v1 = v2");
  return true;
}

// --- recipe constraint builders -----------------------------------------

namespace {

struct RecipeConstraints {
  ConstraintSet for_a, for_b, for_c;
  std::vector<QPlace> S_prime, S_doubleprime;
  std::optional<Int> v1, v2;
};

ConstraintSet a_constraints_for(const std::vector<QPlace>& S) {
  ConstraintSet cs;
  cs.constraints.push_back(LocalConstraint::square_at(QPlace::prime(Int(2))));
  for (const auto& v : S) {
    if (v.infinite)
      cs.constraints.push_back(LocalConstraint::sign_at(-1));
    else
      cs.constraints.push_back(LocalConstraint::val_parity(v.p, 1));
  }
  cs.constraints.push_back(LocalConstraint::integral_outside({}));
  return cs;
}

// c-conditions, insolvable recipe: square at S, odd valuation on S''\S'.
ConstraintSet c_constraints_insolvable(const std::vector<QPlace>& S,
                                       const std::vector<QPlace>& Sp,
                                       const std::vector<QPlace>& Spp) {
  ConstraintSet cs;
  for (const auto& v : S) cs.constraints.push_back(LocalConstraint::square_at(v));
  for (const auto& v : Spp) {
    if (in_places(Sp, v)) continue;
    cs.constraints.push_back(LocalConstraint::val_parity(v.p, 1));
  }
  cs.constraints.push_back(LocalConstraint::integral_outside({}));
  return cs;
}

// b-conditions, two-valued recipe: v(b) = -v(a) on S, v(b) = v(a) on S'\S.
ConstraintSet b_constraints_two_valued(const Rat& a, const std::vector<QPlace>& S,
                                       const std::vector<QPlace>& Sp) {
  ConstraintSet cs;
  std::vector<Int> denom_sup{Int(2)};
  for (const auto& v : S) {
    if (v.infinite) continue;
    cs.constraints.push_back(LocalConstraint::val_equals(v.p, -val_p(a, v.p)));
    denom_sup.push_back(v.p);
  }
  for (const auto& v : Sp) {
    if (v.infinite || in_places(S, v)) continue;
    cs.constraints.push_back(LocalConstraint::val_equals(v.p, val_p(a, v.p)));
  }
  cs.constraints.push_back(LocalConstraint::integral_outside(finite_primes(S)));
  cs.denominator_support = denom_sup;
  return cs;
}

// c-conditions, two-valued recipe.
ConstraintSet c_constraints_two_valued(const Rat& a, const Rat& b,
                                       const std::vector<QPlace>& S,
                                       const std::vector<QPlace>& Sp, const Int& v1,
                                       const Int& v2) {
  ConstraintSet cs;
  Rat b2 = b * b;
  if (contains_inf(S))
    cs.constraints.push_back(
        LocalConstraint::real_range(RealBound::minus_inf(), RealBound::at(-1 / b2)));
  else if (contains_inf(Sp))
    cs.constraints.push_back(LocalConstraint::sign_at(+1));
  for (const auto& v : S) {
    if (v.infinite) continue;
    cs.constraints.push_back(LocalConstraint::hilbert_eq(v, a, -1));
    cs.constraints.push_back(LocalConstraint::unit_at(v.p));
  }
  cs.constraints.push_back(LocalConstraint::val_equals(v1, 1));
  cs.constraints.push_back(LocalConstraint::val_shifted(v2, -1 / b2, 1));
  cs.constraints.push_back(LocalConstraint::integral_outside({}));
  cs.denominator_support = {Int(2)};
  return cs;
}

// c-conditions, forced-half recipe.
ConstraintSet c_constraints_forced_half(const Rat& a, const Rat& b,
                                        const std::vector<QPlace>& S,
                                        const std::vector<QPlace>& Sp,
                                        const std::vector<QPlace>& Spp, const Int& v1,
                                        const Int& v2) {
  ConstraintSet cs;
  Rat minus_inv_b = -1 / b;
  if (contains_inf(S))
    cs.constraints.push_back(
        LocalConstraint::real_range(RealBound::at(Rat(0)), RealBound::at(minus_inv_b)));
  else if (contains_inf(Sp))
    cs.constraints.push_back(
        LocalConstraint::real_range(RealBound::minus_inf(), RealBound::at(minus_inv_b)));
  for (const auto& v : Sp) {
    if (v.infinite) continue;
    cs.constraints.push_back(
        LocalConstraint::val_shifted(v.p, minus_inv_b, val_p(a, v.p) + 2));
  }
  for (const auto& v : Spp)
    cs.constraints.push_back(LocalConstraint::hilbert_eq(v, a, +1));
  cs.constraints.push_back(LocalConstraint::val_equals(v1, 1));
  cs.constraints.push_back(LocalConstraint::val_shifted(v2, minus_inv_b, 1));
  cs.constraints.push_back(LocalConstraint::integral_outside({}));
  cs.denominator_support = {Int(2)};
  return cs;
}

RatPoly poly_insolvable(const Rat& a, const Rat& b, const Rat& c) {
  // b (x^4 - a c)
  return RatPoly({-a * c * b, Rat(0), Rat(0), Rat(0), b});
}

std::pair<RatPoly, RatPoly> factors_two_valued(const Rat& b, const Rat& c) {
  // (c x^2 + 1)((1 + c b^2) x^2 + b^2)
  RatPoly f1({Rat(1), Rat(0), c});
  RatPoly f2({b * b, Rat(0), 1 + c * b * b});
  return {f1, f2};
}

std::pair<RatPoly, RatPoly> factors_forced_half(const Rat& b, const Rat& c) {
  // (x^2 - c)(b x^2 - b c - 1)
  RatPoly f1({-c, Rat(0), Rat(1)});
  RatPoly f2({-(b * c + 1), Rat(0), b});
  return {f1, f2};
}

}  // namespace

std::vector<Violation> check_recipe_parameters(Recipe r, const NumberFieldPtr& L,
                                               const std::vector<QPlace>& S, const Rat& a,
                                               const Rat& b, const Rat& c,
                                               std::optional<Int> v1,
                                               std::optional<Int> v2) {
  require_valid_s(L, S);
  std::vector<Violation> out;
  auto add = [&](const std::vector<Violation>& vs) {
    out.insert(out.end(), vs.begin(), vs.end());
  };
  add(check_constraints(a, a_constraints_for(S)));
  auto Sp = sprime_of(a);
  switch (r) {
    case Recipe::InsolvableOnS: {
      add(check_constraints(b, b_constraints_sym(a, S, Sp, false, false)));
      auto Spp = sdoubleprime_of(b, true);
      add(check_constraints(c, c_constraints_insolvable(S, Sp, Spp)));
      break;
    }
    case Recipe::TwoValuedOnS: {
      add(check_constraints(b, b_constraints_two_valued(a, S, Sp)));
      if (!v1 || !v2) throw invalid_input("two-valued check needs v1, v2");
      for (const Int& v : {*v1, *v2}) {
        if (!splits_completely(L, v))
          throw invalid_input("v1/v2 must split completely in L");
      }
      add(check_constraints(c, c_constraints_two_valued(a, b, S, Sp, *v1, *v2)));
      break;
    }
    case Recipe::ForcedHalfOnS: {
      add(check_constraints(b, b_constraints_sym(a, S, Sp, true, true)));
      auto Spp = sdoubleprime_of(b, false);
      if (!v1 || !v2) throw invalid_input("forced-half check needs v1, v2");
      for (const Int& v : {*v1, *v2}) {
        if (!splits_completely(L, v))
          throw invalid_input("v1/v2 must split completely in L");
      }
      add(check_constraints(c, c_constraints_forced_half(a, b, S, Sp, Spp, *v1, *v2)));
      break;
    }
  }
  return out;
}

Construction construct_insolvable_on_s(const NumberFieldPtr& L,
                                       const std::vector<QPlace>& S0) {
  require_valid_s(L, S0);
  ConstructionTrace tr;
  tr.recipe = Recipe::InsolvableOnS;
  tr.S = S0;
  if (S0.empty()) {
    ChoiceTrace ct = choose_a(L, {});
    tr.a_constraints = ct.constraints;
    tr.a = ct.a;
    tr.S_prime = ct.S_prime;
    tr.b = Rat(-1);
    tr.c = 1 / tr.a;  // so that b (x^4 - a c) = 1 - x^4
    tr.S_doubleprime = {};
    tr.known_point = std::array<Rat, 3>{Rat(0), Rat(1), Rat(0)};
    RatPoly P({Rat(1), Rat(0), Rat(0), Rat(0), Rat(-1)});
    return {ChateletSurface::over_q(tr.a, P), tr};
  }
  ChoiceTrace ct = choose_a(L, S0);
  tr.a_constraints = ct.constraints;
  tr.a = ct.a;
  tr.S_prime = ct.S_prime;
  tr.b_constraints = b_constraints_sym(tr.a, S0, tr.S_prime, false, false);
  tr.b = solve_constraints(tr.b_constraints);
  tr.S_doubleprime = sdoubleprime_of(tr.b, true);
  tr.c_constraints = c_constraints_insolvable(S0, tr.S_prime, tr.S_doubleprime);
  tr.c = solve_constraints(tr.c_constraints);
  return {ChateletSurface::over_q(tr.a, poly_insolvable(tr.a, tr.b, tr.c)), tr};
}

Construction construct_two_valued_on_s(const NumberFieldPtr& L,
                                       const std::vector<QPlace>& S0) {
  require_valid_s(L, S0);
  ConstructionTrace tr;
  tr.recipe = Recipe::TwoValuedOnS;
  tr.S = S0;
  ChoiceTrace ct = choose_a(L, S0);
  tr.a_constraints = ct.constraints;
  tr.a = ct.a;
  tr.S_prime = ct.S_prime;
  std::vector<QPlace> S = S0.empty() ? ct.S_effective : S0;
  tr.S = S;
  tr.b_constraints = b_constraints_two_valued(tr.a, S, tr.S_prime);
  tr.b = solve_constraints(tr.b_constraints);
  tr.S_doubleprime = sdoubleprime_of(tr.b, false);
  auto [v1, v2] = pick_v1_v2(L, tr.S_prime, tr.S_doubleprime, S);
  tr.v1 = v1;
  tr.v2 = v2;
  tr.c_constraints = c_constraints_two_valued(tr.a, tr.b, S, tr.S_prime, v1, v2);
  tr.c = solve_constraints(tr.c_constraints);
  auto [f1, f2] = factors_two_valued(tr.b, tr.c);
  tr.known_point = std::array<Rat, 3>{Rat(0), tr.b, Rat(0)};
  RatPoly P = f1 * f2;
  return {ChateletSurface::over_q(tr.a, P, std::make_pair(f1, f2)), tr};
}

Construction construct_forced_half_on_s(const NumberFieldPtr& L,
                                        const std::vector<QPlace>& S0) {
  require_valid_s(L, S0);
  ConstructionTrace tr;
  tr.recipe = Recipe::ForcedHalfOnS;
  tr.S = S0;
  ChoiceTrace ct = choose_a(L, S0);
  tr.a_constraints = ct.constraints;
  tr.a = ct.a;
  tr.S_prime = ct.S_prime;
  std::vector<QPlace> S = S0.empty() ? ct.S_effective : S0;
  tr.S = S;
  tr.b_constraints = b_constraints_sym(tr.a, S, tr.S_prime, true, true);
  tr.b = solve_constraints(tr.b_constraints);
  tr.S_doubleprime = sdoubleprime_of(tr.b, false);
  auto [v1, v2] = pick_v1_v2(L, tr.S_prime, tr.S_doubleprime, S);
  tr.v1 = v1;
  tr.v2 = v2;
  tr.c_constraints =
      c_constraints_forced_half(tr.a, tr.b, S, tr.S_prime, tr.S_doubleprime, v1, v2);
  tr.c = solve_constraints(tr.c_constraints);
  auto [f1, f2] = factors_forced_half(tr.b, tr.c);
  RatPoly P = f1 * f2;
  return {ChateletSurface::over_q(tr.a, P, std::make_pair(f1, f2)), tr};
}

Construction construct(Recipe r, const NumberFieldPtr& L, const std::vector<QPlace>& S) {
  switch (r) {
    case Recipe::InsolvableOnS:
      return construct_insolvable_on_s(L, S);
    case Recipe::TwoValuedOnS:
      return construct_two_valued_on_s(L, S);
    case Recipe::ForcedHalfOnS:
      return construct_forced_half_on_s(L, S);
  }
  throw invalid_input("unknown recipe");
}

}  // namespace chatelet
