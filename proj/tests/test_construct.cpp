#include <doctest.h>

#include "chatelet/construct.hpp"

using namespace chatelet;

namespace {

NumberFieldPtr sqrt3() {
  return NumberField::create(RatPoly({Rat(-3), Rat(0), Rat(1)}));
}
NumberFieldPtr zeta7() {
  return NumberField::create(RatPoly({Rat(-1), Rat(-2), Rat(1), Rat(1)}));
}

// unsolvable exactly at the expected places among the analyzed bad places
void check_closed_loop_insolvable(const Construction& cons,
                                  const std::vector<QPlace>& S) {
  Verdict v = global_analysis(cons.surface);
  CHECK(v.classification == Verdict::LocallyInsolvable);
  std::set<std::string> expect;
  for (const auto& p : S) expect.insert(p.infinite ? "real" : p.p.get_str());
  std::set<std::string> got;
  for (const auto& la : v.table)
    if (!la.solvable)
      got.insert(la.place.kind == PlaceOfL::RealEmb ? "real" : la.place.p.get_str());
  CHECK(got == expect);
}

}  // namespace

TEST_CASE("worked parameter triples pass the recipe checkers verbatim") {
  CHECK(check_recipe_parameters(Recipe::InsolvableOnS, zeta7(),
                                {QPlace::prime(Int(29))}, Rat(377), Rat(14), Rat(238))
            .empty());
  CHECK(check_recipe_parameters(Recipe::InsolvableOnS, sqrt3(), {QPlace::inf()},
                                Rat(-23), Rat(-5), Rat(5))
            .empty());
  CHECK(check_recipe_parameters(Recipe::InsolvableOnS, sqrt3(),
                                {QPlace::prime(Int(23))}, Rat(-23), Rat(5), Rat(35))
            .empty());
  CHECK(check_recipe_parameters(Recipe::TwoValuedOnS, sqrt3(), {QPlace::prime(Int(73))},
                                Rat(73), Rat(1, 73), Rat(99), Int(11), Int(23))
            .empty());
  CHECK(check_recipe_parameters(Recipe::ForcedHalfOnS, zeta7(),
                                {QPlace::prime(Int(13))}, Rat(377), Rat(5),
                                Rat(Int("878755181")), Int(43), Int(41))
            .empty());
}

TEST_CASE("recipe checker rejects corrupted parameters") {
  // b = 7 pairs to +1 against 377 at 29, violating the -1 requirement
  CHECK_FALSE(check_recipe_parameters(Recipe::InsolvableOnS, zeta7(),
                                      {QPlace::prime(Int(29))}, Rat(377), Rat(7),
                                      Rat(238))
                  .empty());
  // a must be a dyadic square: 377 -> 378 fails immediately
  CHECK_FALSE(check_recipe_parameters(Recipe::InsolvableOnS, zeta7(),
                                      {QPlace::prime(Int(29))}, Rat(378), Rat(14),
                                      Rat(238))
                  .empty());
}

TEST_CASE("insolvable recipe closed loop") {
  SUBCASE("Q(sqrt 3), S = {23}") {
    auto cons = construct_insolvable_on_s(sqrt3(), {QPlace::prime(Int(23))});
    std::string why;
    CHECK(cons.trace.validate(&why));
    CHECK(check_recipe_parameters(Recipe::InsolvableOnS, sqrt3(),
                                  {QPlace::prime(Int(23))}, cons.trace.a, cons.trace.b,
                                  cons.trace.c)
              .empty());
    check_closed_loop_insolvable(cons, {QPlace::prime(Int(23))});
  }
  SUBCASE("Q(sqrt 3), S = {inf}") {
    auto cons = construct_insolvable_on_s(sqrt3(), {QPlace::inf()});
    CHECK(cons.trace.a < 0);
    check_closed_loop_insolvable(cons, {QPlace::inf()});
  }
  SUBCASE("Q(zeta7 + 1/zeta7), S = {29}") {
    auto cons = construct_insolvable_on_s(zeta7(), {QPlace::prime(Int(29))});
    check_closed_loop_insolvable(cons, {QPlace::prime(Int(29))});
    // and over L itself: every place above 29 is unsolvable
    ExtensionAnalysis ext = analyze_over_extension(cons.surface, zeta7());
    int above = 0, insolv = 0;
    for (const auto& la : ext.entries)
      if (la.place.p == 29) {
        ++above;
        insolv += la.solvable ? 0 : 1;
      }
    CHECK(above == 3);
    CHECK(insolv == 3);
  }
}

TEST_CASE("empty S gives the pointed quartic 1 - x^4") {
  auto cons = construct_insolvable_on_s(sqrt3(), {});
  RatPoly P = cons.surface.P.to_rational();
  CHECK(P == RatPoly({Rat(1), Rat(0), Rat(0), Rat(0), Rat(-1)}));
  REQUIRE(cons.trace.known_point.has_value());
  auto [x, y, z] = *cons.trace.known_point;
  CHECK(y * y - cons.trace.a * z * z == P.eval(x));
}

TEST_CASE("two-valued recipe closed loop (Q(sqrt 3), S = {73})") {
  auto cons = construct_two_valued_on_s(sqrt3(), {QPlace::prime(Int(73))});
  std::string why;
  CHECK(cons.trace.validate(&why));
  // deterministic rebuild gives the identical trace
  auto cons2 = construct_two_valued_on_s(sqrt3(), {QPlace::prime(Int(73))});
  CHECK(cons.trace.a == cons2.trace.a);
  CHECK(cons.trace.b == cons2.trace.b);
  CHECK(cons.trace.c == cons2.trace.c);
  CHECK(*cons.trace.v1 == *cons2.trace.v1);
  // the known rational point lies on the surface
  REQUIRE(cons.trace.known_point.has_value());
  auto [x, y, z] = *cons.trace.known_point;
  RatPoly P = cons.surface.P.to_rational();
  CHECK(y * y - cons.trace.a * z * z == P.eval(x));
  // closed loop through the analyzer
  Verdict v = global_analysis(cons.surface);
  CHECK(v.classification == Verdict::RationalPointsExistWAFailsOff);
  REQUIRE(v.witness_places.size() == 1);
  CHECK(v.witness_places[0].p == 73);
  for (const auto& la : v.table) {
    if (la.place.p == 73) {
      CHECK(la.invariants == std::set<Inv>{Inv::Zero, Inv::Half});
    } else {
      CHECK(la.invariants == std::set<Inv>{Inv::Zero});
    }
  }
  // disc(P) != 0 and res(f1, f2) != 0 are certified by construction
  CHECK(discriminant(P) != 0);
  CHECK_FALSE(nf_resultant(cons.surface.fac->f1, cons.surface.fac->f2).is_zero());
}

TEST_CASE("forced-half recipe closed loop (Q(zeta7 + 1/zeta7), S = {13})") {
  auto cons = construct_forced_half_on_s(zeta7(), {QPlace::prime(Int(13))});
  std::string why;
  CHECK(cons.trace.validate(&why));
  CHECK(check_recipe_parameters(Recipe::ForcedHalfOnS, zeta7(), {QPlace::prime(Int(13))},
                                cons.trace.a, cons.trace.b, cons.trace.c, cons.trace.v1,
                                cons.trace.v2)
            .empty());
  Verdict v = global_analysis(cons.surface);
  CHECK(v.adelic_nonempty);
  CHECK(v.classification == Verdict::HasseCounterexampleBM);  // one place in S
  for (const auto& la : v.table) {
    if (la.place.p == 13) {
      CHECK(la.invariants == std::set<Inv>{Inv::Half});
    } else {
      CHECK(la.invariants == std::set<Inv>{Inv::Zero});
    }
  }
}

TEST_CASE("trace validation catches stale data") {
  auto cons = construct_two_valued_on_s(sqrt3(), {QPlace::prime(Int(73))});
  ConstructionTrace broken = cons.trace;
  broken.S_prime.push_back(QPlace::prime(Int(5)));
  std::string why;
  CHECK_FALSE(broken.validate(&why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("recipes reject ill-formed S") {
  CHECK_THROWS_AS(construct_insolvable_on_s(sqrt3(), {QPlace::prime(Int(2))}),
                  invalid_input);
  // 7 does not split in Q(sqrt 3): (3|7) = -1
  CHECK_THROWS_AS(construct_insolvable_on_s(sqrt3(), {QPlace::prime(Int(7))}),
                  invalid_input);
  // the real place does not split in Q(i)
  auto qi = NumberField::create(RatPoly({Rat(1), Rat(0), Rat(1)}));
  CHECK_THROWS_AS(construct_insolvable_on_s(qi, {QPlace::inf()}), invalid_input);
}

TEST_CASE("recipes over Q(i)") {
  auto qi = NumberField::create(RatPoly({Rat(1), Rat(0), Rat(1)}));
  // 5 and 13 split in Q(i)
  auto c1 = construct_insolvable_on_s(qi, {QPlace::prime(Int(5))});
  CHECK(c1.trace.a == -15);  // smallest dyadic square with odd valuation at 5
  Verdict v1 = global_analysis(c1.surface);
  CHECK(v1.classification == Verdict::LocallyInsolvable);
  for (const auto& la : v1.table)
    if (!la.solvable) CHECK(la.place.p == 5);

  auto c3 = construct_forced_half_on_s(qi, {QPlace::prime(Int(13))});
  Verdict v3 = global_analysis(c3.surface);
  CHECK(v3.classification == Verdict::HasseCounterexampleBM);
  // over Q(i) itself the two places above 13 both carry 1/2: sum 0, so the
  // obstruction disappears after base change (even-degree extension)
  ExtensionAnalysis ext = analyze_over_extension(c3.surface, qi);
  CHECK(ext.adelic_nonempty);
  CHECK(ext.half_count == 2);
  CHECK(ext.forced_sum == Verdict::Sum0);
  CHECK_FALSE(ext.no_rational_point_by_reciprocity);
}
