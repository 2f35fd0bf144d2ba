#include <doctest.h>

#include "chatelet/manifest.hpp"
#include "chatelet/report.hpp"

using namespace chatelet;

namespace {

ChateletSurface v2_73() {
  RatPoly f1({Rat(1), Rat(0), Rat(99)});
  RatPoly f2({Rat(1, 5329), Rat(0), Rat(5428, 5329)});
  return ChateletSurface::over_q(Rat(73), f1 * f2, std::make_pair(f1, f2));
}

}  // namespace

TEST_CASE("surface files round-trip through JSON") {
  ChateletSurface V = v2_73();
  ordered_json j = surface_to_json(V);
  ChateletSurface W = surface_from_json(j);
  CHECK(W.a.rational_value() == Rat(73));
  CHECK(W.P.to_rational() == V.P.to_rational());
  REQUIRE(W.fac.has_value());
  CHECK(W.fac->f1.to_rational() == V.fac->f1.to_rational());
  // byte-identical re-emission
  CHECK(surface_to_json(W).dump(2) == j.dump(2));
}

TEST_CASE("reports parse and re-emit byte-identically") {
  ChateletSurface V = v2_73();
  Verdict verdict = global_analysis(V);
  ordered_json rep = report_of_verdict(V, verdict, 0);
  CHECK(rep["schema"] == kReportSchema);
  std::string once = rep.dump(2);
  ordered_json onceback = ordered_json::parse(once);
  CHECK(onceback.dump(2) == once);
  CHECK(rep["verdict"] == "RationalPointsExistWAFailsOff");
}

TEST_CASE("number field surfaces serialize with coordinates") {
  auto Qi = NumberField::create(RatPoly({Rat(1), Rat(0), Rat(1)}));
  auto nf = [&](long re, long im) {
    return Qi->add(Qi->from_rational(Rat(re)),
                   Qi->mul(Qi->from_rational(Rat(im)), Qi->theta()));
  };
  NFPoly f1 = NFPoly::make(Qi, {nf(0, -15), Qi->zero(), nf(-1, 5)});
  NFPoly f2 = NFPoly::make(Qi, {nf(-5, -1), Qi->zero(), Qi->one()});
  NFElement k = Qi->from_rational(Rat(-2));
  ChateletSurface V = ChateletSurface::make(Qi, Qi->from_rational(Rat(-15)),
                                            f1.mul(f2).scale(k), Factorization{k, f1, f2});
  ordered_json j = surface_to_json(V);
  ChateletSurface W = surface_from_json(j);
  CHECK(W.field->degree() == 2);
  CHECK(W.fac->f1.coeff(0).coords[1] == Rat(-15));
  CHECK(surface_to_json(W).dump(2) == j.dump(2));
}

TEST_CASE("constraint sets round-trip") {
  ConstraintSet cs;
  cs.constraints.push_back(LocalConstraint::sign_at(-1));
  cs.constraints.push_back(LocalConstraint::square_at(QPlace::prime(Int(2))));
  cs.constraints.push_back(LocalConstraint::val_parity(Int(23), 1));
  cs.constraints.push_back(LocalConstraint::val_shifted(Int(13), Rat(-1, 5), 3));
  cs.constraints.push_back(LocalConstraint::hilbert_eq(QPlace::prime(Int(73)), Rat(73), -1));
  cs.constraints.push_back(LocalConstraint::integral_outside({Int(73)}));
  cs.denominator_support = {Int(2), Int(73)};
  ordered_json j = constraint_set_to_json(cs);
  ConstraintSet back = constraint_set_from_json(j);
  CHECK(constraint_set_to_json(back).dump() == j.dump());
  // semantics preserved: same verdict on a witness
  CHECK(check_constraints(Rat(-23), cs).size() ==
        check_constraints(Rat(-23), back).size());
}

TEST_CASE("malformed surface files raise input errors") {
  CHECK_THROWS_AS(surface_from_json(ordered_json::parse(R"({"a": "5"})")), invalid_input);
  CHECK_THROWS_AS(
      surface_from_json(ordered_json::parse(R"({"a": "0", "P": ["1","0","0","0","1"]})")),
      invalid_input);
  // degenerate P (disc = 0)
  CHECK_THROWS_AS(
      surface_from_json(
          ordered_json::parse(R"({"a": "5", "P": ["1","0","2","0","1"]})")),
      invalid_input);
}

TEST_CASE("manifest entries are selectable by suffix") {
  CHECK(select_entries("all").size() == example_manifest().size());
  REQUIRE(select_entries("7.4").size() == 1);
  CHECK(select_entries("7.4")[0]->id == "example-7.4");
  CHECK(select_entries("example-3.2").size() == 1);
  CHECK(select_entries("nonexistent").empty());
}

TEST_CASE("the fast manifest entries pass") {
  for (const char* id : {"example-3.1-real", "example-3.1-real-v0", "split-primes"}) {
    auto es = select_entries(id);
    REQUIRE(es.size() == 1);
    for (const auto& c : es[0]->run()) {
      INFO(es[0]->id, ": ", c.name, " ", c.detail);
      CHECK(c.pass);
    }
  }
}
