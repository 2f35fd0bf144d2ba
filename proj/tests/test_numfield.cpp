#include <doctest.h>

#include "test_seed.hpp"

#include <random>

#include "chatelet/numfield.hpp"

using namespace chatelet;

namespace {

RatPoly rp(std::vector<long> c) {
  std::vector<Rat> r;
  for (long x : c) r.push_back(Rat(x));
  return RatPoly(std::move(r));
}

NumberFieldPtr sqrt3() { return NumberField::create(rp({-3, 0, 1})); }
NumberFieldPtr zeta7() { return NumberField::create(rp({-1, -2, 1, 1})); }
NumberFieldPtr gauss() { return NumberField::create(rp({1, 0, 1})); }

}  // namespace

TEST_CASE("splitting types") {
  auto st = splitting_type(sqrt3(), Int(11));
  CHECK_FALSE(st.ramified);
  CHECK(st.residue_degrees == std::vector<int>{1, 1});
  auto st2 = splitting_type(gauss(), Int(3));
  CHECK(st2.residue_degrees == std::vector<int>{2});
  CHECK(splitting_type(gauss(), Int(2)).ramified);
  auto st3 = splitting_type(zeta7(), Int(5));
  CHECK(st3.residue_degrees == std::vector<int>{3});
}

TEST_CASE("splitting degrees sum to the field degree") {
  for (const auto& F : {sqrt3(), zeta7(), gauss()}) {
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
      auto st = splitting_type(F, Int(p));
      if (st.ramified) continue;
      int sum = 0;
      for (int d : st.residue_degrees) sum += d;
      CHECK(sum == F->degree());
    }
  }
}

TEST_CASE("find_split_primes examples") {
  CHECK(find_split_primes(zeta7(), 4, Int(2)) ==
        std::vector<Int>{Int(13), Int(29), Int(41), Int(43)});
  CHECK(find_split_primes(sqrt3(), 3, Int(2)) ==
        std::vector<Int>{Int(11), Int(13), Int(23)});
  CHECK(find_split_primes(gauss(), 1, Int(2)) == std::vector<Int>{Int(5)});
  // avoid set and re-verification
  auto ps = find_split_primes(zeta7(), 2, Int(2), {Int(13)});
  CHECK(ps == std::vector<Int>{Int(29), Int(41)});
  for (const auto& p : ps) {
    auto st = splitting_type(zeta7(), p);
    CHECK(st.residue_degrees == std::vector<int>(3, 1));
  }
}

TEST_CASE("signatures") {
  CHECK(sqrt3()->signature() == std::pair<int, int>{2, 0});
  CHECK(gauss()->signature() == std::pair<int, int>{0, 1});
  CHECK(zeta7()->signature() == std::pair<int, int>{3, 0});
}

TEST_CASE("local embeddings at split places") {
  auto F = gauss();
  auto places = places_above(F, Int(5));
  REQUIRE(places.size() == 2);
  // theta = i maps to a root of x^2 + 1 in Q_5 congruent to 2 or 3 mod 5
  auto th = local_embed(F, F->theta(), places[0], 6);
  Int r = th.unit().a % 5;
  CHECK((r == 2 || r == 3));
  auto sq = th * th;
  CHECK(sq.unit().a % 5 == 4);  // i^2 = -1
}

TEST_CASE("local embedding at the inert place of Q(i)") {
  auto F = gauss();
  auto places = places_above(F, Int(3));
  REQUIRE(places.size() == 1);
  auto w = places[0];
  CHECK(local_model(F, w).kind == LocalField::UnramQuad);
  // 5 + i reduces to 2 + delta mod 3
  auto e = F->add(F->from_rational(Rat(5)), F->theta());
  auto img = local_embed(F, e, w, 6);
  CHECK(img.val() == 0);
  CHECK(img.unit().a % 3 == 2);
  CHECK(img.unit().b % 3 == 1);
}

TEST_CASE("local embedding is multiplicative") {
  std::mt19937_64 rng(test_seed(404));
  auto F = zeta7();
  auto places = places_above(F, Int(13));
  REQUIRE(places.size() == 3);
  auto w = places[1];
  for (int i = 0; i < 100; ++i) {
    std::vector<Rat> xc, yc;
    for (int k = 0; k < 3; ++k) {
      xc.push_back(Rat(static_cast<long>(rng() % 19) - 9));
      yc.push_back(Rat(static_cast<long>(rng() % 19) - 9));
    }
    NFElement x = F->from_coords(xc), y = F->from_coords(yc);
    if (x.is_zero() || y.is_zero()) continue;
    auto lx = local_embed(F, x, w, 8);
    auto ly = local_embed(F, y, w, 8);
    auto lxy = local_embed(F, F->mul(x, y), w, 8);
    auto prod = lx * ly;
    if (!prod.certified_nonzero() || !lxy.certified_nonzero()) continue;
    CHECK(lxy.val() == prod.val());
    Int m = 13 * 13;
    CHECK(lxy.unit().a % m == prod.unit().a % m);
  }
}

TEST_CASE("real embeddings: signs and intervals") {
  auto F = sqrt3();
  auto arch = archimedean_places(F);
  REQUIRE(arch.size() == 2);
  // embeddings sorted ascending: theta -> -sqrt(3), +sqrt(3)
  CHECK(real_sign(F, F->theta(), arch[0]) == -1);
  CHECK(real_sign(F, F->theta(), arch[1]) == 1);
  auto [lo, hi] = real_isolating_interval(F, arch[1]);
  CHECK(lo >= 1);
  CHECK(hi <= 2);
  // rational elements keep their sign at every embedding
  CHECK(real_sign(F, F->from_rational(Rat(-23)), arch[0]) == -1);
  CHECK(real_sign(F, F->from_rational(Rat(-23)), arch[1]) == -1);
  // theta^2 - 3 = 0 exactly
  auto z = F->sub(F->mul(F->theta(), F->theta()), F->from_rational(Rat(3)));
  CHECK(real_sign(F, z, arch[0]) == 0);
}

TEST_CASE("projective point verification") {
  auto F = sqrt3();
  // w1^2 w2 - w0^3 + 16 w2^3
  TriPoly eqn;
  eqn.terms.push_back({0, 2, 1, F->one()});
  eqn.terms.push_back({3, 0, 0, F->from_rational(Rat(-1))});
  eqn.terms.push_back({0, 0, 3, F->from_rational(Rat(16))});
  NFElement s3 = F->theta();
  std::array<NFElement, 3> p1{F->from_rational(Rat(4)),
                              F->mul(F->from_rational(Rat(4)), s3), F->one()};
  std::array<NFElement, 3> pinf{F->zero(), F->one(), F->zero()};
  CHECK(verify_projective_point(F, eqn, p1));
  CHECK(verify_projective_point(F, eqn, pinf));

  auto Fi = gauss();
  TriPoly eqi;
  eqi.terms.push_back({0, 2, 1, Fi->one()});
  eqi.terms.push_back({3, 0, 0, Fi->from_rational(Rat(-1))});
  eqi.terms.push_back({0, 0, 3, Fi->from_rational(Rat(16))});
  std::array<NFElement, 3> pi{Fi->zero(), Fi->mul(Fi->from_rational(Rat(4)), Fi->theta()),
                              Fi->one()};
  CHECK(verify_projective_point(Fi, eqi, pi));
  std::array<NFElement, 3> bad{Fi->one(), Fi->one(), Fi->one()};
  CHECK_FALSE(verify_projective_point(Fi, eqi, bad));
  std::array<NFElement, 3> zero{Fi->zero(), Fi->zero(), Fi->zero()};
  CHECK_THROWS_AS(verify_projective_point(Fi, eqi, zero), invalid_input);
}

TEST_CASE("projective verification is scaling invariant") {
  std::mt19937_64 rng(test_seed(405));
  auto F = gauss();
  TriPoly eqn;
  eqn.terms.push_back({0, 2, 1, F->one()});
  eqn.terms.push_back({3, 0, 0, F->from_rational(Rat(-1))});
  eqn.terms.push_back({0, 0, 3, F->from_rational(Rat(16))});
  std::array<NFElement, 3> pt{F->zero(), F->mul(F->from_rational(Rat(4)), F->theta()),
                              F->one()};
  for (int i = 0; i < 10; ++i) {
    long re = static_cast<long>(rng() % 9) - 4, im = static_cast<long>(rng() % 9) - 4;
    if (re == 0 && im == 0) re = 1;
    NFElement s = F->add(F->from_rational(Rat(re)),
                         F->mul(F->from_rational(Rat(im)), F->theta()));
    std::array<NFElement, 3> scaled{F->mul(pt[0], s), F->mul(pt[1], s), F->mul(pt[2], s)};
    CHECK(verify_projective_point(F, eqn, scaled));
  }
}

TEST_CASE("NFPoly resultants over Q(i)") {
  auto F = gauss();
  auto nf = [&](long re, long im) {
    return F->add(F->from_rational(Rat(re)), F->mul(F->from_rational(Rat(im)), F->theta()));
  };
  // res(x^2 - (5+i), (-1+5i)x^2 - 15i) relates to -10 + 9i (norm 181)
  NFPoly f1 = NFPoly::make(F, {nf(-5, -1), F->zero(), F->one()});
  NFPoly f2 = NFPoly::make(F, {nf(0, -15), F->zero(), nf(-1, 5)});
  NFElement r = nf_resultant(f1, f2);
  CHECK_FALSE(r.is_zero());
  Rat nrm = F->norm(r);
  // norm of (-10+9i)^2 is 181^2
  CHECK(nrm == Rat(181) * Rat(181));
}

TEST_CASE("unverified irreducibility is flagged") {
  // x^2 - 1 is not squarefree-irreducible: rejected outright
  CHECK_THROWS_AS(NumberField::create(rp({1, -2, 1})), invalid_input);
  // squarefree but reducible: x^2 - 4 factors everywhere, so no certifying
  // prime exists
  auto F = NumberField::create(rp({-4, 0, 1}));
  CHECK_FALSE(F->irreducibility_certified());
  CHECK(sqrt3()->irreducibility_certified());
  CHECK(zeta7()->irreducibility_certified());
}
