#include <doctest.h>

#include "test_seed.hpp"

#include <random>

#include "chatelet/hilbert.hpp"
#include "chatelet/numfield.hpp"

using namespace chatelet;

TEST_CASE("hilbert symbol paper values") {
  CHECK(hilbert_symbol(Rat(-15), Rat(2), QPlace::prime(Int(5))) == -1);
  CHECK(hilbert_symbol(Rat(-15), Rat(30), QPlace::inf()) == 1);
  CHECK(hilbert_symbol(Rat(1), Rat(7), QPlace::inf()) == 1);
  CHECK(hilbert_symbol(Rat(1), Rat(-99), QPlace::prime(Int(3))) == 1);
  // units at an odd place pair trivially
  CHECK(hilbert_symbol(Rat(6), Rat(35), QPlace::prime(Int(13))) == 1);
  CHECK_THROWS_AS(hilbert_symbol(Rat(0), Rat(1), QPlace::inf()), invalid_input);
}

TEST_CASE("symbol is bilinear and symmetric") {
  std::mt19937_64 rng(test_seed(101));
  std::vector<QPlace> places = {QPlace::inf(),        QPlace::prime(Int(2)),
                                QPlace::prime(Int(3)), QPlace::prime(Int(5)),
                                QPlace::prime(Int(13)), QPlace::prime(Int(73))};
  auto rand_rat = [&]() {
    long n = static_cast<long>(rng() % 199) - 99;
    long d = static_cast<long>(rng() % 40) + 1;
    if (n == 0) n = 1;
    Rat q(n, d);
    q.canonicalize();
    return q;
  };
  for (const auto& v : places) {
    for (int i = 0; i < 500; ++i) {
      Rat a = rand_rat(), b1 = rand_rat(), b2 = rand_rat();
      CHECK(hilbert_symbol(a, b1 * b2, v) ==
            hilbert_symbol(a, b1, v) * hilbert_symbol(a, b2, v));
      CHECK(hilbert_symbol(a, b1, v) == hilbert_symbol(b1, a, v));
    }
  }
}

TEST_CASE("(a,-a) = 1 and (a,1-a) = 1") {
  std::mt19937_64 rng(test_seed(102));
  std::vector<QPlace> places = {QPlace::inf(), QPlace::prime(Int(2)),
                                QPlace::prime(Int(3)), QPlace::prime(Int(13))};
  for (const auto& v : places) {
    for (int i = 0; i < 200; ++i) {
      long n = static_cast<long>(rng() % 199) - 99;
      if (n == 0 || n == 1) continue;
      Rat a(n, static_cast<long>(rng() % 20) + 1);
      a.canonicalize();
      if (a == 0 || a == 1) continue;
      CHECK(hilbert_symbol(a, -a, v) == 1);
      CHECK(hilbert_symbol(a, 1 - a, v) == 1);
    }
  }
}

TEST_CASE("product formula over the symbol support") {
  std::mt19937_64 rng(test_seed(103));
  for (int i = 0; i < 500; ++i) {
    long an = static_cast<long>(rng() % 399) - 199;
    long bn = static_cast<long>(rng() % 399) - 199;
    if (an == 0 || bn == 0) continue;
    Rat a(an, static_cast<long>(rng() % 30) + 1), b(bn, static_cast<long>(rng() % 30) + 1);
    a.canonicalize();
    b.canonicalize();
    int prod = 1;
    for (const auto& v : symbol_support(a, b)) prod *= hilbert_symbol(a, b, v);
    CHECK(prod == 1);
  }
}

TEST_CASE("conic oracle on the stated examples") {
  CHECK(conic_oracle(Rat(73), Rat(1), QPlace::prime(Int(73))));
  CHECK_FALSE(conic_oracle(Rat(-23), Rat(-1), QPlace::inf()));
  CHECK_FALSE(conic_oracle(Rat(-15), Rat(2), QPlace::prime(Int(5))));
  // cross-check a symbol the CLI also exposes
  QPlace v29 = QPlace::prime(Int(29));
  CHECK(conic_oracle(Rat(377), Rat(14), v29) == (hilbert_symbol(Rat(377), Rat(14), v29) == 1));
}

TEST_CASE("oracle agrees with the symbol formulas") {
  for (const Int& p : {Int(2), Int(3), Int(5), Int(13)}) {
    QPlace v = QPlace::prime(p);
    std::vector<Rat> vals;
    for (long t : {1L, -1L, 2L, -2L, 3L, -3L, 5L, -5L}) vals.push_back(Rat(t));
    long pl = p.get_si();
    vals.push_back(Rat(pl));
    vals.push_back(Rat(-pl));
    vals.push_back(Rat(2 * pl));
    vals.push_back(Rat(-2 * pl));
    for (const Rat& a : vals)
      for (const Rat& c : vals)
        CHECK(conic_oracle(a, c, v) == (hilbert_symbol(a, c, v) == 1));
  }
}

TEST_CASE("hilbert symbol over the unramified quadratic extension of Q_3") {
  // embed Q(i) at the inert place 3
  auto F = NumberField::create(RatPoly({Rat(1), Rat(0), Rat(1)}));
  auto places = places_above(F, Int(3));
  REQUIRE(places.size() == 1);
  REQUIRE(places[0].residue_degree == 2);
  const PlaceOfL& w = places[0];
  auto embed = [&](long re, long im) {
    auto e = F->add(F->from_rational(Rat(re)),
                    F->mul(F->from_rational(Rat(im)), F->theta()));
    return local_embed(F, e, w, 8);
  };
  LocalElement m15 = embed(-15, 0);
  // (1+i)^2 = 2i
  LocalElement onepi = embed(1, 1);
  CHECK(hilbert_symbol_ext(m15, onepi * onepi) == 1);
  // -2(-4-i)(-1-10i): a Q(i)_3-point value from the worked lemma
  LocalElement val = embed(-2, 0) * embed(-4, -1) * embed(-1, -10);
  CHECK(hilbert_symbol_ext(m15, val) == 1);
  // (x, -x) = 1
  LocalElement x = embed(3, 6) * embed(2, 1);
  CHECK(hilbert_symbol_ext(x, -x) == 1);
  // epsilon vanishes for residue field size 9 = 1 mod 4: two uniformizers
  LocalElement pi1 = embed(3, 0), pi2 = embed(3, 0) * embed(2, 1);
  CHECK(hilbert_symbol_ext(pi1, pi1) == hilbert_symbol_ext(pi1, embed(-1, 0)));
  (void)pi2;
}

TEST_CASE("sample_with_symbol determinism and targets") {
  // smallest positive unit with (73, c)_73 = -1 is the smallest nonresidue
  Rat c = sample_with_symbol(Rat(73), QPlace::prime(Int(73)), -1, true);
  CHECK(c == 5);
  CHECK(hilbert_symbol(Rat(73), c, QPlace::prime(Int(73))) == -1);
  // the worked example's choice c = 99 has the same symbol
  CHECK(hilbert_symbol(Rat(73), Rat(99), QPlace::prime(Int(73))) == -1);

  CHECK_THROWS_AS(sample_with_symbol(Rat(4), QPlace::prime(Int(5)), -1, false),
                  unsatisfiable);
  CHECK(sample_with_symbol(Rat(-23), QPlace::inf(), -1, false) == -1);
  // determinism
  for (int i = 0; i < 3; ++i)
    CHECK(sample_with_symbol(Rat(7), QPlace::prime(Int(5)), -1, false) ==
          sample_with_symbol(Rat(7), QPlace::prime(Int(5)), -1, false));
}
