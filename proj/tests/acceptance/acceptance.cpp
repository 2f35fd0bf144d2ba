// Acceptance suite: one check per shipped claim, one PASS/FAIL line each.
// Everything is exact arithmetic; there are no tolerances to tune.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "chatelet/construct.hpp"
#include "chatelet/fibration.hpp"
#include "chatelet/manifest.hpp"
#include "chatelet/surface.hpp"

using namespace chatelet;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail = "") {
  std::cout << "[" << (idx < 10 ? " " : "") << idx << "] " << (pass ? "PASS" : "FAIL")
            << "  " << name;
  if (!detail.empty()) std::cout << "  -- " << detail;
  std::cout << std::endl;
  if (!pass) ++failures;
}

RatPoly rp(std::vector<long> c) {
  std::vector<Rat> r;
  for (long x : c) r.push_back(Rat(x));
  return RatPoly(std::move(r));
}

NumberFieldPtr sqrt3() { return NumberField::create(rp({-3, 0, 1})); }
NumberFieldPtr zeta7() { return NumberField::create(rp({-1, -2, 1, 1})); }

bool run_entry_checks(const std::string& id, std::string& detail) {
  auto entries = select_entries(id);
  if (entries.size() != 1) {
    detail = "manifest entry not found";
    return false;
  }
  bool ok = true;
  std::ostringstream os;
  for (const auto& c : entries[0]->run()) {
    if (!c.pass) {
      ok = false;
      os << c.name << "; ";
    }
  }
  detail = os.str();
  return ok;
}

// 1. product formula on 500 seeded pairs
void criterion_1() {
  std::mt19937_64 rng(424242);
  bool ok = true;
  for (int i = 0; i < 500; ++i) {
    long an = static_cast<long>(rng() % 999) - 499;
    long bn = static_cast<long>(rng() % 999) - 499;
    if (an == 0 || bn == 0) {
      --i;
      continue;
    }
    Rat a(an, static_cast<long>(rng() % 50) + 1);
    Rat b(bn, static_cast<long>(rng() % 50) + 1);
    a.canonicalize();
    b.canonicalize();
    int prod = 1;
    for (const auto& v : symbol_support(a, b)) prod *= hilbert_symbol(a, b, v);
    if (prod != 1) ok = false;
  }
  report(1, "Hilbert product formula on 500 seeded pairs", ok);
}

// 2. exhaustive symbol-oracle agreement
void criterion_2() {
  int disagreements = 0, checked = 0;
  for (const Int& p : {Int(2), Int(3), Int(5), Int(13)}) {
    std::vector<Rat> vals;
    for (long t : {1L, -1L, 2L, -2L, 3L, -3L, 5L, -5L}) vals.push_back(Rat(t));
    long pl = p.get_si();
    for (long t : {pl, -pl, 2 * pl, -2 * pl}) vals.push_back(Rat(t));
    QPlace v = QPlace::prime(p);
    for (const Rat& a : vals)
      for (const Rat& b : vals) {
        ++checked;
        if (conic_oracle(a, b, v) != (hilbert_symbol(a, b, v) == 1)) ++disagreements;
      }
  }
  // real place
  for (long a : {1L, -1L, 2L, -2L, 3L, -3L, 5L, -5L})
    for (long b : {1L, -1L, 2L, -2L, 3L, -3L, 5L, -5L}) {
      ++checked;
      if (conic_oracle(Rat(a), Rat(b), QPlace::inf()) !=
          (hilbert_symbol(Rat(a), Rat(b), QPlace::inf()) == 1))
        ++disagreements;
    }
  report(2, "symbol-oracle exhaustive agreement", disagreements == 0,
         std::to_string(checked) + " pairs, " + std::to_string(disagreements) +
             " disagreements");
}

void criterion_3() {
  std::string detail;
  bool ok = run_entry_checks("example-3.1-cubic", detail);
  report(3, "no local points exactly at 29, also at the three places above 29", ok,
         detail);
}

void criterion_4() {
  std::string d1, d2;
  bool ok1 = run_entry_checks("example-3.1-real", d1);
  bool ok2 = run_entry_checks("example-3.1-real-v0", d2);
  report(4, "real-place pair: no points exactly at inf resp. exactly at 23", ok1 && ok2,
         d1 + d2);
}

void criterion_5() {
  std::string detail;
  bool ok = run_entry_checks("example-3.2", detail);
  report(5, "two-valued invariants at 73, rational point, WA fails off {73}", ok, detail);
}

void criterion_6() {
  std::string detail;
  bool ok = run_entry_checks("example-3.3", detail);
  report(6,
         "forced 1/2 at 13: Hasse counterexample over Q, no point over the cubic field",
         ok, detail);
}

void criterion_7() {
  std::string detail;
  bool ok = run_entry_checks("example-7.4", detail);
  report(7, "Q(i) suite: V_inf fails exactly at 5, V_1 adelic with forced 1/2 at 3", ok,
         detail);
}

void criterion_8() {
  bool ok = true;
  std::ostringstream os;
  auto expect_insolvable = [&](const Construction& cons, const std::string& at) {
    Verdict v = global_analysis(cons.surface);
    if (v.classification != Verdict::LocallyInsolvable) {
      ok = false;
      os << "not insolvable for S={" << at << "}; ";
      return;
    }
    for (const auto& la : v.table) {
      std::string nm =
          la.place.kind == PlaceOfL::RealEmb ? "inf" : la.place.p.get_str();
      if (!la.solvable && nm != at) {
        ok = false;
        os << "unexpected insolvable place " << nm << "; ";
      }
    }
  };
  expect_insolvable(construct_insolvable_on_s(sqrt3(), {QPlace::prime(Int(23))}), "23");
  expect_insolvable(construct_insolvable_on_s(sqrt3(), {QPlace::inf()}), "inf");
  expect_insolvable(construct_insolvable_on_s(zeta7(), {QPlace::prime(Int(29))}), "29");
  {
    auto cons = construct_two_valued_on_s(sqrt3(), {QPlace::prime(Int(73))});
    Verdict v = global_analysis(cons.surface);
    if (v.classification != Verdict::RationalPointsExistWAFailsOff ||
        v.witness_places.size() != 1 || !(v.witness_places[0].p == 73)) {
      ok = false;
      os << "two-valued closed loop off; ";
    }
    for (const auto& la : v.table) {
      auto expect = (la.place.p == 73) ? std::set<Inv>{Inv::Zero, Inv::Half}
                                       : std::set<Inv>{Inv::Zero};
      if (la.invariants != expect) {
        ok = false;
        os << "two-valued invariants off at " << la.place.to_string() << "; ";
      }
    }
  }
  {
    auto cons = construct_forced_half_on_s(zeta7(), {QPlace::prime(Int(13))});
    Verdict v = global_analysis(cons.surface);
    if (v.classification != Verdict::HasseCounterexampleBM) {
      ok = false;
      os << "forced-half closed loop off (" << v.classification_name() << "); ";
    }
    for (const auto& la : v.table) {
      auto expect =
          (la.place.p == 13) ? std::set<Inv>{Inv::Half} : std::set<Inv>{Inv::Zero};
      if (la.invariants != expect) {
        ok = false;
        os << "forced-half invariants off at " << la.place.to_string() << "; ";
      }
    }
  }
  // published parameter triples pass the recipe checkers verbatim
  auto check_params = [&](Recipe r, NumberFieldPtr L, std::vector<QPlace> S, Rat a,
                          Rat b, Rat c, std::optional<Int> v1 = std::nullopt,
                          std::optional<Int> v2 = std::nullopt) {
    if (!check_recipe_parameters(r, L, S, a, b, c, v1, v2).empty()) {
      ok = false;
      os << "published triple rejected (a=" << rat_to_string(a) << "); ";
    }
  };
  check_params(Recipe::InsolvableOnS, zeta7(), {QPlace::prime(Int(29))}, Rat(377),
               Rat(14), Rat(238));
  check_params(Recipe::InsolvableOnS, sqrt3(), {QPlace::inf()}, Rat(-23), Rat(-5),
               Rat(5));
  check_params(Recipe::InsolvableOnS, sqrt3(), {QPlace::prime(Int(23))}, Rat(-23),
               Rat(5), Rat(35));
  check_params(Recipe::TwoValuedOnS, sqrt3(), {QPlace::prime(Int(73))}, Rat(73),
               Rat(1, 73), Rat(99), Int(11), Int(23));
  check_params(Recipe::ForcedHalfOnS, zeta7(), {QPlace::prime(Int(13))}, Rat(377),
               Rat(5), Rat(Int("878755181")), Int(43), Int(41));
  report(8, "constructor closed loops + published triples pass the checkers", ok,
         os.str());
}

void criterion_9() {
  bool ok = find_split_primes(zeta7(), 4, Int(2)) ==
            std::vector<Int>{Int(13), Int(29), Int(41), Int(43)};
  auto s3 = find_split_primes(sqrt3(), 3, Int(2));
  bool has11 = std::find(s3.begin(), s3.end(), Int(11)) != s3.end();
  bool has23 = std::find(s3.begin(), s3.end(), Int(23)) != s3.end();
  report(9, "split-prime searches: [13,29,41,43] and {11,23}", ok && has11 && has23);
}

void criterion_10() {
  bool ok = true;
  std::ostringstream os;
  for (const char* id : {"example-7.1", "example-7.2", "example-7.3", "example-7.4"}) {
    std::string detail;
    if (!run_entry_checks(id, detail)) {
      ok = false;
      os << id << ": " << detail;
    }
  }
  report(10, "fibration checks for the four pencils", ok,
         ok ? "sec. 7.2's published second branch constant is a transcription slip; "
              "the exact component is verified instead (see the manifest entry and "
              "the notes)"
            : os.str());
}

void criterion_11() {
  std::mt19937_64 rng(515151);
  bool ok = true;
  std::ostringstream os;
  auto Q = NumberField::rationals();
  auto q_place = [&](const Int& p) { return places_above(Q, p)[0]; };
  int done = 0;
  while (done < 50) {
    long av = static_cast<long>(rng() % 30) + 2;
    long c1 = static_cast<long>(rng() % 19) - 9, c0 = static_cast<long>(rng() % 19) - 9;
    long d1 = static_cast<long>(rng() % 19) - 9, d0 = static_cast<long>(rng() % 19) - 9;
    if (c1 == 0 || c0 == 0 || d1 == 0 || d0 == 0) continue;
    Rat a(av);
    Int an = num(a);
    if (mpz_perfect_square_p(an.get_mpz_t())) continue;
    RatPoly f1({Rat(c0), Rat(0), Rat(c1)}), f2({Rat(d0), Rat(0), Rat(d1)});
    RatPoly P = f1 * f2;
    if (discriminant(P) == 0) continue;
    ++done;
    ChateletSurface V = ChateletSurface::over_q(a, P, std::make_pair(f1, f2));
    long t = static_cast<long>(rng() % 5) + 2, s = static_cast<long>(rng() % 5) + 2;
    ChateletSurface W = ChateletSurface::over_q(a * t * t, P * Rat(s * s),
                                                std::make_pair(f1 * Rat(s * s), f2));
    for (const Int& p : {Int(2), Int(3), Int(5), Int(13)}) {
      LocalAnalysis la = analyze_place(V, q_place(p));
      LocalAnalysis lb = analyze_place(W, q_place(p));
      LocalAnalysis lc = analyze_place(V, q_place(p));  // determinism / stability
      if (la.solvable != lb.solvable || la.invariants != lb.invariants) {
        ok = false;
        os << "scaling flip at p=" << p.get_str() << "; ";
      }
      if (la.solvable != lc.solvable || la.invariants != lc.invariants) {
        ok = false;
        os << "instability at p=" << p.get_str() << "; ";
      }
    }
    // precision monotonicity of certified square classes on the same corpus
    for (const Int& p : {Int(3), Int(5)}) {
      auto F = LocalField::padic(p);
      for (long xv : {1L, 2L, 3L}) {
        auto x1 = embed_rational(Rat(xv), F, 8);
        auto x2 = embed_rational(Rat(xv), F, 16);
        auto s1 = stable_square_class(P, x1);
        auto s2 = stable_square_class(P, x2);
        if (s1 && s2 &&
            (s1->val != s2->val ||
             residue_chi(F, s1->unit) != residue_chi(F, s2->unit))) {
          ok = false;
          os << "precision flip; ";
        }
      }
    }
  }
  report(11,
         "property suites: scaling invariance + precision stabilization (50 surfaces)",
         ok, os.str());
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT") << " (" << ms
            << " ms)" << std::endl;
  return failures == 0 ? 0 : 1;
}
