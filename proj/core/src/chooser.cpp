#include "chatelet/chooser.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace chatelet {

LocalConstraint LocalConstraint::sign_at(int s) {
  LocalConstraint c;
  c.kind = SignAt;
  c.place = QPlace::inf();
  c.sign = s;
  return c;
}
LocalConstraint LocalConstraint::real_range(const RealBound& lo, const RealBound& hi) {
  LocalConstraint c;
  c.kind = RealRange;
  c.place = QPlace::inf();
  c.lo = lo;
  c.hi = hi;
  return c;
}
LocalConstraint LocalConstraint::square_at(const QPlace& v) {
  LocalConstraint c;
  c.kind = SquareAt;
  c.place = v;
  return c;
}
LocalConstraint LocalConstraint::nonsquare_at(const QPlace& v) {
  LocalConstraint c;
  c.kind = NonsquareAt;
  c.place = v;
  return c;
}
LocalConstraint LocalConstraint::val_parity(const Int& p, int parity) {
  LocalConstraint c;
  c.kind = ValParity;
  c.place = QPlace::prime(p);
  c.parity = parity & 1;
  return c;
}
LocalConstraint LocalConstraint::val_equals(const Int& p, long n) {
  LocalConstraint c;
  c.kind = ValEquals;
  c.place = QPlace::prime(p);
  c.n = n;
  return c;
}
LocalConstraint LocalConstraint::val_shifted(const Int& p, const Rat& shift, long n) {
  LocalConstraint c;
  c.kind = ValShifted;
  c.place = QPlace::prime(p);
  c.shift = shift;
  c.n = n;
  return c;
}
LocalConstraint LocalConstraint::unit_at(const Int& p) {
  LocalConstraint c;
  c.kind = UnitAt;
  c.place = QPlace::prime(p);
  return c;
}
LocalConstraint LocalConstraint::hilbert_eq(const QPlace& v, const Rat& ref, int target) {
  LocalConstraint c;
  c.kind = HilbertEq;
  c.place = v;
  c.ref = ref;
  c.target = target;
  return c;
}
LocalConstraint LocalConstraint::integral_outside(std::vector<Int> support) {
  LocalConstraint c;
  c.kind = IntegralOutside;
  c.support = std::move(support);
  return c;
}

namespace {

std::string bound_str(const RealBound& b) {
  switch (b.kind) {
    case RealBound::MinusInf:
      return "-inf";
    case RealBound::PlusInf:
      return "+inf";
    default:
      return rat_to_string(b.value);
  }
}

}  // namespace

std::string LocalConstraint::describe() const {
  switch (kind) {
    case SignAt:
      return std::string("sign(x) = ") + (sign < 0 ? "-" : "+") + " at inf";
    case RealRange:
      return "x in (" + bound_str(lo) + ", " + bound_str(hi) + ")";
    case SquareAt:
      return "x square at " + place.to_string();
    case NonsquareAt:
      return "x nonsquare at " + place.to_string();
    case ValParity:
      return "v_" + place.p.get_str() + "(x) " + (parity ? "odd" : "even");
    case ValEquals:
      return "v_" + place.p.get_str() + "(x) = " + std::to_string(n);
    case ValShifted:
      return "v_" + place.p.get_str() + "(x - (" + rat_to_string(shift) +
             ")) = " + std::to_string(n);
    case UnitAt:
      return "v_" + place.p.get_str() + "(x) = 0";
    case HilbertEq:
      return "(" + rat_to_string(ref) + ", x)_" + place.to_string() + " = " +
             (target < 0 ? "-1" : "+1");
    case IntegralOutside: {
      std::string s = "x integral outside {2";
      for (const auto& p : support) s += "," + p.get_str();
      return s + "}";
    }
  }
  return "?";
}

namespace {

bool holds(const Rat& x, const LocalConstraint& c, std::string& datum) {
  switch (c.kind) {
    case LocalConstraint::SignAt: {
      datum = "sign " + std::to_string(sgn(x));
      return sgn(x) == c.sign;
    }
    case LocalConstraint::RealRange: {
      datum = "x = " + rat_to_string(x);
      if (c.lo.kind == RealBound::Finite && !(x > c.lo.value)) return false;
      if (c.hi.kind == RealBound::Finite && !(x < c.hi.value)) return false;
      return true;
    }
    case LocalConstraint::SquareAt: {
      bool sq = c.place.infinite ? (x > 0)
                                 : square_class_of(x, c.place).is_square();
      datum = sq ? "square" : "nonsquare";
      return sq;
    }
    case LocalConstraint::NonsquareAt: {
      bool sq = c.place.infinite ? (x > 0)
                                 : square_class_of(x, c.place).is_square();
      datum = sq ? "square" : "nonsquare";
      return !sq;
    }
    case LocalConstraint::ValParity: {
      long v = val_p(x, c.place.p);
      datum = "v = " + std::to_string(v);
      return (v & 1) == c.parity;
    }
    case LocalConstraint::ValEquals: {
      long v = val_p(x, c.place.p);
      datum = "v = " + std::to_string(v);
      return v == c.n;
    }
    case LocalConstraint::ValShifted: {
      Rat y = x - c.shift;
      if (y == 0) {
        datum = "x = shift";
        return false;
      }
      long v = val_p(y, c.place.p);
      datum = "v(x - shift) = " + std::to_string(v);
      return v == c.n;
    }
    case LocalConstraint::UnitAt: {
      long v = val_p(x, c.place.p);
      datum = "v = " + std::to_string(v);
      return v == 0;
    }
    case LocalConstraint::HilbertEq: {
      int s = hilbert_symbol(c.ref, x, c.place);
      datum = "symbol " + std::to_string(s);
      return s == c.target;
    }
    case LocalConstraint::IntegralOutside: {
      for (const auto& p : prime_support(x)) {
        if (p == 2) continue;
        if (val_p(x, p) >= 0) continue;
        if (std::find(c.support.begin(), c.support.end(), p) == c.support.end()) {
          datum = "denominator at " + p.get_str();
          return false;
        }
      }
      datum = "integral";
      return true;
    }
  }
  return false;
}

struct PlaceAnalysis {
  std::optional<long> pinned_val;       // from ValEquals / ValParity(odd)/UnitAt
  std::optional<int> val_parity;        // from ValParity
  bool square = false, nonsquare = false;
  std::vector<std::pair<Rat, long>> shifted;  // ValShifted data
  std::vector<std::pair<Rat, int>> hilbert;   // HilbertEq data
};

// Feasibility screen at one finite place; throws unsatisfiable on a
// contradiction that no candidate could ever pass.
void screen_place(const Int& p, const PlaceAnalysis& pa) {
  auto fail = [&](const std::string& why) {
    throw unsatisfiable("at p=" + p.get_str() + ": " + why);
  };
  if (pa.square && pa.nonsquare) fail("square and nonsquare");
  std::optional<int> parity = pa.val_parity;
  if (pa.pinned_val) {
    int pp = static_cast<int>(*pa.pinned_val & 1);
    if (parity && *parity != pp) fail("valuation parity conflict");
    parity = pp;
  }
  if (pa.square && parity && *parity == 1) fail("square with odd valuation");
  if (p != 2) {
    for (auto& [ref, target] : pa.hilbert) {
      SquareClass ca = square_class_of(ref, QPlace::prime(p));
      bool ref_square = ca.is_square();
      if (ref_square && target == -1) fail("(square, x) = -1");
      long alpha = ca.val;
      // symbol = (-1)^{alpha beta eps} chi(u_ref)^beta chi(u_x)^alpha
      if (alpha % 2 == 0 && parity) {
        // symbol depends only on chi(u_x)^alpha = 1 and chi(u_ref)^beta
        int forced = 1;
        if ((*parity & 1) && residue_chi(ca.F, ca.unit) == -1) forced = -1;
        bool can_vary = (alpha % 2) != 0;  // false here
        if (!can_vary && pa.square && forced != target) fail("hilbert conflict");
        (void)forced;
      }
    }
  }
}

}  // namespace

std::vector<Violation> check_constraints(const Rat& x, const ConstraintSet& cs) {
  if (x == 0) throw invalid_input("check_constraints: x = 0");
  std::vector<Violation> out;
  for (const auto& c : cs.constraints) {
    std::string datum;
    if (!holds(x, c, datum)) out.push_back({c, datum});
  }
  return out;
}

Rat solve_constraints(const ConstraintSet& cs, long cap) {
  // Per-place analysis and feasibility screen.
  std::map<Int, PlaceAnalysis> places;
  int forced_sign = 0;
  for (const auto& c : cs.constraints) {
    switch (c.kind) {
      case LocalConstraint::SignAt:
        if (forced_sign != 0 && forced_sign != c.sign)
          throw unsatisfiable("conflicting signs at the real place");
        forced_sign = c.sign;
        break;
      case LocalConstraint::RealRange:
        if (c.hi.kind == RealBound::Finite && c.hi.value <= 0) forced_sign = -1;
        if (c.lo.kind == RealBound::Finite && c.lo.value >= 0) forced_sign = +1;
        break;
      case LocalConstraint::SquareAt:
        if (c.place.infinite)
          forced_sign = +1;
        else
          places[c.place.p].square = true;
        break;
      case LocalConstraint::NonsquareAt:
        if (c.place.infinite)
          forced_sign = -1;
        else
          places[c.place.p].nonsquare = true;
        break;
      case LocalConstraint::ValParity:
        places[c.place.p].val_parity = c.parity;
        if (c.parity == 1 && !places[c.place.p].pinned_val)
          places[c.place.p].pinned_val = 1;
        break;
      case LocalConstraint::ValEquals: {
        auto& pa = places[c.place.p];
        if (pa.pinned_val && *pa.pinned_val != c.n && !pa.val_parity)
          throw unsatisfiable("conflicting pinned valuations");
        pa.pinned_val = c.n;
        break;
      }
      case LocalConstraint::ValShifted:
        places[c.place.p].shifted.push_back({c.shift, c.n});
        break;
      case LocalConstraint::UnitAt: {
        auto& pa = places[c.place.p];
        if (pa.pinned_val && *pa.pinned_val != 0)
          throw unsatisfiable("unit conflicts pinned valuation");
        pa.pinned_val = 0;
        break;
      }
      case LocalConstraint::HilbertEq:
        if (!c.place.infinite) places[c.place.p].hilbert.push_back({c.ref, c.target});
        break;
      case LocalConstraint::IntegralOutside:
        break;
    }
  }
  for (auto& [p, pa] : places) screen_place(p, pa);

  // Denominator needed at p when a pinned valuation is negative.
  Int D(1);
  for (auto& [p, pa] : places) {
    long d = 0;
    if (pa.pinned_val && *pa.pinned_val < 0) d = -*pa.pinned_val;
    for (auto& [s, n] : pa.shifted)
      if (n < 0) d = std::max(d, -n);
    for (long i = 0; i < d; ++i) D *= p;
  }

  // Hard congruences in y = x * D.
  std::vector<Int> rs, ms;
  for (auto& [p, pa] : places) {
    long dp = val_p(D, p);
    std::vector<std::pair<Int, Int>> congs;  // residue, modulus (powers of p)
    if (pa.pinned_val && *pa.pinned_val + dp >= 1) {
      Int m(1);
      for (long i = 0; i < *pa.pinned_val + dp; ++i) m *= p;
      congs.push_back({Int(0), m});
    }
    for (auto& [s, n] : pa.shifted) {
      long np = n + dp;
      if (np < 1) continue;
      Rat sd = s * Rat(D, 1);
      if (val_p(sd == 0 ? Rat(1) : sd, p) < 0) continue;  // handled by filter
      Int m(1);
      for (long i = 0; i < np; ++i) m *= p;
      Int nu = ((num(sd) % m) + m) % m;
      Int de = ((den(sd) % m) + m) % m;
      congs.push_back({nu * inv_mod(de, m) % m, m});
    }
    if (pa.square && p == 2 && dp == 0 && congs.empty()) {
      congs.push_back({Int(1), Int(8)});
      if (pa.pinned_val && *pa.pinned_val != 0)
        throw unsatisfiable("dyadic square with nonzero pinned valuation");
    }
    if (congs.empty()) continue;
    // merge congruences at the same prime; incompatibilities are unsatisfiable
    Int R = congs[0].first, M = congs[0].second;
    for (size_t i = 1; i < congs.size(); ++i) {
      Int R2 = congs[i].first, M2 = congs[i].second;
      Int big = M >= M2 ? M : M2, small = M >= M2 ? M2 : M;
      Int rb = M >= M2 ? R : R2, rsm = M >= M2 ? R2 : R;
      if ((rb - rsm) % small != 0)
        throw unsatisfiable("conflicting congruences at p=" + p.get_str());
      R = rb;
      M = big;
    }
    rs.push_back(R);
    ms.push_back(M);
  }
  Int M0(1), x0(0);
  if (!rs.empty()) {
    x0 = crt(rs, ms);
    for (auto& m : ms) M0 *= m;
  }

  // Candidate stream: y = x0 mod M0, merged by ascending |y| with positive
  // values first on ties.
  x0 = ((x0 % M0) + M0) % M0;
  Int pos_next = (x0 == 0) ? M0 : x0;  // skip y = 0
  Int neg_next = x0 - M0;
  auto try_candidate = [&](const Int& y) -> std::optional<Rat> {
    if (forced_sign > 0 && y <= 0) return std::nullopt;
    if (forced_sign < 0 && y >= 0) return std::nullopt;
    Rat x(y, D);
    x.canonicalize();
    if (check_constraints(x, cs).empty()) return x;
    return std::nullopt;
  };
  for (long iter = 0; iter < cap; ++iter) {
    Int y;
    if (abs(pos_next) <= abs(neg_next)) {
      y = pos_next;
      pos_next += M0;
    } else {
      y = neg_next;
      neg_next -= M0;
    }
    if (auto x = try_candidate(y)) return *x;
  }
  throw search_exhausted("solve_constraints: candidate cap reached");
}

std::vector<QPlace> sprime_of(const Rat& a) {
  std::vector<QPlace> out;
  if (a < 0) out.push_back(QPlace::inf());
  for (const auto& p : prime_support(a)) {
    if (p == 2) continue;
    if (val_p(a, p) % 2 != 0) out.push_back(QPlace::prime(p));
  }
  return out;
}

ChoiceTrace choose_a(const NumberFieldPtr& L, std::vector<QPlace> S) {
  for (const auto& v : S)
    if (!v.infinite && v.p == 2)
      throw invalid_input("choose_a: S must avoid dyadic places");
  if (S.empty()) {
    Int v0 = find_split_primes(L, 1, Int(2))[0];
    S.push_back(QPlace::prime(v0));
  }
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end(),
                      [](const QPlace& a, const QPlace& b) { return a == b; }),
          S.end());
  ConstraintSet cs;
  cs.constraints.push_back(LocalConstraint::square_at(QPlace::prime(Int(2))));
  for (const auto& v : S) {
    if (v.infinite)
      cs.constraints.push_back(LocalConstraint::sign_at(-1));
    else
      cs.constraints.push_back(LocalConstraint::val_parity(v.p, 1));
  }
  cs.constraints.push_back(LocalConstraint::integral_outside({}));
  ChoiceTrace tr;
  tr.S_effective = S;
  tr.constraints = cs;
  tr.a = solve_constraints(cs);
  tr.S_prime = sprime_of(tr.a);
  auto [r, s] = L->signature();
  for (const auto& v : S) {
    bool split = v.infinite ? (s == 0) : splits_completely(L, v.p);
    if (split) {
      tr.nonsquare_in_L_certificate = v;
      break;
    }
  }
  return tr;
}

}  // namespace chatelet
