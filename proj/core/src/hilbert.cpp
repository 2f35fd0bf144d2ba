#include "chatelet/hilbert.hpp"

#include <algorithm>
#include <set>

namespace chatelet {

SquareClass square_class_of(const Rat& a, const QPlace& v) {
  if (a == 0) throw invalid_input("square class of zero");
  SquareClass c;
  if (v.infinite) {
    c.F = LocalField::real();
    c.sign = sgn(a);
    return c;
  }
  LocalField F = LocalField::padic(v.p);
  c.F = F;
  c.val = val_p(a, v.p);
  Rat u = unit_part(a, v.p);
  Int m = (v.p == 2) ? Int(8) : v.p;
  Int r = ((num(u) % m) + m) % m;
  r = r * inv_mod(((den(u) % m) + m) % m, m) % m;
  c.unit = {r, 0};
  return c;
}

int hilbert_symbol(const Rat& a, const Rat& b, const QPlace& v) {
  if (a == 0 || b == 0) throw invalid_input("hilbert_symbol: zero argument");
  return SquareClass::pair(square_class_of(a, v), square_class_of(b, v));
}

int hilbert_symbol_ext(const LocalElement& a, const LocalElement& b) {
  if (a.field().kind != LocalField::UnramQuad || !(a.field() == b.field()))
    throw invalid_input("hilbert_symbol_ext expects matching UnramQuad elements");
  auto ca = a.square_class(), cb = b.square_class();
  if (!ca || !cb) throw insufficient_precision("hilbert_symbol_ext: unstable class");
  return SquareClass::pair(*ca, *cb);
}

namespace {

// Scale a nonzero rational by squares into an integer with v_p in {0,1}.
Int reduce_mod_squares(const Rat& x, const Int& p) {
  long v = val_p(x, p);
  Rat u = unit_part(x, p);
  // clear the denominator of u by its square (does not change the class)
  Int n = num(u) * den(u);
  if (v % 2 != 0) n *= p;
  return n;
}

bool conic_oracle_real(const Rat& a, const Rat& c) {
  // y^2 - a z^2 = c over R: a > 0 represents everything; a < 0 represents
  // exactly the nonnegative reals.
  return a > 0 || c > 0;
}

}  // namespace

bool conic_oracle(const Rat& a, const Rat& c, const QPlace& v, int effort) {
  if (a == 0 || c == 0) throw invalid_input("conic_oracle: zero argument");
  if (v.infinite) return conic_oracle_real(a, c);
  const Int& p = v.p;
  Int A = reduce_mod_squares(a, p);
  Int C = reduce_mod_squares(c, p);
  // Projective quadric x0^2 - A x1^2 - C x2^2 = 0 over Z_p. Enumerate
  // primitive representatives mod p^k; a triple certifies via the Newton
  // criterion on one coordinate. No residue solution mod p^k certifies
  // emptiness.
  for (int k = 1; k <= effort; ++k) {
    Int m;
    mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
    bool any_residue_zero = false;
    auto Q = [&](const Int& x0, const Int& x1, const Int& x2) -> Int {
      return x0 * x0 - A * x1 * x1 - C * x2 * x2;
    };
    auto vp = [&](const Int& n) -> long { return n == 0 ? 1000000L : val_p(n, p); };
    auto try_triple = [&](const Int& x0, const Int& x1, const Int& x2) -> std::optional<bool> {
      Int q = Q(x0, x1, x2);
      long vq = vp(q);
      if (vq < k) return std::nullopt;
      any_residue_zero = true;
      long g0 = vp(2 * x0), g1 = vp(2 * A * x1), g2 = vp(2 * C * x2);
      long g = std::min({g0, g1, g2});
      if (vq > 2 * g) return true;  // Newton-lifts to a Z_p zero
      return std::nullopt;
    };
    // patterns (1,*,*), (p*,1,*), (p*,p*,1) cover projective reps
    for (Int x1 = 0; x1 < m; ++x1)
      for (Int x2 = 0; x2 < m; ++x2)
        if (auto r = try_triple(1, x1, x2)) return *r;
    for (Int x0 = 0; x0 < m; x0 += p)
      for (Int x2 = 0; x2 < m; ++x2)
        if (auto r = try_triple(x0, 1, x2)) return *r;
    for (Int x0 = 0; x0 < m; x0 += p)
      for (Int x1 = 0; x1 < m; x1 += p)
        if (auto r = try_triple(x0, x1, 1)) return *r;
    if (!any_residue_zero) return false;
  }
  throw effort_exhausted("conic_oracle: no certified decision at effort");
}

Rat sample_with_symbol(const Rat& a, const QPlace& v, int target, bool want_unit) {
  if (a == 0) throw invalid_input("sample_with_symbol: a = 0");
  if (target != 1 && target != -1) throw invalid_input("target must be +-1");
  if (target == -1) {
    if (v.infinite) {
      if (a > 0) throw unsatisfiable("a is a square over R");
    } else {
      SquareClass ca = square_class_of(a, v);
      if (ca.is_square()) throw unsatisfiable("a is a local square");
      // units pair trivially against an even-valuation class at odd p
      if (want_unit && v.p != 2 && ca.val % 2 == 0)
        throw unsatisfiable("want_unit with target -1 needs v(a) odd at an odd place");
    }
  }
  for (Int n = 1; n < 100000; ++n) {
    for (int s : {+1, -1}) {
      Rat x(s * n, 1);
      if (want_unit && !v.infinite && n % v.p == 0) continue;
      if (hilbert_symbol(a, x, v) == target) return x;
    }
  }
  throw search_exhausted("sample_with_symbol: no candidate found");
}

std::vector<QPlace> symbol_support(const Rat& a, const Rat& b) {
  std::set<Int> ps{Int(2)};
  for (const auto& q : {a, b})
    for (const auto& p : prime_support(q)) ps.insert(p);
  std::vector<QPlace> out{QPlace::inf()};
  for (const auto& p : ps) out.push_back(QPlace::prime(p));
  return out;
}

}  // namespace chatelet
