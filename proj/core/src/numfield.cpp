#include "chatelet/numfield.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace chatelet {

namespace {

Int ppow(const Int& p, long k) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

// --- dense polynomials over F_p ---------------------------------------

struct FpPoly {
  Int p;
  std::vector<Int> c;  // lowest degree first, reduced mod p, trimmed

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool zero() const { return c.empty(); }
};

FpPoly fp_from(const RatPoly& f, const Int& p) {
  FpPoly g{p, {}};
  g.c.resize(f.degree() + 1);
  for (int i = 0; i <= f.degree(); ++i) {
    Int n = ((num(f[i]) % p) + p) % p;
    Int d = ((den(f[i]) % p) + p) % p;
    if (d == 0) throw invalid_input("fp_from: denominator divisible by p");
    g.c[i] = n * inv_mod(d, p) % p;
  }
  g.trim();
  return g;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  if (a.zero() || b.zero()) return {a.p, {}};
  FpPoly r{a.p, std::vector<Int>(a.c.size() + b.c.size() - 1, Int(0))};
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % a.p;
  r.trim();
  return r;
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& m) {
  FpPoly r = a;
  Int lcinv = inv_mod(m.c.back(), m.p);
  while (r.deg() >= m.deg()) {
    Int f = r.c.back() * lcinv % m.p;
    int k = r.deg() - m.deg();
    for (int i = 0; i <= m.deg(); ++i)
      r.c[k + i] = ((r.c[k + i] - f * m.c[i]) % m.p + m.p) % m.p;
    r.trim();
    if (r.zero()) break;
  }
  return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b) {
  while (!b.zero()) {
    FpPoly r = fp_mod(a, b);
    a = b;
    b = r;
  }
  if (!a.zero()) {
    Int inv = inv_mod(a.c.back(), a.p);
    for (auto& x : a.c) x = x * inv % a.p;
  }
  return a;
}

FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& m) {
  FpPoly r{base.p, {Int(1)}};
  FpPoly b = fp_mod(base, m);
  Int ee = e;
  while (ee > 0) {
    if (mpz_odd_p(ee.get_mpz_t())) r = fp_mod(fp_mul(r, b), m);
    b = fp_mod(fp_mul(b, b), m);
    ee >>= 1;
  }
  return r;
}

FpPoly fp_x(const Int& p) { return {p, {Int(0), Int(1)}}; }

FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
  FpPoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), Int(0));
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = ((r.c[i] - b.c[i]) % a.p + a.p) % a.p;
  r.trim();
  return r;
}

FpPoly fp_divexact(const FpPoly& a, const FpPoly& b) {
  // a = q*b exactly
  FpPoly q{a.p, {}}, r = a;
  if (a.deg() >= b.deg()) q.c.assign(a.deg() - b.deg() + 1, Int(0));
  Int lcinv = inv_mod(b.c.back(), b.p);
  while (!r.zero() && r.deg() >= b.deg()) {
    Int f = r.c.back() * lcinv % a.p;
    int k = r.deg() - b.deg();
    q.c[k] = f;
    for (int i = 0; i <= b.deg(); ++i)
      r.c[k + i] = ((r.c[k + i] - f * b.c[i]) % a.p + a.p) % a.p;
    r.trim();
  }
  q.trim();
  return q;
}

// Distinct-degree decomposition of squarefree monic g: list of (degree, product).
std::vector<std::pair<int, FpPoly>> fp_ddf(FpPoly g) {
  std::vector<std::pair<int, FpPoly>> out;
  Int inv = inv_mod(g.c.back(), g.p);
  for (auto& x : g.c) x = x * inv % g.p;
  FpPoly h = fp_x(g.p);
  int d = 0;
  while (g.deg() > 0) {
    ++d;
    if (2 * d > g.deg()) {
      out.push_back({g.deg(), g});
      break;
    }
    h = fp_powmod(h, g.p, g);
    FpPoly gd = fp_gcd(g, fp_sub(h, fp_x(g.p)));
    if (gd.deg() > 0) {
      out.push_back({d, gd});
      g = fp_divexact(g, gd);
      h = fp_mod(h, g);
    }
  }
  return out;
}

// Split a product of degree-d irreducibles into its factors (deterministic
// equal-degree splitting; p odd, or trivial cases).
void fp_edf(const FpPoly& g, int d, std::vector<FpPoly>& out) {
  if (g.deg() == d) {
    out.push_back(g);
    return;
  }
  Int q = ppow(g.p, d);
  Int e = (q - 1) / 2;
  for (Int s = 0;; ++s) {
    FpPoly t{g.p, {s % g.p, Int(1)}};  // x + s
    FpPoly pw = fp_powmod(t, e, g);
    FpPoly one{g.p, {Int(1)}};
    FpPoly h = fp_gcd(g, fp_sub(pw, one));
    if (h.deg() > 0 && h.deg() < g.deg()) {
      fp_edf(h, d, out);
      fp_edf(fp_divexact(g, h), d, out);
      return;
    }
    if (s > 4 * g.p) throw search_exhausted("equal-degree splitting stalled");
  }
}

// Full monic factorization of squarefree f mod p, deterministic order:
// sorted by (degree, coefficient list lexicographically).
std::vector<FpPoly> fp_factor(const FpPoly& f) {
  std::vector<FpPoly> factors;
  for (auto& [d, g] : fp_ddf(f)) {
    if (f.p == 2) {
      // tiny field: scan irreducible candidates directly
      // (only degree <= 4 inputs occur here)
      std::vector<FpPoly> fs;
      FpPoly rem = g;
      for (Int mask = 0; rem.deg() > d - 1 && mask < 64; ++mask) {
        FpPoly cand{f.p, {}};
        cand.c.resize(d + 1);
        Int m = mask;
        for (int i = 0; i < d; ++i) {
          cand.c[i] = m % 2;
          m /= 2;
        }
        cand.c[d] = 1;
        cand.trim();
        if (cand.deg() != d) continue;
        FpPoly h = fp_gcd(rem, cand);
        if (h.deg() == d) {
          fs.push_back(h);
          rem = fp_divexact(rem, h);
        }
      }
      if (rem.deg() > 0) fs.push_back(rem);
      for (auto& h : fs) factors.push_back(h);
      continue;
    }
    fp_edf(g, d, factors);
  }
  auto key = [](const FpPoly& a, const FpPoly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (int i = a.deg(); i >= 0; --i)
      if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
  };
  std::sort(factors.begin(), factors.end(), key);
  return factors;
}

}  // namespace

// --- NumberField -------------------------------------------------------

NumberFieldPtr NumberField::create(const RatPoly& f) {
  if (f.degree() < 1) throw invalid_input("defining polynomial must be nonconstant");
  if (f.lc() != 1) throw invalid_input("defining polynomial must be monic");
  for (int i = 0; i <= f.degree(); ++i)
    if (den(f[i]) != 1) throw invalid_input("defining polynomial must be integral");
  auto F = std::make_shared<NumberField>();
  F->f_ = f;
  F->disc_ = f.degree() >= 1 ? discriminant(f) : Rat(1);
  if (F->disc_ == 0) throw invalid_input("defining polynomial must be squarefree");
  if (f.degree() == 1) {
    F->certified_ = true;
  } else {
    for (Int p = 2; p < 100; p = next_prime(p)) {
      if (num(F->disc_) % p == 0) continue;
      auto dd = fp_ddf(fp_from(f, p));
      if (dd.size() == 1 && dd[0].first == f.degree()) {
        F->certified_ = true;
        break;
      }
    }
  }
  return F;
}

NumberFieldPtr NumberField::rationals() { return create(RatPoly::monomial(1)); }

NFElement NumberField::zero() const { return from_rational(Rat(0)); }
NFElement NumberField::one() const { return from_rational(Rat(1)); }

NFElement NumberField::theta() const {
  if (degree() < 2) return zero();  // theta = 0 in Q (root of x)
  std::vector<Rat> c(degree(), Rat(0));
  c[1] = 1;
  return from_coords(std::move(c));
}

NFElement NumberField::from_rational(const Rat& q) const {
  std::vector<Rat> c(degree(), Rat(0));
  c[0] = q;
  return {shared_from_this(), std::move(c)};
}

NFElement NumberField::from_coords(std::vector<Rat> coords) const {
  if (static_cast<int>(coords.size()) != degree())
    throw invalid_input("NFElement coordinate length mismatch");
  return {shared_from_this(), std::move(coords)};
}

bool NFElement::is_zero() const {
  for (const auto& c : coords)
    if (c != 0) return false;
  return true;
}

bool NFElement::is_rational() const {
  for (size_t i = 1; i < coords.size(); ++i)
    if (coords[i] != 0) return false;
  return true;
}

Rat NFElement::rational_value() const {
  if (!is_rational()) throw invalid_input("element is not rational");
  return coords[0];
}

std::string NFElement::to_string() const {
  RatPoly g{std::vector<Rat>(coords)};
  return g.to_string("t");
}

NFElement NumberField::add(const NFElement& a, const NFElement& b) const {
  std::vector<Rat> c(degree());
  for (int i = 0; i < degree(); ++i) c[i] = a.coords[i] + b.coords[i];
  return {shared_from_this(), std::move(c)};
}

NFElement NumberField::sub(const NFElement& a, const NFElement& b) const {
  std::vector<Rat> c(degree());
  for (int i = 0; i < degree(); ++i) c[i] = a.coords[i] - b.coords[i];
  return {shared_from_this(), std::move(c)};
}

NFElement NumberField::neg(const NFElement& a) const {
  std::vector<Rat> c(degree());
  for (int i = 0; i < degree(); ++i) c[i] = -a.coords[i];
  return {shared_from_this(), std::move(c)};
}

NFElement NumberField::mul(const NFElement& a, const NFElement& b) const {
  RatPoly pa{std::vector<Rat>(a.coords)}, pb{std::vector<Rat>(b.coords)};
  RatPoly prod = pa * pb;
  RatPoly q, r;
  RatPoly::divmod(prod, f_, q, r);
  std::vector<Rat> c(degree(), Rat(0));
  for (int i = 0; i <= r.degree(); ++i) c[i] = r[i];
  return {shared_from_this(), std::move(c)};
}

NFElement NumberField::inv(const NFElement& a) const {
  if (a.is_zero()) throw invalid_input("inverse of zero");
  // extended euclid: u*g + v*f = 1
  RatPoly g{std::vector<Rat>(a.coords)};
  RatPoly r0 = f_, r1 = g, s0 = RatPoly(), s1 = RatPoly::constant(Rat(1));
  while (!r1.is_zero() && r1.degree() > 0) {
    RatPoly q, r;
    RatPoly::divmod(r0, r1, q, r);
    RatPoly s = s0 - q * s1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s;
  }
  if (r1.is_zero()) throw invalid_input("element not invertible (f reducible?)");
  RatPoly u = s1 * (Rat(1) / r1[0]);
  RatPoly q, r;
  RatPoly::divmod(u, f_, q, r);
  std::vector<Rat> c(degree(), Rat(0));
  for (int i = 0; i <= r.degree(); ++i) c[i] = r[i];
  return {shared_from_this(), std::move(c)};
}

NFElement NumberField::pow(const NFElement& a, long e) const {
  if (e < 0) return pow(inv(a), -e);
  NFElement r = one(), b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Rat NumberField::norm(const NFElement& a) const {
  if (a.is_zero()) return Rat(0);
  RatPoly g{std::vector<Rat>(a.coords)};
  return resultant(f_, g);  // f monic
}

std::pair<int, int> NumberField::signature() const {
  int r = real_root_count(f_);
  return {r, (degree() - r) / 2};
}

// --- splitting ---------------------------------------------------------

SplittingType splitting_type(const NumberFieldPtr& F, const Int& p) {
  SplittingType st;
  if (F->degree() == 1) {
    st.residue_degrees = {1};
    return st;
  }
  if (num(F->disc()) % p == 0) {
    st.ramified = true;
    return st;
  }
  auto dd = fp_ddf(fp_from(F->defining_poly(), p));
  for (auto& [d, g] : dd)
    for (int i = 0; i < g.deg() / d; ++i) st.residue_degrees.push_back(d);
  std::sort(st.residue_degrees.begin(), st.residue_degrees.end());
  return st;
}

bool splits_completely(const NumberFieldPtr& F, const Int& p) {
  if (F->degree() == 1) return true;
  if (num(F->disc()) % p == 0) return false;
  FpPoly f = fp_from(F->defining_poly(), p);
  // all roots in F_p and squarefree  <=>  x^p = x mod (f, p)
  FpPoly xp = fp_powmod(fp_x(p), p, f);
  FpPoly diff = fp_sub(xp, fp_x(p));
  return diff.zero();
}

std::vector<Int> find_split_primes(const NumberFieldPtr& F, int count, const Int& lower,
                                   const std::vector<Int>& avoid) {
  if (count < 1) throw invalid_input("find_split_primes: count >= 1");
  std::vector<Int> out;
  Int p = lower;
  long steps = 0;
  while (static_cast<int>(out.size()) < count) {
    p = next_prime(p);
    if (++steps > 2000000) throw search_exhausted("split-prime search cap hit");
    if (p == 2) continue;
    if (std::find(avoid.begin(), avoid.end(), p) != avoid.end()) continue;
    if (num(F->disc()) % p == 0) continue;
    if (splits_completely(F, p)) out.push_back(p);
  }
  return out;
}

// --- places ------------------------------------------------------------

std::string PlaceOfL::to_string() const {
  switch (kind) {
    case RealEmb:
      return "real#" + std::to_string(index);
    case ComplexEmb:
      return "complex#" + std::to_string(index);
    case FiniteSupported:
      return p.get_str() + "#" + std::to_string(index) + "(f=" +
             std::to_string(residue_degree) + ")";
    case FiniteOther:
      return p.get_str() + "#other";
  }
  return "?";
}

std::vector<PlaceOfL> places_above(const NumberFieldPtr& F, const Int& p) {
  std::vector<PlaceOfL> out;
  if (F->degree() == 1) {
    out.push_back({PlaceOfL::FiniteSupported, p, 0, 1, false});
    return out;
  }
  if (num(F->disc()) % p == 0) {
    out.push_back({PlaceOfL::FiniteOther, p, 0, 0, true});
    return out;
  }
  auto factors = fp_factor(fp_from(F->defining_poly(), p));
  int idx = 0;
  for (const auto& g : factors) {
    PlaceOfL w;
    w.p = p;
    w.index = idx++;
    w.residue_degree = g.deg();
    w.ramified = false;
    bool supported = (g.deg() == 1) || (g.deg() == 2 && p != 2);
    w.kind = supported ? PlaceOfL::FiniteSupported : PlaceOfL::FiniteOther;
    out.push_back(w);
  }
  return out;
}

std::vector<PlaceOfL> archimedean_places(const NumberFieldPtr& F) {
  std::vector<PlaceOfL> out;
  auto [r, s] = F->signature();
  for (int i = 0; i < r; ++i) out.push_back({PlaceOfL::RealEmb, 0, i, 1, false});
  for (int i = 0; i < s; ++i) out.push_back({PlaceOfL::ComplexEmb, 0, i, 1, false});
  return out;
}

LocalField local_model(const NumberFieldPtr& F, const PlaceOfL& w) {
  if (w.kind == PlaceOfL::RealEmb) return LocalField::real();
  if (w.kind != PlaceOfL::FiniteSupported) throw unsupported_place(w.to_string());
  (void)F;
  if (w.residue_degree == 1) return LocalField::padic(w.p);
  return LocalField::unram_quad(w.p);
}

namespace {

// Newton lift of a simple root of f mod p (given as a Res2 residue) to a
// residue mod p^N; f'(root) must be a unit.
Res2 lift_root(const RatPoly& f, const LocalField& Fv, Res2 r, long N) {
  const Int& p = Fv.p;
  long prec = 1;
  while (prec < N) {
    prec = std::min(2 * prec, N);
    Int m = ppow(p, prec);
    // evaluate f and f' at r mod p^prec
    auto eval = [&](const RatPoly& g) {
      Res2 acc{0, 0};
      for (int i = g.degree(); i >= 0; --i) {
        acc = res_mul(Fv, acc, r, m);
        Int cn = ((num(g[i]) % m) + m) % m;
        Int cd = ((den(g[i]) % m) + m) % m;
        Int c = cn * inv_mod(cd, m) % m;
        acc = res_add(acc, {c, 0}, m);
      }
      return acc;
    };
    Res2 fv = eval(f);
    Res2 dv = eval(f.derivative());
    Res2 corr = res_mul(Fv, fv, res_inv(Fv, dv, m), m);
    r = res_sub(r, corr, m);
  }
  return r;
}

// The place's factor of f mod p (for supported finite places).
FpPoly place_factor(const NumberFieldPtr& F, const PlaceOfL& w) {
  auto factors = fp_factor(fp_from(F->defining_poly(), w.p));
  if (w.index < 0 || w.index >= static_cast<int>(factors.size()))
    throw invalid_input("place index out of range");
  return factors[w.index];
}

}  // namespace

LocalElement local_embed(const NumberFieldPtr& F, const NFElement& x, const PlaceOfL& w,
                         long N) {
  if (w.kind == PlaceOfL::RealEmb) {
    if (F->degree() == 1) return LocalElement::from_real(x.coords[0]);
    throw invalid_input("real embeddings are exact: use real_sign / intervals");
  }
  if (w.kind != PlaceOfL::FiniteSupported) throw unsupported_place(w.to_string());
  LocalField Fv = local_model(F, w);
  if (F->degree() == 1) return embed_rational(x.coords[0], Fv, N);

  FpPoly g = place_factor(F, w);
  Res2 root0;
  if (g.deg() == 1) {
    // g = x + c  ->  root -c
    Int c = g.c[0];
    root0 = {((-c) % w.p + w.p) % w.p, 0};
  } else {
    // quadratic x^2 + Bx + C irreducible mod p, root (-B +- s*delta)/2 with
    // s = sqrt((B^2-4C)/d) in F_p; the conjugate roots define the same
    // place, so pin the one with the small delta-coordinate
    Int B = g.c[1] * inv_mod(g.c[2], w.p) % w.p;
    Int C = g.c[0] * inv_mod(g.c[2], w.p) % w.p;
    Int D = ((B * B - 4 * C) % w.p + w.p) % w.p;
    Int s = sqrt_mod_p(D * inv_mod(Fv.d, w.p) % w.p, w.p);
    Int half = inv_mod(Int(2), w.p);
    Int bpart = s * half % w.p;
    if (bpart > w.p / 2) bpart = w.p - bpart;
    root0 = {((-B * half) % w.p + w.p) % w.p, bpart};
  }
  Res2 root = lift_root(F->defining_poly(), Fv, root0, N);
  // theta as a local element: valuation of the root may be positive
  Int m = ppow(w.p, N);
  LocalElement theta;
  if (res_is_zero({root.a % m, root.b % m})) {
    theta = LocalElement::approx_zero(Fv, N);
  } else {
    long va = root.a == 0 ? N : val_p(root.a, w.p);
    long vb = root.b == 0 ? N : val_p(root.b, w.p);
    long v = std::min(va, vb);
    Int sc = ppow(w.p, v);
    theta = LocalElement::from_unit(Fv, v, {root.a / sc, root.b / sc}, N - v);
  }
  RatPoly coord{std::vector<Rat>(x.coords)};
  if (coord.is_zero()) return LocalElement::exact_zero(Fv);
  return eval_at(coord, theta);
}

std::pair<Rat, Rat> real_isolating_interval(const NumberFieldPtr& F, const PlaceOfL& w) {
  if (w.kind != PlaceOfL::RealEmb) throw invalid_input("not a real place");
  auto ivs = isolate_real_roots(F->defining_poly());
  if (w.index < 0 || w.index >= static_cast<int>(ivs.size()))
    throw invalid_input("real place index out of range");
  auto [lo, hi] = ivs[w.index];
  // refine until the interval is short and sign-definite
  const RatPoly& f = F->defining_poly();
  auto count = [&](const Rat& a, const Rat& b) {
    return real_root_count(f, RealBound::at(a), RealBound::at(b));
  };
  while ((lo < 0 && hi > 0) || hi - lo > 1) {
    Rat mid = (lo + hi) / 2;
    if (count(lo, mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

int real_sign(const NumberFieldPtr& F, const NFElement& x, const PlaceOfL& w) {
  if (w.kind != PlaceOfL::RealEmb) throw invalid_input("not a real place");
  if (x.is_zero()) return 0;
  if (F->degree() == 1) return sgn(x.coords[0]);
  RatPoly g{std::vector<Rat>(x.coords)};
  const RatPoly& f = F->defining_poly();
  // x = g(theta_w); sign 0 iff theta_w is a common root of f and g
  RatPoly h = RatPoly::gcd(f, g);
  auto [lo0, hi0] = real_isolating_interval(F, w);
  Rat lo = lo0, hi = hi0;
  auto count_f = [&](const Rat& a, const Rat& b) {
    return real_root_count(f, RealBound::at(a), RealBound::at(b));
  };
  if (h.degree() > 0 &&
      real_root_count(h, RealBound::at(lo), RealBound::at(hi)) > 0)
    return 0;
  RatPoly gsf = g.squarefree_part();
  while (real_root_count(gsf, RealBound::at(lo), RealBound::at(hi)) > 0 ||
         g.eval(hi) == 0) {
    Rat mid = (lo + hi) / 2;
    if (count_f(lo, mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  return sgn(g.eval(hi));
}

// --- NFPoly ------------------------------------------------------------

NFPoly NFPoly::make(const NumberFieldPtr& F, std::vector<NFElement> coeffs) {
  NFPoly g;
  g.field = F;
  g.coeffs = std::move(coeffs);
  while (!g.coeffs.empty() && g.coeffs.back().is_zero()) g.coeffs.pop_back();
  return g;
}

NFPoly NFPoly::from_rational(const NumberFieldPtr& F, const RatPoly& f) {
  std::vector<NFElement> c;
  for (int i = 0; i <= f.degree(); ++i) c.push_back(F->from_rational(f[i]));
  return make(F, std::move(c));
}

int NFPoly::degree() const { return static_cast<int>(coeffs.size()) - 1; }

NFElement NFPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return field->zero();
  return coeffs[i];
}

const NFElement& NFPoly::lc() const {
  if (coeffs.empty()) throw invalid_input("lc of zero NFPoly");
  return coeffs.back();
}

NFElement NFPoly::eval(const NFElement& x) const {
  NFElement acc = field->zero();
  for (int i = degree(); i >= 0; --i) acc = field->add(field->mul(acc, x), coeffs[i]);
  return acc;
}

NFPoly NFPoly::mul(const NFPoly& o) const {
  if (is_zero() || o.is_zero()) return make(field, {});
  std::vector<NFElement> r(coeffs.size() + o.coeffs.size() - 1, field->zero());
  for (size_t i = 0; i < coeffs.size(); ++i)
    for (size_t j = 0; j < o.coeffs.size(); ++j)
      r[i + j] = field->add(r[i + j], field->mul(coeffs[i], o.coeffs[j]));
  return make(field, std::move(r));
}

NFPoly NFPoly::scale(const NFElement& s) const {
  std::vector<NFElement> r = coeffs;
  for (auto& c : r) c = field->mul(c, s);
  return make(field, std::move(r));
}

NFPoly NFPoly::add(const NFPoly& o) const {
  std::vector<NFElement> r(std::max(coeffs.size(), o.coeffs.size()), field->zero());
  for (size_t i = 0; i < coeffs.size(); ++i) r[i] = field->add(r[i], coeffs[i]);
  for (size_t i = 0; i < o.coeffs.size(); ++i) r[i] = field->add(r[i], o.coeffs[i]);
  return make(field, std::move(r));
}

NFPoly NFPoly::derivative() const {
  if (coeffs.size() <= 1) return make(field, {});
  std::vector<NFElement> r(coeffs.size() - 1, field->zero());
  for (size_t i = 1; i < coeffs.size(); ++i)
    r[i - 1] = field->mul(coeffs[i], field->from_rational(Rat(static_cast<long>(i))));
  return make(field, std::move(r));
}

bool NFPoly::equals(const NFPoly& o) const {
  if (degree() != o.degree()) return false;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (!field->sub(coeffs[i], o.coeffs[i]).is_zero()) return false;
  return true;
}

bool NFPoly::all_rational() const {
  for (const auto& c : coeffs)
    if (!c.is_rational()) return false;
  return true;
}

RatPoly NFPoly::to_rational() const {
  std::vector<Rat> c;
  for (const auto& e : coeffs) c.push_back(e.rational_value());
  return RatPoly(std::move(c));
}

std::string NFPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (coeffs[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coeffs[i].to_string() + ")";
    if (i > 0) {
      s += "*" + var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

NFElement nf_resultant(const NFPoly& f, const NFPoly& g) {
  const NumberFieldPtr& F = f.field;
  if (f.is_zero() && g.is_zero()) throw invalid_input("resultant(0,0)");
  if (f.is_zero() || g.is_zero()) return F->zero();
  // Euclidean PRS over the field
  NFPoly a = f, b = g;
  NFElement acc = F->one();
  bool neg = false;
  while (true) {
    int da = a.degree(), db = b.degree();
    if (db == 0) {
      NFElement pw = F->one();
      for (int i = 0; i < da; ++i) pw = F->mul(pw, b.coeffs[0]);
      NFElement r = F->mul(acc, pw);
      return neg ? F->neg(r) : r;
    }
    // remainder of a by b over the field
    NFPoly r = a;
    NFElement lcinv = F->inv(b.lc());
    while (r.degree() >= db) {
      NFElement fac = F->mul(r.lc(), lcinv);
      int k = r.degree() - db;
      std::vector<NFElement> nc = r.coeffs;
      for (int i = 0; i <= db; ++i)
        nc[k + i] = F->sub(nc[k + i], F->mul(fac, b.coeffs[i]));
      r = NFPoly::make(F, std::move(nc));
      if (r.degree() < 0) break;
    }
    if (r.is_zero()) return F->zero();
    if ((da & 1) && (db & 1)) neg = !neg;
    NFElement pw = F->one();
    for (int i = 0; i < da - r.degree(); ++i) pw = F->mul(pw, b.lc());
    acc = F->mul(acc, pw);
    a = b;
    b = r;
  }
}

NFElement nf_discriminant(const NFPoly& f) {
  int n = f.degree();
  if (n < 1) throw invalid_input("discriminant of constant");
  const NumberFieldPtr& F = f.field;
  NFElement r = nf_resultant(f, f.derivative());
  NFElement d = F->mul(r, F->inv(f.lc()));
  int e = (n * (n - 1) / 2) % 2;
  return e ? F->neg(d) : d;
}

bool verify_projective_point(const NumberFieldPtr& F, const TriPoly& eqn,
                             const std::array<NFElement, 3>& pt) {
  if (pt[0].is_zero() && pt[1].is_zero() && pt[2].is_zero())
    throw invalid_input("projective point must be nonzero");
  NFElement acc = F->zero();
  for (const auto& t : eqn.terms) {
    NFElement m = t.coeff;
    m = F->mul(m, F->pow(pt[0], t.e0));
    m = F->mul(m, F->pow(pt[1], t.e1));
    m = F->mul(m, F->pow(pt[2], t.e2));
    acc = F->add(acc, m);
  }
  return acc.is_zero();
}

}  // namespace chatelet
