#include "chatelet/localfield.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace chatelet {

namespace {

Int ppow(const Int& p, long k) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

Int mod_reduce(const Int& a, const Int& m) { return ((a % m) + m) % m; }

}  // namespace

LocalField LocalField::unram_quad(const Int& p, std::optional<Int> d) {
  if (p == 2 || !is_probable_prime(p)) throw invalid_input("unram_quad needs an odd prime");
  LocalField F;
  F.kind = UnramQuad;
  F.p = p;
  if (d) {
    Int dd = mod_reduce(*d, p);
    if (legendre(dd, p) != -1) throw invalid_input("unram_quad: d must be a nonresidue");
    F.d = dd;
  } else {
    Int dd = 2;
    while (legendre(dd, p) != -1) ++dd;
    F.d = dd;
  }
  return F;
}

std::string LocalField::to_string() const {
  switch (kind) {
    case Real:
      return "R";
    case Padic:
      return "Q_" + p.get_str();
    case UnramQuad:
      return "Q_" + p.get_str() + "(sqrt " + d.get_str() + ")";
  }
  return "?";
}

Res2 res_add(const Res2& x, const Res2& y, const Int& mod) {
  return {mod_reduce(x.a + y.a, mod), mod_reduce(x.b + y.b, mod)};
}

Res2 res_sub(const Res2& x, const Res2& y, const Int& mod) {
  return {mod_reduce(x.a - y.a, mod), mod_reduce(x.b - y.b, mod)};
}

Res2 res_mul(const LocalField& F, const Res2& x, const Res2& y, const Int& mod) {
  if (F.kind != LocalField::UnramQuad)
    return {mod_reduce(x.a * y.a, mod), 0};
  // (a1 + b1 d)(a2 + b2 d) = a1 a2 + d b1 b2 * d^2->d; delta^2 = d
  Int a = mod_reduce(x.a * y.a + F.d * x.b * y.b, mod);
  Int b = mod_reduce(x.a * y.b + x.b * y.a, mod);
  return {a, b};
}

bool res_is_zero(const Res2& x) { return x.a == 0 && x.b == 0; }

Res2 res_inv(const LocalField& F, const Res2& x, const Int& mod) {
  if (F.kind != LocalField::UnramQuad) return {inv_mod(x.a, mod), 0};
  // (a+b delta)^-1 = (a - b delta) / (a^2 - d b^2)
  Int n = mod_reduce(x.a * x.a - F.d * x.b * x.b, mod);
  Int ni = inv_mod(n, mod);
  return {mod_reduce(x.a * ni, mod), mod_reduce(-x.b * ni, mod)};
}

int residue_chi(const LocalField& F, const Res2& u) {
  if (F.kind == LocalField::Padic) return legendre(u.a, F.p);
  // chi_{q}(z) = chi_p(Norm z), Norm(a + b delta) = a^2 - d b^2
  Int n = mod_reduce(u.a * u.a - F.d * u.b * u.b, F.p);
  return legendre(n, F.p);
}

bool SquareClass::is_square() const {
  if (F.kind == LocalField::Real) return sign > 0;
  if (val % 2 != 0) return false;
  if (F.p == 2) return mod_reduce(unit.a, Int(8)) == 1;
  return residue_chi(F, unit) == 1;
}

int SquareClass::pair(const SquareClass& x, const SquareClass& y) {
  if (!(x.F == y.F)) throw invalid_input("hilbert pair: mixed fields");
  const LocalField& F = x.F;
  if (F.kind == LocalField::Real) return (x.sign < 0 && y.sign < 0) ? -1 : 1;
  long a = x.val, b = y.val;
  if (F.p == 2) {
    // (2^a u, 2^b w)_2 = (-1)^{eps(u)eps(w) + a omega(w) + b omega(u)}
    Int u = mod_reduce(x.unit.a, Int(8)), w = mod_reduce(y.unit.a, Int(8));
    long eu = ((u.get_si() - 1) / 2) & 1, ew = ((w.get_si() - 1) / 2) & 1;
    long ou = ((u.get_si() * u.get_si() - 1) / 8) & 1,
         ow = ((w.get_si() * w.get_si() - 1) / 8) & 1;
    long e = eu * ew + a * ow + b * ou;
    return (e & 1) ? -1 : 1;
  }
  // odd residue characteristic, residue field size q:
  // (pi^a u, pi^b w) = (-1)^{ab (q-1)/2} chi(u)^b chi(w)^a
  Int q = F.q();
  long eps = (((q - 1) / 2) % 2 != 0) ? 1 : 0;
  int s = 1;
  if ((a & 1) && (b & 1) && eps) s = -s;
  if (b & 1) s *= residue_chi(F, x.unit);
  if (a & 1) s *= residue_chi(F, y.unit);
  return s;
}

LocalElement LocalElement::exact_zero(const LocalField& F) {
  LocalElement e;
  e.F_ = F;
  e.state_ = kExactZero;
  return e;
}

LocalElement LocalElement::approx_zero(const LocalField& F, long abs_prec) {
  LocalElement e;
  e.F_ = F;
  e.state_ = kApproxZero;
  e.val_ = abs_prec;
  return e;
}

LocalElement LocalElement::from_unit(const LocalField& F, long val, Res2 unit, long relprec) {
  if (relprec < 1) throw invalid_input("from_unit: relprec >= 1 required");
  LocalElement e;
  e.F_ = F;
  e.state_ = kUnit;
  e.val_ = val;
  e.relprec_ = relprec;
  Int m = ppow(F.p, relprec);
  e.unit_ = {mod_reduce(unit.a, m), mod_reduce(unit.b, m)};
  if (e.unit_.a % F.p == 0 && e.unit_.b % F.p == 0)
    throw invalid_input("from_unit: unit part not a unit");
  return e;
}

LocalElement LocalElement::from_real(const Rat& v) {
  LocalElement e;
  e.F_ = LocalField::real();
  e.state_ = kReal;
  e.real_ = v;
  return e;
}

long LocalElement::val() const {
  if (state_ != kUnit) throw insufficient_precision("val of uncertified element");
  return val_;
}

long LocalElement::relprec() const {
  if (state_ != kUnit) return 0;
  return relprec_;
}

long LocalElement::abs_prec() const {
  switch (state_) {
    case kUnit:
      return val_ + relprec_;
    case kApproxZero:
      return val_;
    default:
      return kPrecisionCap * 4;  // exact values: effectively infinite
  }
}

LocalElement add_impl(const LocalElement& x, const LocalElement& y, bool negate_y) {
  const LocalField& F = x.F_;
  if (!(F == y.F_)) throw invalid_input("mixed local fields");
  if (F.kind == LocalField::Real) {
    Rat rr = negate_y ? Rat(x.real_ - y.real_) : Rat(x.real_ + y.real_);
    return LocalElement::from_real(rr);
  }
  if (x.state_ == LocalElement::kExactZero && y.state_ == LocalElement::kExactZero)
    return LocalElement::exact_zero(F);
  long A = std::min(x.abs_prec(), y.abs_prec());
  // base = least valuation among the certified-nonzero operands; when both
  // operands are (approximate) zeros the sum is a zero to precision A
  bool have_unit = x.state_ == LocalElement::kUnit || y.state_ == LocalElement::kUnit;
  if (!have_unit) return LocalElement::approx_zero(F, A);
  long base = std::numeric_limits<long>::max();
  if (x.state_ == LocalElement::kUnit) base = std::min(base, x.val_);
  if (y.state_ == LocalElement::kUnit) base = std::min(base, y.val_);
  if (base >= A) return LocalElement::approx_zero(F, A);
  long digits = A - base;
  Int m = [&] {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), F.p.get_mpz_t(), static_cast<unsigned long>(digits));
    return r;
  }();
  auto rep = [&](const LocalElement& e) -> Res2 {
    if (e.state_ != LocalElement::kUnit) return {0, 0};
    Int sc;
    mpz_pow_ui(sc.get_mpz_t(), F.p.get_mpz_t(), static_cast<unsigned long>(e.val_ - base));
    return {((e.unit_.a * sc) % m + m) % m, ((e.unit_.b * sc) % m + m) % m};
  };
  Res2 rx = rep(x), ry = rep(y);
  if (negate_y) ry = {((-ry.a) % m + m) % m, ((-ry.b) % m + m) % m};
  Res2 r = res_add(rx, ry, m);
  if (res_is_zero(r)) {
    if (x.state_ == LocalElement::kExactZero && y.state_ == LocalElement::kExactZero)
      return LocalElement::exact_zero(F);
    return LocalElement::approx_zero(F, A);
  }
  long v = digits;  // valuation of r relative to base
  long va = r.a == 0 ? digits : val_p(r.a, F.p);
  long vb = r.b == 0 ? digits : val_p(r.b, F.p);
  v = std::min(va, vb);
  if (v >= digits) return LocalElement::approx_zero(F, A);
  Int sc;
  mpz_pow_ui(sc.get_mpz_t(), F.p.get_mpz_t(), static_cast<unsigned long>(v));
  Res2 u = {r.a / sc, r.b / sc};
  return LocalElement::from_unit(F, base + v, u, digits - v);
}

LocalElement LocalElement::operator+(const LocalElement& o) const { return add_impl(*this, o, false); }
LocalElement LocalElement::operator-(const LocalElement& o) const { return add_impl(*this, o, true); }

LocalElement LocalElement::operator-() const {
  if (F_.kind == LocalField::Real) return from_real(-real_);
  if (state_ != kUnit) return *this;
  Int m = ppow(F_.p, relprec_);
  return from_unit(F_, val_, {mod_reduce(-unit_.a, m), mod_reduce(-unit_.b, m)}, relprec_);
}

LocalElement LocalElement::operator*(const LocalElement& o) const {
  if (!(F_ == o.F_)) throw invalid_input("mixed local fields");
  if (F_.kind == LocalField::Real) return from_real(real_ * o.real_);
  if (state_ == kExactZero || o.state_ == kExactZero) return exact_zero(F_);
  // approx-zero bound adds to the other side's valuation (or bound)
  if (state_ == kApproxZero || o.state_ == kApproxZero)
    return approx_zero(F_, val_ + o.val_);
  long rp = std::min(relprec_, o.relprec_);
  Int m = ppow(F_.p, rp);
  Res2 u = res_mul(F_, {mod_reduce(unit_.a, m), mod_reduce(unit_.b, m)},
                   {mod_reduce(o.unit_.a, m), mod_reduce(o.unit_.b, m)}, m);
  return from_unit(F_, val_ + o.val_, u, rp);
}

LocalElement LocalElement::operator/(const LocalElement& o) const {
  if (!(F_ == o.F_)) throw invalid_input("mixed local fields");
  if (F_.kind == LocalField::Real) {
    if (o.real_ == 0) throw invalid_input("division by zero");
    return from_real(real_ / o.real_);
  }
  if (o.state_ == kExactZero) throw invalid_input("division by zero");
  if (o.state_ == kApproxZero) throw insufficient_precision("division by uncertified zero");
  if (state_ == kExactZero) return exact_zero(F_);
  if (state_ == kApproxZero) return approx_zero(F_, val_ - o.val_);
  long rp = std::min(relprec_, o.relprec_);
  Int m = ppow(F_.p, rp);
  Res2 inv = res_inv(F_, {mod_reduce(o.unit_.a, m), mod_reduce(o.unit_.b, m)}, m);
  Res2 u = res_mul(F_, {mod_reduce(unit_.a, m), mod_reduce(unit_.b, m)}, inv, m);
  return from_unit(F_, val_ - o.val_, u, rp);
}

LocalElement LocalElement::shift(long k) const {
  if (F_.kind == LocalField::Real) throw invalid_input("shift over R");
  if (state_ == kExactZero) return *this;
  if (state_ == kApproxZero) return approx_zero(F_, val_ + k);
  return from_unit(F_, val_ + k, unit_, relprec_);
}

std::optional<SquareClass> LocalElement::square_class() const {
  SquareClass c;
  c.F = F_;
  if (F_.kind == LocalField::Real) {
    if (real_ == 0) return std::nullopt;
    c.sign = sgn(real_);
    return c;
  }
  if (state_ != kUnit) return std::nullopt;
  long need = (F_.p == 2) ? 3 : 1;
  if (relprec_ < need) return std::nullopt;
  c.val = val_;
  Int m = ppow(F_.p, need);
  c.unit = {mod_reduce(unit_.a, m), mod_reduce(unit_.b, m)};
  return c;
}

std::string LocalElement::to_string() const {
  if (F_.kind == LocalField::Real) return rat_to_string(real_);
  switch (state_) {
    case kExactZero:
      return "0";
    case kApproxZero:
      return "O(" + F_.p.get_str() + "^" + std::to_string(val_) + ")";
    default: {
      std::string u = unit_.a.get_str();
      if (F_.kind == LocalField::UnramQuad) u += "+" + unit_.b.get_str() + "*delta";
      return F_.p.get_str() + "^" + std::to_string(val_) + "*(" + u + ") + O(p^" +
             std::to_string(val_ + relprec_) + ")";
    }
  }
}

LocalElement embed_rational(const Rat& q, const LocalField& F, long N) {
  if (F.kind == LocalField::Real) return LocalElement::from_real(q);
  if (N < 1) throw invalid_input("embed_rational: N >= 1");
  if (q == 0) return LocalElement::exact_zero(F);
  long v = val_p(q, F.p);
  Rat u = unit_part(q, F.p);
  Int m = [&] {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), F.p.get_mpz_t(), static_cast<unsigned long>(N));
    return r;
  }();
  Int a = ((num(u) % m) + m) % m;
  a = a * inv_mod(((den(u) % m) + m) % m, m) % m;
  return LocalElement::from_unit(F, v, {a, 0}, N);
}

bool is_square(const LocalElement& x) {
  if (x.field().kind == LocalField::Real) {
    if (x.real_value() == 0) throw invalid_input("is_square of zero");
    return x.real_value() > 0;
  }
  if (x.is_exact_zero()) throw invalid_input("is_square of zero");
  long need = (x.field().p == 2) ? 3 : 1;
  if (!x.certified_nonzero() || x.relprec() < need)
    throw insufficient_precision("is_square: precision floor not met");
  return x.square_class()->is_square();
}

bool is_rational_square_in(const Rat& q, const LocalField& F) {
  if (q == 0) throw invalid_input("is_rational_square_in(0)");
  return is_square(embed_rational(q, F, F.p == 2 ? 4 : 2));
}

LocalElement eval_at(const RatPoly& f, const LocalElement& x) {
  const LocalField& F = x.field();
  if (F.kind == LocalField::Real) return LocalElement::from_real(f.eval(x.real_value()));
  if (f.is_zero()) return LocalElement::exact_zero(F);
  long N = std::max<long>(x.certified_nonzero() ? x.relprec() : 4, 4);
  // Horner with coefficients at enough headroom to absorb valuation swings.
  long headroom = 4;
  if (x.certified_nonzero() && x.val() < 0)
    headroom += static_cast<long>(-x.val()) * f.degree();
  if (x.certified_nonzero() && x.val() > 0) headroom += x.val();
  LocalElement acc = embed_rational(f.coeffs().back(), F, N + headroom);
  for (int i = f.degree() - 1; i >= 0; --i) {
    acc = acc * x;
    acc = acc + embed_rational(f.coeff(i), F, N + headroom);
  }
  return acc;
}

LocalElement hensel_lift_root(const RatPoly& f, const LocalElement& x0) {
  const LocalField& F = x0.field();
  if (F.kind == LocalField::Real) throw invalid_input("hensel over R");
  RatPoly df = f.derivative();
  LocalElement fx = eval_at(f, x0);
  if (fx.is_exact_zero()) return x0;
  LocalElement dfx = eval_at(df, x0);
  if (!dfx.certified_nonzero()) throw criterion_failed("f'(x0) not certified nonzero");
  long m = dfx.val();
  long k = fx.certified_nonzero() ? fx.val() : fx.abs_prec();
  if (!(k > 2 * m)) throw criterion_failed("Newton criterion v(f) > 2 v(f') fails");
  // Target absolute precision: what x0 carries. Callers wanting a deeper
  // root must embed x0 deeper (plus 2m+4 headroom when v(f'(x0)) = m > 0).
  long target = x0.certified_nonzero() ? x0.abs_prec() : kDefaultPrecision;
  if (target > kPrecisionCap) throw precision_cap_exceeded("hensel working precision");
  LocalElement x = x0;
  for (int it = 0; it < 64; ++it) {
    LocalElement fv = eval_at(f, x);
    if (fv.is_exact_zero()) return x;
    if (!fv.certified_nonzero()) return x;  // zero to working precision
    if (fv.val() >= target) return x;
    LocalElement dv = eval_at(df, x);
    LocalElement step = fv / dv;
    x = x - step;
  }
  throw criterion_failed("Newton iteration failed to converge");
}

std::optional<SquareClass> stable_square_class(const RatPoly& f, const LocalElement& x0) {
  LocalElement y = eval_at(f, x0);
  if (y.field().kind == LocalField::Real) {
    return y.square_class();
  }
  if (!y.certified_nonzero()) return std::nullopt;
  long need = (y.field().p == 2) ? 3 : 1;
  if (y.relprec() < need) return std::nullopt;
  return y.square_class();
}

}  // namespace chatelet
