#include "chatelet/ratpoly.hpp"

#include <algorithm>
#include <cassert>

namespace chatelet {

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::monomial(int k, const Rat& a) {
  std::vector<Rat> c(k + 1, Rat(0));
  c[k] = a;
  return RatPoly(std::move(c));
}

const Rat& RatPoly::lc() const {
  if (c_.empty()) throw invalid_input("lc of zero polynomial");
  return c_.back();
}

Rat RatPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return RatPoly();
  std::vector<Rat> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return RatPoly(std::move(d));
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (o * Rat(-1)); }

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (is_zero() || o.is_zero()) return RatPoly();
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const Rat& s) const {
  std::vector<Rat> r(c_);
  for (auto& x : r) x *= s;
  return RatPoly(std::move(r));
}

void RatPoly::divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  if (b.is_zero()) throw invalid_input("division by zero polynomial");
  std::vector<Rat> rem = a.c_;
  std::vector<Rat> quo;
  int db = b.degree();
  if (a.degree() >= db) quo.assign(a.degree() - db + 1, Rat(0));
  while (static_cast<int>(rem.size()) - 1 >= db) {
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (static_cast<int>(rem.size()) - 1 < db) break;
    int k = static_cast<int>(rem.size()) - 1 - db;
    Rat f = rem.back() / b.lc();
    quo[k] = f;
    for (int i = 0; i <= db; ++i) rem[k + i] -= f * b.c_[i];
    rem.pop_back();
  }
  q = RatPoly(std::move(quo));
  r = RatPoly(std::move(rem));
}

RatPoly RatPoly::divexact(const RatPoly& b) const {
  RatPoly q, r;
  divmod(*this, b, q, r);
  if (!r.is_zero()) throw invalid_input("divexact: nonzero remainder");
  return q;
}

RatPoly RatPoly::gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  while (!y.is_zero()) {
    RatPoly q, r;
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  if (x.is_zero()) return x;
  return x * (Rat(1) / x.lc());
}

RatPoly RatPoly::squarefree_part() const {
  if (is_zero() || degree() == 0) return *this;
  RatPoly g = gcd(*this, derivative());
  return divexact(g);
}

RatPoly RatPoly::compose_scale(const Rat& s) const {
  std::vector<Rat> r(c_);
  Rat pw(1);
  for (size_t i = 0; i < r.size(); ++i) {
    r[i] *= pw;
    pw *= s;
  }
  return RatPoly(std::move(r));
}

RatPoly RatPoly::reversed() const {
  std::vector<Rat> r(c_.rbegin(), c_.rend());
  return RatPoly(std::move(r));
}

RatPoly RatPoly::primitive_integer_part() const {
  if (is_zero()) return *this;
  Int d(1);
  for (const auto& q : c_) d = lcm(d, den(q));
  Int g(0);
  for (const auto& q : c_) {
    Int t = num(q) * (d / den(q));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
  }
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) {
    r[i] = c_[i] * Rat(d, g);
    r[i].canonicalize();
  }
  return RatPoly(std::move(r));
}

std::string RatPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) s += "-";
    Rat a = abs(c_[i]);
    if (a != 1 || i == 0) s += rat_to_string(a);
    if (i > 0) {
      if (a != 1) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

Rat resultant(const RatPoly& f, const RatPoly& g) {
  if (f.is_zero() && g.is_zero()) throw invalid_input("resultant(0,0)");
  if (f.is_zero() || g.is_zero()) return Rat(0);
  int m = f.degree(), n = g.degree();
  if (m == 0) {
    Rat r;
    mpq_class lcf = f.lc();
    Rat acc(1);
    for (int i = 0; i < n; ++i) acc *= lcf;
    return acc;
  }
  if (n == 0) {
    Rat acc(1);
    for (int i = 0; i < m; ++i) acc *= g.lc();
    return acc;
  }
  // Euclidean PRS with the standard transformation rules.
  // res(f,g) = (-1)^{mn} res(g,f); res(f,g) = lc(g)^{m - deg r} res(g, r)
  // for r = f mod g.
  RatPoly a = f, b = g;
  Rat acc(1);
  bool neg = false;
  while (true) {
    int da = a.degree(), db = b.degree();
    if (db == 0) {
      Rat pw(1);
      for (int i = 0; i < da; ++i) pw *= b.lc();
      return (neg ? -acc : acc) * pw;
    }
    RatPoly q, r;
    RatPoly::divmod(a, b, q, r);
    if (r.is_zero()) return Rat(0);
    if ((da & 1) && (db & 1)) neg = !neg;
    Rat pw(1);
    for (int i = 0; i < da - r.degree(); ++i) pw *= b.lc();
    acc *= pw;
    a = b;
    b = r;
  }
}

Rat discriminant(const RatPoly& f) {
  int n = f.degree();
  if (n < 1) throw invalid_input("discriminant of constant polynomial");
  Rat r = resultant(f, f.derivative());
  Rat d = r / f.lc();
  int e = (n * (n - 1) / 2) % 2;
  return e ? -d : d;
}

namespace {

// Sturm chain with primitive-part normalization to keep coefficients small.
std::vector<RatPoly> sturm_chain(const RatPoly& f) {
  std::vector<RatPoly> ch;
  ch.push_back(f.primitive_integer_part());
  RatPoly d = f.derivative();
  if (d.is_zero()) return ch;
  ch.push_back(d.primitive_integer_part());
  while (true) {
    const RatPoly& a = ch[ch.size() - 2];
    const RatPoly& b = ch.back();
    RatPoly q, r;
    RatPoly::divmod(a, b, q, r);
    if (r.is_zero()) break;
    RatPoly nr = (-r).primitive_integer_part();
    // primitive_integer_part scales by a positive rational, which preserves
    // Sturm sign behavior
    ch.push_back(nr);
    if (ch.back().degree() == 0) break;
  }
  return ch;
}

int sign_at(const RatPoly& p, const RealBound& b) {
  switch (b.kind) {
    case RealBound::Finite:
      return sgn(p.eval(b.value));
    case RealBound::PlusInf:
      return p.is_zero() ? 0 : sgn(p.lc());
    case RealBound::MinusInf: {
      if (p.is_zero()) return 0;
      int s = sgn(p.lc());
      return (p.degree() % 2) ? -s : s;
    }
  }
  return 0;
}

// Sign variations with zeros dropped; with this convention V(lo)-V(hi)
// counts roots in (lo, hi].
int variations(const std::vector<RatPoly>& ch, const RealBound& b) {
  int var = 0, prev = 0;
  for (const auto& p : ch) {
    int s = sign_at(p, b);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

}  // namespace

int real_root_count(const RatPoly& f, const RealBound& lo, const RealBound& hi) {
  if (f.is_zero()) throw invalid_input("real_root_count of zero polynomial");
  if (f.degree() == 0) return 0;
  auto ch = sturm_chain(f);
  return variations(ch, lo) - variations(ch, hi);
}

Rat root_bound(const RatPoly& f) {
  // Cauchy bound 1 + max |a_i / a_n|
  Rat m(0);
  for (int i = 0; i < f.degree(); ++i) {
    Rat t = abs(f[i] / f.lc());
    if (t > m) m = t;
  }
  return m + 1;
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const RatPoly& f) {
  std::vector<std::pair<Rat, Rat>> out;
  if (f.is_zero() || f.degree() == 0) return out;
  auto ch = sturm_chain(f);
  Rat b = root_bound(f);
  // count in (lo, hi] via the chain
  auto count = [&](const Rat& lo, const Rat& hi) {
    return variations(ch, RealBound::at(lo)) - variations(ch, RealBound::at(hi));
  };
  struct Seg {
    Rat lo, hi;
    int n;
  };
  std::vector<Seg> work{{-b, b, count(-b, b)}};
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    if (s.n == 0) continue;
    if (s.n == 1) {
      out.push_back({s.lo, s.hi});
      continue;
    }
    Rat mid = (s.lo + s.hi) / 2;
    int nl = count(s.lo, mid);
    work.push_back({mid, s.hi, s.n - nl});
    work.push_back({s.lo, mid, nl});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b2) { return a.first < b2.first; });
  return out;
}

bool exists_nonneg_value(const RatPoly& f) {
  if (f.is_zero()) return true;
  if (f.degree() == 0) return f[0] >= 0;
  if (sgn(f.lc()) > 0) return true;
  if (f.degree() % 2 == 1) return true;
  if (f.eval(Rat(0)) >= 0) return true;
  // lc < 0, even degree: f >= 0 somewhere iff f has a real root
  return real_root_count(f.squarefree_part()) > 0;
}

}  // namespace chatelet
