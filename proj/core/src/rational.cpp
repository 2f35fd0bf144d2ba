#include "chatelet/rational.hpp"

#include <algorithm>

namespace chatelet {

long val_p(const Int& n, const Int& p) {
  if (n == 0) throw invalid_input("val_p of zero");
  Int m = abs(n);
  long v = 0;
  Int q, r;
  while (true) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    if (r != 0) break;
    m = q;
    ++v;
  }
  return v;
}

long val_p(const Rat& q, const Int& p) {
  if (q == 0) throw invalid_input("val_p of zero");
  long v = 0;
  if (num(q) % p == 0) v += val_p(num(q), p);
  if (den(q) % p == 0) v -= val_p(den(q), p);
  return v;
}

Int unit_part(const Int& n, const Int& p) {
  Int m = n;
  while (m % p == 0) m /= p;
  return m;
}

Rat unit_part(const Rat& q, const Int& p) {
  long v = val_p(q, p);
  Rat pw(1);
  Int ppow;
  mpz_pow_ui(ppow.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
  if (v >= 0)
    pw = Rat(1, ppow);
  else
    pw = Rat(ppow, 1);
  Rat u = q * pw;
  u.canonicalize();
  return u;
}

int legendre(const Int& a, const Int& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

Int pow_mod(Int base, Int exp, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw invalid_input("inv_mod: not invertible");
  return r;
}

Int sqrt_mod_p(const Int& a0, const Int& p) {
  Int a = ((a0 % p) + p) % p;
  if (a == 0) return 0;
  if (legendre(a, p) != 1) throw invalid_input("sqrt_mod_p: nonresidue");
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  Int q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (legendre(z, p) != -1) ++z;
  Int m(s), c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    Int tt = t;
    unsigned long i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Int b = c;
    for (Int j = 0; j < m - Int(i) - 1; ++j) b = b * b % p;
    m = Int(i);
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

namespace {

Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  Int x = 2, y = 2, d = 1, c = 1;
  while (true) {
    x = 2;
    y = 2;
    d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      d = gcd(x - y, n);
    }
    if (d != n && d != 0) return abs(d);
    ++c;  // cycle degenerated, retry with a new increment
  }
}

void factor_rec(const Int& n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n] += 1;
    return;
  }
  Int d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::map<Int, int> factorize(const Int& n0) {
  if (n0 == 0) throw invalid_input("factorize(0)");
  Int n = abs(n0);
  std::map<Int, int> out;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L}) {
    while (n % p == 0) {
      out[Int(p)] += 1;
      n /= p;
    }
  }
  Int p = 53;
  while (n > 1 && p * p <= n && p < 100000) {
    while (n % p == 0) {
      out[p] += 1;
      n /= p;
    }
    p += 2;
  }
  if (n > 1) factor_rec(n, out);
  return out;
}

std::vector<Int> prime_support(const Rat& q) {
  if (q == 0) throw invalid_input("prime_support(0)");
  std::map<Int, int> f = factorize(num(q));
  for (auto& [p, e] : factorize(den(q))) f[p] += e;
  std::vector<Int> out;
  for (auto& [p, e] : f) out.push_back(p);
  return out;
}

Int next_prime(const Int& n) {
  Int r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int crt(const std::vector<Int>& r, const std::vector<Int>& m) {
  Int x = 0, mod = 1;
  for (size_t i = 0; i < r.size(); ++i) {
    // x' = x mod mod, x' = r[i] mod m[i]
    Int t = ((r[i] - x) % m[i] + m[i]) % m[i];
    t = t * inv_mod(mod % m[i], m[i]) % m[i];
    x += mod * t;
    mod *= m[i];
  }
  return ((x % mod) + mod) % mod;
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw invalid_input("empty rational");
  for (char ch : s)
    if (!(isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/'))
      throw invalid_input("bad rational: " + s);
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw invalid_input("bad rational: " + s);
  if (den(q) == 0) throw invalid_input("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) {
  if (den(q) == 1) return num(q).get_str();
  return num(q).get_str() + "/" + den(q).get_str();
}

}  // namespace chatelet
