// Exact scalar arithmetic. Rationals are GMP mpq_class values kept in
// canonical form (gcd(|num|,den)=1, den>=1) by GMP itself; everything here
// is the number-theoretic utility layer on top: p-adic valuations,
// quadratic characters, integer factorization, deterministic prime
// iteration.

#ifndef CHATELET_RATIONAL_HPP
#define CHATELET_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chatelet {

using Int = mpz_class;
using Rat = mpq_class;

struct invalid_input : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unsupported_place : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct insufficient_precision : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct precision_cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unsatisfiable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct search_exhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Int num(const Rat& q) { return q.get_num(); }
inline Int den(const Rat& q) { return q.get_den(); }

inline Rat make_rat(long n, long d = 1) {
  Rat q(n, d);
  q.canonicalize();
  return q;
}

// v_p of a nonzero integer.
long val_p(const Int& n, const Int& p);
// v_p of a nonzero rational.
long val_p(const Rat& q, const Int& p);

// Unit part u of n = p^v * u (n nonzero).
Int unit_part(const Int& n, const Int& p);
// Unit part of a nonzero rational as an exact rational with v_p = 0.
Rat unit_part(const Rat& q, const Int& p);

inline int sign_of(const Rat& q) { return sgn(q); }

// Legendre symbol (a|p) for odd prime p; 0 when p | a.
int legendre(const Int& a, const Int& p);

// Square root mod odd prime p of a quadratic residue (Tonelli-Shanks).
// Requires legendre(a,p) == 1.
Int sqrt_mod_p(const Int& a, const Int& p);

// Inverse of a mod m, gcd(a,m)=1.
Int inv_mod(const Int& a, const Int& m);

Int pow_mod(Int base, Int exp, const Int& m);

bool is_probable_prime(const Int& n);

// Full factorization (trial division + Pollard rho), n != 0.
// Returns prime -> exponent, primes ascending. Sign is dropped.
std::map<Int, int> factorize(const Int& n);

// Distinct primes dividing numerator and denominator of a nonzero rational.
std::vector<Int> prime_support(const Rat& q);

// Smallest prime strictly greater than n.
Int next_prime(const Int& n);

// CRT for pairwise coprime moduli: x = r[i] mod m[i]; result in [0, prod m).
Int crt(const std::vector<Int>& r, const std::vector<Int>& m);

// Parse "p/q" or "p"; throws invalid_input on junk.
Rat parse_rat(const std::string& s);
std::string rat_to_string(const Rat& q);

}  // namespace chatelet

#endif
