#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace equilog {

// All arithmetic in the library is exact: arbitrary-precision integers and
// rationals, no floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_of(long long v) {
    Int r;
    mpz_set_si(r.get_mpz_t(), v);
    return r;
}

inline Int factorial(int n) {
    Int r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

inline bool fits_ll(const Int& v) { return v.fits_slong_p(); }

inline long long to_ll(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("Int does not fit in long long");
    return v.get_si();
}

inline Rat rat_of(Int num, Int den) {
    Rat q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// r1 mod m1 and r2 mod m2 combined to the unique residue mod m1*m2.
Int crt_pair(const Int& r1, const Int& m1, unsigned long r2, unsigned long m2);

// Unique n/d with n = residue*d mod modulus, |n|,|d| <= sqrt(modulus/2),
// gcd(n,d) = 1, if such exists.
std::optional<Rat> rational_reconstruct(const Int& residue, const Int& modulus);

}  // namespace equilog
