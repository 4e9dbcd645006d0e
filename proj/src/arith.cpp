#include "equilog/arith.hpp"

namespace equilog {

Int crt_pair(const Int& r1, const Int& m1, unsigned long r2, unsigned long m2) {
    // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
    Int m2z(m2);
    Int diff = Int(r2) - r1;
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2z.get_mpz_t()) == 0)
        throw std::invalid_argument("crt_pair: moduli not coprime");
    Int k = (diff * inv) % m2z;
    if (k < 0) k += m2z;
    return r1 + m1 * k;
}

std::optional<Rat> rational_reconstruct(const Int& residue, const Int& modulus) {
    Int r0 = modulus, t0 = 0;
    Int r1 = residue % modulus, t1 = 1;
    if (r1 < 0) r1 += modulus;
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(modulus / 2).get_mpz_t());
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0) return std::nullopt;
    Int num = r1, den = t1;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    if (den > bound) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
    if (g != 1) return std::nullopt;
    return rat_of(num, den);
}

}  // namespace equilog
