#include <doctest.h>

#include "equilog/arith.hpp"

using namespace equilog;

TEST_CASE("factorial and fits") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(12) == Int("479001600"));
    CHECK(to_ll(factorial(12)) == 479001600LL);
}

TEST_CASE("rat_of normalizes") {
    Rat q = rat_of(int_of(6), int_of(-4));
    CHECK(q == Rat(-3, 2));
    CHECK(is_integer(rat_of(int_of(8), int_of(4))));
}

TEST_CASE("crt pair") {
    // x = 3 mod 7, x = 4 mod 11 -> 59 mod 77
    Int x = crt_pair(Int(3), Int(7), 4, 11);
    CHECK(x % 7 == 3);
    CHECK(x % 11 == 4);
    CHECK(x == 59);
}

TEST_CASE("rational reconstruction round trip") {
    Int m = 1;
    for (unsigned long p : {2147483647ul, 2147483629ul}) m *= Int(p);
    // encode -22/7 as a residue mod m
    Rat target(-22, 7);
    Int den_inv;
    Int den = target.get_den();
    CHECK(mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) != 0);
    Int residue = (target.get_num() % m) * den_inv % m;
    if (residue < 0) residue += m;
    auto rec = rational_reconstruct(residue, m);
    REQUIRE(rec.has_value());
    CHECK(*rec == target);
}
