#include <doctest.h>

#include "kummer/regularity.hpp"

using namespace kummer;

TEST_CASE("Bernoulli residues, hand values") {
    BernoulliTable t7 = bernoulli_table(7);
    CHECK(t7.at(0) == 1);
    CHECK(t7.at(2) == 6); // B_2 = 1/6, 6^-1 = 6 mod 7
    CHECK(t7.at(4) == 3); // B_4 = -1/30, 30 = 2, -(2^-1) = -4 = 3 mod 7
    BernoulliTable t37 = bernoulli_table(37);
    CHECK(t37.at(32) == 0); // 37 divides the numerator of B_32
    CHECK(t37.at(2) != 0);
    CHECK_THROWS_AS(bernoulli_table(2003), OutOfRange);
    CHECK_THROWS_AS(bernoulli_table(9), OutOfRange);
    CHECK_THROWS_AS(t7.at(3), OutOfRange);
    CHECK_THROWS_AS(t7.at(6), OutOfRange); // above p-3
}

TEST_CASE("regular pairs") {
    CHECK(regular_pair(7, 1).regular);  // (p, 1) always regular
    CHECK(regular_pair(7, 0).regular);  // trivial character
    RegularityVerdict v = regular_pair(7, -1); // class 5 = -1 mod 6
    CHECK(v.exponent == 5);
    CHECK(v.regular);
    CHECK(v.witness_index == 2);
    CHECK(v.witness_residue == 6);

    RegularityVerdict irr = regular_pair(37, 5);
    CHECK_FALSE(irr.regular);
    CHECK(irr.witness_index == 32);
    CHECK(irr.witness_residue == 0);
    CHECK(regular_pair(37, -5).regular); // class 31: B_6 route, nonzero

    CHECK_THROWS_AS(regular_pair(7, 2), EvenExponent);
    CHECK_THROWS_AS(regular_pair(11, -4), EvenExponent); // class 6, even
}

TEST_CASE("all odd pairs regular for p = 5 and 7") {
    for (u64 p : {5ull, 7ull}) {
        CHECK(is_regular_prime(p));
        for (i64 e = 3; e + 1 < (i64)p; e += 2) CHECK(regular_pair(p, e).regular);
    }
    CHECK_FALSE(is_regular_prime(37));
    CHECK(is_regular_prime(11));
    CHECK(is_regular_prime(13));
    CHECK_FALSE(is_regular_prime(59)); // B_44
    CHECK_FALSE(is_regular_prime(67)); // B_58
}

TEST_CASE("generalized Bernoulli numbers mod p") {
    CHECK(gen_bernoulli_mod_p(37, 31).residue == 0); // exponent class -5 mod 36
    CHECK(gen_bernoulli_mod_p(7, 3).residue != 0);
    CHECK(gen_bernoulli_mod_p(7, 1).residue != 0);
    CHECK_THROWS_AS(gen_bernoulli_mod_p(7, 5), BadExponent);  // -1 mod 6
    CHECK_THROWS_AS(gen_bernoulli_mod_p(7, -1), BadExponent);
    CHECK_THROWS_AS(gen_bernoulli_mod_p(7, 2), BadExponent);  // even
}

TEST_CASE("gen-Bernoulli vanishing agrees with the B_(p-i) criterion, p <= 100") {
    for (u64 p = 5; p <= 100; ++p) {
        if (!is_prime_u64(p)) continue;
        const BernoulliTable& tab = shared_bernoulli_table(p);
        for (i64 i = 3; i + 1 < (i64)p; i += 2) {
            // call argument -i stays away from the -1 class since i != 1
            GenBernoulli g = gen_bernoulli_mod_p(p, -i);
            bool bern_zero = tab.at((unsigned)(p - i)) == 0;
            CHECK((g.residue == 0) == bern_zero);
        }
    }
}

TEST_CASE("the congruence B_(1,chi^(-i)) = B_(p-i)/(p-i) holds mod p") {
    for (u64 p : {5ull, 7ull, 11ull, 13ull, 37ull}) {
        const BernoulliTable& tab = shared_bernoulli_table(p);
        for (i64 i = 3; i + 1 < (i64)p; i += 2) {
            GenBernoulli g = gen_bernoulli_mod_p(p, -i);
            u64 k = p - (u64)i;
            u64 expect = mul_mod(tab.at((unsigned)k), inv_mod(k % p, p), p);
            CHECK(g.residue == expect);
        }
    }
}
