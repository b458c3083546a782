#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "kummer/modarith.hpp"

using namespace kummer;

TEST_CASE("pow_mod basics") {
    CHECK(pow_mod(2, 10, 11) == 1); // Fermat
    CHECK(pow_mod(3, 2, 11) == 9);
    CHECK(pow_mod(5, 25, 11) == 1); // 5^5 = 1 mod 11
    CHECK(pow_mod(0, 0, 7) == 1);
    CHECK(pow_mod(123456789, 0, 97) == 1);
}

TEST_CASE("pow_mod survives 64-bit moduli") {
    const u64 big = 18446744073709551557ull; // largest 64-bit prime
    CHECK(is_prime_u64(big));
    CHECK(pow_mod(2, big - 1, big) == 1);
    CHECK(mul_mod(big - 1, big - 1, big) == 1);
}

TEST_CASE("deterministic primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(337));
    CHECK(is_prime_u64(353));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(341));  // 2-pseudoprime
    CHECK_FALSE(is_prime_u64(3215031751ull)); // strong pseudoprime to 2,3,5,7
    CHECK_FALSE(is_prime_u64(25326001ull));
    // cross-check against trial division
    for (u64 n = 2; n < 2000; ++n) {
        bool prime = true;
        for (u64 d = 2; d * d <= n; ++d)
            if (n % d == 0) { prime = false; break; }
        CHECK(is_prime_u64(n) == prime);
    }
}

TEST_CASE("Montgomery agrees with the plain route") {
    std::mt19937_64 rng(42);
    for (u64 n : {11ull, 337ull, 1000003ull, 2147483659ull, 9223372036854775837ull /* > 2^63 */}) {
        if (!is_prime_u64(n)) continue;
        Montgomery F(n);
        for (int t = 0; t < 200; ++t) {
            u64 a = rng() % n, b = rng() % n;
            u64 want = mul_mod(a, b, n);
            u64 got = F.from_mont(F.mul(F.to_mont(a), F.to_mont(b)));
            CHECK(got == want);
            // one R cancels: mont form times plain residue is plain
            CHECK(F.mul(F.to_mont(a), b) == want);
        }
        CHECK(F.from_mont(F.pow(F.to_mont(3 % n), n - 1)) == (n == 3 ? 0 : 1));
    }
}

TEST_CASE("PrimePair validation") {
    PrimePair pair(5, 11);
    CHECK(pair.M == 2);
    CHECK_THROWS_AS(PrimePair(5, 13), InvalidPair); // 13 != 1 mod 5
    CHECK_THROWS_AS(PrimePair(5, 21), InvalidPair); // composite
    CHECK_THROWS_AS(PrimePair(4, 13), InvalidPair); // p not prime
    CHECK_THROWS_AS(PrimePair(2, 5), InvalidPair);  // p even
}

TEST_CASE("residue character and pth powers") {
    PrimePair pair(5, 11);
    CHECK(residue_character(1, pair) == 1);
    CHECK(residue_character(2, pair) == 4);
    CHECK(residue_character(10, pair) == 1);
    CHECK(is_pth_power(10, pair));
    CHECK_FALSE(is_pth_power(2, pair));
    CHECK(is_pth_power(1, pair));
    CHECK_THROWS_AS(residue_character(0, pair), ZeroInput);
    CHECK_THROWS_AS(residue_character(11, pair), ZeroInput);
}

TEST_CASE("character is multiplicative and kills pth powers") {
    PrimePair pair(7, 337);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        u64 x = 1 + rng() % (pair.N - 1), y = 1 + rng() % (pair.N - 1);
        u64 lhs = residue_character(mul_mod(x, y, pair.N), pair);
        u64 rhs = mul_mod(residue_character(x, pair), residue_character(y, pair), pair.N);
        CHECK(lhs == rhs);
        CHECK(is_pth_power(pow_mod(x, pair.p, pair.N), pair));
    }
}

TEST_CASE("canonical element of order p") {
    PrimePair p5(5, 11);
    CHECK(element_of_order_p(p5).zeta == 4); // g = 2 already works: 2^2 = 4
    PrimePair p7(7, 29);
    CHECK(element_of_order_p(p7).zeta == 16); // 2^4 = 16
    for (u64 N : {31ull, 41ull, 61ull, 71ull, 101ull}) {
        PrimePair pair(5, N);
        u64 z = element_of_order_p(pair).zeta;
        CHECK(z != 1);
        CHECK(pow_mod(z, 5, N) == 1);
    }
}

TEST_CASE("class labels") {
    PrimePair pair(5, 11);
    PthRootOfUnity zeta3 = PthRootOfUnity::of(3, pair);
    CHECK(class_label(1, pair, zeta3) == 0);
    CHECK(class_label(2, pair, zeta3) == 4); // 3^4 = 81 = 4 = 2^2 mod 11
    CHECK_THROWS_AS(class_label(0, pair, zeta3), ZeroInput);
    CHECK_THROWS_AS(PthRootOfUnity::of(2, pair), InvalidPair); // order 10, not 5

    ClassContext ctx(pair);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        u64 x = 1 + rng() % (pair.N - 1), y = 1 + rng() % (pair.N - 1);
        unsigned sum = (ctx.classify(x).label + ctx.classify(y).label) % pair.p;
        CHECK(ctx.classify(mul_mod(x, y, pair.N)).label == sum);
    }
}

TEST_CASE("sqrt_mod") {
    CHECK(sqrt_mod(0, 11) == 0);
    auto r = sqrt_mod(5, 11);
    REQUIRE(r.has_value());
    CHECK((*r == 4 || *r == 7));
    CHECK(mul_mod(*r, *r, 11) == 5);
    CHECK_FALSE(sqrt_mod(2, 11).has_value()); // 2 is a non-residue mod 11

    for (u64 N : {13ull, 17ull, 97ull, 337ull, 1000003ull, 999999937ull}) {
        std::mt19937_64 rng(N);
        for (int t = 0; t < 50; ++t) {
            u64 x = rng() % N;
            u64 sq = mul_mod(x, x, N);
            auto root = sqrt_mod(sq, N);
            REQUIRE(root.has_value());
            CHECK((*root == x || *root == (N - x) % N));
        }
        // determinism
        CHECK(sqrt_mod(4, N) == sqrt_mod(4, N));
        CHECK(*sqrt_mod(4, N) == 2);
    }
}

TEST_CASE("poly roots: spec examples") {
    std::vector<i64> quad = {-1, 1, 1}; // x^2 + x - 1
    PolyRoots r = poly_roots_mod(quad, 11);
    CHECK(r.roots == std::vector<u64>{3, 7});
    CHECK_FALSE(r.repeated_root);

    std::vector<i64> lin = {-3, 1}; // x - 3
    CHECK(poly_roots_mod(lin, 101).roots == std::vector<u64>{3});

    std::vector<i64> nosol = {1, 0, 1}; // x^2 + 1, -1 non-residue mod 11
    CHECK(poly_roots_mod(nosol, 11).roots.empty());

    std::vector<i64> degen = {1, 11}; // leading coefficient 11 = 0 mod 11
    CHECK_THROWS_AS(poly_roots_mod(degen, 11), DegenerateModulus);
}

TEST_CASE("poly roots: repeated root when N divides the discriminant") {
    std::vector<i64> quad = {-1, 1, 1}; // disc 5
    PolyRoots r = poly_roots_mod(quad, 5);
    CHECK(r.repeated_root);
    CHECK(r.roots == std::vector<u64>{2}); // double root of x^2+x-1 mod 5
    std::vector<i64> sq = {1, 2, 1};       // (x+1)^2
    CHECK(poly_roots_mod(sq, 101).repeated_root);
    CHECK(poly_roots_mod(sq, 101).roots == std::vector<u64>{100});
}

TEST_CASE("poly roots match the exhaustive scan") {
    std::mt19937_64 rng(1234);
    std::vector<u64> mods = {53, 101, 211, 1009, 5003};
    for (u64 N : mods) {
        for (int t = 0; t < 40; ++t) {
            std::vector<i64> c(1 + rng() % 4);
            for (i64& x : c) x = (i64)(rng() % 200) - 100;
            if (c.back() % (i64)N == 0) c.back() = 1;
            PolyRoots fast = poly_roots_mod(c, N);
            PolyRoots slow = poly_roots_scan(c, N);
            CHECK(fast.roots == slow.roots);
            CHECK(fast.repeated_root == slow.repeated_root);
        }
    }
}

TEST_CASE("fixed polynomials split completely when N = 1 mod p") {
    // N = 1 mod p splits completely in Q(zeta_p), so these split mod N.
    struct Case { u64 p; std::vector<i64> poly; };
    std::vector<Case> cases = {
        {5, {-1, 1, 1}},
        {7, {1, 54, 41, 1}},
        {7, {1, 31, -25, 1}},
    };
    for (const Case& c : cases) {
        for (u64 N = 2; N < 3000; ++N) {
            if (!is_prime_u64(N) || N % c.p != 1) continue;
            PolyRoots r = poly_roots_mod(c.poly, N);
            CHECK(r.roots.size() == c.poly.size() - 1);
            CHECK_FALSE(r.repeated_root);
            // Galois conjugacy: all roots share one pth-power status
            PrimePair pair(c.p, N);
            std::set<bool> statuses;
            for (u64 root : r.roots) statuses.insert(is_pth_power(root, pair));
            CHECK(statuses.size() == 1);
        }
    }
}

TEST_CASE("cubic splitting at survey-scale moduli") {
    std::vector<i64> poly = {1, 54, 41, 1};
    for (u64 N : {1000133ull, 1000231ull, 1000273ull, 1000000009ull, 1000000093ull}) {
        REQUIRE(N % 7 == 1);
        PolyRoots r = poly_roots_mod(poly, N);
        CHECK(r.roots.size() == 3);
        for (u64 root : r.roots) {
            u64 v = mul_mod(mul_mod(root, root, N), root, N);
            v = (v + mul_mod(41, mul_mod(root, root, N), N)) % N;
            v = (v + mul_mod(54, root, N)) % N;
            CHECK((v + 1) % N == 0);
        }
    }
}
