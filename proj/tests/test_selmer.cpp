#include <doctest.h>

#include <map>
#include <set>

#include "kummer/selmer.hpp"
#include "kummer/survey.hpp"

using namespace kummer;

namespace {

struct Ws {
    PrimePair pair;
    ClassContext ctx;
    FactorialCheckpoints cp;
    explicit Ws(u64 p, u64 N) : pair(p, N), ctx(pair), cp(factorial_checkpoints(pair)) {}
};

} // namespace

TEST_CASE("odd entries from S statuses") {
    Ws w(5, 11);
    CHECK(h_sigma_odd(1, w.cp, w.ctx) == Dim::Zero); // S_1 = 2, not a 5th power
    CHECK_THROWS_AS(h_sigma_odd(2, w.cp, w.ctx), BadIndex);
    CHECK_THROWS_AS(h_sigma_odd(3, w.cp, w.ctx), BadIndex); // above p-4

    Ws w7(7, 337);
    CHECK(h_sigma_odd(1, w7.cp, w7.ctx) == Dim::Zero);
    CHECK(h_sigma_odd(3, w7.cp, w7.ctx) == Dim::One);
}

TEST_CASE("even unit status via the fixed polynomials") {
    Ws w(5, 11);
    CHECK(even_unit_status(2, w.ctx) == EvenUnitStatus::NotPthPower); // roots 3, 7
    CHECK_THROWS_AS(even_unit_status(1, w.ctx), BadIndex);
    CHECK(eigenunit_status(2, w.ctx) == EvenUnitStatus::NotPthPower);
}

TEST_CASE("eigenunit agrees with the fixed polynomials on a sweep") {
    struct Case { u64 p; unsigned i; };
    for (Case c : {Case{5, 2}, Case{7, 2}, Case{7, 4}}) {
        for (u64 N : sieve(c.p, 2, 20000)) {
            Ws w(c.p, N);
            EvenUnitStatus hard = even_unit_status(c.i, w.ctx);
            REQUIRE(hard != EvenUnitStatus::Degenerate);
            CHECK(hard == eigenunit_status(c.i, w.ctx));
        }
    }
}

TEST_CASE("index translation: which S backs which even entry") {
    // chi^(1+i) = chi^-(p-2-i): (5,2) -> S_1, (7,2) -> S_3, (7,4) -> S_1
    Ws w5(5, 31);
    DimensionString d5 = dimension_string(w5.cp, w5.ctx);
    CHECK(d5.entries[1].note.find("S_1") != std::string::npos);
    CHECK(d5.entries[1].note.find("x^2 + x - 1") != std::string::npos);

    Ws w7(7, 337);
    DimensionString d7 = dimension_string(w7.cp, w7.ctx);
    CHECK(d7.entries[1].note.find("S_3") != std::string::npos);
    CHECK(d7.entries[1].note.find("x^3 + 41x^2 + 54x + 1") != std::string::npos);
    CHECK(d7.entries[3].note.find("S_1") != std::string::npos);
    CHECK(d7.entries[3].note.find("x^3 - 25x^2 + 31x + 1") != std::string::npos);
}

TEST_CASE("dimension strings at the named primes") {
    Ws w(5, 11);
    CHECK(dimension_string(w.cp, w.ctx).str() == "00");

    Ws w7(7, 337);
    DimensionString d = dimension_string(w7.cp, w7.ctx);
    CHECK(d.str() == "0010");
    CHECK(d.fully_determined());

    Ws w11(11, 353);
    DimensionString d11 = dimension_string(w11.cp, w11.ctx);
    CHECK(d11.str() == "00100100"); // h(-3) = 1 pulls h(-6) = 1 with it
    CHECK(d11.entries[5].best_effort); // even entries beyond p = 7 are eigenunit-based
}

TEST_CASE("no 01 string for p = 5 and only the nine legal strings for p = 7") {
    const std::set<std::string> legal7 = {"0000", "1000", "0010", "1010", "1001",
                                          "0110", "1011", "1110", "1111"};
    for (u64 N : sieve(5, 2, 20000)) {
        Ws w(5, N);
        std::string s = dimension_string(w.cp, w.ctx).str();
        CHECK(s != "01");
    }
    for (u64 N : sieve(7, 2, 20000)) {
        Ws w(7, N);
        std::string s = dimension_string(w.cp, w.ctx).str();
        CHECK(legal7.count(s) == 1);
    }
}

TEST_CASE("mu counts") {
    Ws w(5, 11);
    CHECK(mu_count(w.cp, w.ctx) == 1);
    Ws w7(7, 337);
    CHECK(mu_count(w7.cp, w7.ctx) == 1); // M_1 counts, M_3 does not
}

TEST_CASE("rank estimates for the specific primes") {
    Ws w3(3, 7);
    DimensionString d3 = dimension_string(w3.cp, w3.ctx);
    RankEstimate e3 = rank_estimate(d3, 0);
    CHECK(e3.exact);
    CHECK(e3.lower == 1);
    CHECK(e3.upper == 1);

    Ws w(5, 11);
    RankEstimate e5 = rank_estimate(dimension_string(w.cp, w.ctx), mu_count(w.cp, w.ctx));
    CHECK(e5.exact);
    CHECK(e5.lower == 1);

    Ws w7(7, 337);
    RankEstimate e7 = rank_estimate(dimension_string(w7.cp, w7.ctx), mu_count(w7.cp, w7.ctx));
    CHECK(e7.exact);
    CHECK(e7.lower == 2);
    CHECK(e7.upper == 2);
}

TEST_CASE("p = 11, N = 353: bounds contain the true rank 1") {
    Ws w(11, 353);
    std::vector<ResidueClass> s = all_s_invariants(w.cp, w.ctx);
    CHECK(s[0].label != 0); // S_1 not an 11th power
    CHECK(s[2].label == 0); // S_3 (hence M_3) is an 11th power
    DimensionString d = dimension_string(w.cp, w.ctx);
    RankEstimate est = rank_estimate(d, mu_count(w.cp, w.ctx));
    CHECK(est.lower == 1);
    CHECK(est.upper >= 2);
    CHECK_FALSE(est.exact);
    CHECK(est.upper <= 1 + (unsigned)(11 - 3));
}

TEST_CASE("p = 7 string-to-bounds table covers the observed rank cells") {
    // (string, observed exact ranks) pairs with a nonzero count
    const std::map<std::string, std::pair<unsigned, unsigned>> observed = {
        {"0000", {1, 1}}, {"1000", {2, 2}}, {"0010", {2, 2}},
        {"1010", {2, 3}}, {"1001", {2, 3}}, {"0110", {2, 3}},
        {"1011", {2, 4}}, {"1110", {2, 4}}, {"1111", {2, 5}},
    };
    PrimePair pair(7, 29); // carrier pair; the mapping depends only on the string
    for (const auto& [s, ranks] : observed) {
        DimensionString dims{pair, {}};
        unsigned mu = 0;
        for (unsigned i = 1; i <= 4; ++i) {
            DimEntry e;
            e.i = i;
            e.value = s[i - 1] == '1' ? Dim::One : Dim::Zero;
            dims.entries.push_back(e);
            if ((i & 1) && e.value == Dim::Zero) ++mu; // regular p: mu counts odd non-powers
        }
        RankEstimate est = rank_estimate(dims, mu);
        CHECK(est.lower <= ranks.first);
        CHECK(est.upper >= ranks.second);
        // the three single-column strings are reported exactly
        if (s == "0000") { CHECK(est.exact); CHECK(est.lower == 1); CHECK(est.upper == 1); }
        if (s == "1000" || s == "0010") {
            CHECK(est.exact);
            CHECK(est.lower == 2);
            CHECK(est.upper == 2);
        }
        // mu-based cap holds alongside the dimension-sum bound
        CHECK(est.upper <= 7 - 2 - 2 * mu);
        CHECK(est.upper <= 1 + dims.count(Dim::One));
    }
}

TEST_CASE("unknown entries widen the bounds and spoil exactness") {
    // p = 37 has the irregular pair at exponent class -5; entries touching it
    // go Unknown rather than guessing.
    Ws w(37, 149); // 149 = 4 * 37 + 1
    DimensionString d = dimension_string(w.cp, w.ctx);
    bool saw_unknown = false;
    for (const DimEntry& e : d.entries)
        if (e.value == Dim::Unknown) {
            saw_unknown = true;
            CHECK(e.note.find("irregular") != std::string::npos);
        }
    CHECK(saw_unknown);
    CHECK(d.str().find('?') != std::string::npos);
    RankEstimate est = rank_estimate(d, mu_count(w.cp, w.ctx));
    CHECK_FALSE(est.exact);
    CHECK(est.lower >= 1);
    CHECK(est.lower <= est.upper);
}

TEST_CASE("even => odd validity on surveyed primes") {
    for (u64 p : {5ull, 7ull, 11ull}) {
        for (u64 N : sieve(p, 2, 5000)) {
            Ws w(p, N);
            DimensionString d = dimension_string(w.cp, w.ctx);
            for (unsigned i = 2; i + 2 < p; i += 2) {
                if (d.entries[i - 1].value == Dim::One)
                    CHECK(d.entries[p - 3 - i].value == Dim::One);
            }
        }
    }
}
