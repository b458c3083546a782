#ifndef KUMMER_SELMER_HPP_
#define KUMMER_SELMER_HPP_

#include <string>
#include <vector>

#include "kummer/invariants.hpp"
#include "kummer/modarith.hpp"

namespace kummer {

enum class Dim { Zero, One, Unknown };

enum class EvenUnitStatus { IsPthPower, NotPthPower, Degenerate };

struct DimEntry {
    unsigned i = 0;
    Dim value = Dim::Unknown;
    std::string note;            // provenance, or the reason an entry is Unknown
    bool best_effort = false;    // even entry decided by the generic eigenunit
    bool degenerate_poly = false; // hardcoded polynomial degenerated mod N

    char to_char() const { return value == Dim::Zero ? '0' : value == Dim::One ? '1' : '?'; }
};

// The vector (h^1_Sigma(F_p(-i)))_{i=1..p-3}. A One at even i forces a One
// at the reflected odd index p-2-i; construction enforces this.
struct DimensionString {
    PrimePair pair;
    std::vector<DimEntry> entries; // entries[i-1] holds index i

    std::string str() const;
    bool fully_determined() const;
    unsigned count(Dim v) const;
};

// Odd entries: decided by the pth-power status of S_i when (p, -i) is a
// regular pair, Unknown otherwise. i odd in [1, p-4].
Dim h_sigma_odd(unsigned i, const FactorialCheckpoints& cp, const ClassContext& ctx);

// Even-index Kummer-generator test. For (p,i) in {(5,2),(7,2),(7,4)} the
// generator is a root of a fixed polynomial; otherwise the cyclotomic
// eigenunit prod_a (1 - zeta^a)^(a^i mod p) is evaluated mod N.
EvenUnitStatus even_unit_status(unsigned i, const ClassContext& ctx);

// The generic eigenunit route on its own (cross-validation and fallback).
EvenUnitStatus eigenunit_status(unsigned i, const ClassContext& ctx);

// Even entries: One iff the reflected odd entry is One and the even-unit
// test passes; needs (p, 1+i) regular. i even in [2, p-3].
Dim h_sigma_even(unsigned i, const FactorialCheckpoints& cp, const ClassContext& ctx);

DimensionString dimension_string(const FactorialCheckpoints& cp, const ClassContext& ctx);

// Number of odd i in [1, p-4] with (p,-i) regular and M_i not a pth power.
unsigned mu_count(const FactorialCheckpoints& cp, const ClassContext& ctx);

struct RankEstimate {
    PrimePair pair;
    unsigned lower = 1;
    unsigned upper = 1;
    bool exact = false;
    unsigned mu = 0;
    unsigned assumed_r_cyclotomic = 0;
};

// Bounds on the p-rank of the class group of Q(N^(1/p)) from the dimension
// string: exact for p = 3 and p = 5, the proven two-sided bounds for p = 7,
// and the general lower/upper bounds beyond. Unknown entries contribute 0 to
// the lower bound and 1 to the upper bound and make the result inexact.
RankEstimate rank_estimate(const DimensionString& dims, unsigned mu,
                           unsigned assumed_r_cyclotomic = 0);

// Pretty form of the fixed polynomial used for a hardcoded (p, i) even-index
// test, empty when (p, i) uses the eigenunit.
std::string even_unit_polynomial_name(u64 p, unsigned i);

// Coefficients (low to high) of the hardcoded polynomial, empty if none.
std::vector<i64> even_unit_polynomial(u64 p, unsigned i);

} // namespace kummer

#endif // KUMMER_SELMER_HPP_
