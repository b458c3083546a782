#include "kummer/selmer.hpp"

#include <algorithm>

#include "kummer/regularity.hpp"

namespace kummer {

std::string DimensionString::str() const {
    std::string s;
    s.reserve(entries.size());
    for (const DimEntry& e : entries) s.push_back(e.to_char());
    return s;
}

bool DimensionString::fully_determined() const {
    return std::none_of(entries.begin(), entries.end(),
                        [](const DimEntry& e) { return e.value == Dim::Unknown; });
}

unsigned DimensionString::count(Dim v) const {
    return (unsigned)std::count_if(entries.begin(), entries.end(),
                                   [v](const DimEntry& e) { return e.value == v; });
}

std::vector<i64> even_unit_polynomial(u64 p, unsigned i) {
    if (p == 5 && i == 2) return {-1, 1, 1};       // x^2 + x - 1
    if (p == 7 && i == 2) return {1, 54, 41, 1};   // x^3 + 41x^2 + 54x + 1
    if (p == 7 && i == 4) return {1, 31, -25, 1};  // x^3 - 25x^2 + 31x + 1
    return {};
}

std::string even_unit_polynomial_name(u64 p, unsigned i) {
    if (p == 5 && i == 2) return "x^2 + x - 1";
    if (p == 7 && i == 2) return "x^3 + 41x^2 + 54x + 1";
    if (p == 7 && i == 4) return "x^3 - 25x^2 + 31x + 1";
    return {};
}

namespace {

std::string irregular_note(const RegularityVerdict& v) {
    return "irregular pair (" + std::to_string(v.p) + ", exponent " + std::to_string(v.exponent) +
           "): B_" + std::to_string(v.witness_index) + " = 0 mod " + std::to_string(v.p);
}

EvenUnitStatus status_of_roots(const PolyRoots& roots, const ClassContext& ctx,
                               const std::string& name) {
    bool first = is_pth_power(roots.roots.at(0), ctx.pair());
    for (std::size_t t = 1; t < roots.roots.size(); ++t) {
        if (is_pth_power(roots.roots[t], ctx.pair()) != first)
            throw RootStatusMismatch("roots of " + name + " disagree on pth-power status mod " +
                                     std::to_string(ctx.pair().N));
    }
    return first ? EvenUnitStatus::IsPthPower : EvenUnitStatus::NotPthPower;
}

} // namespace

EvenUnitStatus eigenunit_status(unsigned i, const ClassContext& ctx) {
    const PrimePair& pair = ctx.pair();
    const u64 N = pair.N;
    u64 u = 1, za = 1;
    for (u64 a = 1; a < pair.p; ++a) {
        za = mul_mod(za, ctx.zeta().zeta, N);
        u64 term = (1 + N - za) % N; // 1 - zeta^a, nonzero since a != 0 mod p
        u64 e = pow_mod(a, i, pair.p);
        u = mul_mod(u, pow_mod(term, e, N), N);
    }
    return is_pth_power(u, pair) ? EvenUnitStatus::IsPthPower : EvenUnitStatus::NotPthPower;
}

EvenUnitStatus even_unit_status(unsigned i, const ClassContext& ctx) {
    const PrimePair& pair = ctx.pair();
    if (i < 2 || i > pair.p - 3 || (i & 1))
        throw BadIndex("even_unit_status: i must be even in [2, p-3]");
    std::vector<i64> poly = even_unit_polynomial(pair.p, i);
    if (poly.empty()) return eigenunit_status(i, ctx);
    PolyRoots roots = poly_roots_mod(poly, pair.N);
    if (roots.repeated_root) return EvenUnitStatus::Degenerate;
    if (roots.roots.size() != poly.size() - 1)
        throw Error("even_unit_status: fixed polynomial failed to split mod " +
                    std::to_string(pair.N));
    return status_of_roots(roots, ctx, even_unit_polynomial_name(pair.p, i));
}

namespace {

// Shared assembly for odd entries; labels[i-1] is the class of S_i.
DimEntry make_odd_entry(unsigned i, const std::vector<ResidueClass>& labels,
                        const PrimePair& pair) {
    DimEntry e;
    e.i = i;
    RegularityVerdict v = regular_pair(pair.p, -(i64)i);
    if (!v.regular) {
        e.value = Dim::Unknown;
        e.note = irregular_note(v);
        return e;
    }
    const ResidueClass& s = labels[i - 1];
    e.value = s.is_pth_power() ? Dim::One : Dim::Zero;
    e.note = "S_" + std::to_string(i) + " label " + std::to_string(s.label) +
             (s.is_pth_power() ? " (pth power)" : " (not a pth power)");
    return e;
}

DimEntry make_even_entry(unsigned i, const std::vector<ResidueClass>& labels,
                         const FactorialCheckpoints&, const ClassContext& ctx) {
    const PrimePair& pair = ctx.pair();
    DimEntry e;
    e.i = i;
    RegularityVerdict v = regular_pair(pair.p, (i64)(1 + i));
    if (!v.regular) {
        e.value = Dim::Unknown;
        e.note = irregular_note(v);
        return e;
    }
    // chi^(1+i) = chi^-(p-2-i): condition (1) is the reflected odd entry
    const unsigned j = (unsigned)pair.p - 2 - i;
    const ResidueClass& s = labels[j - 1];
    const bool odd_one = s.is_pth_power();

    std::string poly_name = even_unit_polynomial_name(pair.p, i);
    EvenUnitStatus st;
    if (poly_name.empty()) {
        st = eigenunit_status(i, ctx);
        e.best_effort = true;
        e.note = "S_" + std::to_string(j) + " and eigenunit for exponent " + std::to_string(i) +
                 " (best effort)";
    } else {
        st = even_unit_status(i, ctx);
        if (st == EvenUnitStatus::Degenerate) {
            e.degenerate_poly = true;
            e.best_effort = true;
            st = eigenunit_status(i, ctx);
            e.note = "S_" + std::to_string(j) + " and eigenunit for exponent " +
                     std::to_string(i) + " (degenerate " + poly_name + ")";
        } else {
            e.note = "S_" + std::to_string(j) + " and roots of " + poly_name;
        }
    }
    e.value = (odd_one && st == EvenUnitStatus::IsPthPower) ? Dim::One : Dim::Zero;
    return e;
}

} // namespace

Dim h_sigma_odd(unsigned i, const FactorialCheckpoints& cp, const ClassContext& ctx) {
    const PrimePair& pair = ctx.pair();
    if (i < 1 || i > pair.p - 4 || (i & 1) == 0)
        throw BadIndex("h_sigma_odd: i must be odd in [1, p-4]");
    std::vector<ResidueClass> labels = all_s_invariants(cp, ctx);
    return make_odd_entry(i, labels, pair).value;
}

Dim h_sigma_even(unsigned i, const FactorialCheckpoints& cp, const ClassContext& ctx) {
    const PrimePair& pair = ctx.pair();
    if (i < 2 || i > pair.p - 3 || (i & 1))
        throw BadIndex("h_sigma_even: i must be even in [2, p-3]");
    std::vector<ResidueClass> labels = all_s_invariants(cp, ctx);
    return make_even_entry(i, labels, cp, ctx).value;
}

DimensionString dimension_string(const FactorialCheckpoints& cp, const ClassContext& ctx) {
    const PrimePair& pair = ctx.pair();
    DimensionString out{pair, {}};
    if (pair.p == 3) return out; // no entries: indices run over the empty range
    std::vector<ResidueClass> labels = all_s_invariants(cp, ctx);
    out.entries.resize(pair.p - 3);
    for (unsigned i = 1; i <= pair.p - 4; i += 2)
        out.entries[i - 1] = make_odd_entry(i, labels, pair);
    for (unsigned i = 2; i <= pair.p - 3; i += 2)
        out.entries[i - 1] = make_even_entry(i, labels, cp, ctx);
    // even => odd validity: a One at even i requires a One at p-2-i
    for (unsigned i = 2; i <= pair.p - 3; i += 2) {
        if (out.entries[i - 1].value == Dim::One &&
            out.entries[pair.p - 3 - i].value != Dim::One)
            throw Error("dimension string violates the even=>odd constraint at i = " +
                        std::to_string(i));
    }
    return out;
}

unsigned mu_count(const FactorialCheckpoints& cp, const ClassContext& ctx) {
    const PrimePair& pair = ctx.pair();
    if (pair.p < 5) return 0;
    std::vector<ResidueClass> labels = all_s_invariants(cp, ctx);
    unsigned mu = 0;
    for (unsigned i = 1; i <= pair.p - 4; i += 2) {
        if (!regular_pair(pair.p, -(i64)i).regular) continue;
        if (!labels[i - 1].is_pth_power()) ++mu; // M_i = S_i^-1 up to pth powers
    }
    return mu;
}

RankEstimate rank_estimate(const DimensionString& dims, unsigned mu,
                           unsigned assumed_r_cyclotomic) {
    const PrimePair& pair = dims.pair;
    RankEstimate est{pair, 1, 1, false, mu, assumed_r_cyclotomic};

    if (pair.p == 3) { // the genus field is the only unramified extension
        est.exact = true;
        return est;
    }

    const unsigned ones = dims.count(Dim::One);
    const unsigned unknowns = dims.count(Dim::Unknown);
    const unsigned upper_sum = 1 + ones + unknowns;

    if (pair.p == 5) {
        est.lower = 1 + ones;
        est.upper = upper_sum;
        est.exact = unknowns == 0; // rank equals 1 + h(-1) + h(-2)
        return est;
    }

    auto odd_one = [&](unsigned i) { return dims.entries[i - 1].value == Dim::One; };
    const u64 mu_cap = assumed_r_cyclotomic + pair.p - 2 - 2 * (u64)mu;
    const unsigned upper = (unsigned)std::min<u64>(upper_sum, mu_cap);

    if (pair.p == 7) {
        est.lower = (odd_one(1) || odd_one(3)) ? 2 : 1;
        est.upper = upper;
        est.exact = est.lower == est.upper;
        return est;
    }

    est.lower = 1 + (odd_one(1) ? 1 : 0);
    est.upper = upper;
    est.exact = est.lower == est.upper;
    return est;
}

} // namespace kummer
