#include "kummer/invariants.hpp"

#include <string>

namespace kummer {

FactorialCheckpoints factorial_checkpoints(const PrimePair& pair) {
    const u64 N = pair.N, M = pair.M, p = pair.p;
    Montgomery F(N);
    std::vector<u64> vals(p - 1);
    // Four independent lanes hide multiply latency. Every F.mul over plain
    // residues contributes one R^-1, so the running value is
    // (j!) * R^-deficit; each checkpoint repairs the deficit with one pow.
    u64 acc = 1;
    u64 deficit = 0;
    u64 j = 1;
    for (u64 k = 1; k < p; ++k) {
        const u64 end = M * k;
        const u64 count = end - j + 1;
        u64 l0 = 1, l1 = 1, l2 = 1, l3 = 1;
        for (; j + 3 <= end; j += 4) {
            l0 = F.mul(l0, j);
            l1 = F.mul(l1, j + 1);
            l2 = F.mul(l2, j + 2);
            l3 = F.mul(l3, j + 3);
        }
        for (; j <= end; ++j) l0 = F.mul(l0, j);
        acc = F.mul(acc, F.mul(F.mul(l0, l1), F.mul(l2, l3)));
        deficit += count + 4;
        vals[k - 1] = mul_mod(acc, pow_mod(F.one(), deficit, N), N);
    }
    return FactorialCheckpoints{pair, std::move(vals)};
}

ResidueClass s_invariant(unsigned i, const FactorialCheckpoints& cp, const ClassContext& ctx) {
    const PrimePair& pair = ctx.pair();
    if (i < 1 || i > pair.p - 2)
        throw IndexOutOfRange("s_invariant: i must be in [1, p-2], got " + std::to_string(i));
    u64 r = 1;
    for (u64 k = 1; k < pair.p; ++k) {
        u64 e = pow_mod(k, i, pair.N - 1);
        r = mul_mod(r, pow_mod(cp.values[k - 1], e, pair.N), pair.N);
    }
    return ctx.classify(r);
}

std::vector<ResidueClass> all_s_invariants(const FactorialCheckpoints& cp, const ClassContext& ctx) {
    std::vector<ResidueClass> out;
    out.reserve(ctx.pair().p - 2);
    for (unsigned i = 1; i + 1 < ctx.pair().p; ++i) out.push_back(s_invariant(i, cp, ctx));
    return out;
}

ResidueClass m_direct(unsigned i, const ClassContext& ctx) {
    const PrimePair& pair = ctx.pair();
    if (pair.N > 5000)
        throw OracleBoundExceeded("m_direct: oracle limited to N <= 5000, got N = " +
                                  std::to_string(pair.N));
    // M_i is only S_i^-1 away from the class -1 mod p-1; the double product
    // is defined for odd i up to p-4.
    if (i < 1 || i > pair.p - 4 || (i & 1) == 0)
        throw IndexOutOfRange("m_direct: i must be odd in [1, p-4]");
    const u64 N = pair.N;
    u64 r = 1, e = 0; // e = sum_{a<k} a^i mod N-1, maintained incrementally
    for (u64 k = 1; k < N; ++k) {
        if (k > 1) e = (u64)(((u128)e + pow_mod(k - 1, i, N - 1)) % (N - 1));
        r = mul_mod(r, pow_mod(k, e, N), N);
    }
    return ctx.classify(r);
}

u64 gamma_n(u64 x, u64 N) {
    if (x == 0 || x >= N)
        throw OutOfDomain("gamma_n: x must satisfy 0 < x < N");
    u64 f = 1;
    for (u64 j = 2; j < x; ++j) f = mul_mod(f, j, N);
    return (x & 1) ? N - f : f;
}

ResidueClass m_gamma(unsigned i, const FactorialCheckpoints& cp, const ClassContext& ctx) {
    const PrimePair& pair = ctx.pair();
    if (i < 1 || i > pair.p - 2)
        throw IndexOutOfRange("m_gamma: i must be in [1, p-2]");
    const u64 N = pair.N, M = pair.M, p = pair.p;
    u64 r = 1;
    for (u64 k = 1; k < p; ++k) {
        // k/p = M(p-k) + 1 mod N, so Gamma_N(k/p) = (-1)^(M(p-k)+1) (M(p-k))!
        u64 arg = M * (p - k) + 1;
        u64 g = cp.values[p - k - 1];
        if (arg & 1) g = N - g;
        u64 e = pow_mod(k, i, N - 1);
        r = mul_mod(r, pow_mod(g, e, N), N);
    }
    return ctx.classify(r);
}

ResidueClass a_invariant(unsigned m, const ClassContext& ctx) {
    const PrimePair& pair = ctx.pair();
    if (m < 1 || m >= pair.p - 1)
        throw OutOfDomain("a_invariant: m must satisfy 0 < m < p-1");
    const u64 N = pair.N;
    u64 r = 1;
    for (u64 k = 1; k < N; ++k)
        r = mul_mod(r, pow_mod(k, pow_mod(k, m, N - 1), N), N);
    return ctx.classify(r);
}

ResidueClass c_invariant(const ClassContext& ctx) {
    const u64 N = ctx.pair().N;
    u64 r = 1;
    for (u64 k = 1; k <= (N - 1) / 2; ++k)
        r = mul_mod(r, pow_mod(k, k, N), N);
    return ctx.classify(r);
}

InvariantSet compute_invariants(const PrimePair& pair, bool with_direct_oracle) {
    if (pair.p < 5) throw OutOfDomain("compute_invariants: requires p >= 5");
    ClassContext ctx(pair);
    FactorialCheckpoints cp = factorial_checkpoints(pair);
    InvariantSet out{pair, ctx.zeta(), {}, {}, {}, std::nullopt};
    for (unsigned i = 1; i <= pair.p - 2; ++i) out.s.push_back(s_invariant(i, cp, ctx));
    out.a2 = a_invariant(2, ctx);
    out.c = c_invariant(ctx);
    if (with_direct_oracle) {
        std::vector<ResidueClass> mo;
        for (unsigned i = 1; i <= pair.p - 4; i += 2) mo.push_back(m_direct(i, ctx));
        out.m_oracle = std::move(mo);
    }
    return out;
}

} // namespace kummer
