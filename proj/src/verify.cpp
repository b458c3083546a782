#include "kummer/verify.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "kummer/invariants.hpp"
#include "kummer/selmer.hpp"
#include "kummer/survey.hpp"

namespace kummer {

namespace {

u64 binom_mod(u64 n, u64 k, u64 p) {
    // multiplicative formula; here n <= p-2, so every j is invertible mod p
    if (k > n) return 0;
    u64 r = 1;
    for (u64 j = 1; j <= k; ++j) {
        r = mul_mod(r, (n - k + j) % p, p);
        r = mul_mod(r, inv_mod(j, p), p);
    }
    return r;
}

struct Collector {
    VerifyReport& report;
    std::mutex& mu;

    void check(bool ok, u64 N, const char* what) {
        std::lock_guard<std::mutex> lk(mu);
        ++report.checks;
        if (!ok) {
            ++report.failures;
            if (report.notes.size() < 20)
                report.notes.push_back(std::string(what) + " failed at N = " + std::to_string(N));
        }
    }
};

void verify_one(const PrimePair& pair, Collector& col) {
    const u64 p = pair.p, N = pair.N;
    ClassContext ctx(pair);
    FactorialCheckpoints cp = factorial_checkpoints(pair);
    std::vector<ResidueClass> s = all_s_invariants(cp, ctx);

    // (b) S_i is a pth power for every even i
    for (unsigned i = 2; i + 2 < p; i += 2)
        col.check(s[i - 1].label == 0, N, "S-even triviality");

    // (a) three-way M agreement: Gamma route everywhere, direct route <= 5000
    // (the direct double product only defines M_i for odd i <= p-4)
    for (unsigned i = 1; i + 1 < p; i += 2) {
        ResidueClass g = m_gamma(i, cp, ctx);
        col.check((g.label + s[i - 1].label) % p == 0, N, "M(Gamma) vs S");
        if (N <= 5000 && i + 3 < p) {
            ResidueClass d = m_direct(i, ctx);
            col.check((d.label + s[i - 1].label) % p == 0, N, "M(direct) vs S");
            col.check(d.label == g.label, N, "M(direct) vs M(Gamma)");
        }
    }

    // (c) A_m = prod_j S_j^((-1)^j binom(m,j)) as labels
    unsigned a2_label = 0;
    for (unsigned m = 1; m + 1 < p; ++m) {
        ResidueClass a = a_invariant(m, ctx);
        if (m == 2) a2_label = a.label;
        u64 want = 0;
        for (unsigned j = 1; j < m; ++j) {
            u64 term = mul_mod(binom_mod(m, j, p), s[j - 1].label, p);
            want = (j & 1) ? (want + p - term) % p : (want + term) % p;
        }
        col.check(a.label == want, N, "A-relation");
    }

    // (d) 4 label(C) + 3 label(A_2) = 0 mod p
    ResidueClass c = c_invariant(ctx);
    col.check((4 * (u64)c.label + 3 * (u64)a2_label) % p == 0, N, "C-relation");
    col.check(c.is_pth_power() == s[0].is_pth_power(), N, "C vs S_1 status");

    // (e) Wilson pairing at the checkpoints: (Mk)! (M(p-k))! squares to 1
    for (unsigned k = 1; k < p; ++k) {
        u64 prod = mul_mod(cp.values[k - 1], cp.values[p - 1 - k], N);
        col.check(mul_mod(prod, prod, N) == 1, N, "Wilson pairing");
    }
    if (N <= 300) { // every a, small fields only
        u64 f = 1;
        std::vector<u64> fact(N);
        fact[0] = 1;
        for (u64 a = 1; a < N; ++a) {
            f = mul_mod(f, a, N);
            fact[a] = f;
        }
        for (u64 a = 1; a + 1 < N; ++a) {
            u64 prod = mul_mod(fact[a], fact[N - 1 - a], N);
            col.check(mul_mod(prod, prod, N) == 1, N, "Wilson pairing (full)");
        }
    }

    // (f) eigenunit agreement with the fixed polynomials
    for (unsigned i = 2; i + 2 < p; i += 2) {
        if (even_unit_polynomial(p, i).empty()) continue;
        EvenUnitStatus hard = even_unit_status(i, ctx);
        if (hard == EvenUnitStatus::Degenerate) continue;
        col.check(hard == eigenunit_status(i, ctx), N, "eigenunit vs polynomial");
    }
}

} // namespace

VerifyReport verify_identities(u64 p, u64 max_n, unsigned workers) {
    VerifyReport report;
    report.p = p;
    report.max_n = max_n;
    std::vector<u64> primes = sieve(p, 2, max_n);
    report.primes_checked = primes.size();

    std::mutex mu;
    Collector col{report, mu};
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= primes.size()) return;
            verify_one(PrimePair(p, primes[idx]), col);
        }
    };
    unsigned nworkers = std::max(1u, workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    return report;
}

} // namespace kummer
