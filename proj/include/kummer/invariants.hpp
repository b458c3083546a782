#ifndef KUMMER_INVARIANTS_HPP_
#define KUMMER_INVARIANTS_HPP_

#include <optional>
#include <vector>

#include "kummer/modarith.hpp"

namespace kummer {

// (Mk)! mod N for k = 1..p-1, from one ascending product pass. This pass is
// the dominant cost per prime and is shared by everything downstream.
struct FactorialCheckpoints {
    PrimePair pair;
    std::vector<u64> values; // values[k-1] = (M*k)! mod N

    u64 at(unsigned k) const { return values.at(k - 1); }
};

FactorialCheckpoints factorial_checkpoints(const PrimePair& pair);

// S_i = prod_{k=1}^{p-1} ((Mk)!)^(k^i), exponents reduced mod N-1.
// Valid for i in [1, p-2].
ResidueClass s_invariant(unsigned i, const FactorialCheckpoints& cp, const ClassContext& ctx);

// S_1..S_{p-2} from one checkpoint pass.
std::vector<ResidueClass> all_s_invariants(const FactorialCheckpoints& cp, const ClassContext& ctx);

// M_i = prod_{k=1}^{N-1} prod_{a=1}^{k-1} k^(a^i) evaluated literally; the
// independent oracle for the S route, guarded at N <= 5000. Odd i in
// [1, p-4] (the relation to S_i does not extend to the class -1 mod p-1).
ResidueClass m_direct(unsigned i, const ClassContext& ctx);

// Gamma_N(x) = (-1)^x (x-1)! mod N for 0 < x < N.
u64 gamma_n(u64 x, u64 N);

// M_i through Gamma_N at the arguments M(p-k)+1; equals m_direct up to pth
// powers (same label, representatives may differ).
ResidueClass m_gamma(unsigned i, const FactorialCheckpoints& cp, const ClassContext& ctx);

// A_m = prod_{k=1}^{N-1} k^(k^m), 0 < m < p-1.
ResidueClass a_invariant(unsigned m, const ClassContext& ctx);

// C = prod_{k=1}^{(N-1)/2} k^k.
ResidueClass c_invariant(const ClassContext& ctx);

struct InvariantSet {
    PrimePair pair;
    PthRootOfUnity zeta;
    std::vector<ResidueClass> s; // S_1..S_{p-2}
    ResidueClass a2;
    ResidueClass c;
    std::optional<std::vector<ResidueClass>> m_oracle; // m_direct for odd i, when run
};

// One-stop evaluation for a single (p, N), p >= 5. The direct M oracle is
// only run on request and requires N <= 5000.
InvariantSet compute_invariants(const PrimePair& pair, bool with_direct_oracle = false);

} // namespace kummer

#endif // KUMMER_INVARIANTS_HPP_
