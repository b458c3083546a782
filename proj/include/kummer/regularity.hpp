#ifndef KUMMER_REGULARITY_HPP_
#define KUMMER_REGULARITY_HPP_

#include <vector>

#include "kummer/modarith.hpp"

namespace kummer {

// B_k mod p for even k in [2, p-3], computed from exact rational Bernoulli
// numbers. Denominators are invertible mod p in this range.
struct BernoulliTable {
    u64 p;
    std::vector<unsigned> residues; // residues[k/2 - 1] = B_k mod p, even k

    unsigned at(unsigned k) const; // even k in [2, p-3], or k = 0
};

BernoulliTable bernoulli_table(u64 p); // p odd prime <= 2000, else OutOfRange

// Shared immutable per-p cache of the above; safe for concurrent readers.
const BernoulliTable& shared_bernoulli_table(u64 p);

struct RegularityVerdict {
    u64 p;
    unsigned exponent;        // representative of the queried class in [0, p-2]
    bool regular;
    unsigned witness_index;   // the Bernoulli index p - e consulted; 0 if none
    unsigned witness_residue; // B_{p-e} mod p; 0 if no witness
};

// Regularity of the exponent-e eigenspace. Classes 0 and 1 are regular
// unconditionally; odd e >= 3 is decided by p | B_{p-e}; other even classes
// are outside the Herbrand-Ribet criterion and are rejected (EvenExponent).
RegularityVerdict regular_pair(u64 p, i64 e);

struct GenBernoulli {
    u64 p;
    unsigned exponent; // odd class in [1, p-2), not -1 mod p-1
    unsigned residue;  // B_{1, chi^exponent} mod p
};

// B_{1,chi^i} mod p via the Teichmueller lift tau(x) = x^p mod p^2:
// (1/p) sum_{r=1}^{p-1} r * tau(r^i), reduced mod p. Throws BadExponent for
// even classes and for i = -1 mod p-1 (the sum is not divisible by p there).
GenBernoulli gen_bernoulli_mod_p(u64 p, i64 i);

// True when no even B_k, k <= p-3, vanishes mod p; certifies that the
// cyclotomic class group of level p has trivial p-part.
bool is_regular_prime(u64 p);

} // namespace kummer

#endif // KUMMER_REGULARITY_HPP_
