#include "kummer/regularity.hpp"

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <string>

namespace kummer {

unsigned BernoulliTable::at(unsigned k) const {
    if (k == 0) return 1;
    if (k < 2 || k > p - 3 || (k & 1))
        throw OutOfRange("BernoulliTable: index must be even in [2, p-3]");
    return residues[k / 2 - 1];
}

BernoulliTable bernoulli_table(u64 p) {
    if (p > 2000) throw OutOfRange("bernoulli_table: p <= 2000 required");
    if (p < 3 || !is_prime_u64(p) || (p & 1) == 0)
        throw OutOfRange("bernoulli_table: p must be an odd prime");

    const int top = (int)p - 3;
    std::vector<mpq_class> B(std::max(top + 1, 2));
    B[0] = 1;
    B[1] = mpq_class(-1, 2);
    for (int m = 2; m <= top; m += 2) {
        // sum_{k=0}^{m} binom(m+1,k) B_k = 0; odd B_k vanish for k >= 3
        mpq_class sum = 0;
        mpz_class binom = 1;
        for (int k = 0; k <= m - 1; ++k) {
            if (k <= 1 || (k & 1) == 0) sum += mpq_class(binom) * B[k];
            binom *= m + 1 - k;
            binom /= k + 1;
        }
        B[m] = -sum / (m + 1);
    }

    BernoulliTable out{p, {}};
    for (int k = 2; k <= top; k += 2) {
        u64 num = mpz_fdiv_ui(B[k].get_num().get_mpz_t(), p);
        u64 den = mpz_fdiv_ui(B[k].get_den().get_mpz_t(), p);
        // von Staudt-Clausen: p divides den(B_k) only when (p-1) | k
        if (den == 0) throw OutOfRange("bernoulli_table: denominator not invertible");
        out.residues.push_back((unsigned)mul_mod(num, inv_mod(den, p), p));
    }
    return out;
}

const BernoulliTable& shared_bernoulli_table(u64 p) {
    static std::mutex mu;
    static std::map<u64, BernoulliTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, bernoulli_table(p)).first;
    return it->second;
}

RegularityVerdict regular_pair(u64 p, i64 e) {
    if (p < 3 || !is_prime_u64(p) || (p & 1) == 0)
        throw OutOfRange("regular_pair: p must be an odd prime");
    i64 span = (i64)p - 1;
    unsigned rep = (unsigned)(((e % span) + span) % span);
    if (rep == 0 || rep == 1)
        return RegularityVerdict{p, rep, true, 0, 0};
    if ((rep & 1) == 0)
        throw EvenExponent("regular_pair: even exponent class " + std::to_string(rep) +
                           " is outside the Herbrand-Ribet criterion");
    const BernoulliTable& tab = shared_bernoulli_table(p);
    unsigned idx = (unsigned)p - rep;
    unsigned res = tab.at(idx);
    return RegularityVerdict{p, rep, res != 0, idx, res};
}

GenBernoulli gen_bernoulli_mod_p(u64 p, i64 i) {
    if (p < 3 || !is_prime_u64(p) || (p & 1) == 0)
        throw OutOfRange("gen_bernoulli_mod_p: p must be an odd prime");
    i64 span = (i64)p - 1;
    unsigned rep = (unsigned)(((i % span) + span) % span);
    if ((rep & 1) == 0)
        throw BadExponent("gen_bernoulli_mod_p: exponent class must be odd");
    if (rep == p - 2)
        throw BadExponent("gen_bernoulli_mod_p: exponent class -1 is not p-integral");

    const u64 p2 = p * p;
    u64 sum = 0; // mod p^2
    for (u64 r = 1; r < p; ++r) {
        u64 tau = pow_mod(pow_mod(r, rep, p), p, p2);
        sum = (sum + r * tau) % p2;
    }
    if (sum % p != 0)
        throw BadExponent("gen_bernoulli_mod_p: character sum not divisible by p");
    return GenBernoulli{p, rep, (unsigned)((sum / p) % p)};
}

bool is_regular_prime(u64 p) {
    const BernoulliTable& tab = shared_bernoulli_table(p);
    for (unsigned r : tab.residues)
        if (r == 0) return false;
    return true;
}

} // namespace kummer
