#ifndef KUMMER_VERIFY_HPP_
#define KUMMER_VERIFY_HPP_

#include <string>
#include <vector>

#include "kummer/modarith.hpp"

namespace kummer {

struct VerifyReport {
    u64 p = 0;
    u64 max_n = 0;
    u64 primes_checked = 0;
    u64 checks = 0;
    u64 failures = 0;
    std::vector<std::string> notes; // first failures, for diagnostics

    bool ok() const { return failures == 0; }
};

// Identity suite over all primes N = 1 mod p, N <= max_n:
//   (a) label(M_i direct) + label(S_i) = 0 mod p, odd i (N <= 5000 guard),
//       and the Gamma route agrees for every N;
//   (b) label(S_i) = 0 for even i;
//   (c) label(A_m) matches the alternating-binomial sum over S labels;
//   (d) 4 label(C) + 3 label(A_2) = 0 mod p;
//   (e) Wilson pairing (a! (N-1-a)!)^2 = 1;
//   (f) eigenunit status equals hardcoded-polynomial root status.
VerifyReport verify_identities(u64 p, u64 max_n, unsigned workers = 1);

} // namespace kummer

#endif // KUMMER_VERIFY_HPP_
