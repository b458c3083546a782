#ifndef KUMMER_MODARITH_HPP_
#define KUMMER_MODARITH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kummer/errors.hpp"

namespace kummer {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

// ---- scalar modular arithmetic, valid for any 64-bit modulus ----

inline u64 mul_mod(u64 a, u64 b, u64 n) { return (u128)a * b % n; }

u64 pow_mod(u64 base, u64 exp, u64 n);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(u64 n);

u64 inv_mod(u64 a, u64 n); // n prime, a != 0 mod n

// ---- Montgomery form, for odd moduli; the batch pipeline's multiplier ----

class Montgomery {
  public:
    explicit Montgomery(u64 n);

    u64 modulus() const { return n_; }
    u64 one() const { return r1_; } // 1 in Montgomery form

    // (a*b*R^-1) mod n. A product chain over plain residues picks up one
    // R^-1 per call; callers either keep operands in Montgomery form or
    // account for the deficit and repair it with a single pow.
    u64 mul(u64 a, u64 b) const {
        u128 t = (u128)a * b;
        u64 m = (u64)t * ninv_;
        u128 mn = (u128)m * n_;
        u128 r = (t >> 64) + (mn >> 64) + ((u64)t != 0);
        if (r >= n_) r -= n_;
        return (u64)r;
    }

    u64 to_mont(u64 a) const { return mul(a, r2_); }
    u64 from_mont(u64 a) const { return mul(a, 1); }

    u64 pow(u64 base_mont, u64 exp) const; // base and result in Montgomery form

  private:
    u64 n_;
    u64 ninv_; // -n^-1 mod 2^64
    u64 r1_;   // 2^64 mod n
    u64 r2_;   // 2^128 mod n
};

// ---- domain types ----

// (p, N) with N prime, N = 1 mod p, M = (N-1)/p. Construction validates.
struct PrimePair {
    u64 p;
    u64 N;
    u64 M;

    PrimePair(u64 p_, u64 N_);
};

// An element of F_N^x of exact multiplicative order p.
struct PthRootOfUnity {
    u64 zeta;

    static PthRootOfUnity of(u64 value, const PrimePair& pair);
};

// Canonical order-p element: g^((N-1)/p) for the smallest g >= 2 giving a
// nontrivial result. Fixed so class labels are stable across runs.
PthRootOfUnity element_of_order_p(const PrimePair& pair);

// x^((N-1)/p) mod N; the complete invariant of F_N^x / F_N^xp.
u64 residue_character(u64 x, const PrimePair& pair); // throws ZeroInput

bool is_pth_power(u64 x, const PrimePair& pair); // throws ZeroInput

// The unique e in [0, p-1] with residue_character(x) = zeta^e.
unsigned class_label(u64 x, const PrimePair& pair, const PthRootOfUnity& zeta);

// An element of F_N^x with its character value and class label.
struct ResidueClass {
    u64 value;
    u64 chi;        // value^((N-1)/p) mod N
    unsigned label; // chi = zeta^label for the session zeta

    bool is_pth_power() const { return label == 0; }
};

// Fixes the session zeta for one (p, N) and caches its powers so labels are
// a table lookup.
class ClassContext {
  public:
    explicit ClassContext(const PrimePair& pair);
    ClassContext(const PrimePair& pair, const PthRootOfUnity& zeta);

    const PrimePair& pair() const { return pair_; }
    const PthRootOfUnity& zeta() const { return zeta_; }

    unsigned label_of_chi(u64 chi) const;
    ResidueClass classify(u64 x) const; // throws ZeroInput

  private:
    PrimePair pair_;
    PthRootOfUnity zeta_;
    std::vector<u64> zeta_pow_; // zeta^0 .. zeta^(p-1)
};

// ---- square roots and small polynomial roots ----

// Tonelli-Shanks; nullopt for quadratic non-residues. The auxiliary
// non-residue is found by ascending scan, so results are deterministic.
std::optional<u64> sqrt_mod(u64 a, u64 N);

struct PolyRoots {
    std::vector<u64> roots; // distinct roots, ascending
    bool repeated_root;     // N divides the discriminant
};

// Roots in F_N of a polynomial of degree <= 3, coefficients low to high.
// Quadratics go through sqrt_mod; cubics through deterministic equal-degree
// splitting. Throws DegenerateModulus if the leading coefficient vanishes
// mod N.
PolyRoots poly_roots_mod(std::span<const i64> coeffs, u64 N);

// Exhaustive root scan; the test oracle for poly_roots_mod (N < 10^6).
PolyRoots poly_roots_scan(std::span<const i64> coeffs, u64 N);

} // namespace kummer

#endif // KUMMER_MODARITH_HPP_
