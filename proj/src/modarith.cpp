#include "kummer/modarith.hpp"

#include <algorithm>
#include <array>
#include <cstddef>

namespace kummer {

u64 pow_mod(u64 base, u64 exp, u64 n) {
    if (n == 1) return 0;
    u64 r = 1;
    base %= n;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, n);
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Exact for all 64-bit integers with this witness set.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

u64 inv_mod(u64 a, u64 n) {
    a %= n;
    if (a == 0) throw ZeroInput("inv_mod: zero has no inverse");
    return pow_mod(a, n - 2, n);
}

Montgomery::Montgomery(u64 n) : n_(n) {
    if (n < 3 || (n & 1) == 0) throw DegenerateModulus("Montgomery: modulus must be odd and >= 3");
    u64 inv = n; // Newton iteration doubles correct low bits each round
    for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
    ninv_ = ~inv + 1;
    r1_ = (u64)(((u128)1 << 64) % n);
    r2_ = (u64)((u128)r1_ * r1_ % n);
}

u64 Montgomery::pow(u64 base_mont, u64 exp) const {
    u64 r = r1_;
    while (exp) {
        if (exp & 1) r = mul(r, base_mont);
        base_mont = mul(base_mont, base_mont);
        exp >>= 1;
    }
    return r;
}

PrimePair::PrimePair(u64 p_, u64 N_) : p(p_), N(N_), M(0) {
    if (p < 3 || (p & 1) == 0 || !is_prime_u64(p))
        throw InvalidPair("p must be an odd prime");
    if (!is_prime_u64(N))
        throw InvalidPair("N must be prime");
    if (N % p != 1)
        throw InvalidPair("N must be congruent to 1 mod p");
    M = (N - 1) / p;
}

PthRootOfUnity PthRootOfUnity::of(u64 value, const PrimePair& pair) {
    value %= pair.N;
    if (value <= 1 || pow_mod(value, pair.p, pair.N) != 1)
        throw InvalidPair("not an element of exact order p");
    return PthRootOfUnity{value};
}

PthRootOfUnity element_of_order_p(const PrimePair& pair) {
    for (u64 g = 2;; ++g) {
        u64 z = pow_mod(g, pair.M, pair.N);
        if (z != 1) return PthRootOfUnity{z};
    }
}

u64 residue_character(u64 x, const PrimePair& pair) {
    x %= pair.N;
    if (x == 0) throw ZeroInput("residue_character: x = 0 mod N");
    return pow_mod(x, pair.M, pair.N);
}

bool is_pth_power(u64 x, const PrimePair& pair) {
    return residue_character(x, pair) == 1;
}

unsigned class_label(u64 x, const PrimePair& pair, const PthRootOfUnity& zeta) {
    u64 chi = residue_character(x, pair);
    u64 zp = 1;
    for (unsigned e = 0; e < pair.p; ++e) {
        if (zp == chi) return e;
        zp = mul_mod(zp, zeta.zeta, pair.N);
    }
    throw InvalidPair("class_label: character value is not a power of zeta");
}

ClassContext::ClassContext(const PrimePair& pair)
    : ClassContext(pair, element_of_order_p(pair)) {}

ClassContext::ClassContext(const PrimePair& pair, const PthRootOfUnity& zeta)
    : pair_(pair), zeta_(zeta), zeta_pow_(pair.p) {
    u64 zp = 1;
    for (u64 e = 0; e < pair.p; ++e) {
        zeta_pow_[e] = zp;
        zp = mul_mod(zp, zeta.zeta, pair.N);
    }
    if (zp != 1) throw InvalidPair("ClassContext: zeta does not have order p");
}

unsigned ClassContext::label_of_chi(u64 chi) const {
    for (unsigned e = 0; e < zeta_pow_.size(); ++e)
        if (zeta_pow_[e] == chi) return e;
    throw InvalidPair("label_of_chi: value is not a pth root of unity");
}

ResidueClass ClassContext::classify(u64 x) const {
    u64 chi = residue_character(x, pair_);
    return ResidueClass{x % pair_.N, chi, label_of_chi(chi)};
}

std::optional<u64> sqrt_mod(u64 a, u64 N) {
    a %= N;
    if (a == 0) return 0;
    if (N == 2) return a;
    if (pow_mod(a, (N - 1) / 2, N) != 1) return std::nullopt;

    u64 r;
    if (N % 4 == 3) {
        r = pow_mod(a, (N + 1) / 4, N);
    } else {
        u64 q = N - 1;
        int s = 0;
        while ((q & 1) == 0) { q >>= 1; ++s; }
        u64 z = 2;
        while (pow_mod(z, (N - 1) / 2, N) != N - 1) ++z;

        u64 c = pow_mod(z, q, N);
        r = pow_mod(a, (q + 1) / 2, N);
        u64 t = pow_mod(a, q, N);
        int m = s;
        while (t != 1) {
            u64 t2 = t;
            int i = 0;
            while (t2 != 1) { t2 = mul_mod(t2, t2, N); ++i; }
            u64 b = c;
            for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, N);
            r = mul_mod(r, b, N);
            c = mul_mod(b, b, N);
            t = mul_mod(t, c, N);
            m = i;
        }
    }
    return std::min(r, N - r);
}

namespace {

u64 reduce_coeff(i64 c, u64 N) {
    i64 r = c % (i64)N;
    if (r < 0) r += (i64)N;
    return (u64)r;
}

u64 sub_mod(u64 a, u64 b, u64 n) { return a >= b ? a - b : a + n - b; }
u64 add_mod(u64 a, u64 b, u64 n) { return (u64)(((u128)a + b) % n); }

// Discriminant mod N for degree 2 and 3; used only for the repeated-root flag.
u64 disc_mod(std::span<const u64> c, u64 N) {
    if (c.size() == 3) {
        u64 b2 = mul_mod(c[1], c[1], N);
        u64 ac4 = mul_mod(4 % N, mul_mod(c[2], c[0], N), N);
        return sub_mod(b2, ac4, N);
    }
    // a x^3 + b x^2 + c x + d: 18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2
    u64 a = c[3], b = c[2], cc = c[1], d = c[0];
    u64 t1 = mul_mod(18 % N, mul_mod(mul_mod(a, b, N), mul_mod(cc, d, N), N), N);
    u64 t2 = mul_mod(4 % N, mul_mod(mul_mod(b, b, N), mul_mod(b, d, N), N), N);
    u64 t3 = mul_mod(mul_mod(b, b, N), mul_mod(cc, cc, N), N);
    u64 t4 = mul_mod(4 % N, mul_mod(a, mul_mod(cc, mul_mod(cc, cc, N), N), N), N);
    u64 t5 = mul_mod(27 % N, mul_mod(mul_mod(a, a, N), mul_mod(d, d, N), N), N);
    u64 r = sub_mod(t1, t2, N);
    r = add_mod(r, t3, N);
    r = sub_mod(r, t4, N);
    r = sub_mod(r, t5, N);
    return r;
}

// Polynomials modulo a monic cubic f, coefficient arrays of length 3.
struct CubicField {
    u64 N;
    std::array<u64, 3> f; // f = x^3 + f[2] x^2 + f[1] x + f[0]

    std::array<u64, 3> mul(const std::array<u64, 3>& a, const std::array<u64, 3>& b) const {
        u64 c[5] = {0, 0, 0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                c[i + j] = (u64)(((u128)a[i] * b[j] + c[i + j]) % N);
        // reduce by x^3 = -(f2 x^2 + f1 x + f0)
        for (int k = 4; k >= 3; --k) {
            u64 t = c[k];
            if (t == 0) continue;
            c[k] = 0;
            for (int j = 0; j < 3; ++j)
                c[k - 3 + j] = sub_mod(c[k - 3 + j], mul_mod(t, f[j], N), N);
        }
        return {c[0], c[1], c[2]};
    }

    std::array<u64, 3> pow(std::array<u64, 3> base, u64 exp) const {
        std::array<u64, 3> r = {1, 0, 0};
        while (exp) {
            if (exp & 1) r = mul(r, base);
            base = mul(base, base);
            exp >>= 1;
        }
        return r;
    }
};

// gcd of a (degree <= 3, low-to-high, length 4) with a monic cubic; both over
// F_N. Returns monic gcd coefficients, low-to-high.
std::vector<u64> poly_gcd(std::vector<u64> a, std::vector<u64> b, u64 N) {
    auto deg = [](const std::vector<u64>& v) {
        int d = (int)v.size() - 1;
        while (d > 0 && v[d] == 0) --d;
        return d;
    };
    auto trim = [&](std::vector<u64>& v) { v.resize(deg(v) + 1); };
    trim(a);
    trim(b);
    while (!(b.size() == 1 && b[0] == 0)) {
        // a mod b
        u64 lead_inv = inv_mod(b.back(), N);
        while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
            u64 q = mul_mod(a.back(), lead_inv, N);
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = sub_mod(a[shift + i], mul_mod(q, b[i], N), N);
            trim(a);
            if (a.size() == 1 && a[0] == 0) break;
        }
        std::swap(a, b);
        trim(b);
    }
    trim(a);
    u64 li = inv_mod(a.back(), N);
    for (auto& c : a) c = mul_mod(c, li, N);
    return a;
}

std::vector<u64> linear_roots(u64 c0, u64 c1, u64 N) {
    // c1 x + c0 = 0
    return {mul_mod(sub_mod(0, c0, N), inv_mod(c1, N), N)};
}

std::vector<u64> quadratic_roots(u64 c0, u64 c1, u64 c2, u64 N) {
    u64 disc = sub_mod(mul_mod(c1, c1, N), mul_mod(4 % N, mul_mod(c2, c0, N), N), N);
    auto s = sqrt_mod(disc, N);
    if (!s) return {};
    u64 inv2a = inv_mod(mul_mod(2 % N, c2, N), N);
    u64 r1 = mul_mod(sub_mod(*s, c1, N), inv2a, N);
    u64 r2 = mul_mod(sub_mod(sub_mod(0, *s, N), c1, N), inv2a, N);
    if (r1 == r2) return {r1};
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

u64 eval_poly(std::span<const u64> c, u64 x, u64 N) {
    u64 v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = (u64)(((u128)v * x + c[i]) % N);
    return v;
}

// Roots of a monic cubic known to be a product of distinct linear factors.
std::vector<u64> split_cubic(const std::array<u64, 3>& f, u64 N) {
    CubicField F{N, f};
    // Deterministic shifts delta = 0, 1, 2, ...; gcd with (x+delta)^((N-1)/2) - 1
    for (u64 delta = 0;; ++delta) {
        u64 fl[4] = {f[0], f[1], f[2], 1};
        u64 at = eval_poly(std::span<const u64>(fl, 4), sub_mod(0, delta % N, N), N);
        if (at == 0) {
            // -delta is a root; deflate and solve the quadratic
            u64 r0 = sub_mod(0, delta % N, N);
            // f = (x - r0)(x^2 + b x + c) with b = f2 + r0, c = f1 + r0*b
            u64 b = (f[2] + r0) % N;
            u64 c = (u64)(((u128)r0 * b + f[1]) % N);
            std::vector<u64> roots = quadratic_roots(c, b, 1, N);
            roots.push_back(r0);
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            return roots;
        }
        auto e = F.pow({delta % N, 1, 0}, (N - 1) / 2); // (x + delta)^((N-1)/2) mod f
        e[0] = sub_mod(e[0], 1, N);
        std::vector<u64> g =
            poly_gcd({e[0], e[1], e[2]}, {f[0], f[1], f[2], 1}, N);
        if (g.size() == 2) { // one root isolated
            u64 r0 = mul_mod(sub_mod(0, g[0], N), inv_mod(g[1], N), N);
            u64 b = (f[2] + r0) % N;
            u64 c = (u64)(((u128)r0 * b + f[1]) % N);
            std::vector<u64> roots = quadratic_roots(c, b, 1, N);
            roots.push_back(r0);
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            return roots;
        }
        if (g.size() == 3) { // quadratic factor isolated; cofactor is linear
            std::vector<u64> roots = quadratic_roots(g[0], g[1], 1, N);
            // remaining root from the linear cofactor: product of roots = -f0
            // sum of all roots = -f2
            u64 r0 = sub_mod(sub_mod(0, f[2], N), (roots.size() == 2 ? (roots[0] + roots[1]) % N
                                                                     : mul_mod(2 % N, roots[0], N)),
                             N);
            roots.push_back(r0);
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            return roots;
        }
    }
}

} // namespace

PolyRoots poly_roots_scan(std::span<const i64> coeffs, u64 N) {
    if (coeffs.empty()) throw DegenerateModulus("poly_roots: empty polynomial");
    std::vector<u64> c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = reduce_coeff(coeffs[i], N);
    if (c.back() == 0) throw DegenerateModulus("poly_roots: leading coefficient vanishes mod N");
    PolyRoots out;
    out.repeated_root = c.size() >= 3 && disc_mod(c, N) == 0;
    for (u64 x = 0; x < N; ++x)
        if (eval_poly(c, x, N) == 0) out.roots.push_back(x);
    return out;
}

PolyRoots poly_roots_mod(std::span<const i64> coeffs, u64 N) {
    if (coeffs.empty() || coeffs.size() > 4)
        throw DegenerateModulus("poly_roots: degree must be between 0 and 3");
    std::vector<u64> c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = reduce_coeff(coeffs[i], N);
    if (c.back() == 0) throw DegenerateModulus("poly_roots: leading coefficient vanishes mod N");

    if (N < 50) return poly_roots_scan(coeffs, N); // tiny fields: scan is exact and simplest

    PolyRoots out;
    out.repeated_root = c.size() >= 3 && disc_mod(c, N) == 0;
    switch (c.size()) {
    case 1:
        break; // nonzero constant, no roots
    case 2:
        out.roots = linear_roots(c[0], c[1], N);
        break;
    case 3:
        out.roots = quadratic_roots(c[0], c[1], c[2], N);
        break;
    default: {
        u64 li = inv_mod(c[3], N);
        std::array<u64, 3> f = {mul_mod(c[0], li, N), mul_mod(c[1], li, N), mul_mod(c[2], li, N)};
        // distinct-root part: gcd(x^N - x, f)
        CubicField F{N, f};
        auto xn = F.pow({0, 1, 0}, N);
        std::vector<u64> lin{sub_mod(xn[0], 0, N), sub_mod(xn[1], 1, N), xn[2]};
        std::vector<u64> g = poly_gcd(lin, {f[0], f[1], f[2], 1}, N);
        switch (g.size()) {
        case 1: break; // no roots in F_N
        case 2: out.roots = linear_roots(g[0], g[1], N); break;
        case 3: out.roots = quadratic_roots(g[0], g[1], g[2], N); break;
        default: out.roots = split_cubic(f, N); break;
        }
        break;
    }
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

} // namespace kummer
