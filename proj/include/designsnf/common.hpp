#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace designsnf {

// Error hierarchy. The CLI maps these to exit codes: validation 2,
// not-a-design / not-a-unital 3, size guard 4.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotADesign : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAUnital : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in multiplication");
    return r;
}

inline std::int64_t ipow(std::int64_t base, int exp)
{
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

inline std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t mod)
{
    __int128 r = 1, b = base % mod;
    if (b < 0) b += mod;
    while (exp > 0) {
        if (exp & 1) r = (r * b) % mod;
        b = (b * b) % mod;
        exp >>= 1;
    }
    return static_cast<std::int64_t>(r);
}

inline bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Trial-division factorization, (prime, exponent) pairs in ascending order.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n)
{
    std::vector<std::pair<std::int64_t, int>> f;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            f.emplace_back(d, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline std::vector<std::int64_t> prime_divisors(std::int64_t n)
{
    std::vector<std::int64_t> ps;
    for (auto& [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

// p-adic valuation of n; n must be nonzero.
inline int valuation_int(std::int64_t n, std::int64_t p)
{
    if (n == 0) throw std::invalid_argument("valuation of zero");
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

// Multiplicative order of a modulo n, gcd(a,n) = 1.
inline std::int64_t multiplicative_order(std::int64_t a, std::int64_t n)
{
    if (std::gcd(a % n, n) != 1)
        throw std::invalid_argument("multiplicative_order: arguments not coprime");
    // order divides lambda(n); scan divisors of the group exponent via phi.
    std::int64_t phi = 1;
    for (auto& [p, e] : factorize(n)) {
        phi *= ipow(p, e - 1) * (p - 1);
    }
    std::int64_t ord = phi;
    for (auto& [p, e] : factorize(phi)) {
        for (int i = 0; i < e; ++i) {
            if (powmod(a, ord / p, n) == 1)
                ord /= p;
            else
                break;
        }
    }
    return ord;
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t n)
{
    std::int64_t t = 0, newt = 1, r = n, newr = ((a % n) + n) % n;
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::invalid_argument("inverse_mod: not invertible");
    return t < 0 ? t + n : t;
}

}  // namespace designsnf
