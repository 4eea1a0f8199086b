#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "designsnf/common.hpp"
#include "designsnf/geometry.hpp"
#include "designsnf/localsmith.hpp"

namespace designsnf {

/// Multiset of invariant factors {(d_i, multiplicity)} with d_1 | d_2 | ...
struct InvariantFactorMultiset {
    std::vector<std::pair<std::int64_t, std::int64_t>> factors;  // ascending divisor chain

    std::int64_t total() const
    {
        std::int64_t s = 0;
        for (auto& [d, m] : factors) s += m;
        return s;
    }

    void validate() const
    {
        std::int64_t prev = 0;
        for (auto& [d, m] : factors) {
            if (d <= 0) throw ValidationError("invariant factors must be positive");
            if (m <= 0) throw ValidationError("multiplicities must be positive");
            if (prev != 0 && d % prev != 0)
                throw ValidationError("divisibility chain violated: " + std::to_string(prev) +
                                      " does not divide " + std::to_string(d));
            if (prev == d) throw ValidationError("repeated divisor in multiset");
            prev = d;
        }
    }

    /// Valuation profile of the p-parts, capped at L into the top bucket.
    ValuationProfile p_profile(std::int64_t p, int L) const
    {
        ValuationProfile prof;
        prof.p = p;
        prof.L = L;
        prof.counts.assign(L + 1, 0);
        for (auto& [d, m] : factors) {
            std::int64_t x = d;
            int a = 0;
            while (x % p == 0 && a < L) { x /= p; ++a; }
            prof.counts[a] += m;
        }
        return prof;
    }

    bool operator==(const InvariantFactorMultiset&) const = default;
};

/// Format as ascending "d^mult" terms, e.g. "1^4 2^2 6^1".
inline std::string snf_format(const InvariantFactorMultiset& inv)
{
    std::ostringstream os;
    bool first = true;
    for (auto& [d, m] : inv.factors) {
        if (!first) os << ' ';
        os << d << '^' << m;
        first = false;
    }
    return os.str();
}

inline InvariantFactorMultiset snf_parse(const std::string& s)
{
    InvariantFactorMultiset inv;
    std::istringstream is(s);
    std::string term;
    while (is >> term) {
        auto caret = term.find('^');
        if (caret == std::string::npos)
            throw ValidationError("snf_parse: term '" + term + "' lacks '^'");
        inv.factors.emplace_back(std::stoll(term.substr(0, caret)),
                                 std::stoll(term.substr(caret + 1)));
    }
    inv.validate();
    return inv;
}

/// Reference Smith normal form over Z by dense exact-integer elimination
/// (global minimum pivot, full divisibility fixups).  Returns the nonzero
/// diagonal; intended for matrices with both dimensions <= 500.
inline std::vector<mpz_class> snf_integer_diag(std::vector<mpz_class> A, std::int64_t b,
                                               std::int64_t v)
{
    auto at = [&](std::int64_t i, std::int64_t j) -> mpz_class& { return A[i * v + j]; };
    const std::int64_t nmin = std::min(b, v);
    std::vector<mpz_class> diag;
    for (std::int64_t s = 0; s < nmin; ++s) {
        for (;;) {
            // minimal nonzero |entry| of the trailing submatrix to the corner
            std::int64_t pi = -1, pj = -1;
            for (std::int64_t i = s; i < b; ++i)
                for (std::int64_t j = s; j < v; ++j) {
                    if (at(i, j) == 0) continue;
                    if (pi < 0 ||
                        mpz_cmpabs(at(i, j).get_mpz_t(), at(pi, pj).get_mpz_t()) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) goto done;  // trailing submatrix is zero
            if (pi != s)
                for (std::int64_t j = s; j < v; ++j) swap(at(s, j), at(pi, j));
            if (pj != s)
                for (std::int64_t i = s; i < b; ++i) swap(at(i, s), at(i, pj));
            // one pass of division with remainder along the pivot cross;
            // any leftover remainder is strictly smaller, so we loop
            for (std::int64_t i = s + 1; i < b; ++i) {
                if (at(i, s) == 0) continue;
                mpz_class q = at(i, s) / at(s, s);
                if (q != 0)
                    for (std::int64_t j = s; j < v; ++j) at(i, j) -= q * at(s, j);
            }
            for (std::int64_t j = s + 1; j < v; ++j) {
                if (at(s, j) == 0) continue;
                mpz_class q = at(s, j) / at(s, s);
                if (q != 0)
                    for (std::int64_t i = s; i < b; ++i) at(i, j) -= q * at(i, s);
            }
            bool cross_clean = true;
            for (std::int64_t i = s + 1; i < b && cross_clean; ++i)
                if (at(i, s) != 0) cross_clean = false;
            for (std::int64_t j = s + 1; j < v && cross_clean; ++j)
                if (at(s, j) != 0) cross_clean = false;
            if (!cross_clean) continue;
            // divisibility fixup: pivot must divide the whole submatrix
            std::int64_t bi = -1;
            for (std::int64_t i = s + 1; i < b && bi < 0; ++i)
                for (std::int64_t j = s + 1; j < v; ++j)
                    if (at(i, j) % at(s, s) != 0) { bi = i; break; }
            if (bi < 0) break;
            for (std::int64_t j = s; j < v; ++j) at(s, j) += at(bi, j);
        }
        diag.push_back(abs(at(s, s)));
    }
done:
    std::sort(diag.begin(), diag.end());
    return diag;
}

inline InvariantFactorMultiset snf_exact_integer(const IncidenceMatrix& M)
{
    std::vector<mpz_class> A(static_cast<std::size_t>(M.rows) * M.cols);
    for (std::int64_t i = 0; i < M.rows; ++i) {
        auto [cb, ce] = M.row(i);
        for (auto* c = cb; c != ce; ++c) A[i * M.cols + *c] = 1;
    }
    auto diag = snf_integer_diag(std::move(A), M.rows, M.cols);
    InvariantFactorMultiset inv;
    for (auto& dz : diag) {
        if (!dz.fits_slong_p())
            throw std::overflow_error("snf_exact_integer: invariant factor exceeds int64");
        std::int64_t d = dz.get_si();
        if (!inv.factors.empty() && inv.factors.back().first == d)
            ++inv.factors.back().second;
        else
            inv.factors.emplace_back(d, 1);
    }
    inv.validate();
    return inv;
}

/// Smith normal form of a verified 2-design incidence matrix, assembled from
/// p-local elimination profiles at every prime dividing r*n (the only primes
/// that can appear in an invariant factor).  For small matrices the result
/// is cross-checked against the exact-integer reference.
inline InvariantFactorMultiset snf_exact(const IncidenceMatrix& M, const DesignParams& P,
                                         int threads = 0)
{
    P.check_consistent();
    if (M.rows != P.b || M.cols != P.v) throw NotADesign("snf_exact: matrix/params mismatch");
    const std::int64_t t = std::gcd(P.n, P.lambda);
    const std::int64_t rn = checked_mul(P.r, P.n);
    std::vector<std::vector<int>> vals;  // per prime, ascending valuations
    std::vector<std::int64_t> primes = prime_divisors(rn);
    for (auto p : primes) {
        int L = valuation_int(rn / t, p) + 1;
        ValuationProfile prof = p_local_profile(M, p, L, threads);
        if (prof.counts[L] != 0)
            throw ValidationError("snf_exact: censored valuation at p = " + std::to_string(p) +
                                  " contradicts the d_v | rn/t bound");
        std::vector<int> vs;
        vs.reserve(P.v);
        for (int a = 0; a <= L; ++a)
            for (std::int64_t i = 0; i < prof.counts[a]; ++i) vs.push_back(a);
        if (static_cast<std::int64_t>(vs.size()) != P.v)
            throw ValidationError("snf_exact: profile size mismatch");
        vals.push_back(std::move(vs));
    }
    InvariantFactorMultiset inv;
    for (std::int64_t i = 0; i < P.v; ++i) {
        std::int64_t d = 1;
        for (std::size_t pi = 0; pi < primes.size(); ++pi)
            d = checked_mul(d, ipow(primes[pi], vals[pi][i]));
        if (!inv.factors.empty() && inv.factors.back().first == d)
            ++inv.factors.back().second;
        else
            inv.factors.emplace_back(d, 1);
    }
    inv.validate();
    if (M.rows <= 500 && M.cols <= 500) {
        InvariantFactorMultiset ref = snf_exact_integer(M);
        if (!(ref == inv))
            throw std::logic_error("snf_exact: p-local result disagrees with integer reference: " +
                                   snf_format(inv) + " vs " + snf_format(ref));
    }
    return inv;
}

inline InvariantFactorMultiset snf_exact(const IncidenceMatrix& M, int threads = 0)
{
    return snf_exact(M, verify_2design(M), threads);
}

}  // namespace designsnf
