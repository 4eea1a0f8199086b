#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <vector>

#include "designsnf/common.hpp"

namespace designsnf {

/// Finite field F_{p^t} with full exponent/logarithm tables.
///
/// Elements are integers in [0, p^t): the base-p digit expansion of an
/// element is its coefficient vector with respect to the power basis
/// 1, x, ..., x^{t-1} of Z/p[x]/(modulus).  The modulus is the smallest
/// (by packed integer value of its non-leading coefficients) monic
/// irreducible of degree t whose root x is a multiplicative generator,
/// so gamma = x and exp/log tables are built by repeated shift-reduce.
class FiniteField {
public:
    using elem = std::int64_t;

    FiniteField(std::int64_t p, int t) : p_(p), t_(t)
    {
        if (!is_prime(p)) throw ValidationError("make_field: p is not prime");
        if (t < 1) throw ValidationError("make_field: degree must be positive");
        q_ = 1;
        for (int i = 0; i < t; ++i) {
            q_ = checked_mul(q_, p);
            if (q_ > (std::int64_t{1} << 26))
                throw SizeGuardError("make_field: p^t exceeds 2^26 table budget");
        }
        find_modulus();
        build_tables();
    }

    std::int64_t characteristic() const { return p_; }
    int degree() const { return t_; }
    std::int64_t size() const { return q_; }
    elem zero() const { return 0; }
    elem one() const { return 1; }
    elem generator() const { return gen_; }
    // Non-leading coefficients of the modulus, constant term first.
    const std::vector<std::int64_t>& modulus() const { return mod_coeffs_; }

    elem add(elem a, elem b) const
    {
        if (p_ == 2) return a ^ b;
        elem r = 0, m = 1;
        for (int i = 0; i < t_; ++i) {
            r += ((a + b) % p_) * m;
            a /= p_;
            b /= p_;
            m *= p_;
        }
        return r;
    }

    elem neg(elem a) const
    {
        if (p_ == 2) return a;
        elem r = 0, m = 1;
        for (int i = 0; i < t_; ++i) {
            r += ((p_ - a % p_) % p_) * m;
            a /= p_;
            m *= p_;
        }
        return r;
    }

    elem sub(elem a, elem b) const { return add(a, neg(b)); }

    elem mul(elem a, elem b) const
    {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }

    elem inv(elem a) const
    {
        if (a == 0) throw ValidationError("field inverse of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    elem pow(elem a, std::int64_t e) const
    {
        if (a == 0) {
            if (e == 0) return 1;
            if (e < 0) throw ValidationError("field inverse of zero");
            return 0;
        }
        std::int64_t l = (log_[a] % (q_ - 1)) * static_cast<__int128>(e) % (q_ - 1);
        if (l < 0) l += q_ - 1;
        return exp_[l];
    }

    /// Discrete log base gamma; error on zero.
    std::int64_t dlog(elem a) const
    {
        if (a == 0) throw ValidationError("dlog of zero");
        return log_[a];
    }

    elem from_dlog(std::int64_t l) const
    {
        l %= (q_ - 1);
        if (l < 0) l += q_ - 1;
        return exp_[l];
    }

    /// Embed a residue 0 <= c < p as a constant field element.
    elem scalar(std::int64_t c) const
    {
        c %= p_;
        if (c < 0) c += p_;
        return c;
    }

    /// Trace onto the subfield of degree s over the prime field:
    /// sum of x^{p^{s i}} for i = 0 .. t/s - 1.  s must divide t.
    elem trace(elem a, int s = 1) const
    {
        if (s < 1 || t_ % s != 0)
            throw ValidationError("trace: subfield degree does not divide field degree");
        std::int64_t step = ipow(p_, s);
        elem acc = 0, cur = a;
        for (int i = 0; i < t_ / s; ++i) {
            acc = add(acc, cur);
            cur = pow(cur, step);
        }
        return acc;
    }

private:
    // Multiply by x and reduce by the modulus, in packed representation.
    elem shift_reduce(elem a) const
    {
        elem hi = a / top_;             // leading coefficient after shift
        elem lo = (a % top_) * p_;      // shifted low part
        if (hi == 0) return lo;
        // subtract hi * (x^t - modulus tail), digit-wise
        elem r = 0, m = 1, b = lo;
        for (int i = 0; i < t_; ++i) {
            std::int64_t d = (b % p_ + (p_ - mod_coeffs_[i]) % p_ * hi) % p_;
            r += d * m;
            b /= p_;
            m *= p_;
        }
        return r;
    }

    bool is_irreducible_with_primitive_root(const std::vector<std::int64_t>& tail)
    {
        mod_coeffs_ = tail;
        // Class of x in Z/p[x]/(g); for t = 1 the quotient is Z/p and the
        // root of g is -tail[0].
        elem root = (t_ == 1) ? (p_ - tail[0]) % p_ : p_;
        if (root == 0) return false;
        if (t_ > 1) {
            // Cheap pre-filter: the Frobenius orbit of x must have size t.
            auto frob_pow = [&](elem a, int times) {
                for (int i = 0; i < times; ++i) a = poly_pow(a, p_);
                return a;
            };
            if (frob_pow(root, t_) != root) return false;
            for (auto l : prime_divisors(t_))
                if (frob_pow(root, t_ / l) == root) return false;
        }
        // The root must have multiplicative order exactly p^t - 1.  A
        // quotient by a reducible g has fewer than p^t - 1 units, so this
        // also certifies irreducibility.
        if (poly_pow(root, q_ - 1) != 1) return false;
        for (auto l : prime_divisors(q_ - 1))
            if (poly_pow(root, (q_ - 1) / l) == 1) return false;
        return true;
    }

    // Power in the quotient ring using shift_reduce-based multiplication
    // (valid before tables exist).
    elem poly_mul(elem a, elem b) const
    {
        elem r = 0;
        while (b != 0) {
            elem digit = b % p_;
            if (digit != 0) {
                elem acc = a;
                for (elem i = 1; i < digit; ++i) acc = add(acc, a);
                r = add(r, acc);
            }
            a = shift_reduce(a);
            b /= p_;
        }
        return r;
    }

    elem poly_pow(elem a, std::int64_t e) const
    {
        elem r = 1;
        while (e > 0) {
            if (e & 1) r = poly_mul(r, a);
            a = poly_mul(a, a);
            e >>= 1;
        }
        return r;
    }

    void find_modulus()
    {
        top_ = q_ / p_;  // p^{t-1}
        std::vector<std::int64_t> tail(t_);
        for (std::int64_t packed = 0; packed < q_; ++packed) {
            std::int64_t v = packed;
            for (int i = 0; i < t_; ++i) { tail[i] = v % p_; v /= p_; }
            if (tail[0] == 0) continue;  // x | g would make g reducible (t>1) or root 0
            if (is_irreducible_with_primitive_root(tail)) return;
        }
        throw ValidationError("make_field: no primitive irreducible found");
    }

    void build_tables()
    {
        gen_ = (t_ == 1) ? (p_ - mod_coeffs_[0]) % p_ : p_;  // class of x, or the root
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, -1);
        elem cur = 1;
        for (std::int64_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = cur;
            log_[cur] = i;
            cur = poly_mul(cur, gen_);
        }
        if (cur != 1) throw ValidationError("make_field: generator order check failed");
    }

    std::int64_t p_, q_, top_ = 0, gen_ = 0;
    int t_;
    std::vector<std::int64_t> mod_coeffs_;
    std::vector<elem> exp_;
    std::vector<std::int64_t> log_;
};

inline FiniteField make_field(std::int64_t p, int t) { return FiniteField(p, t); }

class GaloisRing;

/// Element of a Galois ring: coefficient vector of length f, entries mod p^L.
struct GaloisRingElement {
    std::vector<std::int64_t> coeffs;

    bool operator==(const GaloisRingElement&) const = default;
};

/// Galois ring GR(p^L, f): the unramified degree-f extension of Z/p^L,
/// presented as Z/p^L[x]/(G) where G is the Hensel lift of the field
/// modulus of F_{p^f} (the minimal polynomial of the Teichmuller unit).
class GaloisRing {
public:
    GaloisRing(std::int64_t p, int L, int f)
        : p_(p), L_(L), f_(f), residue_(std::make_shared<FiniteField>(p, f))
    {
        if (L < 1) throw ValidationError("make_galois_ring: precision must be >= 1");
        pL_ = ipow(p, L);
        // Start from the naive lift of the field modulus; compute the
        // Teichmuller unit there, then rebase onto its minimal polynomial.
        mod_tail_.assign(residue_->modulus().begin(), residue_->modulus().end());
        GaloisRingElement w = teichmuller_from_naive();
        rebase_to_minimal_polynomial(w);
        omega_ = monomial(1);  // class of x in the rebased presentation
        // Exact order check.
        std::int64_t group = ipow_ok(p, f) - 1;
        if (!is_one(pow(omega_, group)))
            throw ValidationError("make_galois_ring: Teichmuller unit order check failed");
    }

    std::int64_t characteristic_root() const { return p_; }
    int precision() const { return L_; }
    int degree() const { return f_; }
    std::int64_t coeff_modulus() const { return pL_; }
    const FiniteField& residue_field() const { return *residue_; }
    const GaloisRingElement& teichmuller_unit() const { return omega_; }
    const std::vector<std::int64_t>& modulus_tail() const { return mod_tail_; }

    GaloisRingElement zero() const { return {std::vector<std::int64_t>(f_, 0)}; }
    GaloisRingElement one() const { return monomial(0); }

    GaloisRingElement monomial(int k, std::int64_t c = 1) const
    {
        GaloisRingElement e{std::vector<std::int64_t>(f_, 0)};
        e.coeffs[k] = ((c % pL_) + pL_) % pL_;
        return e;
    }

    bool is_zero(const GaloisRingElement& a) const
    {
        return std::all_of(a.coeffs.begin(), a.coeffs.end(),
                           [](std::int64_t c) { return c == 0; });
    }

    bool is_one(const GaloisRingElement& a) const
    {
        if (a.coeffs[0] != 1) return false;
        return std::all_of(a.coeffs.begin() + 1, a.coeffs.end(),
                           [](std::int64_t c) { return c == 0; });
    }

    GaloisRingElement add(const GaloisRingElement& a, const GaloisRingElement& b) const
    {
        GaloisRingElement r{std::vector<std::int64_t>(f_)};
        for (int i = 0; i < f_; ++i) {
            std::int64_t s = a.coeffs[i] + b.coeffs[i];
            r.coeffs[i] = s >= pL_ ? s - pL_ : s;
        }
        return r;
    }

    void add_in_place(GaloisRingElement& a, const GaloisRingElement& b) const
    {
        for (int i = 0; i < f_; ++i) {
            std::int64_t s = a.coeffs[i] + b.coeffs[i];
            a.coeffs[i] = s >= pL_ ? s - pL_ : s;
        }
    }

    GaloisRingElement sub(const GaloisRingElement& a, const GaloisRingElement& b) const
    {
        GaloisRingElement r{std::vector<std::int64_t>(f_)};
        for (int i = 0; i < f_; ++i) {
            std::int64_t s = a.coeffs[i] - b.coeffs[i];
            r.coeffs[i] = s < 0 ? s + pL_ : s;
        }
        return r;
    }

    GaloisRingElement mul(const GaloisRingElement& a, const GaloisRingElement& b) const
    {
        // schoolbook product, then reduce degrees f..2f-2 by the modulus
        std::vector<__int128> prod(2 * f_ - 1, 0);
        for (int i = 0; i < f_; ++i) {
            if (a.coeffs[i] == 0) continue;
            for (int j = 0; j < f_; ++j)
                prod[i + j] += static_cast<__int128>(a.coeffs[i]) * b.coeffs[j];
        }
        for (int k = 2 * f_ - 2; k >= f_; --k) {
            __int128 c = prod[k] % pL_;
            if (c == 0) continue;
            // x^f = -tail(x)
            for (int i = 0; i < f_; ++i)
                prod[k - f_ + i] += c * (pL_ - mod_tail_[i]);
        }
        GaloisRingElement r{std::vector<std::int64_t>(f_)};
        for (int i = 0; i < f_; ++i)
            r.coeffs[i] = static_cast<std::int64_t>(((prod[i] % pL_) + pL_) % pL_);
        return r;
    }

    GaloisRingElement pow(GaloisRingElement a, std::int64_t e) const
    {
        GaloisRingElement r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// p-adic valuation truncated at L: largest e <= L with p^e dividing
    /// every coefficient; 0 maps to L (meaning ">= L").
    int valuation(const GaloisRingElement& a) const
    {
        int v = L_;
        for (auto c : a.coeffs) {
            if (c == 0) continue;
            v = std::min(v, valuation_int(c, p_));
            if (v == 0) break;
        }
        return v;
    }

    /// Reduce coefficient-wise mod p into the residue field (packed rep).
    FiniteField::elem reduce(const GaloisRingElement& a) const
    {
        FiniteField::elem r = 0;
        std::int64_t m = 1;
        for (int i = 0; i < f_; ++i) {
            r += (a.coeffs[i] % p_) * m;
            m *= p_;
        }
        return r;
    }

    /// Naive coefficient-wise lift from the residue field.
    GaloisRingElement lift(FiniteField::elem a) const
    {
        GaloisRingElement r{std::vector<std::int64_t>(f_)};
        for (int i = 0; i < f_; ++i) { r.coeffs[i] = a % p_; a /= p_; }
        return r;
    }

private:
    std::int64_t ipow_ok(std::int64_t b, int e) const
    {
        std::int64_t r = 1;
        for (int i = 0; i < e; ++i) r = checked_mul(r, b);
        return r;
    }

    // Teichmuller representative of the class of x in the naive-lift ring:
    // iterate z -> z^(p^f) exactly L times; each step gains one digit of
    // precision, so L steps are exact mod p^L.
    GaloisRingElement teichmuller_from_naive()
    {
        std::int64_t q = ipow_ok(p_, f_);
        GaloisRingElement z = monomial(1);
        for (int i = 0; i < L_; ++i) z = pow(z, q);
        return z;
    }

    // Replace the naive modulus by the minimal polynomial of the
    // Teichmuller unit: G(x) = prod over the Frobenius orbit (x - w^{p^i}).
    // Its coefficients are Frobenius-fixed, hence scalars in Z/p^L.
    void rebase_to_minimal_polynomial(const GaloisRingElement& w)
    {
        // poly coefficients are ring elements during the product
        std::vector<GaloisRingElement> poly{one()};
        GaloisRingElement conj = w;
        for (int i = 0; i < f_; ++i) {
            std::vector<GaloisRingElement> next(poly.size() + 1, zero());
            for (size_t j = 0; j < poly.size(); ++j) {
                next[j + 1] = add(next[j + 1], poly[j]);
                next[j] = sub(next[j], mul(poly[j], conj));
            }
            poly = std::move(next);
            conj = pow(conj, p_);
        }
        std::vector<std::int64_t> tail(f_);
        for (int i = 0; i < f_; ++i) {
            for (int j = 1; j < f_; ++j)
                if (poly[i].coeffs[j] != 0)
                    throw ValidationError("galois ring: minimal polynomial not rational");
            tail[i] = poly[i].coeffs[0];
        }
        if (!is_one(poly[f_]))
            throw ValidationError("galois ring: minimal polynomial not monic");
        mod_tail_ = std::move(tail);
    }

    std::int64_t p_, pL_;
    int L_, f_;
    std::shared_ptr<FiniteField> residue_;
    std::vector<std::int64_t> mod_tail_;
    GaloisRingElement omega_;
};

inline GaloisRing make_galois_ring(std::int64_t p, int L, int f)
{
    return GaloisRing(p, L, f);
}

}  // namespace designsnf
