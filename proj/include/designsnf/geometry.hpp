#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "designsnf/algebra.hpp"
#include "designsnf/common.hpp"

namespace designsnf {

/// Parameter tuple of a 2-(v,k,lambda) design with b blocks, replication
/// number r and order n = r - lambda.
struct DesignParams {
    std::int64_t v = 0, k = 0, lambda = 0, b = 0, r = 0, n = 0;

    bool operator==(const DesignParams&) const = default;

    void check_consistent() const
    {
        if (v < 2 || k < 2 || lambda < 1 || b < 1 || r < 1)
            throw NotADesign("design parameters out of range");
        if (checked_mul(b, k) != checked_mul(v, r))
            throw NotADesign("bk != vr");
        if (checked_mul(r, k - 1) != checked_mul(lambda, v - 1))
            throw NotADesign("r(k-1) != lambda(v-1)");
        if (n != r - lambda) throw NotADesign("n != r - lambda");
    }
};

/// Sparse 0/1 incidence matrix: rows are blocks, columns are points.
/// Each row stores its sorted incident column indices.
struct IncidenceMatrix {
    std::int64_t rows = 0, cols = 0;
    std::vector<std::uint32_t> col_index;  // concatenated per-row sorted columns
    std::vector<std::size_t> row_start;    // size rows+1

    std::size_t nnz() const { return col_index.size(); }

    std::pair<const std::uint32_t*, const std::uint32_t*> row(std::int64_t i) const
    {
        return {col_index.data() + row_start[i], col_index.data() + row_start[i + 1]};
    }

    void append_row(std::vector<std::uint32_t> cols_of_row)
    {
        std::sort(cols_of_row.begin(), cols_of_row.end());
        col_index.insert(col_index.end(), cols_of_row.begin(), cols_of_row.end());
        row_start.push_back(col_index.size());
        ++rows;
    }

    static IncidenceMatrix with_cols(std::int64_t cols)
    {
        IncidenceMatrix m;
        m.cols = cols;
        m.row_start.push_back(0);
        return m;
    }
};

/// Number of i-dimensional subspaces of an m-dimensional space over F_q,
/// by the q-Pascal recurrence (exact, overflow-checked).
inline std::int64_t gaussian_binomial(int m, int i, std::int64_t q)
{
    if (i < 0 || i > m) throw ValidationError("gaussian_binomial: index out of range");
    // row-by-row: [m i] = [m-1 i-1] + q^i [m-1 i]
    std::vector<std::int64_t> row(static_cast<std::size_t>(i) + 1, 0);
    row[0] = 1;
    for (int mm = 1; mm <= m; ++mm) {
        std::int64_t qi = 1;
        std::vector<std::int64_t> next(row.size(), 0);
        next[0] = 1;
        for (int ii = 1; ii <= std::min(mm, i); ++ii) {
            qi = checked_mul(qi, q);
            next[ii] = row[ii - 1];
            if (ii <= mm - 1)
                next[ii] += checked_mul(qi, row[ii]);
        }
        row = std::move(next);
    }
    return row[i];
}

/// Parameters of the 2-design of points vs (d-1)-dimensional projective
/// subspaces of PG(m,q), i.e. d-subspaces of the underlying V = F_q^{m+1}.
inline DesignParams pg_design_params(int m, int d, std::int64_t q)
{
    if (m < 2 || d < 2 || d > m)
        throw ValidationError("pg_design_params: need 2 <= d <= m");
    DesignParams P;
    P.v = gaussian_binomial(m + 1, 1, q);
    P.k = gaussian_binomial(d, 1, q);
    P.r = gaussian_binomial(m, d - 1, q);
    P.lambda = gaussian_binomial(m - 1, d - 2, q);
    P.b = gaussian_binomial(m + 1, d, q);
    P.n = P.r - P.lambda;
    P.check_consistent();
    return P;
}

/// Parameters of the 2-design of points vs d-flats of AG(m,q).
inline DesignParams ag_design_params(int m, int d, std::int64_t q)
{
    if (m < 2 || d < 1 || d > m - 1)
        throw ValidationError("ag_design_params: need 1 <= d <= m-1");
    DesignParams P;
    P.v = ipow(q, m);
    P.k = ipow(q, d);
    P.r = gaussian_binomial(m, d, q);
    P.lambda = gaussian_binomial(m - 1, d - 1, q);
    P.b = checked_mul(ipow(q, m - d), P.r);
    P.n = P.r - P.lambda;
    P.check_consistent();
    return P;
}

namespace detail {

// Enumeration of d x n matrices in reduced row echelon form over F_q,
// one per d-dimensional subspace of F_q^n.  Rows are packed field-element
// vectors (index 0..q-1 in the field's canonical integer representation).
// Order: pivot-column sets in lexicographic order, then free entries in
// lexicographic (odometer) order.
class RrefEnumerator {
public:
    RrefEnumerator(const FiniteField& F, int n, int d) : F_(F), n_(n), d_(d)
    {
        pivots_.resize(d_);
        for (int i = 0; i < d_; ++i) pivots_[i] = i;
        pivots_done_ = d_ > n_;
        setup_free_positions();
    }

    bool done() const { return pivots_done_; }

    // Current basis as d rows of n field elements each.
    void current(std::vector<FiniteField::elem>& basis) const
    {
        basis.assign(static_cast<std::size_t>(d_) * n_, 0);
        for (int i = 0; i < d_; ++i) basis[i * n_ + pivots_[i]] = 1;
        for (std::size_t t = 0; t < free_pos_.size(); ++t) {
            auto [i, j] = free_pos_[t];
            basis[i * n_ + j] = free_val_[t];
        }
    }

    void next()
    {
        // odometer over free values
        for (std::size_t t = 0; t < free_val_.size(); ++t) {
            if (++free_val_[t] < F_.size()) return;
            free_val_[t] = 0;
        }
        next_pivot_set();
    }

private:
    void setup_free_positions()
    {
        free_pos_.clear();
        if (pivots_done_) return;
        // entries right of each pivot, excluding pivot columns of later rows
        for (int i = 0; i < d_; ++i)
            for (int j = pivots_[i] + 1; j < n_; ++j) {
                bool is_pivot = false;
                for (int l = i + 1; l < d_; ++l)
                    if (pivots_[l] == j) { is_pivot = true; break; }
                if (!is_pivot) free_pos_.emplace_back(i, j);
            }
        free_val_.assign(free_pos_.size(), 0);
    }

    void next_pivot_set()
    {
        int i = d_ - 1;
        while (i >= 0 && pivots_[i] == n_ - d_ + i) --i;
        if (i < 0) { pivots_done_ = true; return; }
        ++pivots_[i];
        for (int l = i + 1; l < d_; ++l) pivots_[l] = pivots_[i] + (l - i);
        setup_free_positions();
    }

    const FiniteField& F_;
    int n_, d_;
    std::vector<int> pivots_;
    bool pivots_done_ = false;
    std::vector<std::pair<int, int>> free_pos_;
    std::vector<FiniteField::elem> free_val_;
};

// Packs a coordinate vector (x_0,...,x_{n-1}) into sum x_i * q^i.
inline std::int64_t pack_vector(const FiniteField::elem* x, int n, std::int64_t q)
{
    std::int64_t r = 0;
    for (int i = n - 1; i >= 0; --i) r = r * q + x[i];
    return r;
}

}  // namespace detail

/// All projective points of PG(n-1, q) as coordinate vectors normalized so
/// the first nonzero coordinate is 1, in lexicographic order of
/// (x_0, ..., x_{n-1}).
inline std::vector<std::vector<FiniteField::elem>> pg_points(const FiniteField& F, int n)
{
    std::vector<std::vector<FiniteField::elem>> pts;
    std::vector<FiniteField::elem> x(n, 0);
    // Lex order compares x_0 first, so later leading indices (more leading
    // zeros) come first: leading index l from n-1 down to 0, then the tail
    // coordinates (x_{l+1} most significant) in lex order.
    for (int l = n - 1; l >= 0; --l) {
        std::fill(x.begin(), x.end(), 0);
        x[l] = 1;
        std::int64_t tail = n - 1 - l;
        std::int64_t count = 1;
        for (int i = 0; i < tail; ++i) count = checked_mul(count, F.size());
        for (std::int64_t c = 0; c < count; ++c) {
            std::int64_t v = c;
            // tail coordinates in lex order: x_{l+1} most significant
            for (int i = n - 1; i > l; --i) {
                x[i] = v % F.size();
                v /= F.size();
            }
            pts.push_back(x);
        }
    }
    return pts;
}

/// Incidence matrix of points vs d-subspaces of V = F_q^{m+1}.
/// Rows: d-subspaces in canonical reduced-echelon enumeration order.
/// Columns: projective points, first-nonzero-normalized, lex order.
inline IncidenceMatrix incidence_pg(int m, int d, std::int64_t q)
{
    DesignParams P = pg_design_params(m, d, q);
    if (checked_mul(P.b, P.k) > 1000000000LL)
        throw SizeGuardError("incidence_pg: b*k exceeds 10^9");
    auto fac = factorize(q);
    if (fac.size() != 1) throw ValidationError("q must be a prime power");
    FiniteField F = make_field(fac[0].first, fac[0].second);
    const int n = m + 1;

    auto pts = pg_points(F, n);
    // point -> column lookup by packed value
    std::vector<std::uint32_t> col_of(static_cast<std::size_t>(ipow(q, n)), 0);
    for (std::size_t c = 0; c < pts.size(); ++c)
        col_of[detail::pack_vector(pts[c].data(), n, q)] = static_cast<std::uint32_t>(c);

    IncidenceMatrix M = IncidenceMatrix::with_cols(P.v);
    M.col_index.reserve(static_cast<std::size_t>(P.b) * P.k);
    M.row_start.reserve(P.b + 1);

    std::vector<FiniteField::elem> basis;
    std::vector<FiniteField::elem> pt(n), coeff(d);
    std::vector<std::uint32_t> row;
    row.reserve(P.k);
    for (detail::RrefEnumerator en(F, n, d); !en.done(); en.next()) {
        en.current(basis);
        row.clear();
        // projective points of the subspace: coefficient vectors with first
        // nonzero coordinate 1 applied to the basis rows
        for (int lead = 0; lead < d; ++lead) {
            std::int64_t count = 1;
            for (int i = lead + 1; i < d; ++i) count = checked_mul(count, q);
            for (std::int64_t cc = 0; cc < count; ++cc) {
                std::fill(coeff.begin(), coeff.end(), 0);
                coeff[lead] = 1;
                std::int64_t v = cc;
                for (int i = lead + 1; i < d; ++i) {
                    coeff[i] = v % q;
                    v /= q;
                }
                std::fill(pt.begin(), pt.end(), 0);
                for (int i = lead; i < d; ++i) {
                    if (coeff[i] == 0) continue;
                    for (int j = 0; j < n; ++j)
                        pt[j] = F.add(pt[j], F.mul(coeff[i], basis[i * n + j]));
                }
                // normalize to first-nonzero = 1
                int fz = 0;
                while (pt[fz] == 0) ++fz;
                if (pt[fz] != 1) {
                    auto s = F.inv(pt[fz]);
                    for (int j = fz; j < n; ++j) pt[j] = F.mul(pt[j], s);
                }
                row.push_back(col_of[detail::pack_vector(pt.data(), n, q)]);
            }
        }
        M.append_row(std::move(row));
        row.clear();
    }
    if (M.rows != P.b) throw NotADesign("incidence_pg: block count mismatch");
    return M;
}

/// Incidence matrix of points vs d-flats of AG(m,q).
/// Rows: (subspace, coset) pairs -- subspaces in reduced-echelon order,
/// cosets by lex-minimal representative (zero at the pivot columns).
/// Columns: vectors of F_q^m in lexicographic order of (x_0,...,x_{m-1}).
inline IncidenceMatrix incidence_ag(int m, int d, std::int64_t q)
{
    DesignParams P = ag_design_params(m, d, q);
    if (checked_mul(P.b, P.k) > 1000000000LL)
        throw SizeGuardError("incidence_ag: b*k exceeds 10^9");
    auto f = factorize(q);
    if (f.size() != 1) throw ValidationError("q must be a prime power");
    FiniteField F = make_field(f[0].first, f[0].second);

    // column index of a vector: lex order of (x_0,...,x_{m-1}) means x_0 is
    // the most significant digit
    auto col_of = [&](const FiniteField::elem* x) {
        std::int64_t r = 0;
        for (int i = 0; i < m; ++i) r = r * q + x[i];
        return static_cast<std::uint32_t>(r);
    };

    IncidenceMatrix M = IncidenceMatrix::with_cols(P.v);
    M.col_index.reserve(static_cast<std::size_t>(P.b) * P.k);
    M.row_start.reserve(P.b + 1);

    std::vector<FiniteField::elem> basis, member(m), rep(m);
    std::vector<std::uint32_t> row;
    std::vector<int> nonpivot;
    for (detail::RrefEnumerator en(F, m, d); !en.done(); en.next()) {
        en.current(basis);
        // pivot columns = leading indices of the basis rows
        std::vector<char> is_pivot(m, 0);
        for (int i = 0; i < d; ++i) {
            int l = 0;
            while (basis[i * m + l] == 0) ++l;
            is_pivot[l] = 1;
        }
        nonpivot.clear();
        for (int j = 0; j < m; ++j)
            if (!is_pivot[j]) nonpivot.push_back(j);

        // subspace points (all q^d combinations), as packed coordinates
        std::int64_t qd = ipow(q, d);
        std::vector<std::vector<FiniteField::elem>> pts;
        pts.reserve(qd);
        for (std::int64_t cc = 0; cc < qd; ++cc) {
            std::fill(member.begin(), member.end(), 0);
            std::int64_t v = cc;
            for (int i = 0; i < d; ++i) {
                FiniteField::elem ci = v % q;
                v /= q;
                if (ci == 0) continue;
                for (int j = 0; j < m; ++j)
                    member[j] = F.add(member[j], F.mul(ci, basis[i * m + j]));
            }
            pts.push_back(member);
        }

        // cosets: representatives supported on the non-pivot columns
        std::int64_t ncosets = ipow(q, m - d);
        for (std::int64_t rc = 0; rc < ncosets; ++rc) {
            std::fill(rep.begin(), rep.end(), 0);
            std::int64_t v = rc;
            for (std::size_t i = 0; i < nonpivot.size(); ++i) {
                rep[nonpivot[i]] = v % q;
                v /= q;
            }
            row.clear();
            for (auto& s : pts) {
                for (int j = 0; j < m; ++j) member[j] = F.add(rep[j], s[j]);
                row.push_back(col_of(member.data()));
            }
            M.append_row(std::move(row));
            row.clear();
        }
    }
    if (M.rows != P.b) throw NotADesign("incidence_ag: block count mismatch");
    return M;
}

/// Check both identities of A^T A = (r-lambda) I + lambda J, A J = k J and
/// return the design parameters; throws NotADesign with the first violation.
inline DesignParams verify_2design(const IncidenceMatrix& M)
{
    const std::int64_t b = M.rows, v = M.cols;
    if (b < 1 || v < 2) throw NotADesign("matrix too small");
    // uniform row weight k
    std::int64_t k = static_cast<std::int64_t>(M.row_start[1] - M.row_start[0]);
    for (std::int64_t i = 0; i < b; ++i)
        if (static_cast<std::int64_t>(M.row_start[i + 1] - M.row_start[i]) != k)
            throw NotADesign("row " + std::to_string(i) + " has weight != k");
    if (k < 2 || k >= v) throw NotADesign("block size k out of range 2 <= k < v");
    // column sums r
    std::vector<std::int64_t> colsum(v, 0);
    for (auto c : M.col_index) ++colsum[c];
    std::int64_t r = colsum[0];
    for (std::int64_t c = 0; c < v; ++c)
        if (colsum[c] != r)
            throw NotADesign("column " + std::to_string(c) + " has sum != r");
    if (checked_mul(b, k) != checked_mul(v, r)) throw NotADesign("bk != vr");

    // pairwise column inner products via a cache-resident counter array:
    // for each column c, scatter-count the columns co-occurring with c.
    std::vector<std::size_t> col_start(v + 1, 0);
    for (auto c : M.col_index) ++col_start[c + 1];
    for (std::int64_t c = 0; c < v; ++c) col_start[c + 1] += col_start[c];
    std::vector<std::uint32_t> rows_of_col(M.nnz());
    {
        std::vector<std::size_t> fill(col_start.begin(), col_start.end() - 1);
        for (std::int64_t i = 0; i < b; ++i) {
            auto [cb, ce] = M.row(i);
            for (auto* cp = cb; cp != ce; ++cp)
                rows_of_col[fill[*cp]++] = static_cast<std::uint32_t>(i);
        }
    }
    std::int64_t lambda = -1;
    std::vector<std::uint32_t> cnt(v, 0);
    for (std::int64_t c = 0; c < v; ++c) {
        for (std::size_t s = col_start[c]; s < col_start[c + 1]; ++s) {
            auto [cb, ce] = M.row(rows_of_col[s]);
            for (auto* cp = cb; cp != ce; ++cp) ++cnt[*cp];
        }
        for (std::int64_t c2 = 0; c2 < v; ++c2) {
            std::int64_t want = (c2 == c) ? r : lambda;
            if (c2 != c && lambda == -1) {
                lambda = cnt[c2];
                want = lambda;
            }
            if (cnt[c2] != want)
                throw NotADesign("A^T A cell (" + std::to_string(c) + "," +
                                 std::to_string(c2) + ") = " + std::to_string(cnt[c2]));
            cnt[c2] = 0;
        }
    }
    if (lambda < 1) throw NotADesign("lambda < 1");

    DesignParams P{v, k, lambda, b, r, r - lambda};
    P.check_consistent();
    return P;
}

}  // namespace designsnf
