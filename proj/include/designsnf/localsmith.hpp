#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <deque>
#include <memory>
#include <span>
#include <thread>
#include <vector>

#include "designsnf/common.hpp"
#include "designsnf/geometry.hpp"

namespace designsnf {

/// Distribution of p-adic valuations along the Smith diagonal of a matrix,
/// computed over Z/p^L.  counts[a] = #{i : nu_p(d_i) = a} for a < L;
/// counts[L] collects positions with valuation >= L.
struct ValuationProfile {
    std::int64_t p = 0;
    int L = 0;
    std::vector<std::int64_t> counts;  // size L+1

    std::int64_t total() const
    {
        std::int64_t s = 0;
        for (auto c : counts) s += c;
        return s;
    }

    bool operator==(const ValuationProfile&) const = default;
};

namespace detail {

inline bool& trace_on() { static bool t = false; return t; }


// One elimination layer of the local Smith engine.  A layer at depth d works
// over Z/p^(L-d) and owns the pivots of valuation exactly d: it eliminates
// with unit pivots only, and hands rows with no unit entry down to the next
// layer after dividing them by p.
//
// Invariants of the pivot basis:
//   - each pivot row has entry exactly 1 at its own (retired) column and
//     exactly 0 at every other retired column;
//   - retired columns are physically swapped behind the active prefix
//     [0, active), so vector operations run on the active prefix only;
//   - every stored non-basis row is pre-reduction input (no invariants).
// A parent retirement can invalidate deeper pivot rows (they may be nonzero
// at the newly retired column); those rows are demoted back to raw inputs of
// the retiring layer, which keeps the basis exact at all times.
class SmithLayer {
public:
    SmithLayer(std::int64_t width, std::int64_t p, int levels_left, int depth, int threads)
        : w_(width), p_(p), levels_left_(levels_left), depth_(depth), threads_(threads)
    {
        mod_ = 1;
        for (int i = 0; i < levels_left; ++i) mod_ *= p;
        pmap_.resize(w_);
        pmap_inv_.resize(w_);
        for (std::int64_t j = 0; j < w_; ++j) pmap_[j] = pmap_inv_[j] = static_cast<std::int32_t>(j);
        col2piv_.assign(w_, -1);
        active_ = w_;
        // k-chunk bound so deferred int32 accumulation cannot overflow
        std::int64_t per = (mod_ - 1) * (mod_ - 1);
        chunk_ = per > 0 ? std::max<std::int64_t>(1, ((1LL << 30) - mod_) / per) : 1;
    }

    std::int64_t active() const { return active_; }
    std::int64_t retired() const { return static_cast<std::int64_t>(basis_.size()); }

    // Feed a row given in parent coordinates (parent's active prefix at the
    // time of the call); dense, entries already reduced into [0, mod).
    void feed(const std::int32_t* y, std::int64_t n)
    {
        std::size_t base = batch_.size();
        batch_.resize(base + w_, 0);
        std::int32_t* r = batch_.data() + base;
        for (std::int64_t j = 0; j < n; ++j) r[pmap_[j]] = y[j];
        if (batch_.size() >= kBatchRows * static_cast<std::size_t>(w_)) flush();
    }

    // Feed a sparse 0/1 row (top layer only; parent coords == logical).
    void feed_sparse(std::span<const std::uint32_t> cols)
    {
        sparse_batch_.insert(sparse_batch_.end(), cols.begin(), cols.end());
        sparse_starts_.push_back(sparse_batch_.size());
        if (sparse_starts_.size() >= 4 * kBatchRows) flush();
    }

    void flush()
    {
        // sparse rows: immediate row-wise reduction (few pivot hits each)
        if (!sparse_starts_.empty()) {
            std::vector<std::uint32_t> cols;
            std::size_t prev = 0;
            std::vector<std::int32_t> y(w_, 0);
            for (std::size_t s = 0; s < sparse_starts_.size(); ++s) {
                cols.assign(sparse_batch_.begin() + prev, sparse_batch_.begin() + sparse_starts_[s]);
                prev = sparse_starts_[s];
                reduce_sparse_row(cols, y);
                drain_pending();
            }
            sparse_batch_.clear();
            sparse_starts_.clear();
        }
        while (!batch_.empty() || !pending_.empty()) {
            if (batch_.empty()) {
                // move pending rows (already in own physical coords) into the batch
                while (!pending_.empty() &&
                       batch_.size() < kBatchRows * static_cast<std::size_t>(w_)) {
                    batch_.insert(batch_.end(), pending_.front().begin(), pending_.front().end());
                    pending_.pop_front();
                }
            }
            std::vector<std::int32_t> rows = std::move(batch_);
            batch_.clear();
            process_dense_rows(rows);
        }
    }

    void finish(std::vector<std::int64_t>& counts)
    {
        flush();
        counts[depth_] += retired();
        if (child_) child_->finish(counts);
        // positions never pivoted anywhere are summed into the top bucket by
        // the caller as v minus all pivot counts
    }

    void flush_recursive()
    {
        flush();
        if (child_) child_->flush_recursive();
    }

    // Lift every pivot row of the subtree into parent coordinates scaled by
    // p per depth step (state inspection for tests).
    void dump_lifted(std::vector<std::vector<std::int32_t>>& out, std::int64_t parent_w,
                     std::int32_t scale) const
    {
        std::vector<std::vector<std::int32_t>> mine;
        if (child_) child_->dump_lifted(mine, w_, static_cast<std::int32_t>(p_));
        for (auto& b : basis_) mine.push_back(b);
        for (auto& m : mine) {
            std::vector<std::int32_t> up(parent_w, 0);
            for (std::int64_t j = 0; j < w_; ++j)
                if (m[j] != 0) up[pmap_inv_[j]] = m[j] * scale;
            out.push_back(std::move(up));
        }
    }

private:
    static constexpr std::size_t kBatchRows = 256;
    static constexpr std::size_t kTileRows = 64;

    std::int64_t norm(std::int64_t x) const
    {
        std::int64_t r = x % mod_;
        return r < 0 ? r + mod_ : r;
    }

    // ---- reduction -------------------------------------------------------

    // Sparse path: walk the row's support; each retired column hit
    // subtracts q times the pivot row.  Pivot tails are zero at all other
    // retired columns, so one pass over the original support is exact.
    void reduce_sparse_row(const std::vector<std::uint32_t>& cols, std::vector<std::int32_t>& y)
    {
        for (auto c : cols) y[pmap_[c]] += 1;
        const bool renorm_each = mod_ > 1024;  // keep deferred sums inside int32
        for (auto c : cols) {
            std::int64_t ph = pmap_[c];
            std::int32_t piv = col2piv_[ph];
            if (piv < 0) continue;
            std::int64_t q = norm(y[ph]);
            if (q == 0) { y[ph] = 0; continue; }
            const std::int32_t* b = basis_[piv].data();
            if (q == 1)
                for (std::int64_t j = 0; j < active_; ++j) y[j] -= b[j];
            else
                for (std::int64_t j = 0; j < active_; ++j)
                    y[j] -= static_cast<std::int32_t>(q) * b[j];
            y[ph] = 0;
            if (renorm_each)
                for (std::int64_t j = 0; j < active_; ++j)
                    y[j] = static_cast<std::int32_t>(norm(y[j]));
        }
        for (std::int64_t j = 0; j < active_; ++j) y[j] = static_cast<std::int32_t>(norm(y[j]));
        handle_residual(y.data());
        std::fill(y.begin(), y.end(), 0);
    }

    // Dense path: tiled pivot-outer reduction so each pivot row is streamed
    // once per row tile, then per-row residual handling in feed order.
    void process_dense_rows(std::vector<std::int32_t>& rows)
    {
        std::size_t nrows = rows.size() / w_;
        std::size_t npiv_before = basis_.size();
        reduce_tiles(rows.data(), nrows, npiv_before);
        work_ = &rows;  // keep the in-flight rows subject to column swaps
        for (std::size_t i = 0; i < nrows; ++i) {
            std::int32_t* y = rows.data() + i * w_;
            // catch up on pivots inserted while handling earlier rows
            if (basis_.size() > npiv_before)
                reduce_row_against(y, npiv_before, basis_.size());
            for (std::int64_t j = 0; j < active_; ++j)
                y[j] = static_cast<std::int32_t>(norm(y[j]));
            handle_residual(y);
            drain_pending();
        }
        work_ = nullptr;
    }

    void reduce_tiles(std::int32_t* rows, std::size_t nrows, std::size_t npiv)
    {
        if (npiv == 0 || nrows == 0) return;
        auto work = [&](std::size_t r0, std::size_t r1) {
            for (std::size_t t0 = r0; t0 < r1; t0 += kTileRows) {
                std::size_t t1 = std::min(r1, t0 + kTileRows);
                for (std::size_t k0 = 0; k0 < npiv; k0 += static_cast<std::size_t>(chunk_)) {
                    std::size_t k1 = std::min(npiv, k0 + static_cast<std::size_t>(chunk_));
                    for (std::size_t k = k0; k < k1; ++k) {
                        const std::int32_t* b = basis_[k].data();
                        const std::int64_t slot = basis_slot_[k];
                        for (std::size_t i = t0; i < t1; ++i) {
                            std::int32_t* y = rows + i * w_;
                            std::int64_t q = norm(y[slot]);
                            if (q == 0) { y[slot] = 0; continue; }
                            const std::int32_t qq = static_cast<std::int32_t>(q);
                            for (std::int64_t j = 0; j < active_; ++j) y[j] -= qq * b[j];
                            y[slot] = 0;
                        }
                    }
                    if (k1 < npiv)
                        for (std::size_t i = t0; i < t1; ++i) {
                            std::int32_t* y = rows + i * w_;
                            for (std::int64_t j = 0; j < active_; ++j)
                                y[j] = static_cast<std::int32_t>(norm(y[j]));
                        }
                }
            }
        };
        if (threads_ <= 1 || nrows < 2 * kTileRows) {
            work(0, nrows);
            return;
        }
        std::vector<std::thread> ts;
        std::size_t per = (nrows / kTileRows + threads_) / threads_ * kTileRows;
        for (int t = 0; t < threads_; ++t) {
            std::size_t r0 = std::min(nrows, t * per), r1 = std::min(nrows, (t + 1) * per);
            if (r0 < r1) ts.emplace_back(work, r0, r1);
        }
        for (auto& t : ts) t.join();
    }

    void reduce_row_against(std::int32_t* y, std::size_t k0, std::size_t k1)
    {
        std::int64_t since_norm = 0;
        for (std::size_t k = k0; k < k1; ++k) {
            const std::int64_t slot = basis_slot_[k];
            std::int64_t q = norm(y[slot]);
            if (q == 0) { y[slot] = 0; continue; }
            const std::int32_t* b = basis_[k].data();
            const std::int32_t qq = static_cast<std::int32_t>(q);
            for (std::int64_t j = 0; j < active_; ++j) y[j] -= qq * b[j];
            y[slot] = 0;
            if (++since_norm >= chunk_) {
                for (std::int64_t j = 0; j < active_; ++j)
                    y[j] = static_cast<std::int32_t>(norm(y[j]));
                since_norm = 0;
            }
        }
    }

    // ---- residual handling ------------------------------------------------

    // y: dense row in own physical coords, normalized on [0, active), zero at
    // retired slots.
    void handle_residual(std::int32_t* y)
    {
        std::int64_t unit_col = -1, nonzero = 0;
        for (std::int64_t j = 0; j < active_; ++j) {
            std::int32_t x = y[j];
            if (x == 0) continue;
            ++nonzero;
            if (unit_col < 0 && x % p_ != 0) { unit_col = j; break; }
        }
        if (unit_col >= 0) {
            if (trace_on()) fprintf(stderr, "[d%d] insert col(phys)=%lld active=%lld\n", depth_, (long long)unit_col, (long long)active_);
            insert_pivot(y, unit_col);
            return;
        }
        if (nonzero == 0) return;  // row exhausted
        if (levels_left_ <= 1) return;  // divisible by p means zero mod p
        if (trace_on()) {
            fprintf(stderr, "[d%d] handoff:", depth_);
            for (std::int64_t j = 0; j < active_; ++j) if (y[j]) fprintf(stderr, " %lld:%d", (long long)j, y[j]);
            fprintf(stderr, "\n");
        }
        // hand off y/p to the next layer
        if (!child_)
            child_ = std::make_unique<SmithLayer>(active_, p_, levels_left_ - 1, depth_ + 1,
                                                  threads_);
        handoff_.resize(active_);
        for (std::int64_t j = 0; j < active_; ++j) handoff_[j] = y[j] / static_cast<std::int32_t>(p_);
        child_->feed(handoff_.data(), active_);
    }

    void insert_pivot(const std::int32_t* y, std::int64_t col)
    {
        std::int64_t s = inverse_mod(norm(y[col]), mod_);
        std::vector<std::int32_t> row(w_, 0);
        for (std::int64_t j = 0; j < active_; ++j)
            row[j] = static_cast<std::int32_t>((norm(y[j]) * s) % mod_);
        // retire the column: swap it behind the active prefix
        std::int64_t last = active_ - 1;
        if (col != last) {
            for (auto& b : basis_) std::swap(b[col], b[last]);
            std::swap(row[col], row[last]);
            std::size_t nrows = batch_.size() / w_;
            for (std::size_t i = 0; i < nrows; ++i)
                std::swap(batch_[i * w_ + col], batch_[i * w_ + last]);
            if (work_) {
                std::size_t wrows = work_->size() / w_;
                for (std::size_t i = 0; i < wrows; ++i)
                    std::swap((*work_)[i * w_ + col], (*work_)[i * w_ + last]);
            }
            for (auto& r : pending_) std::swap(r[col], r[last]);
            // remap sparse rows and parent handoffs through pmap
            std::int32_t pa = pmap_inv_[col], pb = pmap_inv_[last];
            std::swap(pmap_[pa], pmap_[pb]);
            std::swap(pmap_inv_[col], pmap_inv_[last]);
            std::swap(col2piv_[col], col2piv_[last]);
            if (child_) child_->parent_swapped(col, last);
            if (trace_on()) check_bijection("insert_swap");
        }
        active_ = last;
        basis_slot_.push_back(last);
        col2piv_[last] = static_cast<std::int32_t>(basis_.size());
        basis_.push_back(std::move(row));
        // keep every pivot row exactly zero at the newly retired column;
        // the new row is zero at each old pivot slot, so pivots are safe
        {
            const std::int32_t* nb = basis_.back().data();
            for (std::size_t k = 0; k + 1 < basis_.size(); ++k) {
                std::int64_t e = norm(basis_[k][last]);
                if (e == 0) { basis_[k][last] = 0; continue; }
                std::int32_t* bk = basis_[k].data();
                for (std::int64_t j = 0; j < active_; ++j)
                    bk[j] = static_cast<std::int32_t>(norm(bk[j] - e * static_cast<std::int64_t>(nb[j])));
                bk[last] = 0;
            }
        }
        // any deeper row still touching the retired column (pivot rows and
        // raw buffered rows alike) is demoted to this layer, where the new
        // unit pivot can eliminate that content exactly
        if (child_) {
            std::vector<std::vector<std::int32_t>> demoted;
            child_->sweep_lane(last, demoted, w_, static_cast<std::int32_t>(p_));
            for (auto& d : demoted) pending_.push_back(std::move(d));
        }
    }

    void drain_pending()
    {
        while (!pending_.empty()) {
            std::vector<std::int32_t> r = std::move(pending_.front());
            pending_.pop_front();
            if (trace_on()) {
                fprintf(stderr, "[d%d] pend-in :", depth_);
                for (std::int64_t j = 0; j < w_; ++j) if (r[j]) fprintf(stderr, " %lld:%d", (long long)j, r[j]);
                fprintf(stderr, "\n");
            }
            reduce_row_against(r.data(), 0, basis_.size());
            for (std::int64_t j = 0; j < active_; ++j)
                r[j] = static_cast<std::int32_t>(norm(r[j]));
            if (trace_on()) {
                fprintf(stderr, "[d%d] pend-red:", depth_);
                for (std::int64_t j = 0; j < w_; ++j) if (r[j]) fprintf(stderr, " %lld:%d", (long long)j, r[j]);
                fprintf(stderr, "\n");
            }
            handle_residual(r.data());
        }
    }

public:
    // -- inter-layer plumbing (parent side calls these on the child) --------

    void parent_swapped(std::int64_t a, std::int64_t b)
    {
        std::swap(pmap_[a], pmap_[b]);
        pmap_inv_[pmap_[a]] = static_cast<std::int32_t>(a);
        pmap_inv_[pmap_[b]] = static_cast<std::int32_t>(b);
        if (trace_on()) check_bijection("parent_swapped");
    }

    void check_bijection(const char* where) const
    {
        for (std::int64_t j = 0; j < w_; ++j) {
            if (pmap_[j] < 0 || pmap_[j] >= w_ || pmap_inv_[pmap_[j]] != j) {
                fprintf(stderr, "[d%d] BIJECTION BROKEN at %s: j=%lld pmap=%d inv=%d\n",
                        depth_, where, (long long)j, pmap_[j], pmap_inv_[pmap_[j]]);
                abort();
            }
        }
        if (child_) child_->check_bijection(where);
    }

    // The parent retired its physical column `parent_slot`: every row of
    // this subtree with content at the corresponding lane -- pivot rows and
    // raw buffered rows alike -- is demoted, lifted into the parent's
    // coordinate space (values times p), and returned for reprocessing at
    // the retiring layer.  Raw rows are zero-filled in place to preserve
    // batch order.
    void sweep_lane(std::int64_t parent_slot, std::vector<std::vector<std::int32_t>>& out_parent,
                    std::int64_t parent_w, std::int32_t p)
    {
        const std::int64_t lane = pmap_[parent_slot];
        if (trace_on()) fprintf(stderr, "[d%d] sweep lane=%lld (parent_slot=%lld) nb=%zu\n", depth_, (long long)lane, (long long)parent_slot, basis_.size());
        std::vector<std::vector<std::int32_t>> mine;
        // a lane beyond the child's width was retired here before the child
        // existed; the sweep at that retirement already cleaned the subtree
        if (child_ && lane < child_->w_)
            child_->sweep_lane(lane, mine, w_, static_cast<std::int32_t>(p_));
        for (std::size_t k = 0; k < basis_.size();) {
            if (basis_[k][lane] != 0) {
                if (trace_on()) fprintf(stderr, "[d%d] sweep demotes pivot k=%zu slot=%lld\n", depth_, k, (long long)basis_slot_[k]);
                mine.push_back(std::move(basis_[k]));
                remove_pivot(k);
            } else {
                ++k;
            }
        }
        auto take_raw = [&](std::int32_t* r) {
            bool hit = false;
            if (norm(r[lane]) != 0) hit = true;
            if (!hit) return;
            if (trace_on()) fprintf(stderr, "[d%d] sweep takes raw row\n", depth_);
            std::vector<std::int32_t> cp(w_);
            for (std::int64_t j = 0; j < w_; ++j) {
                cp[j] = static_cast<std::int32_t>(norm(r[j]));
                r[j] = 0;
            }
            mine.push_back(std::move(cp));
        };
        std::size_t nrows = batch_.size() / w_;
        for (std::size_t i = 0; i < nrows; ++i) take_raw(batch_.data() + i * w_);
        if (work_) {
            std::size_t wrows = work_->size() / w_;
            for (std::size_t i = 0; i < wrows; ++i) take_raw(work_->data() + i * w_);
        }
        for (auto& r : pending_) take_raw(r.data());
        for (auto& m : mine) {
            std::vector<std::int32_t> up(parent_w, 0);
            for (std::int64_t j = 0; j < w_; ++j)
                if (m[j] != 0) up[pmap_inv_[j]] = m[j] * p;
            if (trace_on()) {
                fprintf(stderr, "[d%d] demoted(own):", depth_);
                for (std::int64_t j = 0; j < w_; ++j) if (m[j]) fprintf(stderr, " %lld:%d", (long long)j, m[j]);
                fprintf(stderr, "\n[d%d] lifted:", depth_);
                for (std::int64_t j = 0; j < parent_w; ++j) if (up[j]) fprintf(stderr, " %lld:%d", (long long)j, up[j]);
                fprintf(stderr, "\n");
            }
            out_parent.push_back(std::move(up));
        }
    }

private:
    void remove_pivot(std::size_t k)
    {
        col2piv_[basis_slot_[k]] = -1;
        std::size_t lastk = basis_.size() - 1;
        if (k != lastk) {
            basis_[k] = std::move(basis_[lastk]);
            basis_slot_[k] = basis_slot_[lastk];
            col2piv_[basis_slot_[k]] = static_cast<std::int32_t>(k);
        }
        basis_.pop_back();
        basis_slot_.pop_back();
        // the freed slot stays behind the active prefix as a dead lane: all
        // future rows of this layer are zero there, so it never re-pivots
    }

    std::int64_t w_, p_, mod_;
    int levels_left_, depth_, threads_;
    std::int64_t active_ = 0, chunk_ = 1;
    std::vector<std::int32_t> pmap_, pmap_inv_;  // parent coord <-> own phys
    std::vector<std::int32_t> col2piv_;
    std::vector<std::vector<std::int32_t>> basis_;
    std::vector<std::int64_t> basis_slot_;
    std::vector<std::int32_t> batch_;
    std::vector<std::int32_t>* work_ = nullptr;  // rows in flight during processing
    std::vector<std::uint32_t> sparse_batch_;
    std::vector<std::size_t> sparse_starts_;
    std::deque<std::vector<std::int32_t>> pending_;
    std::vector<std::int32_t> handoff_;
    std::unique_ptr<SmithLayer> child_;
};

}  // namespace detail

/// Smith-style elimination over Z/p^L with unit pivots per valuation level.
class LocalSmithEngine {
public:
    LocalSmithEngine(std::int64_t v, std::int64_t p, int L, int threads = 0)
        : v_(v), p_(p), L_(L)
    {
        if (L < 1) throw ValidationError("local smith: precision must be >= 1");
        if (!is_prime(p)) throw ValidationError("local smith: p must be prime");
        std::int64_t m = 1;
        for (int i = 0; i < L; ++i) {
            m = checked_mul(m, p);
            if (m >= 32768)
                throw SizeGuardError("local smith: p^L >= 2^15 not supported by elimination");
        }
        int th = threads > 0 ? threads
                             : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        top_ = std::make_unique<detail::SmithLayer>(v, p, L, 0, th);
    }

    /// True once every column carries a unit pivot; further rows are no-ops.
    bool saturated() const { return top_->active() == 0; }

    void feed(std::span<const std::uint32_t> cols)
    {
        if (!saturated()) top_->feed_sparse(cols);
    }

    void feed_dense(std::span<const std::int64_t> row)
    {
        if (saturated()) return;
        std::vector<std::int32_t> y(v_);
        std::int64_t m = 1;
        for (int i = 0; i < L_; ++i) m *= p_;
        for (std::int64_t j = 0; j < v_; ++j) {
            std::int64_t x = row[j] % m;
            if (x < 0) x += m;
            y[j] = static_cast<std::int32_t>(x);
        }
        feed_dense_raw(y);
    }

    ValuationProfile finish()
    {
        ValuationProfile prof;
        prof.p = p_;
        prof.L = L_;
        prof.counts.assign(L_ + 1, 0);
        top_->finish(prof.counts);
        // positions counted at some level plus the >=L bucket must cover v
        std::int64_t seen = 0;
        for (int a = 0; a < L_; ++a) seen += prof.counts[a];
        prof.counts[L_] = v_ - seen;
        return prof;
    }

    /// Current generator set lifted to logical coordinates (state inspection
    /// for tests; flushes all pending work first).
    std::vector<std::vector<std::int64_t>> debug_generators()
    {
        top_->flush_recursive();
        std::vector<std::vector<std::int32_t>> rows;
        top_->dump_lifted(rows, v_, 1);
        std::vector<std::vector<std::int64_t>> out;
        for (auto& r : rows) out.emplace_back(r.begin(), r.end());
        return out;
    }

private:
    void feed_dense_raw(const std::vector<std::int32_t>& y)
    {
        // top layer expects parent coords == logical coords
        top_->feed(y.data(), v_);
    }

    std::int64_t v_, p_;
    int L_;
    std::unique_ptr<detail::SmithLayer> top_;
};

/// Diagonal p-adic valuation profile of M over Z/p^L.
inline ValuationProfile p_local_profile(const IncidenceMatrix& M, std::int64_t p, int L,
                                        int threads = 0)
{
    LocalSmithEngine eng(M.cols, p, L, threads);
    for (std::int64_t i = 0; i < M.rows && !eng.saturated(); ++i) {
        auto [cb, ce] = M.row(i);
        eng.feed(std::span<const std::uint32_t>(cb, static_cast<std::size_t>(ce - cb)));
    }
    return eng.finish();
}

/// Row rank of M over Z/p.
inline std::int64_t rank_mod_p(const IncidenceMatrix& M, std::int64_t p, int threads = 0)
{
    return p_local_profile(M, p, 1, threads).counts[0];
}

}  // namespace designsnf
