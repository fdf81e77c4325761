#include "rrw/sat.hpp"

#include <algorithm>
#include <cassert>

namespace rrw::sat {

namespace {

// Luby restart sequence (1,1,2,1,1,2,4,...), 0-based.
int64_t luby(int64_t x)
{
    int64_t size = 1, seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x %= size;
    }
    return 1ll << seq;
}

}  // namespace

int Solver::new_var()
{
    assigns_.push_back(0);
    model_.push_back(0);
    polarity_.push_back(1);  // first guess: false
    level_.push_back(0);
    reason_.push_back(kNoReason);
    activity_.push_back(0.0);
    seen_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_pos_.push_back(-1);
    heap_insert((uint32_t)assigns_.size() - 1);
    return (int)assigns_.size();
}

void Solver::add_clause(std::vector<int> lits)
{
    if (!ok_) return;
    std::sort(lits.begin(), lits.end(), [](int a, int b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
    });
    std::vector<uint32_t> c;
    c.reserve(lits.size());
    int prev = 0;
    for (int dl : lits) {
        assert(dl != 0 && std::abs(dl) <= (int)assigns_.size());
        if (dl == prev) continue;
        if (dl == -prev) return;  // tautology
        prev = dl;
        const uint32_t l = mk_lit(dl);
        const int8_t v = value_lit(l);  // only level-0 units are assigned here
        if (v == 1) return;
        if (v == -1) continue;
        c.push_back(l);
    }
    if (c.empty()) {
        ok_ = false;
        return;
    }
    if (c.size() == 1) {
        enqueue(c[0], kNoReason);
        if (propagate() != kNoReason) ok_ = false;
        return;
    }
    clauses_.push_back({std::move(c)});
    attach((CRef)clauses_.size() - 1);
}

void Solver::attach(CRef cref)
{
    const auto& c = clauses_[(size_t)cref].lits;
    watches_[c[0]].push_back({cref, c[1]});
    watches_[c[1]].push_back({cref, c[0]});
}

void Solver::enqueue(uint32_t l, CRef reason)
{
    const uint32_t v = var_of(l);
    assert(assigns_[v] == 0);
    assigns_[v] = (l & 1) ? (int8_t)-1 : (int8_t)1;
    level_[v] = (int)trail_lim_.size();
    reason_[v] = reason;
    trail_.push_back(l);
}

Solver::CRef Solver::propagate()
{
    while (qhead_ < trail_.size()) {
        const uint32_t p = trail_[qhead_++];
        const uint32_t false_lit = neg(p);
        auto& ws = watches_[false_lit];
        size_t keep = 0;
        for (size_t i = 0; i < ws.size(); ++i) {
            const Watcher w = ws[i];
            if (value_lit(w.blocker) == 1) {
                ws[keep++] = w;
                continue;
            }
            auto& lits = clauses_[(size_t)w.cref].lits;
            if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
            assert(lits[1] == false_lit);
            if (value_lit(lits[0]) == 1) {
                ws[keep++] = {w.cref, lits[0]};
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < lits.size(); ++k) {
                if (value_lit(lits[k]) != -1) {
                    std::swap(lits[1], lits[k]);
                    watches_[lits[1]].push_back({w.cref, lits[0]});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            // Unit or conflicting.
            ws[keep++] = {w.cref, lits[0]};
            if (value_lit(lits[0]) == -1) {
                for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
                ws.resize(keep);
                qhead_ = trail_.size();
                return w.cref;
            }
            enqueue(lits[0], w.cref);
        }
        ws.resize(keep);
    }
    return kNoReason;
}

void Solver::var_bump(uint32_t v)
{
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
        for (double& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0) heap_percolate_up(heap_pos_[v]);
}

bool Solver::lit_redundant(uint32_t l)
{
    // A learnt literal is redundant when its whole reason is already seen.
    const CRef r = reason_[var_of(l)];
    if (r == kNoReason) return false;
    for (uint32_t q : clauses_[(size_t)r].lits) {
        if (q == neg(l)) continue;
        const uint32_t v = var_of(q);
        if (!seen_[v] && level_[v] > 0) return false;
    }
    return true;
}

void Solver::analyze(CRef confl, std::vector<uint32_t>& out_learnt, int& out_btlevel)
{
    out_learnt.assign(1, 0);  // slot for the asserting literal
    int path = 0;
    uint32_t p = UINT32_MAX;
    size_t index = trail_.size();

    do {
        assert(confl != kNoReason);
        const auto& c = clauses_[(size_t)confl].lits;
        for (uint32_t q : c) {
            if (p != UINT32_MAX && q == neg(p)) continue;  // the asserted literal itself
            const uint32_t v = var_of(q);
            if (seen_[v] || level_[v] == 0) continue;
            seen_[v] = 1;
            analyze_clear_.push_back(v);
            var_bump(v);
            if (level_[v] >= (int)trail_lim_.size())
                ++path;
            else
                out_learnt.push_back(q);
        }
        while (!seen_[var_of(trail_[index - 1])]) --index;
        p = neg(trail_[index - 1]);
        --index;
        confl = reason_[var_of(p)];
        seen_[var_of(p)] = 0;
        --path;
    } while (path > 0);
    out_learnt[0] = p;

    // Self-subsumption minimization.
    size_t keep = 1;
    for (size_t i = 1; i < out_learnt.size(); ++i)
        if (!lit_redundant(out_learnt[i])) out_learnt[keep++] = out_learnt[i];
    out_learnt.resize(keep);

    out_btlevel = 0;
    if (out_learnt.size() > 1) {
        size_t max_i = 1;
        for (size_t i = 2; i < out_learnt.size(); ++i)
            if (level_[var_of(out_learnt[i])] > level_[var_of(out_learnt[max_i])]) max_i = i;
        std::swap(out_learnt[1], out_learnt[max_i]);
        out_btlevel = level_[var_of(out_learnt[1])];
    }

    for (uint32_t v : analyze_clear_) seen_[v] = 0;
    analyze_clear_.clear();
}

void Solver::backtrack(int target)
{
    while ((int)trail_lim_.size() > target) {
        const size_t lim = trail_lim_.back();
        trail_lim_.pop_back();
        while (trail_.size() > lim) {
            const uint32_t l = trail_.back();
            trail_.pop_back();
            const uint32_t v = var_of(l);
            assigns_[v] = 0;
            polarity_[v] = (l & 1) ? 1 : 0;  // phase saving
            reason_[v] = kNoReason;
            if (heap_pos_[v] < 0) heap_insert(v);
        }
    }
    qhead_ = trail_.size();
}

void Solver::heap_insert(uint32_t v)
{
    heap_pos_[v] = (int)heap_.size();
    heap_.push_back((int)v);
    heap_percolate_up((int)heap_.size() - 1);
}

void Solver::heap_percolate_up(int i)
{
    const int v = heap_[i];
    while (i > 0) {
        const int parent = (i - 1) / 2;
        if (activity_[heap_[parent]] >= activity_[v]) break;
        heap_[i] = heap_[parent];
        heap_pos_[heap_[i]] = i;
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
}

void Solver::heap_percolate_down(int i)
{
    const int v = heap_[i];
    const int n = (int)heap_.size();
    while (true) {
        int child = 2 * i + 1;
        if (child >= n) break;
        if (child + 1 < n && activity_[heap_[child + 1]] > activity_[heap_[child]]) ++child;
        if (activity_[heap_[child]] <= activity_[v]) break;
        heap_[i] = heap_[child];
        heap_pos_[heap_[i]] = i;
        i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
}

uint32_t Solver::heap_pop()
{
    const int v = heap_[0];
    heap_pos_[v] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_pos_[heap_[0]] = 0;
        heap_percolate_down(0);
    }
    return (uint32_t)v;
}

int Solver::pick_branch()
{
    while (!heap_.empty()) {
        const uint32_t v = heap_pop();
        if (assigns_[v] == 0) return (int)v;
    }
    return -1;
}

Solver::Result Solver::solve(int64_t max_conflicts, double timeout_seconds)
{
    if (!ok_) return Result::Unsat;
    if (propagate() != kNoReason) {
        ok_ = false;
        return Result::Unsat;
    }

    const auto start = std::chrono::steady_clock::now();
    const int64_t conflict_cap =
        max_conflicts < 0 ? INT64_MAX : conflicts_ + max_conflicts;
    int64_t restart_round = 0;
    int64_t restart_budget = 100 * luby(restart_round);
    int64_t restart_conflicts = 0;

    std::vector<uint32_t> learnt;
    while (true) {
        const CRef confl = propagate();
        if (confl != kNoReason) {
            ++conflicts_;
            ++restart_conflicts;
            if (trail_lim_.empty()) {
                ok_ = false;
                return Result::Unsat;
            }
            int btlevel = 0;
            analyze(confl, learnt, btlevel);
            backtrack(btlevel);
            if (learnt.size() == 1) {
                enqueue(learnt[0], kNoReason);
            } else {
                clauses_.push_back({learnt});
                attach((CRef)clauses_.size() - 1);
                enqueue(learnt[0], (CRef)clauses_.size() - 1);
            }
            var_inc_ /= 0.95;

            if (conflicts_ >= conflict_cap) return Result::Unknown;
            if (timeout_seconds >= 0 && (conflicts_ & 63) == 0) {
                const auto now = std::chrono::steady_clock::now();
                if (std::chrono::duration<double>(now - start).count() > timeout_seconds)
                    return Result::Unknown;
            }
        } else {
            if (restart_conflicts >= restart_budget) {
                restart_conflicts = 0;
                restart_budget = 100 * luby(++restart_round);
                backtrack(0);
                continue;
            }
            const int v = pick_branch();
            if (v < 0) {
                for (size_t i = 0; i < assigns_.size(); ++i) model_[i] = assigns_[i];
                backtrack(0);
                return Result::Sat;
            }
            trail_lim_.push_back(trail_.size());
            enqueue(((uint32_t)v << 1) | polarity_[v], kNoReason);
        }
    }
}

}  // namespace rrw::sat
