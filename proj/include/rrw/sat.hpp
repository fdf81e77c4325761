#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

namespace rrw::sat {

/// Small CDCL solver: two-watched-literal propagation, 1UIP learning with
/// self-subsumption minimization, VSIDS decisions, phase saving and Luby
/// restarts. Clauses are added up front; solve() is called once per instance.
class Solver {
public:
    enum class Result { Sat, Unsat, Unknown };

    /// Returns the new 1-based variable index (DIMACS convention).
    int new_var();
    int num_vars() const { return (int)assigns_.size(); }

    /// Adds a clause of signed DIMACS literals (var or -var).
    void add_clause(std::vector<int> lits);

    /// max_conflicts < 0 means unlimited; timeout_seconds < 0 means none.
    Result solve(int64_t max_conflicts = -1, double timeout_seconds = -1.0);

    /// Valid after solve() returned Sat.
    bool model_value(int var) const { return model_[(size_t)var - 1] == 1; }

    int64_t num_conflicts() const { return conflicts_; }

private:
    using CRef = int32_t;
    static constexpr CRef kNoReason = -1;

    struct Clause {
        std::vector<uint32_t> lits;
    };
    struct Watcher {
        CRef cref;
        uint32_t blocker;
    };

    static uint32_t var_of(uint32_t l) { return l >> 1; }
    static uint32_t neg(uint32_t l) { return l ^ 1; }
    static uint32_t mk_lit(int dimacs)
    {
        const uint32_t v = (uint32_t)(dimacs > 0 ? dimacs : -dimacs) - 1;
        return (v << 1) | (dimacs < 0 ? 1u : 0u);
    }

    int8_t value_lit(uint32_t l) const
    {
        const int8_t v = assigns_[var_of(l)];
        return (l & 1) ? (int8_t)-v : v;
    }

    void attach(CRef cref);
    void enqueue(uint32_t l, CRef reason);
    CRef propagate();
    void analyze(CRef confl, std::vector<uint32_t>& out_learnt, int& out_btlevel);
    bool lit_redundant(uint32_t l);
    void backtrack(int level);
    int pick_branch();  // -1 when all assigned
    void var_bump(uint32_t v);

    // activity-ordered heap
    void heap_insert(uint32_t v);
    void heap_percolate_up(int i);
    void heap_percolate_down(int i);
    uint32_t heap_pop();

    std::vector<Clause> clauses_;
    std::vector<std::vector<Watcher>> watches_;
    std::vector<int8_t> assigns_;
    std::vector<int8_t> model_;
    std::vector<int8_t> polarity_;
    std::vector<int> level_;
    std::vector<CRef> reason_;
    std::vector<uint32_t> trail_;
    std::vector<size_t> trail_lim_;
    size_t qhead_ = 0;

    std::vector<double> activity_;
    double var_inc_ = 1.0;
    std::vector<int> heap_;       // variables ordered by activity
    std::vector<int> heap_pos_;   // var -> heap index, -1 if absent

    std::vector<char> seen_;
    std::vector<uint32_t> analyze_clear_;

    bool ok_ = true;
    int64_t conflicts_ = 0;
};

}  // namespace rrw::sat
