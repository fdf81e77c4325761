#pragma once

// Independent brute-force chain-enumeration oracle for minimum chain sizes.
// Deliberately separate from the library's propositional search: a plain
// depth-first enumeration over AND-with-complemented-edges chains, deepened
// one gate at a time. Prunes are all conservative at the minimal size being
// probed:
//  - a step whose function (up to complement) duplicates an available signal
//    can be dropped, so such chains cannot be the first feasible size;
//  - steps left unused imply a shorter feasible chain, contradiction;
//  - a set of available step functions that already failed with the same
//    number of steps left will fail again (memo).

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "rrw/truth_table.hpp"

namespace chain_oracle {

class Enumerator {
public:
    Enumerator(const rrw::TruthTable& tt) : num_vars_(tt.num_vars())
    {
        mask_ = (num_vars_ == 0) ? 1 : ((1ull << (1u << num_vars_)) - 1);
        target_ = tt.word(0) & mask_;
        for (int i = 0; i < num_vars_; ++i)
            signals_.push_back(rrw::TruthTable::projection(i, num_vars_).word(0));
    }

    // Minimum chain size, or -1 if none within max_gates.
    int solve(int max_gates)
    {
        if (trivial()) return 0;
        for (int r = 1; r <= max_gates; ++r) {
            failed_.clear();
            uses_.assign(signals_.size() + (size_t)r, 0);
            if (search(r)) return r;
        }
        return -1;
    }

private:
    bool trivial() const
    {
        if (target_ == 0 || target_ == mask_) return true;
        for (uint64_t s : signals_)
            if (s == target_ || (~s & mask_) == target_) return true;
        return false;
    }

    bool duplicate(uint64_t f) const
    {
        if (f == 0 || f == mask_) return true;
        for (uint64_t s : signals_)
            if (s == f || (~s & mask_) == f) return true;
        return false;
    }

    // Feasibility from a state depends on the step functions available, which
    // of them are still unconsumed, and the remaining budget.
    std::string state_key(int steps_left) const
    {
        std::vector<std::pair<uint64_t, char>> steps;
        for (size_t s = (size_t)num_vars_; s < signals_.size(); ++s)
            steps.emplace_back(signals_[s], uses_[s] ? 1 : 0);
        std::sort(steps.begin(), steps.end());
        std::string key;
        key.reserve(steps.size() * 9 + 1);
        for (const auto& [f, used] : steps) {
            key.append((const char*)&f, sizeof(f));
            key.push_back(used);
        }
        key.push_back((char)steps_left);
        return key;
    }

    bool search(int steps_left)
    {
        const size_t m = signals_.size();
        if (steps_left == 1) {
            // the last step must produce the target (up to output complement)
            for (size_t bi = 1; bi < m; ++bi)
                for (size_t ai = 0; ai < bi; ++ai)
                    for (int pol = 0; pol < 4; ++pol) {
                        const uint64_t fa = (pol & 1) ? (~signals_[ai] & mask_) : signals_[ai];
                        const uint64_t fb = (pol & 2) ? (~signals_[bi] & mask_) : signals_[bi];
                        const uint64_t f = fa & fb;
                        if (f != target_ && (~f & mask_) != target_) continue;
                        // every earlier step must be consumed somewhere
                        bool all_used = true;
                        for (size_t s = (size_t)num_vars_; s < m; ++s)
                            if (uses_[s] == 0 && s != ai && s != bi) all_used = false;
                        if (all_used) return true;
                    }
            return false;
        }

        int unused = 0;
        for (size_t s = (size_t)num_vars_; s < m; ++s)
            if (uses_[s] == 0) ++unused;
        if (unused > 2 * (steps_left - 1) + 2) return false;

        const std::string key = state_key(steps_left);
        if (failed_.count(key)) return false;

        for (size_t bi = 1; bi < m; ++bi)
            for (size_t ai = 0; ai < bi; ++ai)
                for (int pol = 0; pol < 4; ++pol) {
                    const uint64_t fa = (pol & 1) ? (~signals_[ai] & mask_) : signals_[ai];
                    const uint64_t fb = (pol & 2) ? (~signals_[bi] & mask_) : signals_[bi];
                    const uint64_t f = fa & fb;
                    if (duplicate(f)) continue;
                    signals_.push_back(f);
                    ++uses_[ai];
                    ++uses_[bi];
                    const bool ok = search(steps_left - 1);
                    --uses_[ai];
                    --uses_[bi];
                    signals_.pop_back();
                    if (ok) return true;
                }
        failed_.insert(key);
        return false;
    }

    int num_vars_;
    uint64_t mask_ = 0;
    uint64_t target_ = 0;
    std::vector<uint64_t> signals_;
    std::vector<int> uses_;
    std::unordered_set<std::string> failed_;
};

inline int min_chain_size(const rrw::TruthTable& tt, int max_gates = 8)
{
    return Enumerator(tt).solve(max_gates);
}

}  // namespace chain_oracle
