#pragma once

#include <optional>
#include <string>
#include <unordered_map>

#include "rrw/candidate.hpp"
#include "rrw/cone.hpp"

namespace rrw {

constexpr int kMaxExactVars = 5;

struct ExactOptions {
    int max_gates = 12;
    double budget_seconds = 0.5;  // <= 0: no time limit
};

/// Minimum-size AND chain realizing tt (up to 5 inputs), found by iterative
/// deepening on the gate count with a propositional feasibility check per
/// size. Returns nothing when no chain exists within max_gates or the time
/// budget ran out before minimality was decided.
std::optional<Chain> exact_synthesize(const TruthTable& tt, const ExactOptions& opts = {});

/// Number of searches that actually ran (cache hits do not count).
size_t exact_synth_invocations();

/// Semi-canonical key for 5-input functions: smallest table over output
/// phase x input phases x the permutation sorting positive-cofactor
/// popcounts. Returns the key and a transform t with apply(tt, t) == key.
std::pair<TruthTable, NpnTransform> semi_canonical5(const TruthTable& tt);

/// Map from (arity, canonical table) to an optimal chain, backed by an
/// append-only text file when a path is given.
class ExactCache {
public:
    ExactCache() = default;
    explicit ExactCache(std::string path);

    const Chain* lookup(int num_inputs, const TruthTable& key) const;
    void insert(int num_inputs, const TruthTable& key, const Chain& chain);
    size_t size() const { return entries_.size(); }

private:
    struct Key {
        int n;
        TruthTable tt;
        bool operator==(const Key& o) const { return n == o.n && tt == o.tt; }
    };
    struct KeyHash {
        size_t operator()(const Key& k) const { return k.tt.hash() * 31 + (size_t)k.n; }
    };
    std::unordered_map<Key, Chain, KeyHash> entries_;
    std::string path_;
};

/// Exact-synthesis action for cones with 2..5 inputs: canonicalize (exact NPN
/// up to 4 inputs, semi-canonical at 5), consult the cache, synthesize on a
/// miss. Nothing when synthesis exceeded its budget.
std::optional<RewriteCandidate> exact_rewrite_candidate(const Aig& net, const Cone& cone,
                                                        ExactCache& cache,
                                                        const ExactOptions& opts = {});

}  // namespace rrw
