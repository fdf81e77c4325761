#pragma once

#include <optional>
#include <string>
#include <unordered_map>

#include "rrw/candidate.hpp"
#include "rrw/cone.hpp"
#include "rrw/truth_table.hpp"

namespace rrw {

/// Exact NPN canonicalization for up to 4 inputs: the numerically smallest
/// table over all n! * 2^(n+1) transforms, with a transform t satisfying
/// apply_npn_transform(tt, t) == canonical.
std::pair<TruthTable, NpnTransform> npn_canonicalize(const TruthTable& tt);

/// Number of NPN classes over all functions of n inputs (n <= 4).
size_t npn_class_count(int n);

/// Precomputed size-optimal chains keyed by canonical class, per arity.
class NpnDatabase {
public:
    struct Entry {
        Chain chain;
        int size = 0;
        int depth = 0;
    };

    /// Loads the cache file when its version header matches, otherwise builds
    /// from exact synthesis and saves. budget_seconds <= 0 removes the
    /// per-class time limit.
    static NpnDatabase obtain(const std::string& cache_path, int max_n = 4,
                              double budget_seconds = 0.0);
    static NpnDatabase build(int max_n, double budget_seconds = 0.0);
    static std::optional<NpnDatabase> load(const std::string& path);
    void save(const std::string& path) const;

    const Entry* lookup(int n, const TruthTable& canonical) const;
    size_t num_classes(int n) const { return classes_[n].size(); }
    int max_n() const { return max_n_; }

private:
    static constexpr int kMaxDbArity = 4;
    int max_n_ = 0;
    std::array<std::unordered_map<TruthTable, Entry, TruthTableHash>, kMaxDbArity + 1> classes_;
};

/// NPN node-rewriting action: canonicalize the cone function, look up the
/// optimal chain, return it with the inverse transform as port matching.
/// Empty when the cone's input size is outside [2,4].
std::optional<RewriteCandidate> npn_rewrite_candidate(const Aig& net, const Cone& cone,
                                                      const NpnDatabase& db);

}  // namespace rrw
