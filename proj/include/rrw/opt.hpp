#pragma once

#include <string>

#include "rrw/mlp.hpp"
#include "rrw/rewrite.hpp"

namespace rrw {

enum class StrategyMode { Isop, Exact, Npn, Random, Adaptive };

StrategyMode strategy_mode_from_name(const std::string& name);
const char* strategy_mode_name(StrategyMode mode);

struct OptOptions {
    StrategyMode mode = StrategyMode::Isop;
    bool preserve_depth = false;
    bool zero_gain = false;
    bool revisit_new = false;
    uint64_t seed = 1;
    ExactOptions exact;
};

/// Per-circuit run report; improvement% = (initial - final) / initial * 100.
struct RunReport {
    std::string circuit;
    std::string strategy;
    size_t size0 = 0, size1 = 0;
    uint32_t depth0 = 0, depth1 = 0;
    std::array<size_t, kNumActions> tried{};
    std::array<size_t, kNumActions> accepted{};
    size_t rewrites = 0;
    size_t verified_commits = 0;
    double wall_seconds = 0;

    double size_improvement_pct() const
    {
        return size0 ? 100.0 * (double)(size0 - size1) / (double)size0 : 0.0;
    }
    double depth_improvement_pct() const
    {
        return depth0 ? 100.0 * (double)(depth0 - depth1) / (double)depth0 : 0.0;
    }
    std::string result_line() const;   // machine-readable RESULT line
    std::string human_table() const;
};

/// One full rewriting pass in the given mode. The NPN database is required
/// for the npn/random/adaptive modes; model may be null (rule fallback).
RunReport run_opt(Aig& net, const std::string& circuit_name, const OptOptions& opts,
                  const NpnDatabase* db, ExactCache* cache, const MlpModel* model);

struct StatsReport {
    size_t size = 0;
    uint32_t depth = 0;
    std::array<size_t, kMaxTruthVars + 1> input_size_histogram{};
    size_t rewritable_nodes = 0;
    std::string human_table() const;
};

/// Read-only cone scan: per-node reconvergence cones and their input sizes.
StatsReport stats_report(const Aig& net);

}  // namespace rrw
