#pragma once

#include <array>
#include <functional>
#include <optional>
#include <random>

#include "rrw/exact.hpp"
#include "rrw/npn.hpp"
#include "rrw/replace.hpp"
#include "rrw/strategy.hpp"

namespace rrw {

/// The three candidate engines plus their shared state, used by one pass.
struct StrategyEngines {
    const NpnDatabase* npn_db = nullptr;
    ExactCache* exact_cache = nullptr;
    ExactOptions exact_opts;

    /// Dispatches to the engine for `a`. Throws std::logic_error when the
    /// cone's input size is outside the action's declared range.
    std::optional<RewriteCandidate> make(Action a, const Aig& net, const Cone& cone) const;
};

struct PassOptions {
    bool preserve_depth = false;
    bool allow_zero_gain = false;
    bool revisit_new = false;
    int max_leaves = 10;
    int refresh_interval = 50;
};

struct StepInfo {
    FeatureVector fv;
    Action action = Action::Isop;
    int reward = 0;
    bool accepted = false;
};

/// Chooses an action for a cone, or nothing to skip the node (used by the
/// fixed single-strategy modes when the cone is out of range).
using ActionSelector =
    std::function<std::optional<Action>(const FeatureVector&, const std::vector<Action>&)>;
using StepObserver = std::function<void(const StepInfo&)>;

struct PassStats {
    size_t initial_size = 0;
    size_t final_size = 0;
    uint32_t initial_depth = 0;
    uint32_t final_depth = 0;
    std::array<size_t, kNumActions> tried{};
    std::array<size_t, kNumActions> accepted{};
    size_t rewrites = 0;
    size_t verified_commits = 0;  // commits that passed the per-cone check (all of them)
    size_t nodes_visited = 0;
};

/// One topological rewriting pass: cone, features, strategy selection,
/// candidate, gain/slack gate, local replacement, dead-node removal.
PassStats rewrite_pass(Aig& net, const StrategyEngines& engines, const ActionSelector& select,
                       const PassOptions& opt, const StepObserver& observe = {});

ActionSelector make_fixed_selector(Action a);
ActionSelector make_random_selector(std::mt19937_64& rng);

}  // namespace rrw
