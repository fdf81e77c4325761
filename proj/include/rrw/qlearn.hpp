#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>

#include "rrw/rewrite.hpp"
#include "rrw/strategy.hpp"

namespace rrw {

struct Transition {
    FeatureVector state;
    Action action = Action::Isop;
    double reward = 0.0;
    std::optional<FeatureVector> next_state;  // absent exactly at episode end
};

/// Tabular state-action values over visited feature states.
class QTable {
public:
    using Row = std::array<double, kNumActions>;

    double alpha = 0.1;
    double gamma = 0.9;

    const Row& row(const FeatureVector& fv) const
    {
        auto it = rows_.find(fv);
        return it == rows_.end() ? kZeroRow : it->second;
    }

    /// Q(s,a) <- (1-alpha) Q(s,a) + alpha (r + gamma max_a' Q(s',a')),
    /// with the max term 0 on terminal transitions.
    void update(const Transition& tr);

    size_t num_states() const { return rows_.size(); }
    const std::unordered_map<FeatureVector, Row, FeatureVectorHash>& rows() const
    {
        return rows_;
    }

    /// One line per state: "f1,...,f7: q0 q1 q2".
    void save(const std::string& path) const;
    static QTable load(const std::string& path);

private:
    static const Row kZeroRow;
    std::unordered_map<FeatureVector, Row, FeatureVectorHash> rows_;
};

/// Epsilon-greedy over the allowed actions; greedy ties break to the lowest
/// action code.
Action choose_action(const QTable& q, const FeatureVector& fv, const std::vector<Action>& allowed,
                     double eps, std::mt19937_64& rng);

struct EpisodeResult {
    size_t cost = 0;  // final network size
    std::vector<Transition> transitions;
};

/// One training episode: deep-copies the template, walks rewritable nodes,
/// chooses actions epsilon-greedily, rewards realized size gains, updates the
/// Q-table online and adds the episode's total size gain to the final
/// transition before its terminal update. eps decays by `decay` per step and
/// persists across episodes.
EpisodeResult run_episode(const Aig& net_template, QTable& q, const StrategyEngines& engines,
                          const PassOptions& pass_opts, double& eps, double decay,
                          std::mt19937_64& rng);

struct Dataset {
    std::vector<std::pair<FeatureVector, Action>> rows;

    void save_csv(const std::string& path) const;
    static Dataset load_csv(const std::string& path);
};

/// One row per visited state, labeled with the argmax of its row restricted
/// to the allowed actions. Throws EmptyTable when no episodes were run.
Dataset generate_dataset(const QTable& q);

}  // namespace rrw
