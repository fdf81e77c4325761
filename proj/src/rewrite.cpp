#include "rrw/rewrite.hpp"

#include "rrw/isop.hpp"

namespace rrw {

std::optional<RewriteCandidate> StrategyEngines::make(Action a, const Aig& net,
                                                      const Cone& cone) const
{
    const int k = cone.input_size();
    switch (a) {
    case Action::Isop:
        if (k < 2 || k > 10) throw std::logic_error("isop action outside [2,10]");
        return isop_rewrite_candidate(net, cone);
    case Action::Exact:
        if (k < 2 || k > 5) throw std::logic_error("exact action outside [2,5]");
        if (!exact_cache) throw std::logic_error("exact action without a cache");
        return exact_rewrite_candidate(net, cone, *exact_cache, exact_opts);
    case Action::Npn:
        if (k < 2 || k > 4) throw std::logic_error("npn action outside [2,4]");
        if (!npn_db) throw std::logic_error("npn action without a database");
        return npn_rewrite_candidate(net, cone, *npn_db);
    }
    return std::nullopt;
}

PassStats rewrite_pass(Aig& net, const StrategyEngines& engines, const ActionSelector& select,
                       const PassOptions& opt, const StepObserver& observe)
{
    PassStats stats;
    net.remove_dead_nodes();
    net.compute_levels();
    stats.initial_size = net.size();
    stats.initial_depth = net.depth();

    TimingView timing;
    timing.refresh_interval = opt.refresh_interval;
    timing.full_refresh(net);

    std::vector<uint32_t> worklist;
    for (uint32_t idx : net.topological_order())
        if (net.is_and(idx)) worklist.push_back(idx);

    for (size_t w = 0; w < worklist.size(); ++w) {
        const uint32_t root = worklist[w];
        if (net.is_dead(root) || !net.is_and(root) || net.ref_count(root) == 0) continue;

        const Cone cone = reconvergence_driven_cut(net, root, opt.max_leaves);
        if (!cone.rewritable()) continue;
        ++stats.nodes_visited;

        static const std::vector<char> no_mask;
        FeatureVector fv = extract_features(net, cone, no_mask);
        fv.is_critical = timing.is_critical(net, root) ? 1 : 0;
        const std::vector<Action> allowed = possible_actions(fv);
        const std::optional<Action> chosen = select(fv, allowed);
        if (!chosen) continue;
        const Action action = *chosen;
        if (std::find(allowed.begin(), allowed.end(), action) == allowed.end())
            throw std::logic_error("selector returned an action outside its range");

        ++stats.tried[(int)action];
        StepInfo step;
        step.fv = fv;
        step.action = action;

        std::optional<RewriteCandidate> cand = engines.make(action, net, cone);
        if (cand) {
            EvalOptions eval_opts;
            eval_opts.preserve_depth = opt.preserve_depth;
            eval_opts.allow_zero_gain = opt.allow_zero_gain;
            eval_opts.timing = &timing;
            const EvalDecision decision = evaluate(net, cone, *cand, eval_opts);
            if (decision.accepted) {
                const int64_t old_require = timing.require(root);
                const size_t nodes_before = net.num_nodes();
                Lit new_root;
                const int realized = replace(net, cone, *cand, &new_root);
                assert(realized == decision.gain);
                (void)realized;
                timing.after_replace(net, new_root.node(), old_require);
                ++stats.accepted[(int)action];
                ++stats.rewrites;
                ++stats.verified_commits;
                step.reward = decision.gain;
                step.accepted = true;
                if (opt.revisit_new)
                    for (uint32_t idx = (uint32_t)nodes_before; idx < net.num_nodes(); ++idx)
                        if (net.is_and(idx) && !net.is_dead(idx)) worklist.push_back(idx);
            }
        }
        if (observe) observe(step);
    }

    net.remove_dead_nodes();
    net.compute_levels();
    stats.final_size = net.size();
    stats.final_depth = net.depth();
    return stats;
}

ActionSelector make_fixed_selector(Action a)
{
    return [a](const FeatureVector&, const std::vector<Action>& allowed) -> std::optional<Action> {
        if (std::find(allowed.begin(), allowed.end(), a) == allowed.end()) return std::nullopt;
        return a;
    };
}

ActionSelector make_random_selector(std::mt19937_64& rng)
{
    return [&rng](const FeatureVector&,
                  const std::vector<Action>& allowed) -> std::optional<Action> {
        return allowed[rng() % allowed.size()];
    };
}

}  // namespace rrw
