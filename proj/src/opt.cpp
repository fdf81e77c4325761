#include "rrw/opt.hpp"

#include <chrono>
#include <sstream>

namespace rrw {

StrategyMode strategy_mode_from_name(const std::string& name)
{
    if (name == "isop") return StrategyMode::Isop;
    if (name == "exact") return StrategyMode::Exact;
    if (name == "npn") return StrategyMode::Npn;
    if (name == "random") return StrategyMode::Random;
    if (name == "adaptive") return StrategyMode::Adaptive;
    throw ParseError("unknown strategy '" + name + "'");
}

const char* strategy_mode_name(StrategyMode mode)
{
    switch (mode) {
    case StrategyMode::Isop: return "isop";
    case StrategyMode::Exact: return "exact";
    case StrategyMode::Npn: return "npn";
    case StrategyMode::Random: return "random";
    case StrategyMode::Adaptive: return "adaptive";
    }
    return "?";
}

RunReport run_opt(Aig& net, const std::string& circuit_name, const OptOptions& opts,
                  const NpnDatabase* db, ExactCache* cache, const MlpModel* model)
{
    const auto start = std::chrono::steady_clock::now();

    StrategyEngines engines;
    engines.npn_db = db;
    engines.exact_cache = cache;
    engines.exact_opts = opts.exact;

    PassOptions pass;
    pass.preserve_depth = opts.preserve_depth;
    pass.allow_zero_gain = opts.zero_gain;
    pass.revisit_new = opts.revisit_new;

    std::mt19937_64 rng(opts.seed);
    ActionSelector selector;
    switch (opts.mode) {
    case StrategyMode::Isop:
        selector = make_fixed_selector(Action::Isop);
        pass.max_leaves = 10;
        break;
    case StrategyMode::Exact:
        selector = make_fixed_selector(Action::Exact);
        pass.max_leaves = 5;
        break;
    case StrategyMode::Npn:
        selector = make_fixed_selector(Action::Npn);
        pass.max_leaves = 4;
        break;
    case StrategyMode::Random:
        selector = make_random_selector(rng);
        pass.max_leaves = 10;
        break;
    case StrategyMode::Adaptive:
        selector = [model](const FeatureVector& fv,
                           const std::vector<Action>&) -> std::optional<Action> {
            return select_strategy(model, fv);
        };
        pass.max_leaves = 10;
        break;
    }

    const PassStats stats = rewrite_pass(net, engines, selector, pass);

    RunReport report;
    report.circuit = circuit_name;
    report.strategy = strategy_mode_name(opts.mode);
    report.size0 = stats.initial_size;
    report.size1 = stats.final_size;
    report.depth0 = stats.initial_depth;
    report.depth1 = stats.final_depth;
    report.tried = stats.tried;
    report.accepted = stats.accepted;
    report.rewrites = stats.rewrites;
    report.verified_commits = stats.verified_commits;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string RunReport::result_line() const
{
    std::ostringstream s;
    s << "RESULT circuit=" << circuit << " size0=" << size0 << " size1=" << size1
      << " depth0=" << depth0 << " depth1=" << depth1;
    return s.str();
}

std::string RunReport::human_table() const
{
    std::ostringstream s;
    s << circuit << " (" << strategy << ")\n";
    s << "  size:  " << size0 << " -> " << size1 << "  (" << size_improvement_pct() << "%)\n";
    s << "  depth: " << depth0 << " -> " << depth1 << "  (" << depth_improvement_pct() << "%)\n";
    for (int a = 0; a < kNumActions; ++a) {
        s << "  " << action_name((Action)a) << ": tried " << tried[a] << ", accepted "
          << accepted[a] << "\n";
    }
    s << "  rewrites: " << rewrites << " (all " << verified_commits
      << " passed the per-cone equivalence check)\n";
    s << "  time: " << wall_seconds << " s\n";
    return s.str();
}

StatsReport stats_report(const Aig& net)
{
    StatsReport report;
    Aig copy = net;
    copy.remove_dead_nodes();
    copy.compute_levels();
    report.size = copy.size();
    report.depth = copy.depth();
    for (uint32_t idx : copy.topological_order()) {
        if (!copy.is_and(idx) || copy.ref_count(idx) == 0) continue;
        const Cone cone = reconvergence_driven_cut(copy, idx);
        if (!cone.rewritable()) continue;
        ++report.rewritable_nodes;
        ++report.input_size_histogram[std::min<size_t>(cone.leaves.size(), kMaxTruthVars)];
    }
    return report;
}

std::string StatsReport::human_table() const
{
    std::ostringstream s;
    s << "size " << size << " depth " << depth << "\n";
    s << "cone input-size histogram (rewritable nodes: " << rewritable_nodes << ")\n";
    for (size_t k = 2; k < input_size_histogram.size(); ++k)
        s << "  " << k << ": " << input_size_histogram[k] << "\n";
    return s.str();
}

}  // namespace rrw
