#include "rrw/qlearn.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rrw {

const QTable::Row QTable::kZeroRow{};

void QTable::update(const Transition& tr)
{
    Row& row = rows_[tr.state];  // creates the zero row on first visit
    double best_next = 0.0;
    if (tr.next_state) {
        const Row& next = this->row(*tr.next_state);
        best_next = *std::max_element(next.begin(), next.end());
    }
    double& cell = row[(int)tr.action];
    cell = (1.0 - alpha) * cell + alpha * (tr.reward + gamma * best_next);
}

void QTable::save(const std::string& path) const
{
    std::ofstream out(path);
    std::vector<const FeatureVector*> keys;
    keys.reserve(rows_.size());
    for (const auto& [fv, row] : rows_) keys.push_back(&fv);
    std::sort(keys.begin(), keys.end(), [](const FeatureVector* a, const FeatureVector* b) {
        return a->to_csv_prefix() < b->to_csv_prefix();
    });
    for (const FeatureVector* fv : keys) {
        const Row& row = rows_.at(*fv);
        out << fv->to_csv_prefix() << ": " << row[0] << ' ' << row[1] << ' ' << row[2] << '\n';
    }
}

QTable QTable::load(const std::string& path)
{
    QTable q;
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open q-table " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const size_t colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("bad q-table line: " + line);
        const FeatureVector fv = FeatureVector::from_csv_prefix(line.substr(0, colon));
        std::istringstream vs(line.substr(colon + 1));
        Row row{};
        if (!(vs >> row[0] >> row[1] >> row[2])) throw ParseError("bad q-table line: " + line);
        q.rows_[fv] = row;
    }
    return q;
}

Action choose_action(const QTable& q, const FeatureVector& fv, const std::vector<Action>& allowed,
                     double eps, std::mt19937_64& rng)
{
    assert(!allowed.empty());
    const double draw = (double)(rng() >> 11) * 0x1.0p-53;  // uniform in [0,1)
    if (draw < eps) return allowed[rng() % allowed.size()];
    const QTable::Row& row = q.row(fv);
    Action best = allowed[0];
    for (Action a : allowed)
        if (row[(int)a] > row[(int)best]) best = a;
    return best;
}

EpisodeResult run_episode(const Aig& net_template, QTable& q, const StrategyEngines& engines,
                          const PassOptions& pass_opts, double& eps, double decay,
                          std::mt19937_64& rng)
{
    Aig net = net_template;
    EpisodeResult result;

    std::optional<StepInfo> pending;
    auto selector = [&](const FeatureVector& fv,
                        const std::vector<Action>& allowed) -> std::optional<Action> {
        return choose_action(q, fv, allowed, eps, rng);
    };
    auto observer = [&](const StepInfo& step) {
        if (pending) {
            Transition tr{pending->fv, pending->action, (double)pending->reward, step.fv};
            q.update(tr);
            result.transitions.push_back(std::move(tr));
        }
        pending = step;
        eps *= decay;
    };

    const PassStats stats = rewrite_pass(net, engines, selector, pass_opts, observer);

    if (pending) {
        // Terminal bonus: the episode's total size gain.
        const double bonus = (double)stats.initial_size - (double)stats.final_size;
        Transition tr{pending->fv, pending->action, (double)pending->reward + bonus,
                      std::nullopt};
        q.update(tr);
        result.transitions.push_back(std::move(tr));
    }
    result.cost = stats.final_size;
    return result;
}

void Dataset::save_csv(const std::string& path) const
{
    std::ofstream out(path);
    out << "is_critical,input_size,node_size,fanout_size,positive_edges,negative_edges,max_depth,"
           "label\n";
    for (const auto& [fv, label] : rows) out << fv.to_csv_prefix() << ',' << (int)label << '\n';
}

Dataset Dataset::load_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open dataset " + path);
    Dataset ds;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.find("is_critical") == 0) continue;  // header
        }
        const size_t last_comma = line.rfind(',');
        if (last_comma == std::string::npos) throw ParseError("bad dataset row: " + line);
        const FeatureVector fv = FeatureVector::from_csv_prefix(line.substr(0, last_comma));
        const int label = std::stoi(line.substr(last_comma + 1));
        if (label < 0 || label >= kNumActions) throw ParseError("bad label in row: " + line);
        ds.rows.emplace_back(fv, (Action)label);
    }
    return ds;
}

Dataset generate_dataset(const QTable& q)
{
    if (q.num_states() == 0) throw EmptyTable("no episodes were run");
    Dataset ds;
    for (const auto& [fv, row] : q.rows()) {
        const std::vector<Action> allowed = possible_actions(fv);
        Action best = allowed[0];
        for (Action a : allowed)
            if (row[(int)a] > row[(int)best]) best = a;
        ds.rows.emplace_back(fv, best);
    }
    std::sort(ds.rows.begin(), ds.rows.end(), [](const auto& a, const auto& b) {
        return a.first.to_csv_prefix() < b.first.to_csv_prefix();
    });
    return ds;
}

}  // namespace rrw
