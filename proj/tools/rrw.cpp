#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rrw/aiger.hpp"
#include "rrw/benchgen.hpp"
#include "rrw/cec.hpp"
#include "rrw/opt.hpp"
#include "rrw/qlearn.hpp"

namespace {

struct CommonPaths {
    std::string npn_db = "rrw_npn4.db";
    std::string exact_cache = "rrw_exact_cache.txt";
};

rrw::AigerVariant variant_for(const std::string& path)
{
    return path.size() >= 4 && path.substr(path.size() - 4) == ".aag" ? rrw::AigerVariant::Ascii
                                                                      : rrw::AigerVariant::Binary;
}

std::string circuit_name(const std::string& path)
{
    return std::filesystem::path(path).stem().string();
}

int cmd_opt(const std::string& in, const std::string& out, const std::string& strategy,
            const std::string& model_path, bool preserve_depth, bool zero_gain, bool revisit_new,
            uint64_t seed, const CommonPaths& paths)
{
    rrw::AigerDoc doc = rrw::read_aiger_file(in);

    rrw::OptOptions opts;
    opts.mode = rrw::strategy_mode_from_name(strategy);
    opts.preserve_depth = preserve_depth;
    opts.zero_gain = zero_gain;
    opts.revisit_new = revisit_new;
    opts.seed = seed;

    std::optional<rrw::NpnDatabase> db;
    if (opts.mode != rrw::StrategyMode::Isop && opts.mode != rrw::StrategyMode::Exact)
        db = rrw::NpnDatabase::obtain(paths.npn_db);
    rrw::ExactCache cache(paths.exact_cache);

    std::optional<rrw::MlpModel> model;
    if (opts.mode == rrw::StrategyMode::Adaptive && !model_path.empty())
        model = rrw::MlpModel::load(model_path);

    const rrw::RunReport report =
        rrw::run_opt(doc.net, circuit_name(in), opts, db ? &*db : nullptr, &cache,
                     model ? &*model : nullptr);

    if (!out.empty()) rrw::write_aiger_file(out, doc, variant_for(out));
    std::cout << report.human_table();
    std::cout << report.result_line() << "\n";
    return 0;
}

int cmd_dse(const std::string& in, int runs, uint64_t seed, const std::string& out,
            const CommonPaths& paths)
{
    const rrw::AigerDoc doc = rrw::read_aiger_file(in);
    const rrw::NpnDatabase db = rrw::NpnDatabase::obtain(paths.npn_db);
    rrw::ExactCache cache(paths.exact_cache);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        os = &file;
    }
    *os << "run_id,size,depth\n";
    for (int run = 0; run < runs; ++run) {
        rrw::Aig net = doc.net;
        rrw::OptOptions opts;
        opts.mode = rrw::StrategyMode::Random;
        opts.seed = seed + (uint64_t)run * 0x9e3779b97f4a7c15ull;
        const rrw::RunReport report = rrw::run_opt(net, circuit_name(in), opts, &db, &cache, nullptr);
        *os << run << ',' << report.size1 << ',' << report.depth1 << "\n";
    }
    return 0;
}

int cmd_train_q(const std::string& in, int episodes, double alpha, double gamma, double eps0,
                double decay, uint64_t seed, const std::string& out_qtable,
                const std::string& out_dataset, const CommonPaths& paths)
{
    const rrw::AigerDoc doc = rrw::read_aiger_file(in);
    const rrw::NpnDatabase db = rrw::NpnDatabase::obtain(paths.npn_db);
    rrw::ExactCache cache(paths.exact_cache);

    rrw::StrategyEngines engines;
    engines.npn_db = &db;
    engines.exact_cache = &cache;

    rrw::QTable q;
    q.alpha = alpha;
    q.gamma = gamma;
    rrw::PassOptions pass;
    std::mt19937_64 rng(seed);
    double eps = eps0;
    for (int ep = 0; ep < episodes; ++ep) {
        const rrw::EpisodeResult r = rrw::run_episode(doc.net, q, engines, pass, eps, decay, rng);
        std::cout << "EPISODE " << ep << " cost=" << r.cost << " eps=" << eps
                  << " states=" << q.num_states() << "\n";
    }
    if (!out_qtable.empty()) q.save(out_qtable);
    if (!out_dataset.empty()) rrw::generate_dataset(q).save_csv(out_dataset);
    return 0;
}

int cmd_train_mlp(const std::string& dataset_path, const std::string& out_model, int epochs,
                  double lr, double dropout, uint64_t seed)
{
    const rrw::Dataset ds = rrw::Dataset::load_csv(dataset_path);
    rrw::MlpTrainParams params;
    params.epochs = epochs;
    params.lr = lr;
    params.dropout = dropout;
    params.seed = seed;
    const auto [model, accuracy] = rrw::mlp_train(ds, params);
    if (!out_model.empty()) model.save(out_model);
    std::cout << "ACCURACY " << accuracy << "\n";
    return 0;
}

int cmd_stats(const std::string& in)
{
    const rrw::AigerDoc doc = rrw::read_aiger_file(in);
    std::cout << rrw::stats_report(doc.net).human_table();
    return 0;
}

int cmd_cec(const std::string& a_path, const std::string& b_path, uint64_t vectors, uint64_t seed)
{
    const rrw::AigerDoc a = rrw::read_aiger_file(a_path);
    const rrw::AigerDoc b = rrw::read_aiger_file(b_path);
    try {
        const rrw::CecResult res = rrw::check_equivalence(a.net, b.net, vectors, seed);
        switch (res.status) {
        case rrw::CecStatus::Equivalent:
            std::cout << "EQUIVALENT (exhaustive, " << res.vectors_used << " vectors)\n";
            return 0;
        case rrw::CecStatus::LikelyEquivalent:
            std::cout << "LIKELY EQUIVALENT (" << res.vectors_used << " random vectors)\n";
            return 0;
        case rrw::CecStatus::Counterexample: {
            std::cout << "COUNTEREXAMPLE at output " << res.cex_po << ", inputs ";
            for (bool v : res.cex_inputs) std::cout << (v ? '1' : '0');
            std::cout << "\n";
            return 1;
        }
        }
    } catch (const rrw::InterfaceMismatch& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reconvergence-driven AIG rewriting with multi-strategy selection"};
    app.require_subcommand(1);
    CommonPaths paths;

    // opt
    auto* opt = app.add_subcommand("opt", "Optimize a circuit with one rewriting pass");
    std::string opt_in, opt_out, opt_strategy = "adaptive", opt_model;
    bool opt_preserve_depth = false, opt_zero_gain = false, opt_revisit_new = false;
    uint64_t opt_seed = 1;
    opt->add_option("--in", opt_in, "input AIGER file")->required();
    opt->add_option("--out", opt_out, "output AIGER file");
    opt->add_option("--strategy", opt_strategy, "isop|exact|npn|random|adaptive");
    opt->add_option("--model", opt_model, "classifier model file (adaptive)");
    opt->add_flag("--preserve-depth", opt_preserve_depth, "reject rewrites with negative slack");
    opt->add_flag("--zero-gain", opt_zero_gain, "accept zero-gain rewrites");
    opt->add_flag("--revisit-new", opt_revisit_new, "also visit nodes created by rewrites");
    opt->add_option("--seed", opt_seed, "random seed");
    opt->add_option("--npn-db", paths.npn_db, "NPN database cache file");
    opt->add_option("--exact-cache", paths.exact_cache, "exact-synthesis cache file");

    // dse
    auto* dse = app.add_subcommand("dse", "Random-strategy design-space exploration");
    std::string dse_in, dse_out;
    int dse_runs = 1000;
    uint64_t dse_seed = 1;
    dse->add_option("--in", dse_in)->required();
    dse->add_option("--runs", dse_runs);
    dse->add_option("--seed", dse_seed);
    dse->add_option("--out", dse_out, "CSV output path (default stdout)");
    dse->add_option("--npn-db", paths.npn_db);
    dse->add_option("--exact-cache", paths.exact_cache);

    // train-q
    auto* trainq = app.add_subcommand("train-q", "Tabular Q-learning over rewriting episodes");
    std::string tq_in, tq_qtable, tq_dataset;
    int tq_episodes = 100;
    double tq_alpha = 0.1, tq_gamma = 0.9, tq_eps0 = 1.0, tq_decay = 0.995;
    uint64_t tq_seed = 1;
    trainq->add_option("--in", tq_in)->required();
    trainq->add_option("--episodes", tq_episodes);
    trainq->add_option("--alpha", tq_alpha);
    trainq->add_option("--gamma", tq_gamma);
    trainq->add_option("--eps0", tq_eps0);
    trainq->add_option("--decay", tq_decay);
    trainq->add_option("--seed", tq_seed);
    trainq->add_option("--out-qtable", tq_qtable);
    trainq->add_option("--out-dataset", tq_dataset);
    trainq->add_option("--npn-db", paths.npn_db);
    trainq->add_option("--exact-cache", paths.exact_cache);

    // train-mlp
    auto* trainm = app.add_subcommand("train-mlp", "Train the strategy classifier");
    std::string tm_dataset, tm_model;
    int tm_epochs = 10000;
    double tm_lr = 1e-3, tm_dropout = 0.2;
    uint64_t tm_seed = 1;
    trainm->add_option("--dataset", tm_dataset)->required();
    trainm->add_option("--out-model", tm_model);
    trainm->add_option("--epochs", tm_epochs);
    trainm->add_option("--lr", tm_lr);
    trainm->add_option("--dropout", tm_dropout);
    trainm->add_option("--seed", tm_seed);

    // stats
    auto* stats = app.add_subcommand("stats", "Size, depth and cone histogram");
    std::string st_in;
    stats->add_option("--in", st_in)->required();

    // cec
    auto* cec = app.add_subcommand("cec", "Equivalence evidence for two circuits");
    std::string cec_a, cec_b;
    uint64_t cec_vectors = 1000000, cec_seed = 1;
    cec->add_option("--a", cec_a)->required();
    cec->add_option("--b", cec_b)->required();
    cec->add_option("--vectors", cec_vectors);
    cec->add_option("--seed", cec_seed);

    // gen-bench (maintenance helper, hidden from the main listing)
    auto* gen = app.add_subcommand("gen-bench", "Write generated stand-in benchmarks");
    std::string gen_dir = "bench_local";
    gen->add_option("--dir", gen_dir);
    gen->group("");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(opt))
            return cmd_opt(opt_in, opt_out, opt_strategy, opt_model, opt_preserve_depth,
                           opt_zero_gain, opt_revisit_new, opt_seed, paths);
        if (app.got_subcommand(dse)) return cmd_dse(dse_in, dse_runs, dse_seed, dse_out, paths);
        if (app.got_subcommand(trainq))
            return cmd_train_q(tq_in, tq_episodes, tq_alpha, tq_gamma, tq_eps0, tq_decay, tq_seed,
                               tq_qtable, tq_dataset, paths);
        if (app.got_subcommand(trainm))
            return cmd_train_mlp(tm_dataset, tm_model, tm_epochs, tm_lr, tm_dropout, tm_seed);
        if (app.got_subcommand(stats)) return cmd_stats(st_in);
        if (app.got_subcommand(cec)) return cmd_cec(cec_a, cec_b, cec_vectors, cec_seed);
        if (app.got_subcommand(gen)) {
            for (const std::string& p : rrw::write_generated_benchmarks(gen_dir))
                std::cout << p << "\n";
            return 0;
        }
    } catch (const rrw::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
