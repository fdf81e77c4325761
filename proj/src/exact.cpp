#include "rrw/exact.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rrw/npn.hpp"
#include "rrw/sat.hpp"

namespace rrw {

namespace {

std::atomic<size_t> g_synth_invocations{0};

void add_at_most_one(sat::Solver& s, const std::vector<int>& xs)
{
    if (xs.size() <= 1) return;
    int prev = 0;
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        const int aux = s.new_var();
        s.add_clause({-xs[i], aux});
        if (prev) {
            s.add_clause({-prev, aux});
            s.add_clause({-prev, -xs[i]});
        }
        prev = aux;
    }
    s.add_clause({-prev, -xs.back()});
}

struct FaninPair {
    Lit a;
    Lit b;
};

// Feasibility of an exact-size-r chain, as a propositional instance.
std::optional<Chain> try_size(const TruthTable& tt, int r, double timeout_seconds,
                              bool& out_of_budget)
{
    const int n = tt.num_vars();
    const uint32_t T = 1u << n;
    sat::Solver s;

    std::vector<std::vector<int>> f(r);
    for (int i = 0; i < r; ++i) {
        f[i].resize(T);
        for (uint32_t t = 0; t < T; ++t) f[i][t] = s.new_var();
    }

    std::vector<std::vector<FaninPair>> pairs(r);
    std::vector<std::vector<int>> sel(r);
    std::vector<std::unordered_map<uint64_t, int>> pair_var(r);
    for (int i = 0; i < r; ++i) {
        const int m = n + i;
        for (int an = 1; an <= m; ++an)
            for (int ac = 0; ac < 2; ++ac)
                for (int bn = an + 1; bn <= m; ++bn)
                    for (int bc = 0; bc < 2; ++bc) {
                        pairs[i].push_back({Lit((uint32_t)an, ac != 0), Lit((uint32_t)bn, bc != 0)});
                        sel[i].push_back(s.new_var());
                        const uint64_t key =
                            ((uint64_t)pairs[i].back().a.data() << 32) | pairs[i].back().b.data();
                        pair_var[i].emplace(key, sel[i].back());
                    }
        s.add_clause(sel[i]);
        add_at_most_one(s, sel[i]);
    }

    const int out_comp = s.new_var();

    // Value of a chain literal on input assignment t: inputs are constants,
    // steps are (possibly negated) f variables.
    auto lit_value = [&](Lit l, uint32_t t, bool& is_const, bool& const_val) -> int {
        if (l.node() <= (uint32_t)n) {
            is_const = true;
            const_val = ((((t >> (l.node() - 1)) & 1) != 0) != l.comp());
            return 0;
        }
        is_const = false;
        const int v = f[l.node() - (uint32_t)n - 1][t];
        return l.comp() ? -v : v;
    };

    for (int i = 0; i < r; ++i) {
        for (size_t p = 0; p < pairs[i].size(); ++p) {
            const int sp = sel[i][p];
            for (uint32_t t = 0; t < T; ++t) {
                const int ft = f[i][t];
                bool ca, cb, va, vb;
                const int la = lit_value(pairs[i][p].a, t, ca, va);
                const int lb = lit_value(pairs[i][p].b, t, cb, vb);
                if (ca && cb) {
                    s.add_clause({-sp, (va && vb) ? ft : -ft});
                } else if (ca || cb) {
                    const bool cval = ca ? va : vb;
                    const int lv = ca ? lb : la;
                    if (!cval) {
                        s.add_clause({-sp, -ft});
                    } else {
                        s.add_clause({-sp, -ft, lv});
                        s.add_clause({-sp, ft, -lv});
                    }
                } else {
                    s.add_clause({-sp, -ft, la});
                    s.add_clause({-sp, -ft, lb});
                    s.add_clause({-sp, ft, -la, -lb});
                }
            }
        }
    }

    // Every step but the last feeds some later step.
    for (int i = 0; i + 1 < r; ++i) {
        std::vector<int> users;
        const uint32_t node = (uint32_t)(n + 1 + i);
        for (int j = i + 1; j < r; ++j)
            for (size_t p = 0; p < pairs[j].size(); ++p)
                if (pairs[j][p].a.node() == node || pairs[j][p].b.node() == node)
                    users.push_back(sel[j][p]);
        s.add_clause(users);
    }

    // Two steps never compute the same fanin pair (a duplicate would imply a
    // shorter chain, impossible at the minimal size being probed).
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (size_t p = 0; p < pairs[i].size(); ++p) {
                const uint64_t key = ((uint64_t)pairs[i][p].a.data() << 32) | pairs[i][p].b.data();
                if (auto it = pair_var[j].find(key); it != pair_var[j].end())
                    s.add_clause({-sel[i][p], -it->second});
            }

    for (uint32_t t = 0; t < T; ++t) {
        const int ft = f[r - 1][t];
        if (tt.bit(t)) {
            s.add_clause({ft, out_comp});
            s.add_clause({-ft, -out_comp});
        } else {
            s.add_clause({ft, -out_comp});
            s.add_clause({-ft, out_comp});
        }
    }

    const auto res = s.solve(-1, timeout_seconds);
    if (res == sat::Solver::Result::Unknown) {
        out_of_budget = true;
        return std::nullopt;
    }
    if (res == sat::Solver::Result::Unsat) return std::nullopt;

    Chain chain;
    chain.num_inputs = n;
    for (int i = 0; i < r; ++i) {
        bool found = false;
        for (size_t p = 0; p < pairs[i].size(); ++p) {
            if (s.model_value(sel[i][p])) {
                chain.steps.push_back({pairs[i][p].a, pairs[i][p].b});
                found = true;
                break;
            }
        }
        assert(found);
        (void)found;
    }
    chain.out = Lit((uint32_t)(n + r), s.model_value(out_comp));
    if (chain.simulate() != tt)
        throw std::logic_error("exact synthesis decoded a chain that does not match its spec");
    return chain;
}

}  // namespace

size_t exact_synth_invocations() { return g_synth_invocations.load(); }

std::optional<Chain> exact_synthesize(const TruthTable& tt, const ExactOptions& opts)
{
    const int n = tt.num_vars();
    if (n > kMaxExactVars)
        throw UnsupportedArity("exact synthesis supports up to 5 inputs, got " + std::to_string(n));

    Chain trivial;
    trivial.num_inputs = n;
    if (tt.is_const0()) {
        trivial.out = Lit::zero();
        return trivial;
    }
    if (tt.is_const1()) {
        trivial.out = Lit::one();
        return trivial;
    }
    for (int i = 0; i < n; ++i) {
        const TruthTable proj = TruthTable::projection(i, n);
        if (tt == proj || tt == ~proj) {
            trivial.out = Lit((uint32_t)i + 1, tt != proj);
            return trivial;
        }
    }

    ++g_synth_invocations;
    const auto start = std::chrono::steady_clock::now();
    for (int r = 1; r <= opts.max_gates; ++r) {
        double remaining = -1.0;
        if (opts.budget_seconds > 0) {
            const double spent =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            remaining = opts.budget_seconds - spent;
            if (remaining <= 0) return std::nullopt;
        }
        bool out_of_budget = false;
        if (auto chain = try_size(tt, r, remaining, out_of_budget)) return chain;
        if (out_of_budget) return std::nullopt;
    }
    return std::nullopt;
}

std::pair<TruthTable, NpnTransform> semi_canonical5(const TruthTable& tt)
{
    const int n = tt.num_vars();
    TruthTable best;
    NpnTransform best_t;
    bool have_best = false;
    for (int out_ph = 0; out_ph < 2; ++out_ph) {
        for (uint32_t mask = 0; mask < (1u << n); ++mask) {
            NpnTransform t1 = NpnTransform::identity(n);
            t1.input_phase = mask;
            t1.output_phase = out_ph != 0;
            const TruthTable phased = apply_npn_transform(tt, t1);

            std::vector<uint32_t> count(n);
            for (int v = 0; v < n; ++v) count[v] = phased.cofactor(v, true).popcount();
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return count[a] < count[b]; });
            NpnTransform t2 = NpnTransform::identity(n);
            for (int i = 0; i < n; ++i) t2.perm[order[i]] = (uint8_t)i;

            const NpnTransform total = compose_transforms(t1, t2, n);
            const TruthTable cand = apply_npn_transform(tt, total);
            if (!have_best || cand.less(best)) {
                best = cand;
                best_t = total;
                have_best = true;
            }
        }
    }
    return {best, best_t};
}

ExactCache::ExactCache(std::string path) : path_(std::move(path))
{
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int n = 0, size = 0;
        std::string hex;
        if (!(ls >> n >> hex >> size)) throw ParseError("bad cache record: " + line);
        std::string rest;
        std::getline(ls, rest);
        const Chain chain = Chain::decode(n, size, rest);
        entries_[Key{n, TruthTable::from_hex(hex, n)}] = chain;
    }
}

const Chain* ExactCache::lookup(int num_inputs, const TruthTable& key) const
{
    auto it = entries_.find(Key{num_inputs, key});
    return it == entries_.end() ? nullptr : &it->second;
}

void ExactCache::insert(int num_inputs, const TruthTable& key, const Chain& chain)
{
    assert(chain.simulate() == key);
    const auto [it, fresh] = entries_.emplace(Key{num_inputs, key}, chain);
    if (!fresh || path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    out << num_inputs << ' ' << key.to_hex() << ' ' << chain.size() << ' ' << chain.encode()
        << '\n';
}

std::optional<RewriteCandidate> exact_rewrite_candidate(const Aig& net, const Cone& cone,
                                                        ExactCache& cache,
                                                        const ExactOptions& opts)
{
    const int k = cone.input_size();
    if (k < 2 || k > kMaxExactVars) return std::nullopt;
    const TruthTable tt = simulate_cone(net, cone);

    auto [key, t] = k <= 4 ? npn_canonicalize(tt) : semi_canonical5(tt);
    RewriteCandidate cand;
    cand.port = invert_transform(t, k);
    if (const Chain* hit = cache.lookup(k, key)) {
        cand.chain = *hit;
        return cand;
    }
    auto chain = exact_synthesize(key, opts);
    if (!chain) return std::nullopt;
    cache.insert(k, key, *chain);
    cand.chain = *chain;
    return cand;
}

}  // namespace rrw
