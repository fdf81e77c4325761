#include "rrw/npn.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rrw/exact.hpp"

namespace rrw {

namespace {

constexpr int kMaxNpnArity = 4;

struct CanonConfig {
    std::array<uint8_t, 16> qmap;  // result bit p reads tt bit qmap[p]
    NpnTransform t;
};

// All n! * 2^n permutation/input-phase configs; output phase is applied as a
// word complement during scanning.
const std::vector<CanonConfig>& canon_configs(int n)
{
    static std::vector<CanonConfig> cache[kMaxNpnArity + 1];
    auto& configs = cache[n];
    if (!configs.empty()) return configs;

    std::array<uint8_t, 16> perm{};
    std::vector<uint8_t> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = (uint8_t)i;
    do {
        for (uint32_t mask = 0; mask < (1u << n); ++mask) {
            CanonConfig cfg;
            cfg.t = NpnTransform::identity(n);
            for (int i = 0; i < n; ++i) cfg.t.perm[i] = idx[i];
            cfg.t.input_phase = mask;
            for (uint32_t p = 0; p < (1u << n); ++p) {
                uint32_t q = 0;
                for (int j = 0; j < n; ++j) {
                    uint32_t b = (p >> idx[j]) & 1;
                    b ^= (mask >> j) & 1;
                    q |= b << j;
                }
                cfg.qmap[p] = (uint8_t)q;
            }
            configs.push_back(cfg);
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    (void)perm;
    return configs;
}

uint64_t apply_config(uint64_t w, const CanonConfig& cfg, int n)
{
    uint64_t r = 0;
    for (uint32_t p = 0; p < (1u << n); ++p) r |= ((w >> cfg.qmap[p]) & 1) << p;
    return r;
}

const char* kDbMagic = "rrw-npn-db v1 bitorder=var0-lsb";

}  // namespace

std::pair<TruthTable, NpnTransform> npn_canonicalize(const TruthTable& tt)
{
    const int n = tt.num_vars();
    if (n > kMaxNpnArity)
        throw UnsupportedArity("exact NPN canonicalization supports up to 4 inputs");
    const uint64_t bits_mask = (n == 0) ? 1 : ((1ull << (1u << n)) - 1);
    const uint64_t w = tt.word(0);

    uint64_t best = ~0ull;
    NpnTransform best_t;
    for (const CanonConfig& cfg : canon_configs(n)) {
        const uint64_t r = apply_config(w, cfg, n);
        if (r < best) {
            best = r;
            best_t = cfg.t;
            best_t.output_phase = false;
        }
        const uint64_t rc = ~r & bits_mask;
        if (rc < best) {
            best = rc;
            best_t = cfg.t;
            best_t.output_phase = true;
        }
    }
    return {TruthTable::from_word(best, n), best_t};
}

size_t npn_class_count(int n)
{
    std::unordered_map<uint64_t, char> seen;
    const uint64_t num_functions = 1ull << (1u << n);
    const auto& configs = canon_configs(n);
    const uint64_t bits_mask = (n == 0) ? 1 : ((1ull << (1u << n)) - 1);
    for (uint64_t w = 0; w < num_functions; ++w) {
        uint64_t best = ~0ull;
        for (const CanonConfig& cfg : configs) {
            const uint64_t r = apply_config(w, cfg, n);
            best = std::min(best, r);
            best = std::min(best, ~r & bits_mask);
        }
        seen.emplace(best, 0);
    }
    return seen.size();
}

NpnDatabase NpnDatabase::build(int max_n, double budget_seconds)
{
    NpnDatabase db;
    db.max_n_ = max_n;
    ExactOptions opts;
    opts.budget_seconds = budget_seconds;
    for (int n = 2; n <= max_n; ++n) {
        const uint64_t num_functions = 1ull << (1u << n);
        for (uint64_t w = 0; w < num_functions; ++w) {
            const auto [canon, t] = npn_canonicalize(TruthTable::from_word(w, n));
            if (db.classes_[n].count(canon)) continue;
            auto chain = exact_synthesize(canon, opts);
            if (!chain)
                throw std::logic_error("npn database build failed for class " + canon.to_hex());
            Entry e;
            e.chain = *chain;
            e.size = chain->size();
            e.depth = chain->depth();
            db.classes_[n].emplace(canon, std::move(e));
        }
    }
    return db;
}

std::optional<NpnDatabase> NpnDatabase::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string header;
    if (!std::getline(in, header)) return std::nullopt;
    std::istringstream hs(header);
    std::string magic_a, magic_b, magic_c;
    int max_n = 0;
    hs >> magic_a >> magic_b >> magic_c >> max_n;
    if (magic_a + " " + magic_b + " " + magic_c != kDbMagic || max_n < 2) return std::nullopt;

    NpnDatabase db;
    db.max_n_ = max_n;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int n = 0, size = 0, depth = 0;
        std::string hex;
        if (!(ls >> n >> hex >> size >> depth)) return std::nullopt;
        std::string rest;
        std::getline(ls, rest);
        Entry e;
        e.chain = Chain::decode(n, size, rest);
        e.size = size;
        e.depth = depth;
        const TruthTable key = TruthTable::from_hex(hex, n);
        if (e.chain.simulate() != key) return std::nullopt;  // corrupted cache
        db.classes_[n].emplace(key, std::move(e));
    }
    return db;
}

void NpnDatabase::save(const std::string& path) const
{
    std::ofstream out(path);
    out << kDbMagic << ' ' << max_n_ << '\n';
    for (int n = 2; n <= max_n_; ++n) {
        std::vector<const TruthTable*> keys;
        for (const auto& [tt, e] : classes_[n]) keys.push_back(&tt);
        std::sort(keys.begin(), keys.end(),
                  [](const TruthTable* a, const TruthTable* b) { return a->less(*b); });
        for (const TruthTable* tt : keys) {
            const Entry& e = classes_[n].at(*tt);
            out << n << ' ' << tt->to_hex() << ' ' << e.size << ' ' << e.depth << ' '
                << e.chain.encode() << '\n';
        }
    }
}

NpnDatabase NpnDatabase::obtain(const std::string& cache_path, int max_n, double budget_seconds)
{
    if (auto db = load(cache_path); db && db->max_n() >= max_n) return std::move(*db);
    NpnDatabase db = build(max_n, budget_seconds);
    if (!cache_path.empty()) db.save(cache_path);
    return db;
}

const NpnDatabase::Entry* NpnDatabase::lookup(int n, const TruthTable& canonical) const
{
    if (n < 2 || n > max_n_) return nullptr;
    auto it = classes_[n].find(canonical);
    return it == classes_[n].end() ? nullptr : &it->second;
}

std::optional<RewriteCandidate> npn_rewrite_candidate(const Aig& net, const Cone& cone,
                                                      const NpnDatabase& db)
{
    const int k = cone.input_size();
    if (k < 2 || k > db.max_n()) return std::nullopt;
    const TruthTable tt = simulate_cone(net, cone);
    const auto [canon, t] = npn_canonicalize(tt);
    const NpnDatabase::Entry* entry = db.lookup(k, canon);
    if (!entry) return std::nullopt;  // complete databases always hit
    RewriteCandidate cand;
    cand.chain = entry->chain;
    cand.port = invert_transform(t, k);
    return cand;
}

}  // namespace rrw
