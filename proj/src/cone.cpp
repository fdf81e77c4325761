#include "rrw/cone.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace rrw {

namespace {

std::atomic<size_t> g_clamp_count{0};

int clamp_logged(int v, int lo, int hi)
{
    if (v < lo || v > hi) {
        ++g_clamp_count;
        return v < lo ? lo : hi;
    }
    return v;
}

}  // namespace

size_t feature_clamp_count() { return g_clamp_count.load(); }

Cone reconvergence_driven_cut(const Aig& net, uint32_t root, int max_leaves)
{
    assert(net.is_and(root) && !net.is_dead(root));
    Cone cone;
    cone.root = root;

    std::unordered_set<uint32_t> in_volume{root};
    std::unordered_set<uint32_t> in_leaves;
    auto add_leaf = [&](uint32_t n) {
        if (in_leaves.insert(n).second) cone.leaves.push_back(n);
    };
    add_leaf(net.node(root).fanin0.node());
    add_leaf(net.node(root).fanin1.node());

    while (true) {
        // Pick the expandable leaf with the fewest new leaves; prefer deep
        // leaves, then low indices.
        int best_cost = 0;
        uint32_t best_leaf = 0;
        bool have_best = false;
        for (uint32_t leaf : cone.leaves) {
            if (!net.is_and(leaf)) continue;  // PIs (and the constant) stop expansion
            int fresh = 0;
            for (Lit f : {net.node(leaf).fanin0, net.node(leaf).fanin1}) {
                const uint32_t n = f.node();
                if (!in_leaves.count(n) && !in_volume.count(n)) ++fresh;
            }
            const int cost = fresh - 1;
            if (!have_best || cost < best_cost ||
                (cost == best_cost && (net.level(leaf) > net.level(best_leaf) ||
                                       (net.level(leaf) == net.level(best_leaf) && leaf < best_leaf)))) {
                have_best = true;
                best_cost = cost;
                best_leaf = leaf;
            }
        }
        if (!have_best) break;
        if ((int)cone.leaves.size() + best_cost > max_leaves) break;

        in_leaves.erase(best_leaf);
        cone.leaves.erase(std::find(cone.leaves.begin(), cone.leaves.end(), best_leaf));
        in_volume.insert(best_leaf);
        for (Lit f : {net.node(best_leaf).fanin0, net.node(best_leaf).fanin1}) {
            const uint32_t n = f.node();
            if (!in_volume.count(n)) add_leaf(n);
        }
    }

    cone.volume.assign(in_volume.begin(), in_volume.end());
    std::sort(cone.volume.begin(), cone.volume.end(), [&](uint32_t a, uint32_t b) {
        return net.level(a) != net.level(b) ? net.level(a) < net.level(b) : a < b;
    });
    cone.mffc = constrained_mffc(net, cone);
    return cone;
}

std::vector<uint32_t> constrained_mffc(const Aig& net, const Cone& cone)
{
    // Sweep the volume from the root downward; all fanouts of a node lie at
    // higher levels, so membership is decided before the node is visited.
    std::unordered_set<uint32_t> members{cone.root};
    std::vector<uint32_t> mffc{cone.root};
    for (auto it = cone.volume.rbegin(); it != cone.volume.rend(); ++it) {
        const uint32_t v = *it;
        if (v == cone.root) continue;
        if (net.po_refs(v) > 0) continue;
        bool inside = true;
        for (uint32_t consumer : net.node(v).fanouts) {
            if (!members.count(consumer)) {
                inside = false;
                break;
            }
        }
        if (inside) {
            members.insert(v);
            mffc.push_back(v);
        }
    }
    return mffc;
}

FeatureVector extract_features(const Aig& net, const Cone& cone,
                               const std::vector<char>& critical)
{
    FeatureVector fv;
    fv.is_critical = (cone.root < critical.size() && critical[cone.root]) ? 1 : 0;
    fv.input_size = (int)cone.leaves.size();
    fv.node_size = clamp_logged((int)cone.volume.size(), 2, 16);
    uint32_t min_leaf_level = ~0u;
    for (uint32_t leaf : cone.leaves) min_leaf_level = std::min(min_leaf_level, net.level(leaf));
    fv.max_depth = (int)(net.level(cone.root) - (cone.leaves.empty() ? 0 : min_leaf_level));
    for (uint32_t v : cone.volume) {
        fv.fanout_size += (int)net.ref_count(v);
        fv.positive_edges += (net.node(v).fanin0.comp() ? 0 : 1) + (net.node(v).fanin1.comp() ? 0 : 1);
        fv.negative_edges += (net.node(v).fanin0.comp() ? 1 : 0) + (net.node(v).fanin1.comp() ? 1 : 0);
    }
    return fv;
}

TruthTable simulate_cone(const Aig& net, const Cone& cone)
{
    const int k = (int)cone.leaves.size();
    if (k > kMaxTruthVars) throw ConeTooLarge(std::to_string(k) + " leaves");

    std::unordered_map<uint32_t, TruthTable> value;
    value.reserve(cone.leaves.size() + cone.volume.size());
    for (int i = 0; i < k; ++i) value.emplace(cone.leaves[i], TruthTable::projection(i, k));

    for (uint32_t v : cone.volume) {
        if (value.count(v)) continue;  // a degenerate cone may list the root as a leaf
        const AigNode& n = net.node(v);
        const TruthTable& a = value.at(n.fanin0.node());
        const TruthTable& b = value.at(n.fanin1.node());
        const TruthTable ta = n.fanin0.comp() ? ~a : a;
        const TruthTable tb = n.fanin1.comp() ? ~b : b;
        value.emplace(v, ta & tb);
    }
    return value.at(cone.root);
}

std::string FeatureVector::to_csv_prefix() const
{
    std::ostringstream s;
    s << is_critical << ',' << input_size << ',' << node_size << ',' << fanout_size << ','
      << positive_edges << ',' << negative_edges << ',' << max_depth;
    return s.str();
}

FeatureVector FeatureVector::from_csv_prefix(const std::string& line)
{
    FeatureVector fv;
    std::istringstream s(line);
    char comma;
    if (!(s >> fv.is_critical >> comma >> fv.input_size >> comma >> fv.node_size >> comma >>
          fv.fanout_size >> comma >> fv.positive_edges >> comma >> fv.negative_edges >> comma >>
          fv.max_depth))
        throw ParseError("bad feature row: " + line);
    return fv;
}

}  // namespace rrw
