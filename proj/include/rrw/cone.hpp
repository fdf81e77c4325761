#pragma once

#include <string>
#include <vector>

#include "rrw/aig.hpp"
#include "rrw/truth_table.hpp"

namespace rrw {

/// A reconvergence-driven cut: root, ordered leaves, internal volume
/// (root included) and the constrained MFFC inside the volume.
struct Cone {
    uint32_t root = 0;
    std::vector<uint32_t> leaves;  // discovery order, pairwise distinct
    std::vector<uint32_t> volume;  // ascending (level, index); every fanin is in volume or a leaf
    std::vector<uint32_t> mffc;    // descending level from root

    int input_size() const { return (int)leaves.size(); }
    bool rewritable() const { return leaves.size() >= 2; }
};

/// The 7-integer MDP state of a cone.
struct FeatureVector {
    int is_critical = 0;
    int input_size = 0;
    int node_size = 0;
    int fanout_size = 0;
    int positive_edges = 0;
    int negative_edges = 0;
    int max_depth = 0;

    bool operator==(const FeatureVector& o) const = default;
    std::string to_csv_prefix() const;
    static FeatureVector from_csv_prefix(const std::string& line);
};

struct FeatureVectorHash {
    size_t operator()(const FeatureVector& f) const
    {
        size_t h = 0;
        for (int v : {f.is_critical, f.input_size, f.node_size, f.fanout_size, f.positive_edges,
                      f.negative_edges, f.max_depth})
            h = h * 1000003u + (size_t)(uint32_t)v;
        return h;
    }
};

/// Grows a cut from the root's fanins, expanding the cheapest leaf first
/// (cost = new leaves added - 1, preferring reconvergent expansions that cost
/// nothing); ties break to the deepest leaf, then the lowest index. Stops when
/// no expansion fits within max_leaves or all leaves are PIs.
Cone reconvergence_driven_cut(const Aig& net, uint32_t root, int max_leaves = 10);

/// Maximal subset M of the volume with root in M and, for every other member,
/// all its fanouts (including PO references) inside M.
std::vector<uint32_t> constrained_mffc(const Aig& net, const Cone& cone);

/// Clamp events (node_size outside [2,16]) are counted rather than printed.
size_t feature_clamp_count();

FeatureVector extract_features(const Aig& net, const Cone& cone,
                               const std::vector<char>& critical);

/// Truth table of the root over the leaves; leaf i is variable i.
/// Throws ConeTooLarge for more than kMaxTruthVars leaves.
TruthTable simulate_cone(const Aig& net, const Cone& cone);

}  // namespace rrw
