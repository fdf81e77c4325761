#pragma once

#include <cassert>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rrw/errors.hpp"

namespace rrw {

/// Edge into a node: node index plus complement flag, packed AIGER-style
/// (data = index * 2 + complemented). Node 0 is the constant-0 node, so
/// Lit::zero() is logic 0 and Lit::one() is logic 1.
class Lit {
public:
    Lit() = default;
    Lit(uint32_t node, bool comp) : data_((node << 1) | (comp ? 1u : 0u)) {}

    static Lit zero() { return Lit(0, false); }
    static Lit one() { return Lit(0, true); }
    static Lit from_data(uint32_t data) { Lit l; l.data_ = data; return l; }

    uint32_t node() const { return data_ >> 1; }
    bool comp() const { return data_ & 1; }
    uint32_t data() const { return data_; }

    Lit operator!() const { return from_data(data_ ^ 1); }
    Lit operator^(bool c) const { return from_data(data_ ^ (c ? 1u : 0u)); }

    bool operator==(const Lit& o) const { return data_ == o.data_; }
    bool operator!=(const Lit& o) const { return data_ != o.data_; }
    /// Total order (node index, complemented) — the strashing order.
    bool operator<(const Lit& o) const { return data_ < o.data_; }

private:
    uint32_t data_ = 0;
};

enum class NodeKind : uint8_t { Constant, PrimaryInput, And };

struct AigNode {
    Lit fanin0;
    Lit fanin1;
    std::vector<uint32_t> fanouts;  // one entry per fanin slot of each consumer
    uint32_t ref_count = 0;         // fanin occurrences in non-dead nodes + PO references
    uint32_t level = 0;
    NodeKind kind = NodeKind::Constant;
    bool dead = false;

    bool is_and() const { return kind == NodeKind::And; }
};

/// And-Inverter Graph with structural hashing and reference counts.
///
/// Node indices are append-only; deleted nodes are tombstoned and compact()
/// renumbers densely. A network is a plain value: copying gives an
/// independent deep copy.
class Aig {
public:
    Aig()
    {
        nodes_.emplace_back();  // constant node, index 0
    }

    size_t num_nodes() const { return nodes_.size(); }
    size_t num_pis() const { return pis_.size(); }
    size_t num_pos() const { return pos_.size(); }
    /// Number of non-dead And nodes. Callers that bypass replace() should run
    /// remove_dead_nodes() before reading, so substituted zombies are swept.
    size_t size() const { return num_live_ands_; }

    const AigNode& node(uint32_t idx) const { return nodes_[idx]; }
    bool is_dead(uint32_t idx) const { return nodes_[idx].dead; }
    bool is_and(uint32_t idx) const { return nodes_[idx].kind == NodeKind::And; }
    bool is_pi(uint32_t idx) const { return nodes_[idx].kind == NodeKind::PrimaryInput; }
    uint32_t level(uint32_t idx) const { return nodes_[idx].level; }
    uint32_t ref_count(uint32_t idx) const { return nodes_[idx].ref_count; }
    uint32_t po_refs(uint32_t idx) const
    {
        return nodes_[idx].ref_count - (uint32_t)nodes_[idx].fanouts.size();
    }

    const std::vector<uint32_t>& pis() const { return pis_; }
    const std::vector<Lit>& pos() const { return pos_; }
    Lit po(size_t i) const { return pos_[i]; }

    Lit add_pi();
    void add_po(Lit l);

    /// Strashed AND with constant/idempotence simplification.
    Lit and2(Lit a, Lit b);

    /// Convenience builders on top of and2.
    Lit or2(Lit a, Lit b) { return !and2(!a, !b); }
    Lit xor2(Lit a, Lit b) { return or2(and2(a, !b), and2(!a, b)); }
    Lit mux(Lit sel, Lit t, Lit e) { return or2(and2(sel, t), and2(!sel, e)); }

    /// Redirects every reference to old_node (fanins and POs) to `replacement`
    /// with polarity composed; re-simplifies and re-hashes affected fanouts and
    /// cascades eagerly when that reveals duplicates. old_node's ref count
    /// drops to 0; the node stays as a tombstone candidate until swept.
    void substitute(uint32_t old_node, Lit replacement);

    /// PIs in creation order, then non-dead And nodes, fanins before fanouts.
    std::vector<uint32_t> topological_order() const;

    /// Sweeps every And node whose ref count is (transitively) zero.
    size_t remove_dead_nodes();

    /// Releases one node if its ref count is zero, cascading into fanins.
    size_t release_if_dead(uint32_t idx);

    void compute_levels();
    uint32_t depth() const;

    /// Flags, indexed by node, of nodes lying on some PI->PO path of maximal
    /// length. Levels must be current.
    std::vector<char> mark_critical_path() const;

    /// One simulation word per node under the given per-PI patterns.
    std::vector<uint64_t> simulate_words(const std::vector<uint64_t>& pi_values) const;
    /// PO values for a single input assignment.
    std::vector<bool> eval(const std::vector<bool>& pi_values) const;

    /// Full recount of every ref count and fanout list. Returns false and
    /// leaves the network untouched on any mismatch.
    bool check_ref_counts() const;

    /// Dense renumbering: constant, PIs in order, live ANDs topologically.
    Aig compact() const;

    bool in_transitive_fanout(uint32_t node, uint32_t query) const;

    /// Reference-count adjustment hook for the ref/deref area estimators.
    void bump_ref(uint32_t idx, int delta)
    {
        assert(delta >= 0 || nodes_[idx].ref_count >= (uint32_t)(-delta));
        nodes_[idx].ref_count = (uint32_t)((int64_t)nodes_[idx].ref_count + delta);
    }

    /// Node computing the (normalized) pair, if one is hashed. Does not apply
    /// the constant/idempotence simplifications and2 performs first.
    std::optional<uint32_t> strash_lookup(Lit a, Lit b) const
    {
        if (b < a) std::swap(a, b);
        auto it = strash_.find(strash_key(a, b));
        if (it == strash_.end()) return std::nullopt;
        return it->second;
    }

private:
    Lit resolve_forward(Lit l, const std::unordered_map<uint32_t, Lit>& forward) const;
    void redirect_consumers(uint32_t old_node, Lit repl,
                            std::deque<std::pair<uint32_t, Lit>>& queue,
                            std::unordered_map<uint32_t, Lit>& forward);
    void remove_fanout_entry(uint32_t node, uint32_t consumer);
    static uint64_t strash_key(Lit a, Lit b)
    {
        return ((uint64_t)a.data() << 32) | b.data();
    }

    std::vector<AigNode> nodes_;
    std::vector<uint32_t> pis_;
    std::vector<Lit> pos_;
    std::unordered_map<uint64_t, uint32_t> strash_;
    size_t num_live_ands_ = 0;
};

}  // namespace rrw
