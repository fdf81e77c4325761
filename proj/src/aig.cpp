#include "rrw/aig.hpp"

#include <algorithm>

namespace rrw {

Lit Aig::add_pi()
{
    const uint32_t idx = (uint32_t)nodes_.size();
    AigNode n;
    n.kind = NodeKind::PrimaryInput;
    nodes_.push_back(std::move(n));
    pis_.push_back(idx);
    return Lit(idx, false);
}

void Aig::add_po(Lit l)
{
    assert(l.node() < nodes_.size() && !nodes_[l.node()].dead);
    pos_.push_back(l);
    ++nodes_[l.node()].ref_count;
}

Lit Aig::and2(Lit a, Lit b)
{
    assert(a.node() < nodes_.size() && b.node() < nodes_.size());
    assert(!nodes_[a.node()].dead && !nodes_[b.node()].dead);

    if (a == Lit::zero() || b == Lit::zero()) return Lit::zero();
    if (a == Lit::one()) return b;
    if (b == Lit::one()) return a;
    if (a == b) return a;
    if (a == !b) return Lit::zero();

    if (b < a) std::swap(a, b);
    const uint64_t key = strash_key(a, b);
    if (auto it = strash_.find(key); it != strash_.end()) return Lit(it->second, false);

    const uint32_t idx = (uint32_t)nodes_.size();
    AigNode n;
    n.kind = NodeKind::And;
    n.fanin0 = a;
    n.fanin1 = b;
    n.level = 1 + std::max(nodes_[a.node()].level, nodes_[b.node()].level);
    nodes_.push_back(std::move(n));
    nodes_[a.node()].fanouts.push_back(idx);
    ++nodes_[a.node()].ref_count;
    nodes_[b.node()].fanouts.push_back(idx);
    ++nodes_[b.node()].ref_count;
    strash_.emplace(key, idx);
    ++num_live_ands_;
    return Lit(idx, false);
}

bool Aig::in_transitive_fanout(uint32_t node, uint32_t query) const
{
    if (node == query) return true;
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<uint32_t> stack{node};
    seen[node] = 1;
    while (!stack.empty()) {
        const uint32_t v = stack.back();
        stack.pop_back();
        for (uint32_t u : nodes_[v].fanouts) {
            if (seen[u]) continue;
            if (u == query) return true;
            seen[u] = 1;
            stack.push_back(u);
        }
    }
    return false;
}

Lit Aig::resolve_forward(Lit l, const std::unordered_map<uint32_t, Lit>& forward) const
{
    auto it = forward.find(l.node());
    while (it != forward.end()) {
        l = it->second ^ l.comp();
        it = forward.find(l.node());
    }
    return l;
}

void Aig::remove_fanout_entry(uint32_t node, uint32_t consumer)
{
    auto& fo = nodes_[node].fanouts;
    auto it = std::find(fo.begin(), fo.end(), consumer);
    assert(it != fo.end());
    *it = fo.back();
    fo.pop_back();
}

void Aig::substitute(uint32_t old_node, Lit replacement)
{
    assert(old_node < nodes_.size() && nodes_[old_node].is_and() && !nodes_[old_node].dead);
    if (replacement == Lit(old_node, false)) return;
    if (replacement.node() != old_node && in_transitive_fanout(old_node, replacement.node()))
        throw CycleError("replacement lies in the transitive fanout of the substituted node");
    if (replacement.node() == old_node)
        throw CycleError("node cannot be replaced by its own complement");

    std::deque<std::pair<uint32_t, Lit>> queue;
    std::unordered_map<uint32_t, Lit> forward;
    queue.emplace_back(old_node, replacement);
    forward.emplace(old_node, replacement);

    while (!queue.empty()) {
        auto [o, r] = queue.front();
        queue.pop_front();
        r = resolve_forward(r, forward);
        forward[o] = r;
        redirect_consumers(o, r, queue, forward);
    }
}

void Aig::redirect_consumers(uint32_t o, Lit r, std::deque<std::pair<uint32_t, Lit>>& queue,
                             std::unordered_map<uint32_t, Lit>& forward)
{
    auto enqueue = [&](uint32_t u, Lit target) {
        assert(!forward.count(u));
        forward.emplace(u, target);
        queue.emplace_back(u, target);
        // A degenerate or duplicate node leaves the hash table immediately so
        // and2 cannot hand it out again.
        auto& n = nodes_[u];
        const uint64_t key = strash_key(n.fanin0, n.fanin1);
        if (auto it = strash_.find(key); it != strash_.end() && it->second == u)
            strash_.erase(it);
    };

    // Primary outputs.
    for (auto& po : pos_) {
        if (po.node() != o) continue;
        po = Lit(r.node(), po.comp() ^ r.comp());
        --nodes_[o].ref_count;
        ++nodes_[r.node()].ref_count;
    }

    // Consumers, one fanin slot per fanout entry.
    while (!nodes_[o].fanouts.empty()) {
        const uint32_t u = nodes_[o].fanouts.back();
        nodes_[o].fanouts.pop_back();
        --nodes_[o].ref_count;
        AigNode& un = nodes_[u];
        assert(!un.dead);

        // Leave the hash table while fanins change.
        const uint64_t old_key = strash_key(un.fanin0, un.fanin1);
        if (auto it = strash_.find(old_key); it != strash_.end() && it->second == u)
            strash_.erase(it);

        if (un.fanin0.node() == o)
            un.fanin0 = Lit(r.node(), un.fanin0.comp() ^ r.comp());
        else {
            assert(un.fanin1.node() == o);
            un.fanin1 = Lit(r.node(), un.fanin1.comp() ^ r.comp());
        }
        ++nodes_[r.node()].ref_count;
        nodes_[r.node()].fanouts.push_back(u);

        if (forward.count(u)) continue;  // already scheduled for replacement

        Lit f0 = un.fanin0;
        Lit f1 = un.fanin1;
        if (f0 == Lit::zero() || f1 == Lit::zero() || f0 == !f1) {
            enqueue(u, Lit::zero());
        } else if (f0 == Lit::one()) {
            enqueue(u, f1);
        } else if (f1 == Lit::one()) {
            enqueue(u, f0);
        } else if (f0 == f1) {
            enqueue(u, f0);
        } else {
            if (f1 < f0) {
                std::swap(un.fanin0, un.fanin1);
                std::swap(f0, f1);
            }
            const uint64_t key = strash_key(f0, f1);
            if (auto it = strash_.find(key); it != strash_.end()) {
                if (it->second != u) enqueue(u, Lit(it->second, false));
            } else {
                strash_.emplace(key, u);
            }
        }
    }
    assert(nodes_[o].ref_count == 0);
}

std::vector<uint32_t> Aig::topological_order() const
{
    std::vector<uint32_t> order;
    order.reserve(pis_.size() + num_live_ands_);
    order.insert(order.end(), pis_.begin(), pis_.end());

    std::vector<char> done(nodes_.size(), 0);
    std::vector<uint32_t> stack;
    for (uint32_t idx = 0; idx < nodes_.size(); ++idx) {
        if (!nodes_[idx].is_and() || nodes_[idx].dead || done[idx]) continue;
        stack.push_back(idx);
        while (!stack.empty()) {
            const uint32_t v = stack.back();
            if (done[v]) {
                stack.pop_back();
                continue;
            }
            const uint32_t a = nodes_[v].fanin0.node();
            const uint32_t b = nodes_[v].fanin1.node();
            bool ready = true;
            if (nodes_[a].is_and() && !done[a]) {
                stack.push_back(a);
                ready = false;
            }
            if (nodes_[b].is_and() && !done[b]) {
                stack.push_back(b);
                ready = false;
            }
            if (ready) {
                stack.pop_back();
                done[v] = 1;
                order.push_back(v);
            }
        }
    }
    return order;
}

size_t Aig::release_if_dead(uint32_t idx)
{
    AigNode& n = nodes_[idx];
    if (n.dead || !n.is_and() || n.ref_count > 0) return 0;
    n.dead = true;
    --num_live_ands_;
    const uint64_t key = strash_key(n.fanin0, n.fanin1);
    if (auto it = strash_.find(key); it != strash_.end() && it->second == idx)
        strash_.erase(it);
    size_t removed = 1;
    const Lit f0 = n.fanin0;
    const Lit f1 = n.fanin1;
    for (Lit f : {f0, f1}) {
        remove_fanout_entry(f.node(), idx);
        --nodes_[f.node()].ref_count;
        removed += release_if_dead(f.node());
    }
    return removed;
}

size_t Aig::remove_dead_nodes()
{
    size_t removed = 0;
    for (uint32_t idx = (uint32_t)nodes_.size(); idx-- > 0;) removed += release_if_dead(idx);
    return removed;
}

void Aig::compute_levels()
{
    for (uint32_t idx : topological_order()) {
        AigNode& n = nodes_[idx];
        if (!n.is_and()) {
            n.level = 0;
            continue;
        }
        n.level = 1 + std::max(nodes_[n.fanin0.node()].level, nodes_[n.fanin1.node()].level);
    }
}

uint32_t Aig::depth() const
{
    uint32_t d = 0;
    for (Lit po : pos_) d = std::max(d, nodes_[po.node()].level);
    return d;
}

std::vector<char> Aig::mark_critical_path() const
{
    const uint32_t target = depth();
    // Longest path from each node to a PO (its "tail").
    std::vector<int64_t> tail(nodes_.size(), -1);
    for (Lit po : pos_) tail[po.node()] = std::max<int64_t>(tail[po.node()], 0);
    const auto order = topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const uint32_t v = *it;
        if (!nodes_[v].is_and() || tail[v] < 0) continue;
        for (Lit f : {nodes_[v].fanin0, nodes_[v].fanin1}) {
            tail[f.node()] = std::max(tail[f.node()], tail[v] + 1);
        }
    }
    std::vector<char> critical(nodes_.size(), 0);
    for (uint32_t idx = 0; idx < nodes_.size(); ++idx) {
        if (nodes_[idx].dead || tail[idx] < 0) continue;
        if ((int64_t)nodes_[idx].level + tail[idx] == (int64_t)target) critical[idx] = 1;
    }
    return critical;
}

std::vector<uint64_t> Aig::simulate_words(const std::vector<uint64_t>& pi_values) const
{
    assert(pi_values.size() == pis_.size());
    std::vector<uint64_t> value(nodes_.size(), 0);
    for (size_t i = 0; i < pis_.size(); ++i) value[pis_[i]] = pi_values[i];
    for (uint32_t idx : topological_order()) {
        const AigNode& n = nodes_[idx];
        if (!n.is_and()) continue;
        const uint64_t a = value[n.fanin0.node()] ^ (n.fanin0.comp() ? ~0ull : 0ull);
        const uint64_t b = value[n.fanin1.node()] ^ (n.fanin1.comp() ? ~0ull : 0ull);
        value[idx] = a & b;
    }
    return value;
}

std::vector<bool> Aig::eval(const std::vector<bool>& pi_values) const
{
    std::vector<uint64_t> words(pis_.size());
    for (size_t i = 0; i < pis_.size(); ++i) words[i] = pi_values[i] ? ~0ull : 0ull;
    const auto value = simulate_words(words);
    std::vector<bool> out(pos_.size());
    for (size_t i = 0; i < pos_.size(); ++i)
        out[i] = ((value[pos_[i].node()] & 1) ^ (pos_[i].comp() ? 1 : 0)) != 0;
    return out;
}

bool Aig::check_ref_counts() const
{
    std::vector<uint32_t> refs(nodes_.size(), 0);
    std::vector<std::vector<uint32_t>> fanouts(nodes_.size());
    for (uint32_t idx = 0; idx < nodes_.size(); ++idx) {
        const AigNode& n = nodes_[idx];
        if (n.dead || !n.is_and()) continue;
        for (Lit f : {n.fanin0, n.fanin1}) {
            ++refs[f.node()];
            fanouts[f.node()].push_back(idx);
        }
    }
    for (Lit po : pos_) ++refs[po.node()];
    for (uint32_t idx = 0; idx < nodes_.size(); ++idx) {
        if (nodes_[idx].dead) continue;
        if (refs[idx] != nodes_[idx].ref_count) return false;
        auto a = fanouts[idx];
        auto b = nodes_[idx].fanouts;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    return true;
}

Aig Aig::compact() const
{
    Aig out;
    std::vector<uint32_t> remap(nodes_.size(), 0);
    for (uint32_t pi : pis_) remap[pi] = out.add_pi().node();
    for (uint32_t idx : topological_order()) {
        const AigNode& n = nodes_[idx];
        if (!n.is_and()) continue;
        const Lit a(remap[n.fanin0.node()], n.fanin0.comp());
        const Lit b(remap[n.fanin1.node()], n.fanin1.comp());
        // Live nodes are already simplified and strash-unique, so this
        // reconstructs the identical structure with dense indices.
        remap[idx] = out.and2(a, b).node();
    }
    for (Lit po : pos_) out.add_po(Lit(remap[po.node()], po.comp()));
    return out;
}

}  // namespace rrw
