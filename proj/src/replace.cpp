#include "rrw/replace.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace rrw {

void TimingView::full_refresh(const Aig& net)
{
    require_.assign(net.num_nodes(), kUnconstrained);
    depth_at_refresh_ = net.depth();
    replaces_since_refresh_ = 0;
    for (Lit po : net.pos())
        require_[po.node()] = std::min(require_[po.node()], (int64_t)depth_at_refresh_);
    const auto order = net.topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const uint32_t v = *it;
        if (!net.is_and(v) || require_[v] == kUnconstrained) continue;
        for (Lit f : {net.node(v).fanin0, net.node(v).fanin1})
            require_[f.node()] = std::min(require_[f.node()], require_[v] - 1);
    }
}

std::vector<char> TimingView::critical_mask(const Aig& net) const
{
    std::vector<char> mask(net.num_nodes(), 0);
    for (uint32_t idx = 0; idx < net.num_nodes(); ++idx) {
        if (net.is_dead(idx)) continue;
        if (idx < require_.size() && require_[idx] == (int64_t)net.level(idx)) mask[idx] = 1;
    }
    return mask;
}

void TimingView::after_replace(const Aig& net, uint32_t new_root, int64_t old_root_require)
{
    require_.resize(net.num_nodes(), kUnconstrained);
    std::vector<uint32_t> queue;
    if (old_root_require < require_[new_root]) {
        require_[new_root] = old_root_require;
        queue.push_back(new_root);
    }
    while (!queue.empty()) {
        const uint32_t v = queue.back();
        queue.pop_back();
        if (!net.is_and(v)) continue;
        for (Lit f : {net.node(v).fanin0, net.node(v).fanin1}) {
            const int64_t bound = require_[v] - 1;
            if (bound < require_[f.node()]) {
                require_[f.node()] = bound;
                queue.push_back(f.node());
            }
        }
    }
    if (++replaces_since_refresh_ >= refresh_interval || net.depth() < depth_at_refresh_)
        full_refresh(net);
}

namespace {

int deref_rec(Aig& net, uint32_t v, const std::unordered_set<uint32_t>& leaves)
{
    int count = 0;
    for (Lit f : {net.node(v).fanin0, net.node(v).fanin1}) {
        const uint32_t n = f.node();
        net.bump_ref(n, -1);
        if (net.ref_count(n) == 0 && net.is_and(n) && !leaves.count(n)) {
            ++count;
            count += deref_rec(net, n, leaves);
        }
    }
    return count;
}

int ref_rec(Aig& net, uint32_t v, const std::unordered_set<uint32_t>& leaves)
{
    int count = 0;
    for (Lit f : {net.node(v).fanin0, net.node(v).fanin1}) {
        const uint32_t n = f.node();
        if (net.ref_count(n) == 0 && net.is_and(n) && !leaves.count(n)) {
            ++count;
            count += ref_rec(net, n, leaves);
        }
        net.bump_ref(n, +1);
    }
    return count;
}

}  // namespace

int deref_cut(Aig& net, uint32_t root, const std::vector<uint32_t>& leaves)
{
    const std::unordered_set<uint32_t> leaf_set(leaves.begin(), leaves.end());
    return 1 + deref_rec(net, root, leaf_set);
}

int ref_cut(Aig& net, uint32_t root, const std::vector<uint32_t>& leaves)
{
    const std::unordered_set<uint32_t> leaf_set(leaves.begin(), leaves.end());
    return 1 + ref_rec(net, root, leaf_set);
}

namespace {

using RefLog = std::vector<std::pair<uint32_t, int>>;

struct TrialResolution {
    Lit out;
    bool out_real = false;
    int created = 0;
};

// Resolves the candidate against the live hash table exactly the way a
// commit would, counting created (or revived) nodes and logging every ref
// increment. Steps that miss get virtual indices past the node array.
TrialResolution resolve_trial(Aig& net, const Cone& cone, const RewriteCandidate& cand,
                              RefLog& log)
{
    const Chain& chain = cand.chain;
    const uint32_t first_virtual = (uint32_t)net.num_nodes();
    uint32_t next_virtual = first_virtual;
    std::unordered_map<uint64_t, Lit> overlay;
    auto is_real = [&](Lit l) { return l.node() < first_virtual; };
    auto bump = [&](uint32_t n, int d) {
        net.bump_ref(n, d);
        log.emplace_back(n, d);
    };

    std::vector<Lit> value((size_t)chain.num_inputs + chain.steps.size() + 1);
    value[0] = Lit::zero();
    for (int j = 0; j < chain.num_inputs; ++j)
        value[(size_t)j + 1] =
            Lit(cone.leaves[cand.port.perm[j]], ((cand.port.input_phase >> j) & 1) != 0);
    auto resolve = [&](Lit l) { return value[l.node()] ^ l.comp(); };

    TrialResolution res;
    for (size_t si = 0; si < chain.steps.size(); ++si) {
        Lit a = resolve(chain.steps[si].a);
        Lit b = resolve(chain.steps[si].b);
        Lit out;
        if (a == Lit::zero() || b == Lit::zero() || a == !b) {
            out = Lit::zero();
        } else if (a == Lit::one()) {
            out = b;
        } else if (b == Lit::one()) {
            out = a;
        } else if (a == b) {
            out = a;
        } else {
            if (b < a) std::swap(a, b);
            const uint64_t key = ((uint64_t)a.data() << 32) | b.data();
            std::optional<uint32_t> hit;
            if (is_real(a) && is_real(b)) hit = net.strash_lookup(a, b);
            if (hit) {
                if (net.ref_count(*hit) == 0) ++res.created;  // revived, priced as new
                bump(*hit, +1);
                out = Lit(*hit, false);
            } else if (auto it = overlay.find(key); it != overlay.end()) {
                out = it->second;
            } else {
                ++res.created;
                if (is_real(a)) bump(a.node(), +1);
                if (is_real(b)) bump(b.node(), +1);
                out = Lit(next_virtual++, false);
                overlay.emplace(key, out);
            }
        }
        value[(size_t)chain.num_inputs + 1 + si] = out;
    }
    res.out = resolve(chain.out) ^ cand.port.output_phase;
    res.out_real = is_real(res.out);
    return res;
}

// Counts leaves that would die once the candidate is in place, cascading
// below the cut the way the real sweep would.
int cascade_dead_leaves(Aig& net, const std::vector<uint32_t>& leaves, RefLog& log)
{
    std::unordered_set<uint32_t> counted;
    int deaths = 0;
    auto force = [&](auto&& self, uint32_t v) -> void {
        counted.insert(v);
        ++deaths;
        for (Lit f : {net.node(v).fanin0, net.node(v).fanin1}) {
            const uint32_t n = f.node();
            net.bump_ref(n, -1);
            log.emplace_back(n, -1);
            if (net.ref_count(n) == 0 && net.is_and(n) && !counted.count(n)) self(self, n);
        }
    };
    for (uint32_t leaf : leaves)
        if (net.is_and(leaf) && net.ref_count(leaf) == 0 && !counted.count(leaf)) force(force, leaf);
    return deaths;
}

uint32_t estimate_root_level(const Aig& net, const Cone& cone, const RewriteCandidate& cand)
{
    const Chain& chain = cand.chain;
    std::vector<uint32_t> level((size_t)chain.num_inputs + chain.steps.size() + 1, 0);
    for (int j = 0; j < chain.num_inputs; ++j)
        level[(size_t)j + 1] = net.level(cone.leaves[cand.port.perm[j]]);
    for (size_t si = 0; si < chain.steps.size(); ++si)
        level[(size_t)chain.num_inputs + 1 + si] =
            1 + std::max(level[chain.steps[si].a.node()], level[chain.steps[si].b.node()]);
    return level[chain.out.node()];
}

int commit_replace(Aig& net, const Cone& cone, const RewriteCandidate& cand, Lit* new_root)
{
    const Chain& chain = cand.chain;
    const size_t size_before = net.size();
    std::vector<Lit> value((size_t)chain.num_inputs + chain.steps.size() + 1);
    value[0] = Lit::zero();
    for (int j = 0; j < chain.num_inputs; ++j)
        value[(size_t)j + 1] =
            Lit(cone.leaves[cand.port.perm[j]], ((cand.port.input_phase >> j) & 1) != 0);
    auto resolve = [&](Lit l) { return value[l.node()] ^ l.comp(); };
    for (size_t si = 0; si < chain.steps.size(); ++si)
        value[(size_t)chain.num_inputs + 1 + si] =
            net.and2(resolve(chain.steps[si].a), resolve(chain.steps[si].b));
    const Lit out = resolve(chain.out) ^ cand.port.output_phase;
    if (new_root) *new_root = out;
    if (out == Lit(cone.root, false)) return 0;  // structurally identical
    net.substitute(cone.root, out);
    net.remove_dead_nodes();
    return (int)size_before - (int)net.size();
}

}  // namespace

EvalDecision evaluate(Aig& net, const Cone& cone, RewriteCandidate& cand, const EvalOptions& opts)
{
    const TruthTable cone_tt = simulate_cone(net, cone);
    if (apply_npn_transform(cand.chain.simulate(), cand.port) != cone_tt)
        return {false, 0, RejectReason::Unverified};

    cand.est_root_level = estimate_root_level(net, cone, cand);

    RefLog log;
    int dead = deref_cut(net, cone.root, cone.leaves);
    const TrialResolution trial = resolve_trial(net, cone, cand, log);
    dead += cascade_dead_leaves(net, cone.leaves, log);
    int gain = dead - trial.created;
    for (auto it = log.rbegin(); it != log.rend(); ++it) net.bump_ref(it->first, -it->second);
    ref_cut(net, cone.root, cone.leaves);

    if (trial.out_real) {
        if (trial.out == Lit(cone.root, false)) {
            gain = 0;
        } else {
            // The output collapsed onto an existing literal; the substitution
            // cascade may merge fanouts beyond what pairwise pricing sees, so
            // measure the exact outcome on a scratch copy.
            Aig scratch = net;
            gain = commit_replace(scratch, cone, cand, nullptr);
        }
    }
    cand.est_size_gain = gain;

    if (gain < (opts.allow_zero_gain ? 0 : 1)) return {false, gain, RejectReason::NoGain};
    if (opts.preserve_depth && opts.timing &&
        (int64_t)cand.est_root_level > opts.timing->require(cone.root))
        return {false, gain, RejectReason::DepthViolation};
    return {true, gain, RejectReason::None};
}

int replace(Aig& net, const Cone& cone, const RewriteCandidate& cand, Lit* new_root)
{
    const int realized = commit_replace(net, cone, cand, new_root);
    assert(realized >= 0);
    return realized;
}

}  // namespace rrw
