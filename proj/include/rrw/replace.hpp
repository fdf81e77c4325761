#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "rrw/aig.hpp"
#include "rrw/candidate.hpp"
#include "rrw/cone.hpp"

namespace rrw {

/// Required times under the unit-delay model: require(PO node) = depth,
/// require(n) = min over fanouts of require - 1; slack = require - arrive.
///
/// Between full refreshes the view is maintained as a lower bound: committing
/// a replacement min-updates requirements along the new structure, and a full
/// recomputation runs every refresh_interval replacements and whenever the
/// network depth shrinks. A lower bound can only make the depth gate
/// conservative, never unsound.
class TimingView {
public:
    static constexpr int64_t kUnconstrained = std::numeric_limits<int64_t>::max() / 2;

    int refresh_interval = 50;

    void full_refresh(const Aig& net);
    int64_t require(uint32_t idx) const
    {
        return idx < require_.size() ? require_[idx] : kUnconstrained;
    }
    int64_t slack(const Aig& net, uint32_t idx) const
    {
        return require(idx) - (int64_t)net.level(idx);
    }
    bool is_critical(const Aig& net, uint32_t idx) const { return slack(net, idx) == 0; }
    std::vector<char> critical_mask(const Aig& net) const;
    uint32_t depth_at_refresh() const { return depth_at_refresh_; }

    /// Call after a committed replacement: transfers the replaced root's
    /// requirement to the new root and propagates tightenings downward.
    void after_replace(const Aig& net, uint32_t new_root, int64_t old_root_require);

private:
    std::vector<int64_t> require_;
    uint32_t depth_at_refresh_ = 0;
    int replaces_since_refresh_ = 0;
};

/// Walks down from root (stopping at the leaves), decrementing ref counts and
/// counting the nodes that would die. Equals |constrained_mffc| of the cone.
int deref_cut(Aig& net, uint32_t root, const std::vector<uint32_t>& leaves);

/// Inverse walk: re-increments what deref_cut decremented and counts the
/// nodes that would be re-created. deref_cut followed by ref_cut restores
/// every ref count bit-exactly.
int ref_cut(Aig& net, uint32_t root, const std::vector<uint32_t>& leaves);

enum class RejectReason { None, Unverified, NoGain, DepthViolation };

struct EvalOptions {
    bool preserve_depth = false;
    bool allow_zero_gain = false;
    const TimingView* timing = nullptr;
};

struct EvalDecision {
    bool accepted = false;
    int gain = 0;
    RejectReason reason = RejectReason::None;
};

/// Verifies the candidate against the cone function (exhaustively over the
/// leaves), prices it with a deref/ref trial, and applies the gain and slack
/// gates. Fills cand.est_size_gain and cand.est_root_level.
EvalDecision evaluate(Aig& net, const Cone& cone, RewriteCandidate& cand,
                      const EvalOptions& opts = {});

/// Builds the candidate leaf-to-root with the port transform applied,
/// substitutes the cone root and sweeps dead nodes. Returns the realized
/// size gain (never negative for an accepted candidate); new_root receives
/// the literal the root was replaced with.
int replace(Aig& net, const Cone& cone, const RewriteCandidate& cand, Lit* new_root = nullptr);

}  // namespace rrw
