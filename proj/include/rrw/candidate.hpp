#pragma once

#include "rrw/chain.hpp"
#include "rrw/truth_table.hpp"

namespace rrw {

/// An optimized replacement structure for a cone, with its port matching.
/// Chain input j reads leaf port.perm[j], complemented when bit j of
/// port.input_phase is set; the chain output is complemented when
/// port.output_phase is set. Equivalently, the candidate realizes
/// apply_npn_transform(chain.simulate(), port) over the cone's leaves —
/// the commit gate in evaluate() checks exactly that identity.
struct RewriteCandidate {
    Chain chain;
    NpnTransform port;
    int est_size_gain = 0;
    uint32_t est_root_level = 0;
};

}  // namespace rrw
