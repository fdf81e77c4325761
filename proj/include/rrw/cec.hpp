#pragma once

#include <cstdint>
#include <vector>

#include "rrw/aig.hpp"

namespace rrw {

enum class CecStatus { Equivalent, LikelyEquivalent, Counterexample };

struct CecResult {
    CecStatus status = CecStatus::LikelyEquivalent;
    uint64_t vectors_used = 0;
    std::vector<bool> cex_inputs;  // per-PI assignment, Counterexample only
    size_t cex_po = 0;
};

/// Word-parallel simulation check: exhaustive (sound Equivalent) up to 16
/// PIs, otherwise random vectors up to the budget. Any counterexample is
/// replayed scalar-wise before being returned. Throws InterfaceMismatch on
/// differing PI/PO counts.
CecResult check_equivalence(const Aig& a, const Aig& b, uint64_t budget_vectors = 1000000,
                            uint64_t seed = 1);

}  // namespace rrw
