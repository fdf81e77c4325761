#pragma once

#include <optional>
#include <vector>

#include "rrw/candidate.hpp"
#include "rrw/cone.hpp"
#include "rrw/truth_table.hpp"

namespace rrw {

/// Product term over the cone variables; both masks empty is the tautology
/// cube (constant 1).
struct Cube {
    uint32_t positive_mask = 0;
    uint32_t negative_mask = 0;

    bool operator==(const Cube& o) const = default;
    int num_literals() const;
    TruthTable table(int num_vars) const;
};

TruthTable cover_table(const std::vector<Cube>& cubes, int num_vars);
int cover_literals(const std::vector<Cube>& cubes);

/// Irredundant sum-of-products: covers the onset exactly, and no cube or
/// literal can be dropped. Cofactor recursion on the lowest-index variable
/// the function depends on, with a prime/irredundant cleanup pass.
std::vector<Cube> isop(const TruthTable& tt);

/// Multi-level form produced by most-frequent-literal division.
struct FactoredExpr {
    enum class Kind { Literal, And, Or };
    Kind kind = Kind::Literal;
    int var = 0;
    bool negated = false;
    std::vector<FactoredExpr> children;  // nonempty for And/Or; no And under And, no Or under Or

    int literal_count() const;
    TruthTable table(int num_vars) const;
};

/// Requires a nonempty, non-constant cover.
FactoredExpr factor(const std::vector<Cube>& cubes);

/// ISOP ("refactor") action for cones with 2..10 inputs: factors whichever
/// polarity of the cone function has the smaller cover, records the output
/// phase, and emits balanced And/Or trees; port matching is the identity.
std::optional<RewriteCandidate> isop_rewrite_candidate(const Aig& net, const Cone& cone);

}  // namespace rrw
