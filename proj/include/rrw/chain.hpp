#pragma once

#include <string>
#include <vector>

#include "rrw/aig.hpp"
#include "rrw/truth_table.hpp"

namespace rrw {

/// Straight-line program of 2-input ANDs with complementable edges.
/// Chain-space literals: node 0 is constant 0, nodes 1..num_inputs are the
/// inputs, node num_inputs + j is step j (1-based j).
struct Chain {
    struct Step {
        Lit a;
        Lit b;
    };

    int num_inputs = 0;
    std::vector<Step> steps;
    Lit out;

    int size() const { return (int)steps.size(); }

    bool valid() const;

    /// Unit-delay depth of the output (inputs at level 0).
    int depth() const;

    TruthTable simulate() const;

    /// Signed-literal text: per step two fanins, then the output literal.
    /// Positive = plain, negative = complemented; inputs are 1..n, step j is
    /// n+j; a lone 0 in the output position denotes constant 0.
    std::string encode() const;
    static Chain decode(int num_inputs, int num_steps, const std::string& text);
};

}  // namespace rrw
