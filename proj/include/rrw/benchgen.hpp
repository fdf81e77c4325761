#pragma once

#include <string>
#include <vector>

#include "rrw/aig.hpp"

namespace rrw {

/// 8-to-256 line decoder built as two shared 4-to-16 stages: 304 ANDs,
/// depth 3.
Aig make_decoder8();

/// Ripple priority encoder: index of the lowest active request plus a valid
/// flag. The prefix chain makes it deep.
Aig make_priority_encoder(int width);

/// Seeded control-flavored circuit with rewritable redundancy (flat covers,
/// unbalanced chains, muxes). deep=true folds long chains for depth.
Aig make_control_circuit(int num_pis, int num_pos, int target_ands, bool deep, uint64_t seed);

/// Random strashed AIG for property tests.
Aig random_aig(int num_pis, int num_ands, int num_pos, uint64_t seed);

struct GeneratedBench {
    std::string name;
    Aig net;
};

/// Local stand-ins for the desk-scale benchmark set, by name.
std::vector<GeneratedBench> generated_benchmarks();

/// Writes <name>.aag files; returns the paths.
std::vector<std::string> write_generated_benchmarks(const std::string& dir);

}  // namespace rrw
