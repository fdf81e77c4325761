#pragma once

#include <string>
#include <vector>

#include "rrw/aig.hpp"

namespace rrw {

struct AigerHeader {
    uint64_t max_var = 0;
    uint64_t num_inputs = 0;
    uint64_t num_latches = 0;
    uint64_t num_outputs = 0;
    uint64_t num_ands = 0;
};

enum class AigerVariant { Ascii, Binary };

/// A parsed AIGER document: the network plus any symbol table and comment
/// lines, which are re-emitted verbatim on write.
struct AigerDoc {
    Aig net;
    std::vector<std::string> symbol_lines;
    std::vector<std::string> comment_lines;
};

/// Parses combinational AIGER, ASCII ("aag") or binary ("aig").
/// Throws ParseError on malformed input, UnsupportedError on latches or
/// AIGER 1.9 extension sections.
AigerDoc read_aiger(const std::string& bytes);

/// Emits the network in the requested variant. The network is compacted to
/// dense topological numbering internally; And definitions come out in
/// topological order.
std::string write_aiger(const AigerDoc& doc, AigerVariant variant);
std::string write_aiger(const Aig& net, AigerVariant variant);

AigerDoc read_aiger_file(const std::string& path);
void write_aiger_file(const std::string& path, const AigerDoc& doc, AigerVariant variant);

}  // namespace rrw
