#include "rrw/aiger.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace rrw {

namespace {

struct Cursor {
    const std::string& buf;
    size_t pos = 0;

    bool eof() const { return pos >= buf.size(); }
    char peek() const { return buf[pos]; }

    void expect(char c)
    {
        if (eof() || buf[pos] != c)
            throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(pos));
        ++pos;
    }

    uint64_t read_uint()
    {
        if (eof() || buf[pos] < '0' || buf[pos] > '9')
            throw ParseError("expected number at offset " + std::to_string(pos));
        uint64_t v = 0;
        while (!eof() && buf[pos] >= '0' && buf[pos] <= '9') {
            v = v * 10 + (uint64_t)(buf[pos] - '0');
            ++pos;
        }
        return v;
    }

    std::string read_line()
    {
        std::string s;
        while (!eof() && buf[pos] != '\n') s.push_back(buf[pos++]);
        if (!eof()) ++pos;
        return s;
    }

    uint64_t read_delta()
    {
        uint64_t x = 0;
        int shift = 0;
        while (true) {
            if (eof()) throw ParseError("truncated delta encoding");
            const uint8_t b = (uint8_t)buf[pos++];
            x |= (uint64_t)(b & 0x7f) << shift;
            if (!(b & 0x80)) break;
            shift += 7;
            if (shift > 63) throw ParseError("oversized delta encoding");
        }
        return x;
    }
};

struct AndDef {
    uint64_t rhs0;
    uint64_t rhs1;
};

// Builds the network from parsed definitions; literals use AIGER numbering.
Aig build_network(const AigerHeader& h, const std::vector<uint64_t>& input_lits,
                  const std::vector<uint64_t>& output_lits,
                  const std::unordered_map<uint64_t, AndDef>& ands)
{
    Aig net;
    std::unordered_map<uint64_t, Lit> var_map;  // AIGER variable -> internal literal
    var_map.emplace(0, Lit::zero());
    for (uint64_t lit : input_lits) var_map.emplace(lit >> 1, net.add_pi());

    std::function<Lit(uint64_t, int)> resolve = [&](uint64_t var, int guard) -> Lit {
        if (auto it = var_map.find(var); it != var_map.end()) return it->second;
        auto def = ands.find(var);
        if (def == ands.end())
            throw ParseError("literal references undefined variable " + std::to_string(var));
        if (guard > (int)ands.size()) throw ParseError("cyclic and-gate definitions");
        const Lit a = resolve(def->second.rhs0 >> 1, guard + 1) ^ ((def->second.rhs0 & 1) != 0);
        const Lit b = resolve(def->second.rhs1 >> 1, guard + 1) ^ ((def->second.rhs1 & 1) != 0);
        const Lit out = net.and2(a, b);
        var_map.emplace(var, out);
        return out;
    };

    // Materialize every definition so node count matches well-formed files.
    std::vector<uint64_t> vars;
    vars.reserve(ands.size());
    for (const auto& [var, def] : ands) vars.push_back(var);
    std::sort(vars.begin(), vars.end());
    for (uint64_t var : vars) resolve(var, 0);

    for (uint64_t lit : output_lits) {
        const Lit l = resolve(lit >> 1, 0);
        net.add_po(l ^ ((lit & 1) != 0));
    }
    (void)h;
    return net;
}

void read_trailer(Cursor& c, AigerDoc& doc)
{
    bool in_comment = false;
    while (!c.eof()) {
        std::string line = c.read_line();
        if (in_comment) {
            doc.comment_lines.push_back(line);
            continue;
        }
        if (line == "c") {
            in_comment = true;
            continue;
        }
        if (line.empty()) continue;
        if (line[0] == 'i' || line[0] == 'o' || line[0] == 'l') {
            doc.symbol_lines.push_back(line);
            continue;
        }
        throw UnsupportedError("unrecognized section line: " + line);
    }
}

void check_literal(uint64_t lit, const AigerHeader& h)
{
    if (lit > 2 * h.max_var + 1)
        throw ParseError("literal " + std::to_string(lit) + " out of range");
}

}  // namespace

AigerDoc read_aiger(const std::string& bytes)
{
    Cursor c{bytes};
    std::string magic;
    while (!c.eof() && bytes[c.pos] != ' ') magic.push_back(bytes[c.pos++]);
    const bool binary = magic == "aig";
    if (!binary && magic != "aag") throw ParseError("bad magic '" + magic + "'");

    AigerHeader h;
    c.expect(' ');
    h.max_var = c.read_uint();
    c.expect(' ');
    h.num_inputs = c.read_uint();
    c.expect(' ');
    h.num_latches = c.read_uint();
    c.expect(' ');
    h.num_outputs = c.read_uint();
    c.expect(' ');
    h.num_ands = c.read_uint();
    if (!c.eof() && c.peek() == ' ')
        throw UnsupportedError("AIGER 1.9 header extensions are not supported");
    c.expect('\n');
    if (h.num_latches > 0) throw UnsupportedError("sequential circuits (latches) are not supported");
    if (h.max_var < h.num_inputs + h.num_ands)
        throw ParseError("max_var smaller than inputs + ands");

    std::vector<uint64_t> input_lits;
    std::vector<uint64_t> output_lits;
    std::unordered_map<uint64_t, AndDef> ands;
    input_lits.reserve(h.num_inputs);
    ands.reserve(h.num_ands);

    if (binary) {
        if (h.max_var != h.num_inputs + h.num_ands)
            throw ParseError("binary AIGER requires max_var == inputs + ands");
        for (uint64_t i = 0; i < h.num_inputs; ++i) input_lits.push_back(2 * (i + 1));
        for (uint64_t i = 0; i < h.num_outputs; ++i) {
            const uint64_t lit = c.read_uint();
            c.expect('\n');
            check_literal(lit, h);
            output_lits.push_back(lit);
        }
        for (uint64_t i = 0; i < h.num_ands; ++i) {
            const uint64_t lhs = 2 * (h.num_inputs + i + 1);
            const uint64_t delta0 = c.read_delta();
            if (delta0 == 0 || delta0 > lhs) throw ParseError("bad delta encoding (rhs0)");
            const uint64_t rhs0 = lhs - delta0;
            const uint64_t delta1 = c.read_delta();
            if (delta1 > rhs0) throw ParseError("bad delta encoding (rhs1)");
            ands.emplace(lhs >> 1, AndDef{rhs0, rhs0 - delta1});
        }
    } else {
        for (uint64_t i = 0; i < h.num_inputs; ++i) {
            const uint64_t lit = c.read_uint();
            c.expect('\n');
            check_literal(lit, h);
            if (lit < 2 || (lit & 1)) throw ParseError("input literal must be even and nonzero");
            input_lits.push_back(lit);
        }
        for (uint64_t i = 0; i < h.num_outputs; ++i) {
            const uint64_t lit = c.read_uint();
            c.expect('\n');
            check_literal(lit, h);
            output_lits.push_back(lit);
        }
        for (uint64_t i = 0; i < h.num_ands; ++i) {
            const uint64_t lhs = c.read_uint();
            c.expect(' ');
            const uint64_t rhs0 = c.read_uint();
            c.expect(' ');
            const uint64_t rhs1 = c.read_uint();
            c.expect('\n');
            check_literal(lhs, h);
            check_literal(rhs0, h);
            check_literal(rhs1, h);
            if (lhs < 2 || (lhs & 1)) throw ParseError("and output literal must be even");
            if (!ands.emplace(lhs >> 1, AndDef{rhs0, rhs1}).second)
                throw ParseError("duplicate and definition");
        }
    }

    AigerDoc doc;
    doc.net = build_network(h, input_lits, output_lits, ands);
    read_trailer(c, doc);
    return doc;
}

std::string write_aiger(const AigerDoc& doc, AigerVariant variant)
{
    Aig net = doc.net.compact();
    const uint64_t num_inputs = net.num_pis();
    const auto order = net.topological_order();

    // compact() numbers nodes as constant 0, PIs 1..I, ANDs topologically after.
    uint64_t num_ands = 0;
    for (uint32_t idx : order)
        if (net.is_and(idx)) ++num_ands;
    const uint64_t max_var = num_inputs + num_ands;

    std::ostringstream out;
    out << (variant == AigerVariant::Binary ? "aig" : "aag") << ' ' << max_var << ' '
        << num_inputs << " 0 " << net.num_pos() << ' ' << num_ands << '\n';

    if (variant == AigerVariant::Ascii) {
        for (uint64_t i = 0; i < num_inputs; ++i) out << 2 * (i + 1) << '\n';
    }
    for (Lit po : net.pos()) out << (2 * (uint64_t)po.node() + (po.comp() ? 1 : 0)) << '\n';

    for (uint32_t idx : order) {
        if (!net.is_and(idx)) continue;
        const Lit f0 = net.node(idx).fanin0;
        const Lit f1 = net.node(idx).fanin1;
        uint64_t rhs0 = f0.data();
        uint64_t rhs1 = f1.data();
        if (rhs0 < rhs1) std::swap(rhs0, rhs1);
        const uint64_t lhs = 2 * (uint64_t)idx;
        if (variant == AigerVariant::Ascii) {
            out << lhs << ' ' << rhs0 << ' ' << rhs1 << '\n';
        } else {
            for (uint64_t delta : {lhs - rhs0, rhs0 - rhs1}) {
                while (delta >= 0x80) {
                    out.put((char)(uint8_t)(0x80 | (delta & 0x7f)));
                    delta >>= 7;
                }
                out.put((char)(uint8_t)delta);
            }
        }
    }

    for (const auto& line : doc.symbol_lines) out << line << '\n';
    if (!doc.comment_lines.empty()) {
        out << "c\n";
        for (const auto& line : doc.comment_lines) out << line << '\n';
    }
    return out.str();
}

std::string write_aiger(const Aig& net, AigerVariant variant)
{
    AigerDoc doc;
    doc.net = net;
    return write_aiger(doc, variant);
}

AigerDoc read_aiger_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_aiger(ss.str());
}

void write_aiger_file(const std::string& path, const AigerDoc& doc, AigerVariant variant)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    const std::string bytes = write_aiger(doc, variant);
    out.write(bytes.data(), (std::streamsize)bytes.size());
}

}  // namespace rrw
