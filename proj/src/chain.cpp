#include "rrw/chain.hpp"

#include <algorithm>
#include <sstream>

namespace rrw {

bool Chain::valid() const
{
    auto ok = [&](Lit l, size_t step_idx) {
        return l.node() <= (uint32_t)num_inputs + step_idx;  // inputs or earlier steps
    };
    for (size_t j = 0; j < steps.size(); ++j)
        if (!ok(steps[j].a, j) || !ok(steps[j].b, j)) return false;
    return ok(out, steps.size());
}

int Chain::depth() const
{
    std::vector<int> level((size_t)num_inputs + steps.size() + 1, 0);
    for (size_t j = 0; j < steps.size(); ++j) {
        const size_t idx = (size_t)num_inputs + 1 + j;
        level[idx] = 1 + std::max(level[steps[j].a.node()], level[steps[j].b.node()]);
    }
    return level[out.node()];
}

TruthTable Chain::simulate() const
{
    std::vector<TruthTable> value((size_t)num_inputs + steps.size() + 1);
    value[0] = TruthTable::zeros(num_inputs);
    for (int i = 0; i < num_inputs; ++i) value[(size_t)i + 1] = TruthTable::projection(i, num_inputs);
    for (size_t j = 0; j < steps.size(); ++j) {
        const TruthTable& a = value[steps[j].a.node()];
        const TruthTable& b = value[steps[j].b.node()];
        value[(size_t)num_inputs + 1 + j] =
            (steps[j].a.comp() ? ~a : a) & (steps[j].b.comp() ? ~b : b);
    }
    const TruthTable& t = value[out.node()];
    return out.comp() ? ~t : t;
}

std::string Chain::encode() const
{
    auto lit_text = [&](Lit l) {
        assert(l.node() > 0);
        return std::string(l.comp() ? "-" : "") + std::to_string(l.node());
    };
    std::ostringstream s;
    for (const Step& st : steps) s << lit_text(st.a) << ' ' << lit_text(st.b) << ' ';
    if (out.node() == 0) {
        assert(!out.comp());  // canonical chains never end in constant 1
        s << 0;
    } else {
        s << lit_text(out);
    }
    return s.str();
}

Chain Chain::decode(int num_inputs, int num_steps, const std::string& text)
{
    Chain c;
    c.num_inputs = num_inputs;
    std::istringstream s(text);
    auto read_lit = [&]() {
        long long v;
        if (!(s >> v)) throw ParseError("truncated chain encoding: " + text);
        const bool comp = v < 0;
        const uint32_t node = (uint32_t)(comp ? -v : v);
        return Lit(node, comp);
    };
    for (int j = 0; j < num_steps; ++j) {
        const Lit a = read_lit();
        const Lit b = read_lit();
        c.steps.push_back({a, b});
    }
    c.out = read_lit();
    if (!c.valid()) throw ParseError("chain references future steps: " + text);
    return c;
}

}  // namespace rrw
