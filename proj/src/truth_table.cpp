#include "rrw/truth_table.hpp"

namespace rrw {

namespace {

// Bit pattern of positions whose `var` bit is set, for var < 6.
uint64_t var_mask(int var)
{
    static constexpr uint64_t masks[6] = {
        0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
        0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull,
    };
    return masks[var];
}

}  // namespace

TruthTable TruthTable::cofactor(int var, bool polarity) const
{
    assert(var >= 0 && var < num_vars_);
    TruthTable t = zeros(num_vars_);
    if (var < 6) {
        const uint64_t hi = var_mask(var);
        const int shift = 1 << var;
        for (int w = 0; w < num_words(); ++w) {
            if (polarity) {
                const uint64_t sel = words_[w] & hi;
                t.words_[w] = sel | (sel >> shift);
            } else {
                const uint64_t sel = words_[w] & ~hi;
                t.words_[w] = sel | (sel << shift);
            }
        }
    } else {
        const int block = 1 << (var - 6);
        for (int w = 0; w < num_words(); ++w) {
            const int src = polarity ? (w | block) : (w & ~block);
            t.words_[w] = words_[src];
        }
    }
    t.normalize();
    return t;
}

std::string TruthTable::to_hex() const
{
    const int digits = num_bits() >= 4 ? (int)(num_bits() / 4) : 1;
    std::string s(digits, '0');
    for (int d = 0; d < digits; ++d) {
        uint32_t nibble = 0;
        for (int b = 0; b < 4; ++b) {
            const uint32_t pos = (uint32_t)d * 4 + b;
            if (pos < num_bits() && bit(pos)) nibble |= 1u << b;
        }
        s[digits - 1 - d] = "0123456789abcdef"[nibble];
    }
    return s;
}

TruthTable TruthTable::from_hex(const std::string& hex, int num_vars)
{
    TruthTable t = zeros(num_vars);
    const int digits = (int)hex.size();
    for (int d = 0; d < digits; ++d) {
        const char c = hex[digits - 1 - d];
        uint32_t nibble;
        if (c >= '0' && c <= '9')
            nibble = (uint32_t)(c - '0');
        else if (c >= 'a' && c <= 'f')
            nibble = (uint32_t)(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            nibble = (uint32_t)(c - 'A' + 10);
        else
            throw ParseError("bad hex digit in truth table");
        for (int b = 0; b < 4; ++b) {
            const uint32_t pos = (uint32_t)d * 4 + b;
            if (pos < t.num_bits() && ((nibble >> b) & 1)) t.set_bit(pos, true);
        }
    }
    return t;
}

TruthTable apply_npn_transform(const TruthTable& tt, const NpnTransform& t)
{
    const int n = tt.num_vars();
    TruthTable out = TruthTable::zeros(n);
    for (uint32_t p = 0; p < tt.num_bits(); ++p) {
        uint32_t q = 0;
        for (int j = 0; j < n; ++j) {
            uint32_t b = (p >> t.perm[j]) & 1;
            b ^= (t.input_phase >> j) & 1;
            q |= b << j;
        }
        out.set_bit(p, tt.bit(q) ^ t.output_phase);
    }
    return out;
}

NpnTransform invert_transform(const NpnTransform& t, int num_vars)
{
    NpnTransform u;
    for (int j = 0; j < num_vars; ++j) {
        u.perm[t.perm[j]] = (uint8_t)j;
        if ((t.input_phase >> j) & 1) u.input_phase |= 1u << t.perm[j];
    }
    u.output_phase = t.output_phase;
    return u;
}

NpnTransform compose_transforms(const NpnTransform& a, const NpnTransform& b, int num_vars)
{
    NpnTransform c;
    for (int j = 0; j < num_vars; ++j) {
        c.perm[j] = b.perm[a.perm[j]];
        const uint32_t ph = ((a.input_phase >> j) & 1) ^ ((b.input_phase >> a.perm[j]) & 1);
        c.input_phase |= ph << j;
    }
    c.output_phase = a.output_phase ^ b.output_phase;
    return c;
}

}  // namespace rrw
