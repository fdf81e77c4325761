#pragma once

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "rrw/errors.hpp"

namespace rrw {

constexpr int kMaxTruthVars = 10;

/// Bit-vector function representation for up to kMaxTruthVars variables.
///
/// Bit at position p encodes f(assignment p), where variable i contributes
/// bit i of p (variable 0 toggles fastest). Unused high bits of the last
/// word are kept zero by every operation.
class TruthTable {
public:
    TruthTable() = default;

    static TruthTable zeros(int num_vars)
    {
        check_arity(num_vars);
        TruthTable t;
        t.num_vars_ = num_vars;
        return t;
    }

    static TruthTable ones(int num_vars)
    {
        TruthTable t = zeros(num_vars);
        for (int w = 0; w < t.num_words(); ++w) t.words_[w] = ~0ull;
        t.normalize();
        return t;
    }

    /// Table of variable `var` over `num_vars` inputs.
    static TruthTable projection(int var, int num_vars)
    {
        TruthTable t = zeros(num_vars);
        assert(var >= 0 && var < num_vars);
        if (var < 6) {
            // Pattern repeats within a word: blocks of 2^var ones.
            uint64_t pat = 0;
            for (int p = 0; p < 64; ++p)
                if ((p >> var) & 1) pat |= 1ull << p;
            for (int w = 0; w < t.num_words(); ++w) t.words_[w] = pat;
        } else {
            for (int w = 0; w < t.num_words(); ++w)
                t.words_[w] = ((w >> (var - 6)) & 1) ? ~0ull : 0ull;
        }
        t.normalize();
        return t;
    }

    static TruthTable from_word(uint64_t bits, int num_vars)
    {
        TruthTable t = zeros(num_vars);
        t.words_[0] = bits;
        t.normalize();
        return t;
    }

    int num_vars() const { return num_vars_; }
    uint32_t num_bits() const { return 1u << num_vars_; }
    int num_words() const { return num_vars_ <= 6 ? 1 : 1 << (num_vars_ - 6); }

    bool bit(uint32_t pos) const
    {
        assert(pos < num_bits());
        return (words_[pos >> 6] >> (pos & 63)) & 1;
    }

    void set_bit(uint32_t pos, bool value)
    {
        assert(pos < num_bits());
        if (value)
            words_[pos >> 6] |= 1ull << (pos & 63);
        else
            words_[pos >> 6] &= ~(1ull << (pos & 63));
    }

    uint64_t word(int w) const { return words_[w]; }

    bool is_const0() const
    {
        for (int w = 0; w < num_words(); ++w)
            if (words_[w]) return false;
        return true;
    }

    bool is_const1() const { return (~*this).is_const0(); }

    uint32_t popcount() const
    {
        uint32_t n = 0;
        for (int w = 0; w < num_words(); ++w) n += std::popcount(words_[w]);
        return n;
    }

    bool operator==(const TruthTable& o) const
    {
        if (num_vars_ != o.num_vars_) return false;
        for (int w = 0; w < num_words(); ++w)
            if (words_[w] != o.words_[w]) return false;
        return true;
    }
    bool operator!=(const TruthTable& o) const { return !(*this == o); }

    /// Unsigned-integer order on the bit vector (most significant word first).
    bool less(const TruthTable& o) const
    {
        assert(num_vars_ == o.num_vars_);
        for (int w = num_words() - 1; w >= 0; --w)
            if (words_[w] != o.words_[w]) return words_[w] < o.words_[w];
        return false;
    }

    TruthTable operator~() const
    {
        TruthTable t = *this;
        for (int w = 0; w < t.num_words(); ++w) t.words_[w] = ~t.words_[w];
        t.normalize();
        return t;
    }

    TruthTable operator&(const TruthTable& o) const
    {
        TruthTable t = binary_check(o);
        for (int w = 0; w < t.num_words(); ++w) t.words_[w] = words_[w] & o.words_[w];
        return t;
    }

    TruthTable operator|(const TruthTable& o) const
    {
        TruthTable t = binary_check(o);
        for (int w = 0; w < t.num_words(); ++w) t.words_[w] = words_[w] | o.words_[w];
        return t;
    }

    TruthTable operator^(const TruthTable& o) const
    {
        TruthTable t = binary_check(o);
        for (int w = 0; w < t.num_words(); ++w) t.words_[w] = words_[w] ^ o.words_[w];
        return t;
    }

    /// Restriction of the function to var = polarity, result over the same variable set.
    TruthTable cofactor(int var, bool polarity) const;

    bool depends_on(int var) const { return cofactor(var, false) != cofactor(var, true); }

    int support_size() const
    {
        int n = 0;
        for (int v = 0; v < num_vars_; ++v)
            if (depends_on(v)) ++n;
        return n;
    }

    /// Hex string, most significant word first, width matching the table size.
    std::string to_hex() const;
    static TruthTable from_hex(const std::string& hex, int num_vars);

    size_t hash() const
    {
        uint64_t h = 0x9e3779b97f4a7c15ull ^ (uint64_t)num_vars_;
        for (int w = 0; w < num_words(); ++w) {
            h ^= words_[w] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return (size_t)h;
    }

private:
    static void check_arity(int num_vars)
    {
        if (num_vars < 0 || num_vars > kMaxTruthVars)
            throw ConeTooLarge(std::to_string(num_vars) + " variables");
    }

    TruthTable binary_check(const TruthTable& o) const
    {
        if (num_vars_ != o.num_vars_)
            throw UnsupportedArity("operands have different variable counts");
        return zeros(num_vars_);
    }

    void normalize()
    {
        if (num_vars_ < 6) words_[0] &= (1ull << num_bits()) - 1;
    }

    int num_vars_ = 0;
    std::array<uint64_t, 1 << (kMaxTruthVars - 6)> words_{};
};

struct TruthTableHash {
    size_t operator()(const TruthTable& t) const { return t.hash(); }
};

/// Negation/permutation transform on inputs plus optional output negation.
/// Input j of the transformed function reads variable perm[j] of the argument,
/// complemented when bit j of input_phase is set.
struct NpnTransform {
    std::array<uint8_t, 16> perm{};  // identity-initialized by make()
    uint32_t input_phase = 0;
    bool output_phase = false;

    static NpnTransform identity(int num_vars)
    {
        NpnTransform t;
        for (int i = 0; i < num_vars; ++i) t.perm[i] = (uint8_t)i;
        return t;
    }
};

/// result(x_0..x_{n-1}) = output_phase XOR tt(y_0..y_{n-1}) with
/// y_j = x_{perm[j]} XOR ((input_phase >> j) & 1).
TruthTable apply_npn_transform(const TruthTable& tt, const NpnTransform& t);

/// Transform u with apply(apply(tt, t), u) == tt for every tt.
NpnTransform invert_transform(const NpnTransform& t, int num_vars);

/// Transform u with apply(tt, u) == apply(apply(tt, a), b) for every tt.
NpnTransform compose_transforms(const NpnTransform& a, const NpnTransform& b, int num_vars);

}  // namespace rrw
