#include "rrw/cec.hpp"

#include <random>

#include "rrw/errors.hpp"

namespace rrw {

namespace {

// Per-PO 64-vector signatures under the given PI words.
std::vector<uint64_t> po_words(const Aig& net, const std::vector<uint64_t>& pi_values)
{
    const auto value = net.simulate_words(pi_values);
    std::vector<uint64_t> out(net.num_pos());
    for (size_t i = 0; i < net.num_pos(); ++i) {
        const Lit po = net.po(i);
        out[i] = value[po.node()] ^ (po.comp() ? ~0ull : 0ull);
    }
    return out;
}

CecResult counterexample(const Aig& a, const Aig& b, const std::vector<uint64_t>& pi_values,
                         size_t po, int bit, uint64_t vectors_used)
{
    CecResult res;
    res.status = CecStatus::Counterexample;
    res.vectors_used = vectors_used;
    res.cex_po = po;
    res.cex_inputs.resize(pi_values.size());
    for (size_t i = 0; i < pi_values.size(); ++i) res.cex_inputs[i] = (pi_values[i] >> bit) & 1;
    // Replay scalar-wise; a word-level mismatch must reproduce.
    const auto va = a.eval(res.cex_inputs);
    const auto vb = b.eval(res.cex_inputs);
    assert(va[po] != vb[po]);
    (void)va;
    (void)vb;
    return res;
}

}  // namespace

CecResult check_equivalence(const Aig& a, const Aig& b, uint64_t budget_vectors, uint64_t seed)
{
    if (a.num_pis() != b.num_pis() || a.num_pos() != b.num_pos())
        throw InterfaceMismatch("PI/PO counts differ");
    const size_t num_pis = a.num_pis();

    std::vector<uint64_t> pi_values(num_pis);
    CecResult res;

    if (num_pis <= 16) {
        const uint64_t total = 1ull << num_pis;
        for (uint64_t base = 0; base < total; base += 64) {
            const uint64_t batch = std::min<uint64_t>(64, total - base);
            for (size_t i = 0; i < num_pis; ++i) {
                uint64_t w = 0;
                for (uint64_t j = 0; j < batch; ++j)
                    if (((base + j) >> i) & 1) w |= 1ull << j;
                pi_values[i] = w;
            }
            const auto pa = po_words(a, pi_values);
            const auto pb = po_words(b, pi_values);
            const uint64_t mask = batch == 64 ? ~0ull : ((1ull << batch) - 1);
            for (size_t po = 0; po < pa.size(); ++po) {
                const uint64_t diff = (pa[po] ^ pb[po]) & mask;
                if (diff)
                    return counterexample(a, b, pi_values, po, std::countr_zero(diff),
                                          base + batch);
            }
        }
        res.status = CecStatus::Equivalent;
        res.vectors_used = total;
        return res;
    }

    std::mt19937_64 rng(seed);
    uint64_t used = 0;
    while (used < budget_vectors) {
        for (size_t i = 0; i < num_pis; ++i) pi_values[i] = rng();
        used += 64;
        const auto pa = po_words(a, pi_values);
        const auto pb = po_words(b, pi_values);
        for (size_t po = 0; po < pa.size(); ++po) {
            const uint64_t diff = pa[po] ^ pb[po];
            if (diff) return counterexample(a, b, pi_values, po, std::countr_zero(diff), used);
        }
    }
    res.status = CecStatus::LikelyEquivalent;
    res.vectors_used = used;
    return res;
}

}  // namespace rrw
