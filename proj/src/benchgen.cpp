#include "rrw/benchgen.hpp"

#include <filesystem>
#include <random>

#include "rrw/aiger.hpp"

namespace rrw {

Aig make_decoder8()
{
    Aig net;
    std::vector<Lit> x;
    for (int i = 0; i < 8; ++i) x.push_back(net.add_pi());

    auto nibble_decoder = [&](int base) {
        std::vector<Lit> lo, hi, minterms;
        for (int v = 0; v < 4; ++v) {
            lo.push_back(net.and2(x[base] ^ !((v >> 0) & 1), x[base + 1] ^ !((v >> 1) & 1)));
            hi.push_back(net.and2(x[base + 2] ^ !((v >> 0) & 1), x[base + 3] ^ !((v >> 1) & 1)));
        }
        for (int v = 0; v < 16; ++v) minterms.push_back(net.and2(lo[v & 3], hi[v >> 2]));
        return minterms;
    };

    const std::vector<Lit> low = nibble_decoder(0);
    const std::vector<Lit> high = nibble_decoder(4);
    for (int k = 0; k < 256; ++k) net.add_po(net.and2(low[k & 15], high[k >> 4]));
    return net;
}

Aig make_priority_encoder(int width)
{
    Aig net;
    std::vector<Lit> req;
    for (int i = 0; i < width; ++i) req.push_back(net.add_pi());

    std::vector<Lit> grant(width);
    grant[0] = req[0];
    Lit any_before = req[0];
    for (int i = 1; i < width; ++i) {
        grant[i] = net.and2(req[i], !any_before);
        any_before = net.or2(any_before, req[i]);
    }

    int bits = 0;
    while ((1 << bits) < width) ++bits;
    for (int b = 0; b < bits; ++b) {
        Lit acc = Lit::zero();
        for (int i = 0; i < width; ++i)
            if ((i >> b) & 1) acc = net.or2(acc, grant[i]);
        net.add_po(acc);
    }
    net.add_po(any_before);  // valid
    return net;
}

Aig make_control_circuit(int num_pis, int num_pos, int target_ands, bool deep, uint64_t seed)
{
    Aig net;
    std::mt19937_64 rng(seed);
    std::vector<Lit> pool;
    for (int i = 0; i < num_pis; ++i) pool.push_back(net.add_pi());

    auto pick = [&]() {
        const Lit l = pool[rng() % pool.size()];
        return l ^ ((rng() & 1) != 0);
    };
    auto chain_fold = [&](int len, bool use_or) {
        // Unbalanced fold: rewritable depth when the cover is simple.
        Lit acc = pick();
        for (int i = 1; i < len; ++i) acc = use_or ? net.or2(acc, pick()) : net.and2(acc, pick());
        return acc;
    };

    while (net.size() < (size_t)target_ands) {
        switch (rng() % 4) {
        case 0: {  // flat unfactored cover sharing literals across cubes
            const int vars = 3 + (int)(rng() % 3);
            std::vector<Lit> lits;
            for (int i = 0; i < vars; ++i) lits.push_back(pick());
            Lit sum = Lit::zero();
            const int cubes = 2 + (int)(rng() % 3);
            for (int c = 0; c < cubes; ++c) {
                Lit cube = lits[rng() % lits.size()];
                const int extra = 1 + (int)(rng() % 2);
                for (int e = 0; e < extra; ++e)
                    cube = net.and2(cube, lits[rng() % lits.size()] ^ ((rng() & 1) != 0));
                sum = net.or2(sum, cube);
            }
            pool.push_back(sum);
            break;
        }
        case 1:
            pool.push_back(net.mux(pick(), pick(), pick()));
            break;
        case 2:
            pool.push_back(net.xor2(pick(), pick()));
            break;
        case 3:
            pool.push_back(chain_fold(deep ? 5 + (int)(rng() % 4) : 3, (rng() & 1) != 0));
            break;
        }
    }

    // Prefer deep nodes as outputs so most generated logic stays live.
    std::vector<Lit> candidates(pool.begin() + num_pis, pool.end());
    std::sort(candidates.begin(), candidates.end(), [&](Lit a, Lit b) {
        return net.level(a.node()) != net.level(b.node())
                   ? net.level(a.node()) > net.level(b.node())
                   : a.node() < b.node();
    });
    for (int i = 0; i < num_pos; ++i) {
        if (i < (int)candidates.size())
            net.add_po(candidates[i]);
        else
            net.add_po(pool[i % pool.size()]);
    }
    net.remove_dead_nodes();
    net.compute_levels();
    return net;
}

Aig random_aig(int num_pis, int num_ands, int num_pos, uint64_t seed)
{
    Aig net;
    std::mt19937_64 rng(seed);
    std::vector<Lit> pool;
    for (int i = 0; i < num_pis; ++i) pool.push_back(net.add_pi());
    int guard = num_ands * 20 + 100;
    while (net.size() < (size_t)num_ands && guard-- > 0) {
        const Lit a = pool[rng() % pool.size()] ^ ((rng() & 1) != 0);
        const Lit b = pool[rng() % pool.size()] ^ ((rng() & 1) != 0);
        const Lit out = net.and2(a, b);
        if (out.node() != 0 && net.is_and(out.node())) pool.push_back(out);
    }
    for (int i = 0; i < num_pos; ++i) {
        const size_t window = std::min<size_t>(pool.size(), 20);
        const Lit l = pool[pool.size() - 1 - (rng() % window)];
        net.add_po(l ^ ((rng() & 1) != 0));
    }
    net.remove_dead_nodes();
    net.compute_levels();
    return net;
}

std::vector<GeneratedBench> generated_benchmarks()
{
    std::vector<GeneratedBench> set;
    set.push_back({"ctrl", make_control_circuit(7, 26, 175, false, 0xc7a1)});
    set.push_back({"dec", make_decoder8()});
    set.push_back({"int2float", make_control_circuit(11, 7, 260, false, 0x12f7)});
    set.push_back({"router", make_control_circuit(60, 30, 250, true, 0x407e)});
    set.push_back({"cavlc", make_control_circuit(10, 11, 690, false, 0xca1c)});
    set.push_back({"priority", make_priority_encoder(128)});
    set.push_back({"i2c", make_control_circuit(147, 142, 1340, false, 0x12c5)});
    return set;
}

std::vector<std::string> write_generated_benchmarks(const std::string& dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::string> paths;
    for (const GeneratedBench& bench : generated_benchmarks()) {
        const std::string path = dir + "/" + bench.name + ".aag";
        AigerDoc doc;
        doc.net = bench.net;
        doc.comment_lines = {"generated stand-in circuit: " + bench.name};
        write_aiger_file(path, doc, AigerVariant::Ascii);
        paths.push_back(path);
    }
    return paths;
}

}  // namespace rrw
