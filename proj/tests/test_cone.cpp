#include <doctest.h>

#include <random>
#include <unordered_set>

#include "rrw/benchgen.hpp"
#include "rrw/cone.hpp"

using namespace rrw;

namespace {

// Oracle: delete the root (deref bounded at the cut), mark recursively
// dereferenced nodes, intersect with the volume.
std::vector<uint32_t> mffc_deref_oracle(const Aig& net_in, const Cone& cone)
{
    Aig net = net_in;  // scratch copy, refs mutated freely
    const std::unordered_set<uint32_t> leaves(cone.leaves.begin(), cone.leaves.end());
    const std::unordered_set<uint32_t> volume(cone.volume.begin(), cone.volume.end());
    std::vector<uint32_t> dead;
    auto deref = [&](auto&& self, uint32_t v) -> void {
        dead.push_back(v);
        for (Lit f : {net.node(v).fanin0, net.node(v).fanin1}) {
            net.bump_ref(f.node(), -1);
            if (net.ref_count(f.node()) == 0 && net.is_and(f.node()) && !leaves.count(f.node()))
                self(self, f.node());
        }
    };
    deref(deref, cone.root);
    std::vector<uint32_t> result;
    for (uint32_t v : dead)
        if (volume.count(v)) result.push_back(v);
    return result;
}

void check_cone_invariants(const Aig& net, const Cone& cone)
{
    const std::unordered_set<uint32_t> leaves(cone.leaves.begin(), cone.leaves.end());
    const std::unordered_set<uint32_t> volume(cone.volume.begin(), cone.volume.end());
    // leaves pairwise distinct and disjoint from the volume
    CHECK(leaves.size() == cone.leaves.size());
    for (uint32_t l : cone.leaves) CHECK(!volume.count(l));
    // every fanin of every volume node is in the volume or a leaf
    CHECK(volume.count(cone.root));
    for (uint32_t v : cone.volume) {
        for (Lit f : {net.node(v).fanin0, net.node(v).fanin1}) {
            CHECK((volume.count(f.node()) || leaves.count(f.node())));
        }
    }
    // mffc is inside the volume, contains the root, and non-root members have
    // all fanouts inside the mffc
    const std::unordered_set<uint32_t> mffc(cone.mffc.begin(), cone.mffc.end());
    CHECK(mffc.count(cone.root));
    for (uint32_t v : cone.mffc) {
        CHECK(volume.count(v));
        if (v == cone.root) continue;
        CHECK(net.po_refs(v) == 0);
        for (uint32_t consumer : net.node(v).fanouts) CHECK(mffc.count(consumer));
    }
}

}  // namespace

TEST_CASE("root with PI fanins gives the minimal cone")
{
    Aig net;
    const Lit a = net.add_pi();
    const Lit b = net.add_pi();
    const Lit f = net.and2(a, b);
    net.add_po(f);
    net.compute_levels();
    const Cone cone = reconvergence_driven_cut(net, f.node(), 10);
    CHECK(cone.leaves.size() == 2);
    CHECK(cone.volume == std::vector<uint32_t>{f.node()});
    CHECK(cone.mffc == std::vector<uint32_t>{f.node()});
}

TEST_CASE("reconvergent fanouts fold back into one cone")
{
    // n2 = a&b feeds two paths that remerge at n8
    Aig net;
    const Lit a = net.add_pi();
    const Lit b = net.add_pi();
    const Lit c = net.add_pi();
    const Lit d = net.add_pi();
    const Lit n2 = net.and2(a, b);
    const Lit n5 = net.and2(n2, c);
    const Lit n6 = net.and2(n2, d);
    const Lit n8 = net.and2(n5, n6);
    net.add_po(n8);
    net.compute_levels();

    SUBCASE("budget 3: the reconvergent node is a single leaf, never duplicated")
    {
        const Cone cone = reconvergence_driven_cut(net, n8.node(), 3);
        std::vector<uint32_t> expect{n2.node(), c.node(), d.node()};
        std::vector<uint32_t> got = cone.leaves;
        std::sort(got.begin(), got.end());
        std::sort(expect.begin(), expect.end());
        CHECK(got == expect);
    }
    SUBCASE("budget >= 4: the reconvergent node joins the volume")
    {
        const Cone cone = reconvergence_driven_cut(net, n8.node(), 10);
        CHECK(std::count(cone.volume.begin(), cone.volume.end(), n2.node()) == 1);
        std::vector<uint32_t> got = cone.leaves;
        std::sort(got.begin(), got.end());
        CHECK(got == std::vector<uint32_t>{a.node(), b.node(), c.node(), d.node()});
        // whole structure is fanout-free here, so mffc == volume
        CHECK(cone.mffc.size() == cone.volume.size());
    }
}

TEST_CASE("cone invariants hold across a random network")
{
    const Aig net = random_aig(10, 200, 12, 20240);
    size_t checked = 0;
    for (uint32_t idx = 0; idx < net.num_nodes(); ++idx) {
        if (!net.is_and(idx) || net.is_dead(idx) || net.ref_count(idx) == 0) continue;
        const Cone cone = reconvergence_driven_cut(net, idx, 10);
        CHECK(cone.leaves.size() <= 10);
        check_cone_invariants(net, cone);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("cut computation is deterministic")
{
    const Aig net = random_aig(8, 120, 8, 777);
    for (uint32_t idx = 0; idx < net.num_nodes(); ++idx) {
        if (!net.is_and(idx) || net.is_dead(idx)) continue;
        const Cone c1 = reconvergence_driven_cut(net, idx, 10);
        const Cone c2 = reconvergence_driven_cut(net, idx, 10);
        CHECK(c1.leaves == c2.leaves);
        CHECK(c1.volume == c2.volume);
        CHECK(c1.mffc == c2.mffc);
    }
}

TEST_CASE("constrained mffc")
{
    SUBCASE("fanout-free cone: mffc equals the volume")
    {
        Aig net;
        const Lit a = net.add_pi();
        const Lit b = net.add_pi();
        const Lit c = net.add_pi();
        const Lit u = net.and2(a, b);
        const Lit f = net.and2(u, c);
        net.add_po(f);
        net.compute_levels();
        const Cone cone = reconvergence_driven_cut(net, f.node(), 10);
        CHECK(cone.mffc.size() == 2);
    }
    SUBCASE("a volume node with an external fanout is excluded")
    {
        Aig net;
        const Lit a = net.add_pi();
        const Lit b = net.add_pi();
        const Lit c = net.add_pi();
        const Lit u = net.and2(a, b);
        const Lit f = net.and2(u, c);
        net.add_po(f);
        net.add_po(u);  // external use of u
        net.compute_levels();
        const Cone cone = reconvergence_driven_cut(net, f.node(), 10);
        CHECK(cone.mffc == std::vector<uint32_t>{f.node()});
    }
    SUBCASE("matches the deref oracle on 1000 random cones")
    {
        std::mt19937_64 rng(31337);
        size_t checked = 0;
        while (checked < 1000) {
            const Aig net = random_aig(8, 80, 6, rng());
            for (uint32_t idx = 0; idx < net.num_nodes() && checked < 1000; ++idx) {
                if (!net.is_and(idx) || net.is_dead(idx) || net.ref_count(idx) == 0) continue;
                const Cone cone = reconvergence_driven_cut(net, idx, 10);
                auto expect = mffc_deref_oracle(net, cone);
                auto got = cone.mffc;
                std::sort(expect.begin(), expect.end());
                std::sort(got.begin(), got.end());
                CHECK(got == expect);
                ++checked;
            }
        }
    }
}

TEST_CASE("feature extraction")
{
    SUBCASE("single-AND cone of two PIs")
    {
        Aig net;
        const Lit a = net.add_pi();
        const Lit b = net.add_pi();
        const Lit f = net.and2(a, b);
        net.add_po(f);
        net.add_po(f);
        net.compute_levels();
        const Cone cone = reconvergence_driven_cut(net, f.node(), 10);
        const auto critical = net.mark_critical_path();
        const FeatureVector fv = extract_features(net, cone, critical);
        CHECK(fv.is_critical == 1);
        CHECK(fv.input_size == 2);
        CHECK(fv.node_size == 2);  // clamped from 1
        CHECK(fv.fanout_size == 2);
        CHECK(fv.positive_edges == 2);
        CHECK(fv.negative_edges == 0);
        CHECK(fv.max_depth == 1);
        CHECK(feature_clamp_count() > 0);
    }
    SUBCASE("all-inverter cone")
    {
        Aig net;
        const Lit a = net.add_pi();
        const Lit b = net.add_pi();
        const Lit f = net.and2(!a, !b);
        net.add_po(f);
        net.compute_levels();
        const Cone cone = reconvergence_driven_cut(net, f.node(), 10);
        const FeatureVector fv = extract_features(net, cone, net.mark_critical_path());
        CHECK(fv.positive_edges == 0);
        CHECK(fv.negative_edges == 2);
    }
    SUBCASE("edge counts match 2x volume on random cones; ranges respected")
    {
        const Aig net = random_aig(10, 150, 10, 808);
        const auto critical = net.mark_critical_path();
        for (uint32_t idx = 0; idx < net.num_nodes(); ++idx) {
            if (!net.is_and(idx) || net.is_dead(idx) || net.ref_count(idx) == 0) continue;
            const Cone cone = reconvergence_driven_cut(net, idx, 10);
            if (!cone.rewritable()) continue;
            const FeatureVector fv = extract_features(net, cone, critical);
            CHECK(fv.positive_edges + fv.negative_edges == 2 * (int)cone.volume.size());
            CHECK(fv.input_size >= 2);
            CHECK(fv.input_size <= 10);
            CHECK(fv.node_size >= 2);
            CHECK(fv.node_size <= 16);
            CHECK(fv.fanout_size >= 0);
            CHECK(fv.max_depth >= 1);
        }
    }
}

TEST_CASE("feature csv round trip")
{
    FeatureVector fv;
    fv.is_critical = 1;
    fv.input_size = 4;
    fv.node_size = 7;
    fv.fanout_size = 12;
    fv.positive_edges = 9;
    fv.negative_edges = 5;
    fv.max_depth = 3;
    CHECK(fv.to_csv_prefix() == "1,4,7,12,9,5,3");
    CHECK(FeatureVector::from_csv_prefix(fv.to_csv_prefix()) == fv);
}

TEST_CASE("simulate_cone")
{
    Aig net;
    const Lit a = net.add_pi();
    const Lit b = net.add_pi();
    const Lit f = net.and2(a, b);
    net.add_po(f);
    net.compute_levels();
    const Cone cone = reconvergence_driven_cut(net, f.node(), 10);
    CHECK(simulate_cone(net, cone).word(0) == 0x8);  // 1000

    SUBCASE("the two equivalence paradigms share one root-node function")
    {
        // f = ~x1 + x2~x3 has AIG root x1 & ~(x2 & ~x3) under a complemented
        // PO edge; h = x1(~x2+x3) is the same node function. Both cones
        // simulate to (10100010)_2 = 0xa2 with x1 as variable 0.
        Aig n2;
        const Lit x1 = n2.add_pi();
        const Lit x2 = n2.add_pi();
        const Lit x3 = n2.add_pi();
        const Lit root_f = n2.and2(x1, !n2.and2(x2, !x3));
        n2.add_po(!root_f);  // f itself
        Aig n3;
        const Lit y1 = n3.add_pi();
        const Lit y2 = n3.add_pi();
        const Lit y3 = n3.add_pi();
        const Lit root_h = n3.and2(y1, n3.or2(!y2, y3));
        n3.add_po(root_h);  // h itself
        n2.compute_levels();
        n3.compute_levels();
        const Cone cf = reconvergence_driven_cut(n2, root_f.node(), 10);
        const Cone ch = reconvergence_driven_cut(n3, root_h.node(), 10);
        const TruthTable tf = simulate_cone(n2, cf);
        const TruthTable th = simulate_cone(n3, ch);
        CHECK(tf == th);
        CHECK(tf.word(0) == 0xa2);
    }
}

TEST_CASE("cone too large")
{
    Cone cone;
    cone.leaves.assign(11, 0);
    Aig net;
    CHECK_THROWS_AS(simulate_cone(net, cone), ConeTooLarge);
}
