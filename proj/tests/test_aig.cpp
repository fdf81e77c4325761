#include <doctest.h>

#include <random>

#include "rrw/aig.hpp"
#include "rrw/benchgen.hpp"

using namespace rrw;

namespace {

// All PO values over all assignments, for small PI counts.
std::vector<std::vector<bool>> exhaustive_po_values(const Aig& net)
{
    std::vector<std::vector<bool>> out;
    const size_t n = net.num_pis();
    REQUIRE(n <= 12);
    for (uint32_t a = 0; a < (1u << n); ++a) {
        std::vector<bool> pis(n);
        for (size_t i = 0; i < n; ++i) pis[i] = (a >> i) & 1;
        out.push_back(net.eval(pis));
    }
    return out;
}

}  // namespace

TEST_CASE("and2 simplification rules")
{
    Aig net;
    const Lit a = net.add_pi();
    const Lit b = net.add_pi();
    CHECK(net.and2(a, Lit::zero()) == Lit::zero());
    CHECK(net.and2(a, Lit::one()) == a);
    CHECK(net.and2(a, a) == a);
    CHECK(net.and2(a, !a) == Lit::zero());
    const Lit ab = net.and2(a, b);
    CHECK(net.and2(b, a) == ab);  // commutativity via normalization
    CHECK(net.size() == 1);
}

TEST_CASE("structural hashing keeps live pairs unique")
{
    std::mt19937_64 rng(5);
    const Aig net = random_aig(6, 60, 4, 99);
    std::unordered_map<uint64_t, uint32_t> seen;
    for (uint32_t idx = 0; idx < net.num_nodes(); ++idx) {
        if (!net.is_and(idx) || net.is_dead(idx)) continue;
        const uint64_t key =
            ((uint64_t)net.node(idx).fanin0.data() << 32) | net.node(idx).fanin1.data();
        CHECK(!seen.count(key));
        seen[key] = idx;
        CHECK(net.node(idx).fanin0 < net.node(idx).fanin1);
    }
}

TEST_CASE("topological order")
{
    Aig net;
    SUBCASE("PIs only")
    {
        net.add_pi();
        net.add_pi();
        const auto order = net.topological_order();
        CHECK(order == std::vector<uint32_t>{1, 2});
    }
    SUBCASE("chain")
    {
        const Lit x = net.add_pi();
        const Lit y = net.add_pi();
        const Lit z = net.add_pi();
        const Lit a = net.and2(x, y);
        const Lit b = net.and2(a, z);
        const Lit c = net.and2(b, x);
        net.add_po(c);
        const auto order = net.topological_order();
        const std::vector<uint32_t> expect{1, 2, 3, a.node(), b.node(), c.node()};
        CHECK(order == expect);
    }
    SUBCASE("random DAG property")
    {
        const Aig r = random_aig(8, 50, 5, 1234);
        const auto order = r.topological_order();
        std::unordered_map<uint32_t, size_t> pos;
        for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        for (uint32_t idx : order) {
            if (!r.is_and(idx)) continue;
            for (Lit f : {r.node(idx).fanin0, r.node(idx).fanin1}) {
                if (f.node() == 0) continue;
                CHECK(pos.at(f.node()) < pos.at(idx));
            }
        }
    }
}

TEST_CASE("substitute is a semantic no-op for an equivalent literal")
{
    Aig net;
    const Lit a = net.add_pi();
    const Lit b = net.add_pi();
    const Lit c = net.add_pi();
    // f = a & (b | c); rebuilt differently as (a & b) | (a & c)
    const Lit f1 = net.and2(a, net.or2(b, c));
    net.add_po(f1);
    const auto before = exhaustive_po_values(net);

    const Lit g = net.or2(net.and2(a, b), net.and2(a, c));
    REQUIRE(g != f1);
    net.substitute(f1.node(), g);
    net.remove_dead_nodes();
    CHECK(exhaustive_po_values(net) == before);
    CHECK(net.check_ref_counts());
}

TEST_CASE("substitute conserves reference counts")
{
    Aig net;
    const Lit a = net.add_pi();
    const Lit b = net.add_pi();
    const Lit c = net.add_pi();
    const Lit victim = net.and2(a, b);
    net.and2(victim, c);
    net.and2(!victim, a);
    net.add_po(victim);
    REQUIRE(net.ref_count(victim.node()) == 3);

    const Lit repl = net.and2(b, c);
    const uint32_t repl_refs = net.ref_count(repl.node());
    net.substitute(victim.node(), repl);
    CHECK(net.ref_count(victim.node()) == 0);
    CHECK(net.ref_count(repl.node()) == repl_refs + 3);
    CHECK(net.check_ref_counts());
}

TEST_CASE("substitution cascades when rehashing reveals a duplicate")
{
    Aig net;
    const Lit a = net.add_pi();
    const Lit b = net.add_pi();
    const Lit c = net.add_pi();
    const Lit u = net.and2(a, b);
    const Lit v = net.and2(a, c);
    const Lit top_u = net.and2(u, c);   // will become AND(v', c) after redirect
    const Lit top_v = net.and2(v, c);
    net.add_po(top_u);
    net.add_po(top_v);
    REQUIRE(net.size() == 4);

    // Redirect u onto v: AND(u,c) rehashes to AND(v,c) which already exists,
    // so the two tops merge and one node survives.
    net.substitute(u.node(), v);
    net.remove_dead_nodes();
    CHECK(net.size() == 2);
    CHECK(net.po(0) == net.po(1));
    CHECK(net.check_ref_counts());
}

TEST_CASE("substitute rejects cycles")
{
    Aig net;
    const Lit a = net.add_pi();
    const Lit b = net.add_pi();
    const Lit u = net.and2(a, b);
    const Lit v = net.and2(u, a);
    net.add_po(v);
    CHECK_THROWS_AS(net.substitute(u.node(), v), CycleError);
}

TEST_CASE("remove_dead_nodes counts and preserves PO behavior")
{
    SUBCASE("nothing to remove")
    {
        Aig net = random_aig(5, 30, 3, 77);
        CHECK(net.remove_dead_nodes() == 0);
    }
    SUBCASE("substituted chain dies")
    {
        Aig net;
        const Lit a = net.add_pi();
        const Lit b = net.add_pi();
        Lit chain = net.and2(a, b);
        const int k = 6;
        for (int i = 1; i < k; ++i) chain = net.and2(chain, i % 2 ? a : b);
        net.add_po(chain);
        // The whole chain plus the root is exclusive fanout-free logic.
        net.substitute(chain.node(), a);
        CHECK(net.remove_dead_nodes() == k);
        CHECK(net.size() == 0);
        CHECK(net.check_ref_counts());
    }
    SUBCASE("removal never changes PO values")
    {
        Aig net = random_aig(6, 40, 4, 31);
        const Lit a = Lit(net.pis()[0], false);
        const Lit extra = net.and2(a, Lit(net.pis()[1], false));
        (void)extra;  // dangling
        const auto before = exhaustive_po_values(net);
        net.remove_dead_nodes();
        CHECK(exhaustive_po_values(net) == before);
    }
}

TEST_CASE("levels, depth and critical path")
{
    Aig net;
    const Lit a = net.add_pi();
    const Lit b = net.add_pi();
    const Lit c = net.add_pi();
    const Lit d = net.add_pi();

    SUBCASE("single AND")
    {
        const Lit f = net.and2(a, b);
        net.add_po(f);
        net.compute_levels();
        CHECK(net.level(f.node()) == 1);
        CHECK(net.depth() == 1);
        CHECK(net.mark_critical_path()[f.node()]);
    }
    SUBCASE("balanced tree of 4 PIs has depth 2")
    {
        const Lit f = net.and2(net.and2(a, b), net.and2(c, d));
        net.add_po(f);
        net.compute_levels();
        CHECK(net.depth() == 2);
    }
    SUBCASE("unbalanced chain of 5 ANDs: all chain nodes critical")
    {
        Lit chain = net.and2(a, b);
        std::vector<uint32_t> nodes{chain.node()};
        const Lit inputs[4] = {c, d, a, b};
        for (int i = 0; i < 4; ++i) {
            chain = net.and2(chain, inputs[i]);
            nodes.push_back(chain.node());
        }
        net.add_po(chain);
        net.compute_levels();
        CHECK(net.depth() == 5);
        const auto critical = net.mark_critical_path();
        for (uint32_t idx : nodes) CHECK(critical[idx]);
        // every critical And node has at least one critical fanin
        for (uint32_t idx = 0; idx < net.num_nodes(); ++idx) {
            if (!net.is_and(idx) || !critical[idx]) continue;
            CHECK((critical[net.node(idx).fanin0.node()] ||
                   critical[net.node(idx).fanin1.node()]));
        }
    }
}

TEST_CASE("ref-count recount matches after random operation sequences")
{
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 30; ++round) {
        Aig net = random_aig(6, 50, 5, rng());
        CHECK(net.check_ref_counts());
        // random substitutions of equivalent or arbitrary-but-acyclic targets
        for (int step = 0; step < 5; ++step) {
            std::vector<uint32_t> live;
            for (uint32_t idx = 0; idx < net.num_nodes(); ++idx)
                if (net.is_and(idx) && !net.is_dead(idx)) live.push_back(idx);
            if (live.size() < 2) break;
            const uint32_t victim = live[rng() % live.size()];
            const uint32_t target = live[rng() % live.size()];
            if (victim == target) continue;
            if (net.in_transitive_fanout(victim, target)) continue;
            net.substitute(victim, Lit(target, rng() & 1));
            net.remove_dead_nodes();
            CHECK(net.check_ref_counts());
        }
    }
}

TEST_CASE("compaction restores dense fanin-monotone numbering")
{
    std::mt19937_64 rng(4242);
    Aig net = random_aig(6, 60, 4, 555);
    // mutate, then compact
    for (int step = 0; step < 8; ++step) {
        std::vector<uint32_t> live;
        for (uint32_t idx = 0; idx < net.num_nodes(); ++idx)
            if (net.is_and(idx) && !net.is_dead(idx)) live.push_back(idx);
        if (live.size() < 2) break;
        const uint32_t victim = live[rng() % live.size()];
        const uint32_t target = live[rng() % live.size()];
        if (victim == target || net.in_transitive_fanout(victim, target)) continue;
        net.substitute(victim, Lit(target, false));
        net.remove_dead_nodes();
    }
    const auto before = exhaustive_po_values(net);
    const Aig dense = net.compact();
    CHECK(exhaustive_po_values(dense) == before);
    CHECK(dense.size() == net.size());
    CHECK(dense.num_nodes() == 1 + dense.num_pis() + dense.size());
    for (uint32_t idx = 0; idx < dense.num_nodes(); ++idx) {
        if (!dense.is_and(idx)) continue;
        CHECK(dense.node(idx).fanin0.node() < idx);
        CHECK(dense.node(idx).fanin1.node() < idx);
    }
    // compacting twice is byte-stable structurally
    const Aig dense2 = dense.compact();
    CHECK(dense2.num_nodes() == dense.num_nodes());
    for (uint32_t idx = 0; idx < dense.num_nodes(); ++idx) {
        if (!dense.is_and(idx)) continue;
        CHECK(dense.node(idx).fanin0 == dense2.node(idx).fanin0);
        CHECK(dense.node(idx).fanin1 == dense2.node(idx).fanin1);
    }
}
