#include <doctest.h>

#include <random>

#include "rrw/benchgen.hpp"
#include "rrw/isop.hpp"

using namespace rrw;

namespace {

TruthTable random_table(int n, std::mt19937_64& rng)
{
    TruthTable t = TruthTable::zeros(n);
    for (uint32_t p = 0; p < t.num_bits(); ++p) t.set_bit(p, rng() & 1);
    return t;
}

// Exactness plus cube- and literal-irredundancy, checked from first
// principles over all 2^n points.
void check_isop_properties(const TruthTable& tt, const std::vector<Cube>& cover)
{
    const int n = tt.num_vars();
    REQUIRE(cover_table(cover, n) == tt);
    for (const Cube& c : cover) REQUIRE((c.table(n) & ~tt).is_const0());

    for (size_t i = 0; i < cover.size(); ++i) {
        std::vector<Cube> without;
        for (size_t j = 0; j < cover.size(); ++j)
            if (j != i) without.push_back(cover[j]);
        CHECK(cover_table(without, n) != tt);
    }
    for (size_t i = 0; i < cover.size(); ++i) {
        for (int v = 0; v < n; ++v) {
            for (bool neg : {false, true}) {
                const uint32_t bit = 1u << v;
                if (!((neg ? cover[i].negative_mask : cover[i].positive_mask) & bit)) continue;
                std::vector<Cube> weakened = cover;
                (neg ? weakened[i].negative_mask : weakened[i].positive_mask) &= ~bit;
                const bool still_exact = cover_table(weakened, n) == tt &&
                                         (weakened[i].table(n) & ~tt).is_const0();
                CHECK(!still_exact);
            }
        }
    }
}

}  // namespace

TEST_CASE("isop basics")
{
    SUBCASE("constant 1 gives the single tautology cube")
    {
        const auto cover = isop(TruthTable::ones(3));
        REQUIRE(cover.size() == 1);
        CHECK(cover[0].positive_mask == 0);
        CHECK(cover[0].negative_mask == 0);
    }
    SUBCASE("constant 0 gives the empty cover")
    {
        CHECK(isop(TruthTable::zeros(3)).empty());
    }
    SUBCASE("a single cube comes back as itself")
    {
        const TruthTable a = TruthTable::projection(0, 3);
        const TruthTable b = TruthTable::projection(1, 3);
        const TruthTable c = TruthTable::projection(2, 3);
        const auto cover = isop(a & b & c);
        REQUIRE(cover.size() == 1);
        CHECK(cover[0].positive_mask == 0b111u);
        CHECK(cover[0].negative_mask == 0);
    }
    SUBCASE("a*b + ~a*c is a 2-cube irredundant cover")
    {
        const TruthTable a = TruthTable::projection(0, 3);
        const TruthTable b = TruthTable::projection(1, 3);
        const TruthTable c = TruthTable::projection(2, 3);
        const TruthTable f = (a & b) | (~a & c);
        const auto cover = isop(f);
        CHECK(cover.size() == 2);
        check_isop_properties(f, cover);
    }
}

TEST_CASE("isop properties hold exhaustively at 3 variables")
{
    for (uint64_t w = 0; w < 256; ++w) {
        const TruthTable tt = TruthTable::from_word(w, 3);
        check_isop_properties(tt, isop(tt));
    }
}

TEST_CASE("isop properties hold on random 4-6 variable functions")
{
    std::mt19937_64 rng(606);
    for (int iter = 0; iter < 400; ++iter) {
        const int n = 4 + (int)(rng() % 3);
        const TruthTable tt = random_table(n, rng);
        check_isop_properties(tt, isop(tt));
    }
}

TEST_CASE("factoring")
{
    SUBCASE("single cube becomes an And of its literals")
    {
        Cube c;
        c.positive_mask = 0b101;
        c.negative_mask = 0b010;
        const FactoredExpr e = factor({c});
        REQUIRE(e.kind == FactoredExpr::Kind::And);
        CHECK(e.literal_count() == 3);
        CHECK(e.table(3) == c.table(3));
    }
    SUBCASE("{ab, ac} factors to a(b+c): 3 literals instead of 4")
    {
        Cube ab, ac;
        ab.positive_mask = 0b011;
        ac.positive_mask = 0b101;
        const std::vector<Cube> cover{ab, ac};
        const FactoredExpr e = factor(cover);
        CHECK(e.literal_count() == 3);
        CHECK(e.table(3) == cover_table(cover, 3));
    }
    SUBCASE("factoring never increases the literal count; functions agree")
    {
        std::mt19937_64 rng(7007);
        for (int iter = 0; iter < 10000; ++iter) {
            const int n = 2 + (int)(rng() % 5);  // up to 6 vars
            TruthTable tt = random_table(n, rng);
            if (tt.is_const0() || tt.is_const1()) continue;
            const auto cover = isop(tt);
            const FactoredExpr e = factor(cover);
            CHECK(e.table(n) == tt);
            CHECK(e.literal_count() <= cover_literals(cover));
        }
    }
    SUBCASE("flattening: no And under And, no Or under Or")
    {
        std::mt19937_64 rng(1111);
        std::function<void(const FactoredExpr&)> walk = [&](const FactoredExpr& e) {
            for (const FactoredExpr& c : e.children) {
                CHECK(c.kind != e.kind);
                walk(c);
            }
        };
        for (int iter = 0; iter < 200; ++iter) {
            TruthTable tt = random_table(5, rng);
            if (tt.is_const0() || tt.is_const1()) continue;
            walk(factor(isop(tt)));
        }
    }
}

TEST_CASE("isop rewrite candidates")
{
    SUBCASE("candidates re-simulate to the cone function")
    {
        std::mt19937_64 rng(515);
        size_t checked = 0;
        while (checked < 500) {
            const Aig net = random_aig(8, 60, 5, rng());
            for (uint32_t idx = 0; idx < net.num_nodes() && checked < 500; ++idx) {
                if (!net.is_and(idx) || net.is_dead(idx) || net.ref_count(idx) == 0) continue;
                const Cone cone = reconvergence_driven_cut(net, idx, 10);
                if (!cone.rewritable()) continue;
                const auto cand = isop_rewrite_candidate(net, cone);
                REQUIRE(cand);
                CHECK(apply_npn_transform(cand->chain.simulate(), cand->port) ==
                      simulate_cone(net, cone));
                ++checked;
            }
        }
    }
    SUBCASE("a flat unfactored cover shrinks")
    {
        // a&b | a&c | a&d built flat: 7 nodes; factored a&(b|c|d): 3 nodes
        Aig net;
        const Lit a = net.add_pi();
        const Lit b = net.add_pi();
        const Lit c = net.add_pi();
        const Lit d = net.add_pi();
        const Lit f =
            net.or2(net.or2(net.and2(a, b), net.and2(a, c)), net.and2(a, d));
        net.add_po(f);
        net.compute_levels();
        const Cone cone = reconvergence_driven_cut(net, f.node(), 10);
        REQUIRE(cone.input_size() == 4);
        const auto cand = isop_rewrite_candidate(net, cone);
        REQUIRE(cand);
        CHECK(cand->chain.size() < (int)cone.mffc.size());
    }
    SUBCASE("the complemented polarity is used when its cover is smaller")
    {
        // f = ~(a | b | c | d): onset needs 1 cube of 4 literals negated,
        // positive polarity would need... the negative cover wins.
        Aig net;
        const Lit a = net.add_pi();
        const Lit b = net.add_pi();
        const Lit c = net.add_pi();
        const Lit d = net.add_pi();
        const Lit f = net.and2(net.and2(!a, !b), net.and2(!c, !d));
        net.add_po(f);
        net.compute_levels();
        const Cone cone = reconvergence_driven_cut(net, f.node(), 10);
        const auto cand = isop_rewrite_candidate(net, cone);
        REQUIRE(cand);
        CHECK(apply_npn_transform(cand->chain.simulate(), cand->port) == simulate_cone(net, cone));
    }
}
