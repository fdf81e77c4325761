#include "rrw/isop.hpp"

#include <algorithm>
#include <bit>

namespace rrw {

int Cube::num_literals() const
{
    return std::popcount(positive_mask) + std::popcount(negative_mask);
}

TruthTable Cube::table(int num_vars) const
{
    TruthTable t = TruthTable::ones(num_vars);
    for (int v = 0; v < num_vars; ++v) {
        if ((positive_mask >> v) & 1) t = t & TruthTable::projection(v, num_vars);
        if ((negative_mask >> v) & 1) t = t & ~TruthTable::projection(v, num_vars);
    }
    return t;
}

TruthTable cover_table(const std::vector<Cube>& cubes, int num_vars)
{
    TruthTable t = TruthTable::zeros(num_vars);
    for (const Cube& c : cubes) t = t | c.table(num_vars);
    return t;
}

int cover_literals(const std::vector<Cube>& cubes)
{
    int total = 0;
    for (const Cube& c : cubes) total += c.num_literals();
    return total;
}

namespace {

// Cover C with L <= C <= U; with L == U this is the exact onset.
std::vector<Cube> isop_rec(const TruthTable& lower, const TruthTable& upper)
{
    if (lower.is_const0()) return {};
    if (upper.is_const1()) return {Cube{}};

    const int n = lower.num_vars();
    int x = -1;
    for (int v = 0; v < n; ++v) {
        if (lower.depends_on(v) || upper.depends_on(v)) {
            x = v;
            break;
        }
    }
    assert(x >= 0);

    const TruthTable l0 = lower.cofactor(x, false);
    const TruthTable l1 = lower.cofactor(x, true);
    const TruthTable u0 = upper.cofactor(x, false);
    const TruthTable u1 = upper.cofactor(x, true);

    // Minterms that only a ~x cube can take, then only an x cube, then the rest.
    std::vector<Cube> c0 = isop_rec(l0 & ~u1, u0);
    std::vector<Cube> c1 = isop_rec(l1 & ~u0, u1);
    const TruthTable cov0 = cover_table(c0, n);
    const TruthTable cov1 = cover_table(c1, n);
    std::vector<Cube> c2 = isop_rec((l0 & ~cov0) | (l1 & ~cov1), u0 & u1);

    std::vector<Cube> result;
    result.reserve(c0.size() + c1.size() + c2.size());
    for (Cube c : c0) {
        c.negative_mask |= 1u << x;
        result.push_back(c);
    }
    for (Cube c : c1) {
        c.positive_mask |= 1u << x;
        result.push_back(c);
    }
    for (const Cube& c : c2) result.push_back(c);
    return result;
}

// Expand every cube to a prime, then drop cubes whose removal keeps the
// cover exact. The recursion already produces irredundant prime covers in
// almost all cases; this pass pins the property unconditionally.
void make_irredundant(std::vector<Cube>& cover, const TruthTable& tt)
{
    const int n = tt.num_vars();
    const TruthTable offset = ~tt;
    for (Cube& c : cover) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v = 0; v < n; ++v) {
                for (uint32_t* mask : {&c.positive_mask, &c.negative_mask}) {
                    if (!((*mask >> v) & 1)) continue;
                    Cube trial = c;
                    *(mask == &c.positive_mask ? &trial.positive_mask : &trial.negative_mask) &=
                        ~(1u << v);
                    if ((trial.table(n) & offset).is_const0()) {
                        c = trial;
                        changed = true;
                    }
                }
            }
        }
    }

    bool removed = true;
    while (removed) {
        removed = false;
        for (size_t i = 0; i < cover.size(); ++i) {
            std::vector<Cube> rest;
            rest.reserve(cover.size() - 1);
            for (size_t j = 0; j < cover.size(); ++j)
                if (j != i) rest.push_back(cover[j]);
            if (cover_table(rest, n) == tt) {
                cover = std::move(rest);
                removed = true;
                break;
            }
        }
    }
}

}  // namespace

std::vector<Cube> isop(const TruthTable& tt)
{
    if (tt.num_vars() > kMaxTruthVars) throw ConeTooLarge("isop beyond 10 variables");
    std::vector<Cube> cover = isop_rec(tt, tt);
    assert(cover_table(cover, tt.num_vars()) == tt);
    make_irredundant(cover, tt);
    return cover;
}

int FactoredExpr::literal_count() const
{
    if (kind == Kind::Literal) return 1;
    int total = 0;
    for (const FactoredExpr& c : children) total += c.literal_count();
    return total;
}

TruthTable FactoredExpr::table(int num_vars) const
{
    switch (kind) {
    case Kind::Literal: {
        const TruthTable p = TruthTable::projection(var, num_vars);
        return negated ? ~p : p;
    }
    case Kind::And: {
        TruthTable t = TruthTable::ones(num_vars);
        for (const FactoredExpr& c : children) t = t & c.table(num_vars);
        return t;
    }
    case Kind::Or: {
        TruthTable t = TruthTable::zeros(num_vars);
        for (const FactoredExpr& c : children) t = t | c.table(num_vars);
        return t;
    }
    }
    return TruthTable::zeros(num_vars);
}

namespace {

FactoredExpr literal_expr(int var, bool negated)
{
    FactoredExpr e;
    e.kind = FactoredExpr::Kind::Literal;
    e.var = var;
    e.negated = negated;
    return e;
}

FactoredExpr cube_expr(const Cube& c)
{
    std::vector<FactoredExpr> lits;
    for (int v = 0; v < 32; ++v) {
        if ((c.positive_mask >> v) & 1) lits.push_back(literal_expr(v, false));
        if ((c.negative_mask >> v) & 1) lits.push_back(literal_expr(v, true));
    }
    assert(!lits.empty());
    if (lits.size() == 1) return lits[0];
    FactoredExpr e;
    e.kind = FactoredExpr::Kind::And;
    e.children = std::move(lits);
    return e;
}

void append_flattened(std::vector<FactoredExpr>& out, FactoredExpr e, FactoredExpr::Kind parent)
{
    if (e.kind == parent) {
        for (FactoredExpr& c : e.children) out.push_back(std::move(c));
    } else {
        out.push_back(std::move(e));
    }
}

}  // namespace

FactoredExpr factor(const std::vector<Cube>& cubes)
{
    assert(!cubes.empty());
    if (cubes.size() == 1) return cube_expr(cubes[0]);

    // Most frequent literal; ties to the lowest variable, positive first.
    int best_var = -1;
    bool best_neg = false;
    int best_count = 0;
    for (int v = 0; v < 32; ++v) {
        for (bool neg : {false, true}) {
            int count = 0;
            for (const Cube& c : cubes)
                if (((neg ? c.negative_mask : c.positive_mask) >> v) & 1) ++count;
            if (count > best_count) {
                best_count = count;
                best_var = v;
                best_neg = neg;
            }
        }
    }
    assert(best_count >= 1);

    if (best_count == 1) {
        FactoredExpr e;
        e.kind = FactoredExpr::Kind::Or;
        for (const Cube& c : cubes) append_flattened(e.children, cube_expr(c), e.kind);
        return e;
    }

    std::vector<Cube> quotient;
    std::vector<Cube> remainder;
    bool absorbed = false;  // the divisor literal appears as a whole cube
    for (const Cube& c : cubes) {
        const uint32_t bit = 1u << best_var;
        if (((best_neg ? c.negative_mask : c.positive_mask) & bit) != 0) {
            Cube q = c;
            (best_neg ? q.negative_mask : q.positive_mask) &= ~bit;
            if (q.positive_mask == 0 && q.negative_mask == 0)
                absorbed = true;
            else
                quotient.push_back(q);
        } else {
            remainder.push_back(c);
        }
    }

    FactoredExpr div_part;
    if (absorbed || quotient.empty()) {
        div_part = literal_expr(best_var, best_neg);
    } else {
        div_part.kind = FactoredExpr::Kind::And;
        append_flattened(div_part.children, literal_expr(best_var, best_neg), div_part.kind);
        append_flattened(div_part.children, factor(quotient), div_part.kind);
    }
    if (remainder.empty()) return div_part;

    FactoredExpr e;
    e.kind = FactoredExpr::Kind::Or;
    append_flattened(e.children, std::move(div_part), e.kind);
    append_flattened(e.children, factor(remainder), e.kind);
    return e;
}

namespace {

// Balanced pairwise halving over a child list, with optional complementation
// of the inputs; returns the literal of the combined AND tree.
Lit combine_balanced(Chain& chain, std::vector<Lit> lits)
{
    while (lits.size() > 1) {
        std::vector<Lit> next;
        next.reserve((lits.size() + 1) / 2);
        for (size_t i = 0; i + 1 < lits.size(); i += 2) {
            chain.steps.push_back({lits[i], lits[i + 1]});
            next.push_back(Lit((uint32_t)(chain.num_inputs + chain.steps.size()), false));
        }
        if (lits.size() & 1) next.push_back(lits.back());
        lits = std::move(next);
    }
    return lits[0];
}

Lit emit_expr(Chain& chain, const FactoredExpr& e)
{
    switch (e.kind) {
    case FactoredExpr::Kind::Literal:
        return Lit((uint32_t)e.var + 1, e.negated);
    case FactoredExpr::Kind::And: {
        std::vector<Lit> lits;
        lits.reserve(e.children.size());
        for (const FactoredExpr& c : e.children) lits.push_back(emit_expr(chain, c));
        return combine_balanced(chain, std::move(lits));
    }
    case FactoredExpr::Kind::Or: {
        std::vector<Lit> lits;
        lits.reserve(e.children.size());
        for (const FactoredExpr& c : e.children) lits.push_back(!emit_expr(chain, c));
        return !combine_balanced(chain, std::move(lits));
    }
    }
    return Lit::zero();
}

}  // namespace

std::optional<RewriteCandidate> isop_rewrite_candidate(const Aig& net, const Cone& cone)
{
    const int k = cone.input_size();
    if (k < 2 || k > kMaxTruthVars) return std::nullopt;
    const TruthTable tt = simulate_cone(net, cone);

    RewriteCandidate cand;
    cand.chain.num_inputs = k;
    cand.port = NpnTransform::identity(k);
    if (tt.is_const0() || tt.is_const1()) {
        cand.chain.out = tt.is_const1() ? Lit::one() : Lit::zero();
        return cand;
    }

    const std::vector<Cube> cover_pos = isop(tt);
    const std::vector<Cube> cover_neg = isop(~tt);
    const bool use_neg = cover_literals(cover_neg) < cover_literals(cover_pos);
    const std::vector<Cube>& cover = use_neg ? cover_neg : cover_pos;

    const FactoredExpr expr = factor(cover);
    cand.chain.out = emit_expr(cand.chain, expr);
    cand.port.output_phase = use_neg;
    return cand;
}

}  // namespace rrw
