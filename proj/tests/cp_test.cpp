#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pbproof/cp.hpp"
#include "pbproof/oracle.hpp"
#include "support/testgen.hpp"

using namespace pbproof;
using namespace pbproof::testgen;

TEST_CASE("division rounds the bound up and requires divisibility")
{
    // 2x + 2y >= 1 divided by 2 gives x + y >= 1.
    CpDerivation d;
    d.hypotheses.push(PbConstraint::ge({{2, L(1)}, {2, L(2)}}, 1));
    d.steps.push_back(CpStep::mk_hyp(1));
    d.steps.push_back(CpStep::mk_div(1, 2));
    d.goals.push(PbConstraint::ge({{1, L(1)}, {1, L(2)}}, 1));
    CHECK(check_cp(d).ok);

    CpDerivation bad = d;
    bad.hypotheses = PbFormula{PbConstraint::ge({{2, L(1)}, {3, L(2)}}, 1)};
    bad.goals = PbFormula{};
    auto r = check_cp(bad);
    CHECK(!r.ok);
    CHECK(r.step == 2);
}

TEST_CASE("addition computes the exact integer combination")
{
    // (x >= 1) + (-x + y >= 0) gives y >= 1.
    CpDerivation d;
    d.hypotheses.push(PbConstraint::ge({{1, L(1)}}, 1));
    d.hypotheses.push(PbConstraint::ge({{-1, L(1)}, {1, L(2)}}, 0));
    d.steps.push_back(CpStep::mk_hyp(1));
    d.steps.push_back(CpStep::mk_hyp(2));
    d.steps.push_back(CpStep::mk_add(1, 1, 2, 1));
    d.goals.push(PbConstraint::ge({{1, L(2)}}, 1));
    CHECK(check_cp(d).ok);
}

TEST_CASE("negative multipliers are rejected")
{
    CpDerivation d;
    d.hypotheses.push(PbConstraint::ge({{1, L(1)}}, 0));
    d.steps.push_back(CpStep::mk_hyp(1));
    d.steps.push_back(CpStep::mk_add(1, -1, 1, 0));
    auto r = check_cp(d);
    CHECK(!r.ok);
    CHECK(r.step == 2);
}

TEST_CASE("cp soundness against the oracle")
{
    // Random short derivations from random hypotheses: every accepted result
    // holds in every 0/1 model of the hypotheses.
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> v(1, 4), mult(0, 3), b(-2, 3);
    for (int round = 0; round < 150; ++round) {
        PbFormula hyps;
        for (int i = 0; i < 3; ++i)
            hyps.push(PbConstraint::ge(
                {{coeff(rng), Lit::pos(v(rng))}, {coeff(rng), Lit::pos(v(rng))}},
                b(rng)));
        std::vector<CpStep> steps;
        steps.push_back(CpStep::mk_hyp(1));
        steps.push_back(CpStep::mk_hyp(2));
        steps.push_back(CpStep::mk_hyp(3));
        steps.push_back(CpStep::mk_axge(v(rng)));
        steps.push_back(CpStep::mk_axle(v(rng)));
        for (int i = 0; i < 4; ++i) {
            std::uniform_int_distribution<int> ref(1, (int)steps.size());
            steps.push_back(CpStep::mk_add(ref(rng), mult(rng), ref(rng), mult(rng)));
        }
        std::vector<PbConstraint> derived;
        REQUIRE(run_cp_steps(hyps, steps, derived).ok);

        for (uint64_t m = 0; m < 16; ++m) {
            Assignment a;
            for (int x = 1; x <= 4; ++x)
                a.set(x, (m >> (x - 1)) & 1);
            if (!hyps.satisfied_by(a))
                continue;
            for (const PbConstraint& c : derived)
                CHECK(c.satisfied_by(a));
        }
    }
}

TEST_CASE("res_to_cp simulates single resolutions")
{
    // Resolve(x|y, ~x|y) on x derives y >= 1.
    ErDerivation pi;
    pi.premises = clause_list({{1, 2}, {-1, 2}});
    pi.steps.push_back(ErStep::make_premise(1, clause({1, 2})));
    pi.steps.push_back(ErStep::make_premise(2, clause({-1, 2})));
    pi.steps.push_back(ErStep::make_resolve(1, 2, L(1), clause({2})));
    pi.conclusions = {clause({2})};
    REQUIRE(check_er(pi).ok);

    CpDerivation d = res_to_cp(pi);
    CHECK(check_cp(d).ok);
    CHECK(d.goals.contains(clause_to_pb(clause({2}))));
}

TEST_CASE("res_to_cp on whole refutations ends at the contradiction")
{
    ErDerivation pi;
    pi.premises = clause_list({{1}, {-1}});
    pi.steps.push_back(ErStep::make_premise(1, clause({1})));
    pi.steps.push_back(ErStep::make_premise(2, clause({-1})));
    pi.steps.push_back(ErStep::make_resolve(1, 2, L(1), Clause{}));
    pi.conclusions = {Clause{}};
    CpDerivation d = res_to_cp(pi);
    CHECK(check_cp(d).ok);
    CHECK(d.goals.contains(PbConstraint::contradiction()));
}

TEST_CASE("res_to_cp handles weakening as axiom addition")
{
    ErDerivation pi;
    pi.premises = clause_list({{1}, {2}});
    pi.steps.push_back(ErStep::make_premise(1, clause({1})));
    pi.steps.push_back(ErStep::make_weaken(1, clause({1, -2})));
    pi.conclusions = {clause({1, -2})};
    REQUIRE(check_er(pi).ok);
    CpDerivation d = res_to_cp(pi);
    CHECK(check_cp(d).ok);
}

TEST_CASE("res_to_cp rejects extension steps")
{
    ErDerivation pi;
    pi.premises = clause_list({{1}});
    pi.steps.push_back(ErStep::make_extend(ExtensionAxiom::make_and(3, L(1), L(1))));
    CHECK_THROWS_AS(res_to_cp(pi), std::invalid_argument);
}

TEST_CASE("res_to_cp over random tree refutations, with a length bound")
{
    std::mt19937 rng(91);
    int built = 0;
    for (int round = 0; round < 120 && built < 20; ++round) {
        Cnf g = random_cnf(rng, 5, 14, 2);
        if (brute_sat(g, default_order(g)).has_value())
            continue;
        ErDerivation pi = tree_refutation_auto(g.clauses());
        CpDerivation d = res_to_cp(pi);
        CHECK(check_cp(d).ok);
        // Size: at most 6 emitted steps per source step at this clause width.
        size_t source = 0;
        for (const ErStep& s : pi.steps)
            source += 1 + s.clause.size();
        CHECK(d.steps.size() <= 6 * source);
        ++built;
    }
    CHECK(built >= 15);
}

TEST_CASE("tautologous resolvents translate to their box-implied forms")
{
    ErDerivation pi;
    pi.premises = clause_list({{1, 2}, {-1, -2}});
    pi.steps.push_back(ErStep::make_premise(1, clause({1, 2})));
    pi.steps.push_back(ErStep::make_premise(2, clause({-1, -2})));
    pi.steps.push_back(ErStep::make_resolve(1, 2, L(1), clause({2, -2})));
    pi.conclusions = {clause({2, -2})};
    REQUIRE(check_er(pi).ok);
    CpDerivation d = res_to_cp(pi);
    CHECK(check_cp(d).ok);
}

TEST_CASE("negclause_bridge forces each literal false")
{
    // C = x: from x <= 0 derive (1 - x) >= 1.
    CpDerivation d1 = negclause_bridge(clause({1}));
    CHECK(check_cp(d1).ok);
    CHECK(d1.goals.contains(clause_to_pb(clause({-1}))));

    // C = x | ~y: derives (1-x) >= 1 and y >= 1.
    CpDerivation d2 = negclause_bridge(clause({1, -2}));
    CHECK(check_cp(d2).ok);
    CHECK(d2.goals.size() == 2);

    // Empty clause: empty goal set.
    CpDerivation d3 = negclause_bridge(Clause{});
    CHECK(check_cp(d3).ok);
    CHECK(d3.goals.empty());

    CHECK_THROWS_AS(negclause_bridge(clause({1, -1})), std::invalid_argument);
}

TEST_CASE("negclause_bridge on wider clauses stays linear and checks")
{
    std::mt19937 rng(97);
    for (int round = 0; round < 50; ++round) {
        std::uniform_int_distribution<int> width(1, 6), var(1, 8), sgn(0, 1);
        std::vector<Lit> lits;
        std::set<Var> used;
        int w = width(rng);
        for (int i = 0; i < w; ++i) {
            int v = var(rng);
            if (!used.insert(v).second)
                continue;
            lits.push_back(sgn(rng) ? Lit::pos(v) : Lit::neg(v));
        }
        Clause c(std::move(lits));
        if (c.empty())
            continue;
        CpDerivation d = negclause_bridge(c);
        CHECK(check_cp(d).ok);
        CHECK(d.steps.size() <= 6 * c.size() + 6);
    }
}

namespace {

AdderBitShape interior_shape(Lit x, Lit y)
{
    AdderBitShape s;
    s.kind = AdderBitShape::Kind::Interior;
    s.x = x;
    s.y = y;
    s.cin = 10;
    s.g1 = 11;
    s.g2 = 12;
    s.e = 13;
    s.g3 = 14;
    s.g4 = 15;
    s.p = 16;
    s.z = 17;
    s.g6 = 18;
    s.cout = 19;
    return s;
}

AdderBitShape first_shape(Lit x, Lit y)
{
    AdderBitShape s;
    s.kind = AdderBitShape::Kind::First;
    s.x = x;
    s.y = y;
    s.g2 = 12;
    s.e = 13;
    s.z = 17;
    s.cout = 19;
    return s;
}

AdderBitShape last_shape()
{
    AdderBitShape s;
    s.kind = AdderBitShape::Kind::Last;
    s.cin = 10;
    s.z = 17;
    return s;
}

// Exhaustive semantic check: over every assignment of the shape's variables
// that satisfies the clause set, both derived constraints hold, and the
// equation matches the arithmetic.
void check_equation_semantics(const AdderBitShape& shape)
{
    auto [ge, le] = shape.equation();
    std::set<Var> vs;
    for (const Clause& c : shape.clauses())
        for (Var v : c.vars())
            vs.insert(v);
    std::vector<Var> vars(vs.begin(), vs.end());
    REQUIRE(vars.size() <= 16);
    for (uint64_t m = 0; m < (uint64_t(1) << vars.size()); ++m) {
        Assignment a;
        for (size_t i = 0; i < vars.size(); ++i)
            a.set(vars[i], (m >> i) & 1);
        bool sat = true;
        for (const Clause& c : shape.clauses())
            if (!satisfies(a, Cnf{c}))
                sat = false;
        if (!sat)
            continue;
        CHECK(ge.satisfied_by(a));
        CHECK(le.satisfied_by(a));
    }
}

} // namespace

TEST_CASE("equation_template: interior bit in all four polarities")
{
    for (int xs = 0; xs < 2; ++xs)
        for (int ys = 0; ys < 2; ++ys) {
            Lit x = xs ? Lit::neg(1) : Lit::pos(1);
            Lit y = ys ? Lit::neg(2) : Lit::pos(2);
            AdderBitShape s = interior_shape(x, y);
            CpDerivation d = equation_template(s);
            CHECK(check_cp(d).ok);
            check_equation_semantics(s);
        }
}

TEST_CASE("equation_template: boundary bits")
{
    AdderBitShape f = first_shape(L(1), L(2));
    CpDerivation d1 = equation_template(f);
    CHECK(check_cp(d1).ok);
    check_equation_semantics(f);

    AdderBitShape l = last_shape();
    CpDerivation d2 = equation_template(l);
    CHECK(check_cp(d2).ok);
    check_equation_semantics(l);
}

TEST_CASE("equation_template: interior bit blocks are functional")
{
    // For every input (x, y, cin), the extension block determines all gates,
    // and the equation x + z + cin = y + 2 cout holds exactly.
    AdderBitShape s = interior_shape(L(1), L(2));
    ExtensionBlock blk;
    blk.base_vars = {1, 2, 10};
    blk.axioms = s.axioms();
    REQUIRE(blk.validate().ok);
    for (int m = 0; m < 8; ++m) {
        Assignment base;
        base.set(1, m & 1);
        base.set(2, (m >> 1) & 1);
        base.set(10, (m >> 2) & 1);
        Assignment full = blk.evaluate(base);
        int x = base.value(1), y = base.value(2), cin = base.value(10);
        int z = full.value(17), cout = full.value(19);
        CHECK(x + z + cin == y + 2 * cout);
    }
}

TEST_CASE("builder adjust reaches weaker constraints exactly")
{
    PbFormula hyps;
    hyps.push(PbConstraint::ge({{1, L(1)}, {1, L(2)}}, 1));
    CpBuilder b(&hyps);
    size_t h = b.hyp(1);
    // Target: x1 + 2 x2 - x3 >= -2 (weaker in bound, different coefficients).
    PbConstraint t = PbConstraint::ge({{1, L(1)}, {2, L(2)}, {-1, L(3)}}, -2);
    size_t r = b.adjust(h, t);
    CHECK(b.result(r) == t);
    CHECK(check_cp_steps(hyps, b.steps(), PbFormula{t}).ok);

    // box_implied covers axioms-only constraints.
    CpBuilder b2(&hyps);
    PbConstraint triv = PbConstraint::ge({{2, L(1)}, {-3, L(2)}}, -3);
    size_t r2 = b2.box_implied(triv);
    CHECK(b2.result(r2) == triv);
}
