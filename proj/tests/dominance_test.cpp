#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pbproof/oracle.hpp"
#include "pbproof/translate.hpp"
#include "support/testgen.hpp"

using namespace pbproof;
using namespace pbproof::testgen;

namespace {

// Dominance step adding a constraint already in the core: the first witness
// re-derives the core and the reflexive order instance; the second clashes
// C with ~C.
DomStep self_dominance(const Configuration& cfg, size_t core_idx)
{
    const PbConstraint& c = cfg.core[core_idx - 1];
    PbFormula hyps1 = cfg.core;
    for (const PbConstraint& d : cfg.derived.constraints())
        hyps1.push(d);
    hyps1.push(c.negated());

    CpBuilder b1(&hyps1);
    for (size_t i = 1; i <= cfg.core.size(); ++i)
        b1.hyp(i);
    {
        PbFormula ord = cfg.order.instantiate(cfg.z_literals(), cfg.z_literals());
        for (const PbConstraint& d : ord.constraints())
            b1.box_implied(d);
    }

    CpBuilder b2(&hyps1); // same indexing; the extra order hypothesis is unused
    size_t hc = b2.hyp(core_idx);
    size_t hn = b2.hyp(cfg.core.size() + cfg.derived.size() + 1);
    size_t clash = b2.add(hc, 1, hn, 1);
    if (!b2.result(clash).is_contradiction()) {
        // c + ~c always sums to 0 >= 1.
        throw std::logic_error("self_dominance: expected a contradiction");
    }
    return DomStep::dominance(c, Substitution::identity(), b1.take_steps(),
                              b2.take_steps());
}

DomStep impl_of_sum(const Configuration& cfg, size_t i, size_t j)
{
    PbFormula hyps = cfg.core;
    for (const PbConstraint& d : cfg.derived.constraints())
        hyps.push(d);
    CpBuilder b(&hyps);
    size_t s = b.add(b.hyp(i), 1, b.hyp(j), 1);
    return DomStep::impl_derivation(b.result(s), b.take_steps());
}

} // namespace

TEST_CASE("implicational derivation and transfer")
{
    DomProof p;
    p.mode = DomMode::Linear;
    p.input = cnf_to_pb(cnf({{1}, {-1, 2}}));
    Configuration cfg = Configuration::initial(p.input);
    p.steps.push_back(impl_of_sum(cfg, 1, 2)); // x1 + (x2 - x1) = x2 >= 1... plus div
    // The sum x1 >= 1 plus x2 - x1 >= 0 is x2 >= 1 directly.
    p.steps.push_back(DomStep::transfer({1}));
    Configuration out;
    auto r = check_dom(p, &out);
    INFO(r.reason);
    CHECK(r.ok);
    CHECK(out.core.contains(clause_to_pb(clause({2}))));
}

TEST_CASE("implicational witness must derive the stated constraint")
{
    DomProof p;
    p.input = cnf_to_pb(cnf({{1}}));
    DomStep s;
    s.kind = DomStep::Kind::ImplDeriv;
    s.constraint = clause_to_pb(clause({2}));
    s.witness1 = {CpStep::mk_hyp(1)};
    p.steps.push_back(s);
    auto r = check_dom(p);
    CHECK(!r.ok);
    CHECK(r.step == 1);
}

TEST_CASE("the A.4 extension redundance triple is accepted")
{
    for (auto kind : {ExtensionAxiom::Kind::And, ExtensionAxiom::Kind::Alias,
                      ExtensionAxiom::Kind::Const}) {
        DomProof p;
        p.mode = DomMode::Linear;
        p.input = cnf_to_pb(cnf({{1, 2}, {-1, -2}}));
        Configuration cfg = Configuration::initial(p.input);
        ExtensionAxiom ax = kind == ExtensionAxiom::Kind::And
                                ? ExtensionAxiom::make_and(5, L(1), L(-2))
                            : kind == ExtensionAxiom::Kind::Alias
                                ? ExtensionAxiom::make_alias(5, L(-1))
                                : ExtensionAxiom::make_const(5, true);
        for (DomStep& s : extension_redundance(cfg.core, ax, cfg.order, cfg.zvars))
            p.steps.push_back(std::move(s));
        auto r = check_dom(p);
        INFO(r.reason);
        CHECK(r.ok);
    }
}

TEST_CASE("extension redundance under a live linear order")
{
    DomProof p;
    p.mode = DomMode::Linear;
    p.input = cnf_to_pb(cnf({{1, 2}}));
    p.steps.push_back(DomStep::order_change(OrderSpec::linear({2, 1}), {1, 2}));
    Configuration cfg = Configuration::initial(p.input);
    apply_dom_step(cfg, p.steps[0]);
    ExtensionAxiom ax = ExtensionAxiom::make_and(7, L(1), L(2));
    for (DomStep& s : extension_redundance(cfg.core, ax, cfg.order, cfg.zvars))
        p.steps.push_back(std::move(s));
    auto r = check_dom(p);
    INFO(r.reason);
    CHECK(r.ok);
}

TEST_CASE("redundance requires its witness to cover every image")
{
    DomProof p;
    p.input = cnf_to_pb(cnf({{1, 2}}));
    DomStep s;
    s.kind = DomStep::Kind::Redundance;
    s.constraint = clause_to_pb(clause({3}));
    s.omega.set(3, Lit::constant(true));
    s.witness1 = {CpStep::mk_hyp(1)}; // misses the image of the new constraint
    p.steps.push_back(s);
    CHECK(!check_dom(p).ok);
}

TEST_CASE("core deletion needs a redundance witness, derived deletion is free")
{
    DomProof p;
    p.mode = DomMode::Linear;
    p.input = cnf_to_pb(cnf({{1, 2}}));
    Configuration cfg = Configuration::initial(p.input);

    // Add y <-> x1 & x2 by redundance, transfer one of its clauses to core,
    // then delete it again with the replayed witness.
    ExtensionAxiom ax = ExtensionAxiom::make_and(5, L(1), L(2));
    auto steps = extension_redundance(cfg.core, ax, cfg.order, cfg.zvars);
    for (DomStep& s : steps) {
        p.steps.push_back(s);
        apply_dom_step(cfg, s);
    }
    // Drop all derived constraints: free.
    p.steps.push_back(DomStep::deletion({1, 2, 3}));
    {
        DomStep& del = p.steps.back();
        apply_dom_step(cfg, del);
    }
    auto r = check_dom(p);
    INFO(r.reason);
    CHECK(r.ok);

    // A core removal without a witness is rejected.
    DomProof bad;
    bad.input = cnf_to_pb(cnf({{1}, {2}}));
    DomStep del;
    del.kind = DomStep::Kind::Deletion;
    del.core_removal = 2;
    bad.steps.push_back(del);
    CHECK(!check_dom(bad).ok);

    // With a proper witness the removal goes through: {x2} was added... use
    // a redundant constraint: core {x1, x1|x2}: x1|x2 is redundant via
    // omega = identity? No: re-deriving needs C' u {~C} |- images. Use the
    // A.4 pattern instead: add the alias clause and remove it.
    DomProof ok2;
    ok2.mode = DomMode::Linear;
    ok2.input = cnf_to_pb(cnf({{1}}));
    Configuration c2 = Configuration::initial(ok2.input);
    ExtensionAxiom alias = ExtensionAxiom::make_alias(4, L(1));
    for (DomStep& s : extension_redundance(c2.core, alias, c2.order, c2.zvars)) {
        ok2.steps.push_back(s);
        apply_dom_step(c2, s);
    }
    ok2.steps.push_back(DomStep::transfer({1, 2}));
    apply_dom_step(c2, ok2.steps.back());
    ok2.steps.push_back(DomStep::deletion({1, 2}));
    apply_dom_step(c2, ok2.steps.back());
    //

    // Now remove the transferred clause (~x1 | y) ... i.e. core index 3 is
    // (1-y)+x1>=1? The first alias clause (~u | y): core index 2.
    {
        DomStep rm;
        rm.kind = DomStep::Kind::Deletion;
        rm.core_removal = 3; // (~y | u) clause, redundant over the rest
        rm.omega.set(4, Lit::pos(1));
        // Witness against (core without idx 3) u {~C}: re-derive images.
        std::vector<PbConstraint> rest;
        for (size_t i = 0; i < c2.core.size(); ++i)
            if (i + 1 != 3)
                rest.push_back(c2.core[i]);
        PbConstraint victim = c2.core[2];
        PbFormula hyps{rest};
        hyps.push(victim.negated());
        CpBuilder b(&hyps);
        for (size_t i = 1; i <= rest.size(); ++i) {
            PbConstraint img = rest[i - 1].restricted(rm.omega);
            if (img == rest[i - 1])
                b.hyp(i);
            else
                b.box_implied(img);
        }
        b.box_implied(victim.restricted(rm.omega));
        rm.witness1 = b.take_steps();
        ok2.steps.push_back(rm);
    }
    auto r2 = check_dom(ok2);
    INFO(r2.reason);
    CHECK(r2.ok);
}

TEST_CASE("dominance: accepted in linear mode, rejected in weak mode when derived is nonempty")
{
    auto build = [](DomMode mode) {
        DomProof p;
        p.mode = mode;
        p.input = cnf_to_pb(cnf({{1}, {1, 2}}));
        Configuration cfg = Configuration::initial(p.input);
        // Put something into the derived set first.
        p.steps.push_back(impl_of_sum(cfg, 1, 2));
        apply_dom_step(cfg, p.steps.back());
        // Then a dominance step re-adding a core constraint.
        p.steps.push_back(self_dominance(cfg, 1));
        return p;
    };
    auto linear = check_dom(build(DomMode::Linear));
    INFO(linear.reason);
    CHECK(linear.ok);

    auto weak = check_dom(build(DomMode::WeakLinear));
    CHECK(!weak.ok);
    CHECK(weak.step == 2);
    CHECK(weak.reason.find("weak") != std::string::npos);

    // With an empty derived set the same dominance step passes in weak mode.
    DomProof p;
    p.mode = DomMode::WeakLinear;
    p.input = cnf_to_pb(cnf({{1}, {1, 2}}));
    Configuration cfg = Configuration::initial(p.input);
    p.steps.push_back(self_dominance(cfg, 1));
    auto r = check_dom(p);
    INFO(r.reason);
    CHECK(r.ok);
}

TEST_CASE("order change requires an empty derived set and matching arity")
{
    DomProof p;
    p.mode = DomMode::Linear;
    p.input = cnf_to_pb(cnf({{1}, {1, 2}}));
    Configuration cfg = Configuration::initial(p.input);
    p.steps.push_back(impl_of_sum(cfg, 1, 2));
    p.steps.push_back(DomStep::order_change(OrderSpec::linear({2, 1}), {1, 2}));
    auto r = check_dom(p);
    CHECK(!r.ok);
    CHECK(r.step == 2);

    DomProof ok;
    ok.mode = DomMode::Linear;
    ok.input = p.input;
    ok.steps.push_back(DomStep::order_change(OrderSpec::linear({2, 1}), {1, 2}));
    CHECK(check_dom(ok).ok);

    DomProof bad;
    bad.mode = DomMode::Linear;
    bad.input = p.input;
    bad.steps.push_back(DomStep::order_change(OrderSpec::linear({2}), {1, 2}));
    CHECK(!check_dom(bad).ok);
}

TEST_CASE("linear mode rejects general orders; full mode validates their proofs")
{
    GeneralOrder g;
    g.u_dummies = {10};
    g.v_dummies = {11};
    g.w_dummies = {12};
    // O(u, v): u <= v as a PB constraint v - u >= 0.
    g.formula.push(PbConstraint::ge({{1, L(11)}, {-1, L(10)}}, 0));
    // Reflexivity: O(u, u) is 0 >= 0.
    {
        PbFormula none;
        CpBuilder b(&none);
        b.trivial();
        g.refl_steps = b.take_steps();
    }
    // Transitivity: add O(u,v) and O(v,w).
    g.trans_steps = {CpStep::mk_hyp(1), CpStep::mk_hyp(2), CpStep::mk_add(1, 1, 2, 1)};

    DomProof full;
    full.mode = DomMode::Full;
    full.input = cnf_to_pb(cnf({{1}}));
    full.steps.push_back(DomStep::order_change(OrderSpec::general(g), {1}));
    auto r = check_dom(full);
    INFO(r.reason);
    CHECK(r.ok);

    DomProof lin = full;
    lin.mode = DomMode::Linear;
    CHECK(!check_dom(lin).ok);

    // Broken transitivity proof is rejected in full mode.
    GeneralOrder bad = g;
    bad.trans_steps = {CpStep::mk_hyp(1)};
    DomProof badp;
    badp.mode = DomMode::Full;
    badp.input = full.input;
    badp.steps.push_back(DomStep::order_change(OrderSpec::general(bad), {1}));
    CHECK(!check_dom(badp).ok);
}

TEST_CASE("full pipeline soundness: accepted refutations imply unsatisfiability")
{
    std::mt19937 rng(5);
    int done = 0;
    for (int round = 0; round < 60 && done < 10; ++round) {
        Cnf g = random_cnf(rng, 4, 9, 2);
        bool sat = brute_sat(g, default_order(g)).has_value();
        DomProof p;
        p.mode = DomMode::Linear;
        p.input = cnf_to_pb(g);
        if (sat)
            continue;
        // Derive the contradiction by CP from an unsat core via the
        // resolution simulation of a tree refutation.
        ErDerivation pi = tree_refutation_auto(g.clauses());
        CpDerivation cp = res_to_cp(pi);
        DomStep s;
        s.kind = DomStep::Kind::ImplDeriv;
        s.constraint = PbConstraint::contradiction();
        s.witness1 = cp.steps;
        p.steps.push_back(s);
        auto r = check_dom(p);
        INFO(r.reason);
        CHECK(r.ok);
        CHECK(dom_refutes(p));
        ++done;
    }
    CHECK(done >= 8);
}

TEST_CASE("validity is preserved by accepted steps (semantic cross-check)")
{
    // One instance per rule over a small satisfiable core.
    DomProof p;
    p.mode = DomMode::Linear;
    p.input = cnf_to_pb(cnf({{1, 2}, {-1, 2}}));
    Configuration cfg = Configuration::initial(p.input);
    REQUIRE(config_valid(cfg));

    auto apply_and_check = [&](const DomStep& s) {
        p.steps.push_back(s);
        REQUIRE(check_dom(p).ok);
        apply_dom_step(cfg, s);
        CHECK(config_valid(cfg));
    };

    apply_and_check(DomStep::order_change(OrderSpec::linear({2, 1}), {1, 2}));
    apply_and_check(impl_of_sum(cfg, 1, 2));
    apply_and_check(DomStep::transfer({1}));
    apply_and_check(DomStep::deletion({1}));
    for (const DomStep& s :
         extension_redundance(cfg.core, ExtensionAxiom::make_and(9, L(1), L(2)),
                              cfg.order, cfg.zvars))
        apply_and_check(s);
    apply_and_check(self_dominance(cfg, 1));
}
