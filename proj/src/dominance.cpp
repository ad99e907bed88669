#include "pbproof/dominance.hpp"

namespace pbproof {

OrderSpec OrderSpec::linear(std::vector<BigInt> coeffs)
{
    OrderSpec o;
    o.lin_.coeffs = std::move(coeffs);
    return o;
}

OrderSpec OrderSpec::general(GeneralOrder g)
{
    OrderSpec o;
    o.gen_ = std::move(g);
    return o;
}

size_t OrderSpec::arity() const
{
    return is_linear() ? lin_.coeffs.size() : gen_->u_dummies.size();
}

PbFormula linear_order_formula(const LinearOrder& f, std::span<const Lit> lhs,
                               std::span<const Lit> rhs)
{
    if (lhs.size() != f.coeffs.size() || rhs.size() != f.coeffs.size())
        throw std::invalid_argument("linear_order_formula: arity mismatch");
    if (f.coeffs.empty())
        return PbFormula{}; // the trivial order
    // f(lhs) <= f(rhs), normalized to >=.
    std::vector<std::pair<BigInt, Lit>> terms;
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        terms.emplace_back(f.coeffs[i], rhs[i]);
        terms.emplace_back(-f.coeffs[i], lhs[i]);
    }
    return PbFormula{PbConstraint::ge(terms, 0)};
}

PbFormula OrderSpec::instantiate(std::span<const Lit> lhs,
                                 std::span<const Lit> rhs) const
{
    if (is_linear())
        return linear_order_formula(lin_, lhs, rhs);
    const GeneralOrder& g = *gen_;
    if (lhs.size() != g.u_dummies.size() || rhs.size() != g.u_dummies.size())
        throw std::invalid_argument("OrderSpec::instantiate: arity mismatch");
    Substitution s;
    for (size_t i = 0; i < lhs.size(); ++i) {
        s.set(g.u_dummies[i], lhs[i]);
        s.set(g.v_dummies[i], rhs[i]);
    }
    return g.formula.restricted(s);
}

CheckResult OrderSpec::validate_preorder_proofs() const
{
    if (is_linear())
        return CheckResult::accept();
    const GeneralOrder& g = *gen_;
    size_t n = g.u_dummies.size();
    if (g.v_dummies.size() != n || g.w_dummies.size() != n)
        return CheckResult::reject(0, "order dummy tuples have unequal arity");

    auto lits = [](const std::vector<Var>& vs) {
        std::vector<Lit> out;
        for (Var v : vs)
            out.push_back(Lit::pos(v));
        return out;
    };
    std::vector<Lit> u = lits(g.u_dummies), v = lits(g.v_dummies),
                     w = lits(g.w_dummies);

    // Reflexivity: {} |- O(u, u).
    if (auto r = check_cp_steps(PbFormula{}, g.refl_steps, instantiate(u, u)); !r)
        return CheckResult::reject(r.step, "reflexivity proof: " + r.reason);
    // Transitivity: O(u, v), O(v, w) |- O(u, w).
    PbFormula hyps = instantiate(u, v);
    for (const PbConstraint& c : instantiate(v, w).constraints())
        hyps.push(c);
    if (auto r = check_cp_steps(hyps, g.trans_steps, instantiate(u, w)); !r)
        return CheckResult::reject(r.step, "transitivity proof: " + r.reason);
    return CheckResult::accept();
}

Configuration Configuration::initial(PbFormula input)
{
    Configuration cfg;
    cfg.core = std::move(input);
    cfg.order = OrderSpec::trivial();
    return cfg;
}

std::vector<Lit> Configuration::z_literals() const
{
    std::vector<Lit> out;
    for (Var v : zvars)
        out.push_back(Lit::pos(v));
    return out;
}

std::vector<Lit> Configuration::z_images(const Substitution& w) const
{
    std::vector<Lit> out;
    for (Var v : zvars)
        out.push_back(w(Lit::pos(v)));
    return out;
}

bool Configuration::contains_contradiction() const
{
    return core.contains_contradiction() || derived.contains_contradiction();
}

DomStep DomStep::impl_derivation(PbConstraint c, std::vector<CpStep> w)
{
    DomStep s;
    s.kind = Kind::ImplDeriv;
    s.constraint = std::move(c);
    s.witness1 = std::move(w);
    return s;
}

DomStep DomStep::redundance(PbConstraint c, Substitution w, std::vector<CpStep> d)
{
    DomStep s;
    s.kind = Kind::Redundance;
    s.constraint = std::move(c);
    s.omega = std::move(w);
    s.witness1 = std::move(d);
    return s;
}

DomStep DomStep::dominance(PbConstraint c, Substitution w, std::vector<CpStep> d1,
                           std::vector<CpStep> d2)
{
    DomStep s;
    s.kind = Kind::Dominance;
    s.constraint = std::move(c);
    s.omega = std::move(w);
    s.witness1 = std::move(d1);
    s.witness2 = std::move(d2);
    return s;
}

DomStep DomStep::transfer(std::vector<size_t> idxs)
{
    DomStep s;
    s.kind = Kind::Transfer;
    s.transfers = std::move(idxs);
    return s;
}

DomStep DomStep::deletion(std::vector<size_t> derived_idxs)
{
    DomStep s;
    s.kind = Kind::Deletion;
    s.derived_removals = std::move(derived_idxs);
    return s;
}

DomStep DomStep::order_change(OrderSpec order, std::vector<Var> zvars)
{
    DomStep s;
    s.kind = Kind::OrderChange;
    s.new_order = std::move(order);
    s.new_zvars = std::move(zvars);
    return s;
}

void apply_dom_step(Configuration& cfg, const DomStep& s)
{
    switch (s.kind) {
    case DomStep::Kind::ImplDeriv:
    case DomStep::Kind::Redundance:
    case DomStep::Kind::Dominance:
        cfg.derived.push(s.constraint);
        break;
    case DomStep::Kind::Transfer:
        // The core is an ordered list; copying an already-present normal
        // form just repeats it, which keeps replay positional.
        for (size_t i : s.transfers)
            cfg.core.push(cfg.derived[i - 1]);
        break;
    case DomStep::Kind::Deletion: {
        std::vector<PbConstraint> kept;
        std::set<size_t> gone(s.derived_removals.begin(), s.derived_removals.end());
        for (size_t i = 0; i < cfg.derived.size(); ++i)
            if (!gone.count(i + 1))
                kept.push_back(cfg.derived[i]);
        cfg.derived = PbFormula(std::move(kept));
        if (s.core_removal) {
            std::vector<PbConstraint> ckept;
            for (size_t i = 0; i < cfg.core.size(); ++i)
                if (i + 1 != *s.core_removal)
                    ckept.push_back(cfg.core[i]);
            cfg.core = PbFormula(std::move(ckept));
        }
        break;
    }
    case DomStep::Kind::OrderChange:
        cfg.order = s.new_order;
        cfg.zvars = s.new_zvars;
        break;
    }
}

namespace {

PbFormula with_extra(const PbFormula& core, const PbFormula& derived,
                     const std::vector<PbConstraint>& extra)
{
    PbFormula out = core;
    for (const PbConstraint& c : derived.constraints())
        out.push(c);
    for (const PbConstraint& c : extra)
        out.push(c);
    return out;
}

CheckResult check_redundance_witness(const PbFormula& core, const PbFormula& derived,
                                     const PbConstraint& c, const Substitution& omega,
                                     const std::vector<CpStep>& steps,
                                     const OrderSpec& order,
                                     const std::vector<Var>& zvars)
{
    PbFormula hyps = with_extra(core, derived, {c.negated()});
    PbFormula targets;
    for (const PbConstraint& d : core.constraints())
        targets.push(d.restricted(omega));
    for (const PbConstraint& d : derived.constraints())
        targets.push(d.restricted(omega));
    targets.push(c.restricted(omega));
    std::vector<Lit> z, zw;
    for (Var v : zvars) {
        z.push_back(Lit::pos(v));
        zw.push_back(omega(Lit::pos(v)));
    }
    PbFormula ord = order.instantiate(zw, z);
    for (const PbConstraint& d : ord.constraints())
        targets.push(d);
    return check_cp_steps(hyps, steps, targets);
}

} // namespace

CheckResult check_dom(const DomProof& p, Configuration* final_out)
{
    Configuration cfg = Configuration::initial(p.input);
    bool linear_only = p.mode != DomMode::Full;

    for (size_t i = 0; i < p.steps.size(); ++i) {
        const DomStep& s = p.steps[i];
        size_t stepno = i + 1;
        auto fail = [stepno](const std::string& what, const CheckResult& r) {
            return CheckResult::reject(stepno,
                                       what + ": " +
                                           (r.reason.empty() ? "invalid" : r.reason));
        };
        switch (s.kind) {
        case DomStep::Kind::ImplDeriv: {
            PbFormula hyps = with_extra(cfg.core, cfg.derived, {});
            if (auto r = check_cp_steps(hyps, s.witness1, PbFormula{s.constraint}); !r)
                return fail("implicational derivation witness", r);
            break;
        }
        case DomStep::Kind::Redundance: {
            if (auto r = check_redundance_witness(cfg.core, cfg.derived, s.constraint,
                                                  s.omega, s.witness1, cfg.order,
                                                  cfg.zvars);
                !r)
                return fail("redundance witness", r);
            break;
        }
        case DomStep::Kind::Deletion: {
            std::set<size_t> seen;
            for (size_t idx : s.derived_removals) {
                if (idx < 1 || idx > cfg.derived.size())
                    return CheckResult::reject(stepno, "deletion index out of range");
                if (!seen.insert(idx).second)
                    return CheckResult::reject(stepno, "duplicate deletion index");
            }
            if (s.core_removal) {
                size_t idx = *s.core_removal;
                if (idx < 1 || idx > cfg.core.size())
                    return CheckResult::reject(stepno,
                                               "core deletion index out of range");
                PbConstraint c = cfg.core[idx - 1];
                std::vector<PbConstraint> rest;
                for (size_t k = 0; k < cfg.core.size(); ++k)
                    if (k + 1 != idx)
                        rest.push_back(cfg.core[k]);
                // The removed constraint must be redundant with respect to
                // the remaining core alone.
                if (auto r = check_redundance_witness(PbFormula(rest), PbFormula{}, c,
                                                      s.omega, s.witness1, cfg.order,
                                                      cfg.zvars);
                    !r)
                    return fail("core deletion witness", r);
            }
            break;
        }
        case DomStep::Kind::Transfer: {
            for (size_t idx : s.transfers)
                if (idx < 1 || idx > cfg.derived.size())
                    return CheckResult::reject(stepno, "transfer index out of range");
            break;
        }
        case DomStep::Kind::Dominance: {
            if (p.mode == DomMode::WeakLinear && !cfg.derived.empty())
                return CheckResult::reject(
                    stepno, "weak mode: dominance requires an empty derived set");
            std::vector<Lit> z = cfg.z_literals();
            std::vector<Lit> zw = cfg.z_images(s.omega);

            PbFormula hyps1 = with_extra(cfg.core, cfg.derived,
                                         {s.constraint.negated()});
            PbFormula targets1;
            for (const PbConstraint& d : cfg.core.constraints())
                targets1.push(d.restricted(s.omega));
            PbFormula ord1 = cfg.order.instantiate(zw, z);
            for (const PbConstraint& d : ord1.constraints())
                targets1.push(d);
            if (auto r = check_cp_steps(hyps1, s.witness1, targets1); !r)
                return fail("dominance witness (order side)", r);

            PbFormula hyps2 = with_extra(cfg.core, cfg.derived,
                                         {s.constraint.negated()});
            PbFormula ord2 = cfg.order.instantiate(z, zw);
            for (const PbConstraint& d : ord2.constraints())
                hyps2.push(d);
            std::vector<PbConstraint> derived2;
            if (auto r = run_cp_steps(hyps2, s.witness2, derived2); !r)
                return fail("dominance witness (contradiction side)", r);
            bool contra = false;
            for (const PbConstraint& d : derived2)
                if (d.is_contradiction())
                    contra = true;
            if (!contra)
                return CheckResult::reject(
                    stepno, "dominance witness does not derive the contradiction");
            break;
        }
        case DomStep::Kind::OrderChange: {
            if (!cfg.derived.empty())
                return CheckResult::reject(
                    stepno, "order change requires an empty derived set");
            if (linear_only && !s.new_order.is_linear())
                return CheckResult::reject(
                    stepno, "general orders are not allowed in linear mode");
            if (s.new_order.arity() != s.new_zvars.size())
                return CheckResult::reject(stepno, "order arity mismatch");
            std::set<Var> distinct(s.new_zvars.begin(), s.new_zvars.end());
            if (distinct.size() != s.new_zvars.size())
                return CheckResult::reject(stepno, "duplicate ordered variable");
            if (!s.new_order.is_linear()) {
                if (auto r = s.new_order.validate_preorder_proofs(); !r)
                    return fail("order change preorder proofs", r);
            }
            break;
        }
        }
        apply_dom_step(cfg, s);
    }
    if (final_out)
        *final_out = cfg;
    return CheckResult::accept();
}

bool dom_refutes(const DomProof& p)
{
    Configuration cfg = Configuration::initial(p.input);
    for (const DomStep& s : p.steps)
        apply_dom_step(cfg, s);
    return cfg.contains_contradiction();
}

} // namespace pbproof
