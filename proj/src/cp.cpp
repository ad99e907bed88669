#include "pbproof/cp.hpp"

namespace pbproof {

CpStep CpStep::mk_hyp(size_t i)
{
    CpStep s;
    s.kind = Kind::Hyp;
    s.hyp = i;
    return s;
}

CpStep CpStep::mk_axge(Var v)
{
    CpStep s;
    s.kind = Kind::AxGe;
    s.var = v;
    return s;
}

CpStep CpStep::mk_axle(Var v)
{
    CpStep s;
    s.kind = Kind::AxLe;
    s.var = v;
    return s;
}

CpStep CpStep::mk_add(size_t a, BigInt ma, size_t b, BigInt mb)
{
    CpStep s;
    s.kind = Kind::Add;
    s.a = a;
    s.b = b;
    s.ma = std::move(ma);
    s.mb = std::move(mb);
    return s;
}

CpStep CpStep::mk_div(size_t a, BigInt d)
{
    CpStep s;
    s.kind = Kind::Div;
    s.a = a;
    s.d = std::move(d);
    return s;
}

namespace {

PbConstraint axiom_ge(Var v)
{
    return PbConstraint::ge({{1, Lit::pos(v)}}, 0);
}

PbConstraint axiom_le(Var v)
{
    // x <= 1 in >= form.
    return PbConstraint::make({{1, Lit::pos(v)}}, PbConstraint::Rel::Le, 1);
}

} // namespace

CheckResult run_cp_steps(const PbFormula& hyps, const std::vector<CpStep>& steps,
                         std::vector<PbConstraint>& derived)
{
    derived.clear();
    derived.reserve(steps.size());
    auto ref_ok = [&derived](size_t r) { return r >= 1 && r <= derived.size(); };
    for (size_t i = 0; i < steps.size(); ++i) {
        const CpStep& s = steps[i];
        size_t stepno = i + 1;
        switch (s.kind) {
        case CpStep::Kind::Hyp:
            if (s.hyp < 1 || s.hyp > hyps.size())
                return CheckResult::reject(stepno, "hypothesis index out of range");
            derived.push_back(hyps[s.hyp - 1]);
            break;
        case CpStep::Kind::AxGe:
            if (s.var <= 0)
                return CheckResult::reject(stepno, "axiom variable must be positive");
            derived.push_back(axiom_ge(s.var));
            break;
        case CpStep::Kind::AxLe:
            if (s.var <= 0)
                return CheckResult::reject(stepno, "axiom variable must be positive");
            derived.push_back(axiom_le(s.var));
            break;
        case CpStep::Kind::Add: {
            if (!ref_ok(s.a) || !ref_ok(s.b))
                return CheckResult::reject(stepno, "addition reference out of range");
            if (s.ma < 0 || s.mb < 0)
                return CheckResult::reject(stepno, "addition multiplier must be nonnegative");
            derived.push_back(
                derived[s.a - 1].scaled(s.ma).plus(derived[s.b - 1].scaled(s.mb)));
            break;
        }
        case CpStep::Kind::Div: {
            if (!ref_ok(s.a))
                return CheckResult::reject(stepno, "division reference out of range");
            if (s.d <= 0)
                return CheckResult::reject(stepno, "divisor must be positive");
            auto q = derived[s.a - 1].divided(s.d);
            if (!q)
                return CheckResult::reject(stepno,
                                           "division requires every coefficient divisible");
            derived.push_back(std::move(*q));
            break;
        }
        }
    }
    return CheckResult::accept();
}

CheckResult check_cp_steps(const PbFormula& hyps, const std::vector<CpStep>& steps,
                           const PbFormula& targets)
{
    std::vector<PbConstraint> derived;
    if (auto r = run_cp_steps(hyps, steps, derived); !r)
        return r;
    std::set<PbConstraint> have(derived.begin(), derived.end());
    for (size_t i = 0; i < targets.size(); ++i)
        if (!have.count(targets[i]))
            return CheckResult::reject(0, "goal constraint " + std::to_string(i + 1) +
                                              " was not derived: " + targets[i].to_string());
    return CheckResult::accept();
}

CheckResult check_cp(const CpDerivation& d)
{
    return check_cp_steps(d.hypotheses, d.steps, d.goals);
}

size_t CpBuilder::push(CpStep s, PbConstraint r)
{
    steps_.push_back(std::move(s));
    results_.push_back(std::move(r));
    return steps_.size();
}

size_t CpBuilder::hyp(size_t idx)
{
    if (!hyps_ || idx < 1 || idx > hyps_->size())
        throw std::out_of_range("CpBuilder: hypothesis index");
    return push(CpStep::mk_hyp(idx), (*hyps_)[idx - 1]);
}

size_t CpBuilder::axge(Var v)
{
    return push(CpStep::mk_axge(v), axiom_ge(v));
}

size_t CpBuilder::axle(Var v)
{
    return push(CpStep::mk_axle(v), axiom_le(v));
}

size_t CpBuilder::add(size_t a, const BigInt& ma, size_t b, const BigInt& mb)
{
    PbConstraint r = result(a).scaled(ma).plus(result(b).scaled(mb));
    return push(CpStep::mk_add(a, ma, b, mb), std::move(r));
}

size_t CpBuilder::div(size_t a, const BigInt& d)
{
    auto q = result(a).divided(d);
    if (!q)
        throw std::logic_error("CpBuilder: division with non-divisible coefficient");
    return push(CpStep::mk_div(a, d), std::move(*q));
}

size_t CpBuilder::trivial()
{
    size_t ax = axge(1);
    return add(ax, 0, ax, 0);
}

size_t CpBuilder::slack(const BigInt& k)
{
    if (k < 0)
        throw std::invalid_argument("CpBuilder::slack: negative slack");
    if (k == 0)
        return trivial();
    size_t lo = axge(1);
    size_t hi = axle(1);
    return add(lo, k, hi, k);
}

size_t CpBuilder::box_implied(const PbConstraint& target)
{
    if (target.bound() > target.box_min())
        throw std::logic_error("CpBuilder::box_implied: constraint is not box-implied");
    return adjust(trivial(), target);
}

size_t CpBuilder::adjust(size_t from, const PbConstraint& target)
{
    size_t cur = from;
    const PbConstraint* have = &result(cur);
    // Collect deltas first; `have` may be invalidated as we push steps.
    std::vector<std::pair<Var, BigInt>> deltas;
    {
        auto it = have->terms().begin();
        auto jt = target.terms().begin();
        while (it != have->terms().end() || jt != target.terms().end()) {
            if (jt == target.terms().end() ||
                (it != have->terms().end() && it->first < jt->first)) {
                deltas.emplace_back(it->first, -it->second);
                ++it;
            } else if (it == have->terms().end() || jt->first < it->first) {
                deltas.emplace_back(jt->first, jt->second);
                ++jt;
            } else {
                if (it->second != jt->second)
                    deltas.emplace_back(it->first, jt->second - it->second);
                ++it;
                ++jt;
            }
        }
    }
    for (auto& [v, dv] : deltas) {
        if (dv > 0)
            cur = add(cur, 1, axge(v), dv);
        else
            cur = add(cur, 1, axle(v), -dv);
    }
    const BigInt& b = result(cur).bound();
    if (b < target.bound())
        throw std::logic_error("CpBuilder::adjust: target is stronger than source");
    if (b > target.bound())
        cur = add(cur, 1, slack(b - target.bound()), 1);
    if (result(cur) != target)
        throw std::logic_error("CpBuilder::adjust: did not reach target");
    return cur;
}

size_t emit_resolvent(CpBuilder& b, size_t parent_a, size_t parent_b, Lit pivot,
                      const Clause& resolvent)
{
    PbConstraint target = clause_to_pb(resolvent);
    if (resolvent.tautologous())
        return b.box_implied(target);
    size_t sum = b.add(parent_a, 1, parent_b, 1);
    // Pad every coefficient to twice its target value, then halve.
    const PbConstraint& s = b.result(sum);
    std::vector<std::pair<Var, BigInt>> deltas;
    {
        auto it = s.terms().begin();
        auto jt = target.terms().begin();
        while (it != s.terms().end() || jt != target.terms().end()) {
            if (jt == target.terms().end() ||
                (it != s.terms().end() && it->first < jt->first)) {
                deltas.emplace_back(it->first, -it->second);
                ++it;
            } else if (it == s.terms().end() || jt->first < it->first) {
                deltas.emplace_back(jt->first, 2 * jt->second);
                ++jt;
            } else {
                if (2 * jt->second != it->second)
                    deltas.emplace_back(it->first, 2 * jt->second - it->second);
                ++it;
                ++jt;
            }
        }
    }
    size_t cur = sum;
    for (auto& [v, dv] : deltas) {
        if (dv > 0)
            cur = b.add(cur, 1, b.axge(v), dv);
        else
            cur = b.add(cur, 1, b.axle(v), -dv);
    }
    cur = b.div(cur, 2);
    if (b.result(cur) != target) {
        if (b.result(cur).bound() > target.bound())
            cur = b.add(cur, 1, b.slack(b.result(cur).bound() - target.bound()), 1);
        if (b.result(cur) != target)
            throw std::logic_error("emit_resolvent: did not reach the resolvent translation");
    }
    return cur;
}

size_t emit_weaken(CpBuilder& b, size_t parent, const Clause& weakened)
{
    PbConstraint target = clause_to_pb(weakened);
    if (weakened.tautologous())
        return b.box_implied(target);
    return b.adjust(parent, target);
}

CpDerivation res_to_cp(const ErDerivation& pi)
{
    CpDerivation out;
    for (const Clause& c : pi.premises)
        out.hypotheses.push(clause_to_pb(c));

    CpBuilder b(&out.hypotheses);
    std::vector<size_t> pos; // clause-sequence position -> CP step
    pos.push_back(0);
    for (const ErStep& s : pi.steps) {
        switch (s.kind) {
        case ErStep::Kind::Premise:
            pos.push_back(b.hyp(s.premise));
            break;
        case ErStep::Kind::Resolve:
            pos.push_back(emit_resolvent(b, pos[s.a], pos[s.b], s.pivot, s.clause));
            break;
        case ErStep::Kind::Weaken:
            pos.push_back(emit_weaken(b, pos[s.a], s.clause));
            break;
        case ErStep::Kind::DropZero:
            // C | 0 and C have the same translation.
            pos.push_back(pos[s.a]);
            break;
        default:
            throw std::invalid_argument("res_to_cp: derivation contains an extension step");
        }
    }
    out.steps = b.take_steps();
    for (const Clause& c : pi.conclusions)
        out.goals.push(clause_to_pb(c));
    return out;
}

std::vector<size_t> emit_negclause_bridge(CpBuilder& b, size_t neg_step,
                                          const Clause& c)
{
    if (c.tautologous())
        throw std::invalid_argument("negclause_bridge: clause is tautologous");
    // ~(C*) is -sum aff(p) >= 0 (normalized). For each literal p we derive
    // -aff(p) >= 0 by adding aff(q) >= 0 for every other literal q, using
    // prefix/suffix partial sums to stay linear overall.
    const auto& lits = c.lits();
    size_t n = lits.size();
    std::vector<size_t> out;
    if (n == 0)
        return out;

    auto axiom_of = [&b](Lit q) -> std::optional<size_t> {
        if (q.is_const())
            return std::nullopt; // constant 0 contributes nothing
        return q.negated() ? b.axle(q.var()) : b.axge(q.var());
    };

    // prefix[i] = neg_step + aff(lits[0..i-1]) axioms.
    std::vector<size_t> prefix(n + 1), suffix(n + 1);
    prefix[0] = neg_step;
    for (size_t i = 0; i < n; ++i) {
        auto ax = axiom_of(lits[i]);
        prefix[i + 1] = ax ? b.add(prefix[i], 1, *ax, 1) : prefix[i];
    }
    // suffix[i] = aff(lits[i..n-1]) axioms alone (suffix[n] = 0 >= 0).
    suffix[n] = b.trivial();
    for (size_t i = n; i-- > 0;) {
        auto ax = axiom_of(lits[i]);
        suffix[i] = ax ? b.add(suffix[i + 1], 1, *ax, 1) : suffix[i + 1];
    }
    for (size_t i = 0; i < n; ++i) {
        size_t combined = b.add(prefix[i], 1, suffix[i + 1], 1);
        PbConstraint target = clause_to_pb(Clause{~lits[i]});
        if (b.result(combined) != target)
            combined = b.adjust(combined, target);
        out.push_back(combined);
    }
    return out;
}

CpDerivation negclause_bridge(const Clause& c)
{
    CpDerivation out;
    out.hypotheses.push(clause_to_pb(c).negated());
    CpBuilder b(&out.hypotheses);
    size_t neg = b.hyp(1);
    std::vector<size_t> units = emit_negclause_bridge(b, neg, c);
    (void)units;
    out.steps = b.take_steps();
    for (Lit p : c.lits())
        out.goals.push(clause_to_pb(Clause{~p}));
    return out;
}

std::vector<ExtensionAxiom> AdderBitShape::axioms() const
{
    std::vector<ExtensionAxiom> out;
    switch (kind) {
    case Kind::First:
        // Half adder on (x, ~y): carry-out is x & ~y, sum bit is the xor,
        // and z is its complement.
        out.push_back(ExtensionAxiom::make_and(cout, x, ~y));
        out.push_back(ExtensionAxiom::make_and(g2, ~x, y));
        out.push_back(ExtensionAxiom::make_and(e, Lit::neg(cout), Lit::neg(g2)));
        out.push_back(ExtensionAxiom::make_alias(z, Lit::neg(e)));
        break;
    case Kind::Interior:
        out.push_back(ExtensionAxiom::make_and(g1, x, ~y));
        out.push_back(ExtensionAxiom::make_and(g2, ~x, y));
        out.push_back(ExtensionAxiom::make_and(e, Lit::neg(g1), Lit::neg(g2)));
        out.push_back(ExtensionAxiom::make_and(g3, Lit::pos(e), Lit::pos(cin)));
        out.push_back(ExtensionAxiom::make_and(g4, Lit::neg(e), Lit::neg(cin)));
        out.push_back(ExtensionAxiom::make_and(p, Lit::neg(g3), Lit::neg(g4)));
        out.push_back(ExtensionAxiom::make_alias(z, Lit::neg(p)));
        out.push_back(ExtensionAxiom::make_and(g6, Lit::neg(g1), Lit::neg(g3)));
        out.push_back(ExtensionAxiom::make_alias(cout, Lit::neg(g6)));
        break;
    case Kind::Last:
        out.push_back(ExtensionAxiom::make_alias(z, Lit::neg(cin)));
        break;
    }
    return out;
}

std::vector<Clause> AdderBitShape::clauses() const
{
    std::vector<Clause> out;
    for (const ExtensionAxiom& ax : axioms())
        for (Clause& c : ax.clauses())
            out.push_back(std::move(c));
    return out;
}

std::pair<PbConstraint, PbConstraint> AdderBitShape::equation() const
{
    std::vector<std::pair<BigInt, Lit>> lhs; // x + z + cin - y - 2 cout
    switch (kind) {
    case Kind::First:
        lhs = {{1, x}, {1, Lit::pos(z)}, {-1, y}, {-2, Lit::pos(cout)}};
        break;
    case Kind::Interior:
        lhs = {{1, x},  {1, Lit::pos(z)},  {1, Lit::pos(cin)},
               {-1, y}, {-2, Lit::pos(cout)}};
        break;
    case Kind::Last:
        // x = 0, y = 1, cout = 0: z + cin = 1.
        lhs = {{1, Lit::pos(z)}, {1, Lit::pos(cin)}, {-1, Lit::constant(true)}};
        break;
    }
    PbConstraint ge = PbConstraint::ge(lhs, 0);
    std::vector<std::pair<BigInt, Lit>> neg;
    for (auto& [c, p] : lhs)
        neg.emplace_back(-c, p);
    PbConstraint le = PbConstraint::ge(neg, 0);
    return {ge, le};
}

namespace {

// Derivations of both directions of the half-adder identity
// a + b = e + 2 g1 from the gate facts of g1 = a & b, g2 = ~a & ~b,
// e = ~g1 & ~g2. Clause indices within the three And axioms:
//   r1 = g1 >= a + b - 1          (axiom g1, clause 0)
//   r2 = a - g1 >= 0              (axiom g1, clause 1)
//   r3 = b - g1 >= 0              (axiom g1, clause 2)
//   r4 = g2 + a + b - 1 >= 0      (axiom g2, clause 0)
//   r5 = 1 - a - g2 >= 0          (axiom g2, clause 1)
//   r6 = 1 - b - g2 >= 0          (axiom g2, clause 2)
//   r7 = e + g1 + g2 - 1 >= 0     (axiom e, clause 0)
//   r8 = 1 - g1 - e >= 0          (axiom e, clause 1)
//   r9 = 1 - g2 - e >= 0          (axiom e, clause 2)
struct XorGateSteps {
    size_t ge; // a + b - e - 2 g1 >= 0
    size_t le; // e + 2 g1 - a - b >= 0
};

XorGateSteps emit_xor_identity(CpBuilder& b, Var g1, size_t r1, size_t r2, size_t r3,
                               size_t r4, size_t r5, size_t r6, size_t r7, size_t r8,
                               size_t r9)
{
    XorGateSteps out;
    // (r9 + r4) + 2 r2 + 2 r3 + 2 r8 = 3a + 3b - 3e - 6 g1 + 2, then divide by 3.
    size_t u1 = b.add(r9, 1, r4, 1);
    size_t u2 = b.add(r2, 1, r3, 1);
    size_t u3 = b.add(u1, 1, u2, 2);
    size_t u4 = b.add(u3, 1, r8, 2);
    out.ge = b.div(u4, 3);
    // 2 r7 + r5 + r6 + r1 + (g1 >= 0) = 2e + 4 g1 - 2a - 2b + 1, then halve.
    size_t v1 = b.add(r7, 2, r5, 1);
    size_t v2 = b.add(v1, 1, r6, 1);
    size_t v3 = b.add(v2, 1, r1, 1);
    size_t v4 = b.add(v3, 1, b.axge(g1), 1);
    out.le = b.div(v4, 2);
    return out;
}

} // namespace

std::pair<size_t, size_t>
emit_bit_equation(CpBuilder& b, const AdderBitShape& shape,
                  const std::function<size_t(size_t)>& clause_step)
{
    switch (shape.kind) {
    case AdderBitShape::Kind::Last: {
        // Alias z = ~cin: clause 0 is (cin | z), clause 1 is (~z | ~cin).
        size_t ge = clause_step(0); // z + cin - 1 >= 0
        size_t le = clause_step(1); // 1 - z - cin >= 0
        return {ge, le};
    }
    case AdderBitShape::Kind::First: {
        // Axiom layout: cout gate (0..2), g2 gate (3..5), e gate (6..8),
        // alias z (9..10).
        XorGateSteps e1 = emit_xor_identity(
            b, shape.cout, clause_step(0), clause_step(1), clause_step(2),
            clause_step(3), clause_step(4), clause_step(5), clause_step(6),
            clause_step(7), clause_step(8));
        size_t alias_plus = clause_step(9);   // z + e - 1 >= 0
        size_t alias_minus = clause_step(10); // 1 - z - e >= 0
        size_t ge = b.add(e1.ge, 1, alias_plus, 1);
        size_t le = b.add(e1.le, 1, alias_minus, 1);
        return {ge, le};
    }
    case AdderBitShape::Kind::Interior:
        break;
    }

    // Interior: axiom layout g1 (0..2), g2 (3..5), e (6..8), g3 (9..11),
    // g4 (12..14), p (15..17), alias z (18..19), g6 (20..22),
    // alias cout (23..24).
    XorGateSteps e1 = emit_xor_identity(b, shape.g1, clause_step(0), clause_step(1),
                                        clause_step(2), clause_step(3), clause_step(4),
                                        clause_step(5), clause_step(6), clause_step(7),
                                        clause_step(8));
    XorGateSteps e2 = emit_xor_identity(b, shape.g3, clause_step(9), clause_step(10),
                                        clause_step(11), clause_step(12),
                                        clause_step(13), clause_step(14),
                                        clause_step(15), clause_step(16),
                                        clause_step(17));
    size_t z_plus = clause_step(18);  // z + p - 1 >= 0
    size_t z_minus = clause_step(19); // 1 - z - p >= 0
    size_t s1 = clause_step(20);      // g6 + g1 + g3 - 1 >= 0
    size_t s2 = clause_step(21);      // 1 - g6 - g1 >= 0
    size_t s3 = clause_step(22);      // 1 - g6 - g3 >= 0
    size_t c_plus = clause_step(23);  // cout + g6 - 1 >= 0
    size_t c_minus = clause_step(24); // 1 - cout - g6 >= 0

    // Carry identity cout = g1 + g3. The <= direction is s1 itself; for >=,
    // combine "not both g1 and g3" (from the e and g3 gates) with s2 and s3
    // and divide by two.
    size_t r8 = clause_step(7);   // 1 - g1 - e >= 0
    size_t g3ub = clause_step(10); // e - g3 >= 0
    size_t q = b.add(r8, 1, g3ub, 1);
    size_t w1 = b.add(q, 1, s2, 1);
    size_t w2 = b.add(w1, 1, s3, 1);
    size_t carry_ge = b.div(w2, 2); // 1 - g1 - g3 - g6 >= 0

    // x + z + cin - y - 2 cout >= 0.
    size_t t1 = b.add(e1.ge, 1, e2.ge, 1);
    size_t t2 = b.add(t1, 1, s1, 2);
    size_t t3 = b.add(t2, 1, c_minus, 2);
    size_t ge = b.add(t3, 1, z_plus, 1);
    // y + 2 cout - x - z - cin >= 0.
    size_t u1 = b.add(e1.le, 1, e2.le, 1);
    size_t u2 = b.add(u1, 1, carry_ge, 2);
    size_t u3 = b.add(u2, 1, c_plus, 2);
    size_t le = b.add(u3, 1, z_minus, 1);
    return {ge, le};
}

CpDerivation equation_template(const AdderBitShape& shape)
{
    CpDerivation out;
    std::vector<Clause> cls = shape.clauses();
    for (const Clause& c : cls)
        out.hypotheses.push(clause_to_pb(c));
    CpBuilder b(&out.hypotheses);
    std::vector<size_t> at(cls.size());
    for (size_t i = 0; i < cls.size(); ++i)
        at[i] = b.hyp(i + 1);
    auto [ge, le] = emit_bit_equation(b, shape, [&at](size_t i) { return at[i]; });
    auto [ge_c, le_c] = shape.equation();
    if (b.result(ge) != ge_c || b.result(le) != le_c)
        throw std::logic_error("equation_template: emitted equation mismatch");
    out.steps = b.take_steps();
    out.goals.push(ge_c);
    out.goals.push(le_c);
    return out;
}

} // namespace pbproof
