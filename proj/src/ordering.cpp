#include "pbproof/ordering.hpp"

#include <map>

namespace pbproof {

std::vector<Clause> LexGadget::clause_list() const
{
    std::vector<Clause> out = block.clauses();
    out.insert(out.end(), units.begin(), units.end());
    return out;
}

std::vector<Var> LexGadget::aux_vars() const
{
    return block.defined_vars();
}

size_t LexGadget::bit_clause_offset(size_t bit) const
{
    size_t off = 0;
    for (size_t k = 0; k < bit; ++k)
        for (const ExtensionAxiom& ax : bits[k].axioms())
            off += ax.clause_count();
    return off;
}

bool LexGadget::satisfied_by_extension(const Assignment& base) const
{
    Assignment full = block.evaluate(base);
    for (const Clause& u : units) {
        bool sat = false;
        for (Lit p : u.lits())
            if (full.eval(p).value_or(false)) {
                sat = true;
                break;
            }
        if (!sat)
            return false;
    }
    return true;
}

namespace {

// Adder block for argsA + z = argsB + 2^r (tuples least significant first).
struct AdderParts {
    std::vector<AdderBitShape> bits;
    std::vector<Var> zvars, cvars;
};

AdderParts build_adder(std::span<const Lit> a, std::span<const Lit> b,
                       FreshVars& fresh)
{
    AdderParts out;
    int r = static_cast<int>(a.size());
    Var prev_carry = 0;
    for (int i = 0; i < r; ++i) {
        AdderBitShape bit;
        bit.x = a[i];
        bit.y = b[i];
        if (i == 0) {
            bit.kind = AdderBitShape::Kind::First;
            bit.cout = fresh.take();
            bit.g2 = fresh.take();
            bit.e = fresh.take();
            bit.z = fresh.take();
        } else {
            bit.kind = AdderBitShape::Kind::Interior;
            bit.cin = prev_carry;
            bit.g1 = fresh.take();
            bit.g2 = fresh.take();
            bit.e = fresh.take();
            bit.g3 = fresh.take();
            bit.g4 = fresh.take();
            bit.p = fresh.take();
            bit.z = fresh.take();
            bit.g6 = fresh.take();
            bit.cout = fresh.take();
        }
        prev_carry = bit.cout;
        out.zvars.push_back(bit.z);
        out.cvars.push_back(bit.cout);
        out.bits.push_back(bit);
    }
    AdderBitShape last;
    last.kind = AdderBitShape::Kind::Last;
    last.cin = prev_carry;
    last.z = fresh.take();
    out.zvars.push_back(last.z);
    out.bits.push_back(last);
    return out;
}

} // namespace

LexGadget gen_lex(int r, bool strict, bool msb_first, std::span<const Lit> lhs,
                  std::span<const Lit> rhs, FreshVars& fresh)
{
    if (r < 1)
        throw std::invalid_argument("gen_lex: arity must be at least 1");
    if (lhs.size() != static_cast<size_t>(r) || rhs.size() != static_cast<size_t>(r))
        throw std::invalid_argument("gen_lex: tuple arity mismatch");

    LexGadget g;
    g.r = r;
    g.strict = strict;
    g.msb_first = msb_first;
    g.lhs.assign(lhs.begin(), lhs.end());
    g.rhs.assign(rhs.begin(), rhs.end());

    std::vector<Lit> a(lhs.begin(), lhs.end()), b(rhs.begin(), rhs.end());
    if (msb_first) {
        std::reverse(a.begin(), a.end());
        std::reverse(b.begin(), b.end());
    }
    // Strict compares lhs directly; non-strict is the negation of the strict
    // comparison with the arguments swapped, so its adder runs on (rhs, lhs).
    AdderParts parts = strict ? build_adder(a, b, fresh) : build_adder(b, a, fresh);
    g.bits = std::move(parts.bits);
    g.zvars = std::move(parts.zvars);
    g.cvars = std::move(parts.cvars);

    std::set<Var> base;
    for (Lit p : lhs)
        if (!p.is_const())
            base.insert(p.var());
    for (Lit p : rhs)
        if (!p.is_const())
            base.insert(p.var());
    g.block.base_vars.assign(base.begin(), base.end());
    for (const AdderBitShape& bit : g.bits)
        for (ExtensionAxiom& ax : bit.axioms())
            g.block.axioms.push_back(std::move(ax));
    g.adder_axiom_count = g.block.axioms.size();

    Var z_top = g.zvars.back();
    if (strict) {
        g.units.push_back(Clause{Lit::pos(z_top)});
        std::vector<Lit> low;
        for (int i = 0; i < r; ++i)
            low.push_back(Lit::pos(g.zvars[i]));
        g.units.push_back(Clause(std::move(low)));
    } else {
        // w <-> (z_{r+1} & (z_1 | ... | z_r)) via a chain of NOR variables
        // n_i <-> ~z_1 & ... & ~z_i.
        Var prev = fresh.take();
        g.nvars.push_back(prev);
        g.block.axioms.push_back(
            ExtensionAxiom::make_alias(prev, Lit::neg(g.zvars[0])));
        for (int i = 1; i < r; ++i) {
            Var n = fresh.take();
            g.block.axioms.push_back(
                ExtensionAxiom::make_and(n, Lit::pos(prev), Lit::neg(g.zvars[i])));
            g.nvars.push_back(n);
            prev = n;
        }
        g.w = fresh.take();
        g.block.axioms.push_back(
            ExtensionAxiom::make_and(g.w, Lit::pos(z_top), Lit::neg(prev)));
        g.units.push_back(Clause{Lit::neg(g.w)});
    }
    return g;
}

LexGadget gen_lex(int r, bool strict, bool msb_first)
{
    std::vector<Lit> lhs, rhs;
    for (int i = 1; i <= r; ++i)
        lhs.push_back(Lit::pos(i));
    for (int i = 1; i <= r; ++i)
        rhs.push_back(Lit::pos(r + i));
    FreshVars fresh(2 * r + 1);
    return gen_lex(r, strict, msb_first, lhs, rhs, fresh);
}

LexGadget strict_counterpart(const LexGadget& g)
{
    if (g.strict)
        throw std::invalid_argument("strict_counterpart: gadget is already strict");
    LexGadget s;
    s.r = g.r;
    s.strict = true;
    s.msb_first = g.msb_first;
    s.lhs = g.rhs;
    s.rhs = g.lhs;
    s.bits = g.bits;
    s.zvars = g.zvars;
    s.cvars = g.cvars;
    s.block.base_vars = g.block.base_vars;
    s.block.axioms.assign(g.block.axioms.begin(),
                          g.block.axioms.begin() + g.adder_axiom_count);
    s.adder_axiom_count = g.adder_axiom_count;
    s.units.push_back(Clause{Lit::pos(g.zvars.back())});
    std::vector<Lit> low;
    for (int i = 0; i < g.r; ++i)
        low.push_back(Lit::pos(g.zvars[i]));
    s.units.push_back(Clause(std::move(low)));
    return s;
}

PbConstraint lex_constraint_strict(std::span<const Lit> lhs, std::span<const Lit> rhs,
                                   bool msb_first)
{
    size_t r = lhs.size();
    std::vector<std::pair<BigInt, Lit>> terms;
    BigInt coeff = 1;
    for (size_t i = 0; i < r; ++i) {
        size_t at = msb_first ? r - 1 - i : i;
        terms.emplace_back(coeff, rhs[at]);
        terms.emplace_back(-coeff, lhs[at]);
        coeff <<= 1;
    }
    return PbConstraint::ge(terms, 1);
}

PbConstraint gen_L_strict(int r)
{
    if (r < 1)
        throw std::invalid_argument("gen_L_strict: arity must be at least 1");
    std::vector<Lit> lhs, rhs;
    for (int i = 1; i <= r; ++i)
        lhs.push_back(Lit::pos(i));
    for (int i = 1; i <= r; ++i)
        rhs.push_back(Lit::pos(r + i));
    return lex_constraint_strict(lhs, rhs, false);
}

size_t emit_L_from_gadget(CpBuilder& b, const LexGadget& g,
                          const std::function<size_t(size_t)>& clause_step)
{
    if (!g.strict)
        throw std::invalid_argument("emit_L_from_gadget: gadget must be strict");
    int r = g.r;

    // Bit equations.
    std::vector<std::pair<size_t, size_t>> eq;
    for (size_t k = 0; k < g.bits.size(); ++k) {
        size_t off = g.bit_clause_offset(k);
        eq.push_back(emit_bit_equation(
            b, g.bits[k], [&](size_t i) { return clause_step(off + i); }));
    }

    // Column sums X_j + Z_j = Y_j + 2^j c_{j+1}, both directions.
    size_t ge_chain = eq[0].first;
    size_t le_chain = eq[0].second;
    BigInt scale = 2;
    for (int j = 1; j < r; ++j) {
        ge_chain = b.add(ge_chain, 1, eq[j].first, scale);
        le_chain = b.add(le_chain, 1, eq[j].second, scale);
        scale <<= 1;
    }
    // Final carry equation z_{r+1} + c_{r+1} = 1, scaled by 2^r.
    BigInt top = BigInt(1) << r;
    size_t final_ge = b.add(ge_chain, 1, eq[r].first, top);
    (void)final_ge; // the >= direction of X_r + Z_{r+1} = Y_r + 2^r
    size_t final_le = b.add(le_chain, 1, eq[r].second, top);

    // Strictness hypotheses: z_{r+1} >= 1 and z_1 + ... + z_r >= 1, the
    // latter scaled up to binary weights.
    size_t block_clauses = 0;
    for (const ExtensionAxiom& ax : g.block.axioms)
        block_clauses += ax.clause_count();
    size_t unit_top = clause_step(block_clauses);    // {z_{r+1}}
    size_t unit_low = clause_step(block_clauses + 1); // {z_1 | ... | z_r}

    size_t acc = unit_low;
    BigInt w = 2;
    for (int i = 1; i < r; ++i) {
        acc = b.add(acc, 1, b.axge(g.zvars[i]), w - 1);
        w <<= 1;
    }
    size_t zfull = b.add(acc, 1, unit_top, top);

    size_t L = b.add(final_le, 1, zfull, 1);
    PbConstraint want = lex_constraint_strict(g.lhs, g.rhs, g.msb_first);
    if (b.result(L) != want)
        throw std::logic_error("emit_L_from_gadget: derived constraint mismatch");
    return L;
}

CpDerivation derive_L_from_P(int r)
{
    LexGadget g = gen_lex(r, true, false);
    CpDerivation out;
    std::vector<Clause> cls = g.clause_list();
    for (const Clause& c : cls)
        out.hypotheses.push(clause_to_pb(c));
    CpBuilder b(&out.hypotheses);
    std::vector<size_t> at(cls.size());
    for (size_t i = 0; i < cls.size(); ++i)
        at[i] = b.hyp(i + 1);
    size_t L = emit_L_from_gadget(b, g, [&at](size_t i) { return at[i]; });
    out.goals.push(b.result(L));
    out.steps = b.take_steps();
    return out;
}

ErDerivation strictify(const ErDerivation& pi, const LexGadget& gadget)
{
    if (gadget.strict)
        throw std::invalid_argument("strictify: expected the non-strict gadget");

    // Split the premises into the gadget part and the rest. Every gadget
    // clause mentions one of its fresh auxiliaries, so it cannot collide
    // with a premise of the surrounding derivation.
    std::vector<Clause> gadget_clauses = gadget.clause_list();
    std::map<Clause, size_t> gadget_flat;
    for (size_t i = 0; i < gadget_clauses.size(); ++i)
        gadget_flat.emplace(gadget_clauses[i], i);

    ErDerivation out;
    std::vector<size_t> premise_map(pi.premises.size() + 1, 0);
    std::vector<std::optional<size_t>> premise_gadget(pi.premises.size() + 1);
    std::set<Clause> gadget_seen;
    for (size_t i = 0; i < pi.premises.size(); ++i) {
        auto it = gadget_flat.find(pi.premises[i]);
        if (it != gadget_flat.end()) {
            premise_gadget[i + 1] = it->second;
            gadget_seen.insert(pi.premises[i]);
        } else {
            out.premises.push_back(pi.premises[i]);
            premise_map[i + 1] = out.premises.size();
        }
    }
    // Degenerate gates can repeat a clause; matching is by distinct clause.
    for (const Clause& c : gadget_clauses)
        if (!gadget_seen.count(c))
            throw std::invalid_argument(
                "strictify: derivation does not embed the expected gadget");
    out.protected_vars = pi.protected_vars;

    std::set<Var> gamma_vars;
    for (const Clause& c : out.premises)
        for (Var v : c.vars())
            gamma_vars.insert(v);
    for (Var v : gadget.aux_vars())
        if (gamma_vars.count(v))
            throw std::invalid_argument(
                "strictify: gadget auxiliary occurs outside the gadget");
    for (Lit p : gadget.lhs)
        if (!p.is_const() && !gamma_vars.count(p.var()))
            throw std::invalid_argument(
                "strictify: compared variable does not occur in the premises");
    for (Lit p : gadget.rhs)
        if (!p.is_const() && !gamma_vars.count(p.var()))
            throw std::invalid_argument(
                "strictify: compared variable does not occur in the premises");

    // Re-introduce the gadget's block by extension. Positions are sequential
    // since these are the first steps of the output.
    std::vector<size_t> block_pos; // flat block clause index -> position
    {
        size_t next = 0;
        for (const ExtensionAxiom& ax : gadget.block.axioms) {
            out.steps.push_back(ErStep::make_extend(ax));
            for (size_t k = 0; k < ax.clause_count(); ++k)
                block_pos.push_back(++next);
        }
    }

    size_t w_pos = detail_transform_refutation(
        pi, gadget.w, out, [&](size_t idx, const Clause&) -> PremiseImage {
            if (auto gi = premise_gadget[idx]) {
                // The {~w} unit never reaches here: clauses containing ~w
                // need no image.
                return PremiseImage::at(block_pos.at(*gi));
            }
            size_t mapped = premise_map[idx];
            return mapped == 0 ? PremiseImage::missing()
                               : PremiseImage::import(mapped);
        });

    // Resolve w against its definition to obtain the strictness units.
    auto seq_size = [&out] {
        size_t n = 0;
        for (const ErStep& s : out.steps)
            n += s.clause_count();
        return n;
    };
    auto clause_at = [&](size_t pos) -> Clause {
        size_t n = 0;
        for (const ErStep& s : out.steps) {
            if (ErStep::Kind k = s.kind; k == ErStep::Kind::ExtendAnd ||
                                         k == ErStep::Kind::ExtendAlias ||
                                         k == ErStep::Kind::ExtendConst) {
                auto cls = s.axiom.clauses();
                if (pos <= n + cls.size())
                    return cls[pos - n - 1];
                n += cls.size();
            } else {
                ++n;
                if (pos == n)
                    return s.clause;
            }
        }
        throw std::out_of_range("strictify: clause position");
    };
    auto resolve = [&](size_t a, size_t b, Lit pivot) {
        Clause res =
            clause_at(a).without(pivot).union_with(clause_at(b).without(~pivot));
        out.steps.push_back(ErStep::make_resolve(a, b, pivot, res));
        return seq_size();
    };

    // Flat indices of the w-definition clauses.
    size_t w_axiom_flat = 0;
    for (size_t i = 0; i + 1 < gadget.block.axioms.size(); ++i)
        w_axiom_flat += gadget.block.axioms[i].clause_count();
    size_t w_c1 = block_pos[w_axiom_flat + 1]; // ~w | z_{r+1}
    size_t w_c2 = block_pos[w_axiom_flat + 2]; // ~w | ~n_r

    Lit pw = Lit::pos(gadget.w);
    resolve(w_pos, w_c1, pw); // unit z_{r+1}
    size_t cur = resolve(w_pos, w_c2, pw); // ~n_r
    // Unroll the NOR chain down to the disjunction z_1 | ... | z_r.
    for (int i = gadget.r - 1; i >= 1; --i) {
        size_t ax_flat = gadget.adder_axiom_count + i; // axiom defining n_{i+1}
        size_t flat0 = 0;
        for (size_t k = 0; k < ax_flat; ++k)
            flat0 += gadget.block.axioms[k].clause_count();
        size_t c0 = block_pos[flat0]; // ~n_i | z_{i+1} | n_{i+1}
        cur = resolve(c0, cur, Lit::pos(gadget.nvars[i]));
    }
    {
        size_t flat0 = 0;
        for (size_t k = 0; k < gadget.adder_axiom_count; ++k)
            flat0 += gadget.block.axioms[k].clause_count();
        size_t c0 = block_pos[flat0]; // z_1 | n_1
        cur = resolve(c0, cur, Lit::pos(gadget.nvars[0]));
    }

    LexGadget target = strict_counterpart(gadget);
    out.conclusions = target.clause_list();
    return out;
}

} // namespace pbproof
