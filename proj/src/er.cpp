#include "pbproof/er.hpp"

#include <cassert>
#include <functional>
#include <map>
#include <sstream>

namespace pbproof {

std::vector<Clause> ExtensionAxiom::clauses() const
{
    switch (kind) {
    case Kind::And:
        return {Clause{~u, ~v, Lit::pos(y)}, Clause{Lit::neg(y), u},
                Clause{Lit::neg(y), v}};
    case Kind::Alias:
        return {Clause{~u, Lit::pos(y)}, Clause{Lit::neg(y), u}};
    case Kind::Const:
        return {Clause{bit ? Lit::pos(y) : Lit::neg(y)}};
    }
    return {};
}

std::set<Var> ExtensionAxiom::input_vars() const
{
    std::set<Var> out;
    if (kind != Kind::Const && !u.is_const())
        out.insert(u.var());
    if (kind == Kind::And && !v.is_const())
        out.insert(v.var());
    return out;
}

ExtensionAxiom ExtensionAxiom::renamed(const Substitution& w, Var new_y) const
{
    ExtensionAxiom out = *this;
    out.y = new_y;
    if (kind != Kind::Const)
        out.u = w(u);
    if (kind == Kind::And)
        out.v = w(v);
    return out;
}

std::vector<Var> ExtensionBlock::defined_vars() const
{
    std::vector<Var> out;
    out.reserve(axioms.size());
    for (const ExtensionAxiom& ax : axioms)
        out.push_back(ax.y);
    return out;
}

std::vector<Clause> ExtensionBlock::clauses() const
{
    std::vector<Clause> out;
    for (const ExtensionAxiom& ax : axioms)
        for (Clause& c : ax.clauses())
            out.push_back(std::move(c));
    return out;
}

CheckResult ExtensionBlock::validate() const
{
    std::set<Var> allowed(base_vars.begin(), base_vars.end());
    std::set<Var> defined;
    for (size_t i = 0; i < axioms.size(); ++i) {
        const ExtensionAxiom& ax = axioms[i];
        if (ax.y <= 0)
            return CheckResult::reject(i + 1, "extension variable id must be positive");
        if (allowed.count(ax.y) || defined.count(ax.y))
            return CheckResult::reject(i + 1, "extension variable is not fresh in block");
        if (ax.kind != ExtensionAxiom::Kind::Const && ax.u.is_const())
            return CheckResult::reject(i + 1, "extension axiom input must be a literal");
        if (ax.kind == ExtensionAxiom::Kind::And && ax.v.is_const())
            return CheckResult::reject(i + 1, "extension axiom input must be a literal");
        for (Var v : ax.input_vars())
            if (!allowed.count(v) && !defined.count(v))
                return CheckResult::reject(
                    i + 1, "extension axiom input is not a base or earlier variable");
        defined.insert(ax.y);
    }
    return CheckResult::accept();
}

Assignment ExtensionBlock::evaluate(const Assignment& base) const
{
    Assignment out = base;
    for (const ExtensionAxiom& ax : axioms) {
        bool val = false;
        switch (ax.kind) {
        case ExtensionAxiom::Kind::And: {
            auto a = out.eval(ax.u), b = out.eval(ax.v);
            if (!a || !b)
                throw std::invalid_argument("extension block input unassigned");
            val = *a && *b;
            break;
        }
        case ExtensionAxiom::Kind::Alias: {
            auto a = out.eval(ax.u);
            if (!a)
                throw std::invalid_argument("extension block input unassigned");
            val = *a;
            break;
        }
        case ExtensionAxiom::Kind::Const:
            val = ax.bit;
            break;
        }
        out.set(ax.y, val);
    }
    return out;
}

ErStep ErStep::make_premise(size_t idx, Clause c)
{
    ErStep s;
    s.kind = Kind::Premise;
    s.premise = idx;
    s.clause = std::move(c);
    return s;
}

ErStep ErStep::make_resolve(size_t a, size_t b, Lit pivot, Clause result)
{
    ErStep s;
    s.kind = Kind::Resolve;
    s.a = a;
    s.b = b;
    s.pivot = pivot;
    s.clause = std::move(result);
    return s;
}

ErStep ErStep::make_weaken(size_t a, Clause result)
{
    ErStep s;
    s.kind = Kind::Weaken;
    s.a = a;
    s.clause = std::move(result);
    return s;
}

ErStep ErStep::make_drop_zero(size_t a, Clause result)
{
    ErStep s;
    s.kind = Kind::DropZero;
    s.a = a;
    s.clause = std::move(result);
    return s;
}

ErStep ErStep::make_extend(ExtensionAxiom ax)
{
    ErStep s;
    switch (ax.kind) {
    case ExtensionAxiom::Kind::And:
        s.kind = Kind::ExtendAnd;
        break;
    case ExtensionAxiom::Kind::Alias:
        s.kind = Kind::ExtendAlias;
        break;
    case ExtensionAxiom::Kind::Const:
        s.kind = Kind::ExtendConst;
        break;
    }
    s.axiom = std::move(ax);
    return s;
}

size_t ErStep::clause_count() const
{
    switch (kind) {
    case Kind::ExtendAnd:
        return 3;
    case Kind::ExtendAlias:
        return 2;
    default:
        return 1;
    }
}

bool ErDerivation::refutes() const
{
    for (const Clause& c : conclusions)
        if (c.empty())
            return true;
    return false;
}

std::vector<Clause> ErDerivation::clause_sequence() const
{
    std::vector<Clause> out;
    for (const ErStep& s : steps) {
        if (s.kind == ErStep::Kind::ExtendAnd || s.kind == ErStep::Kind::ExtendAlias ||
            s.kind == ErStep::Kind::ExtendConst) {
            for (Clause& c : s.axiom.clauses())
                out.push_back(std::move(c));
        } else {
            out.push_back(s.clause);
        }
    }
    return out;
}

std::vector<Var> ErDerivation::extension_vars() const
{
    std::vector<Var> out;
    for (const ErStep& s : steps)
        if (s.kind == ErStep::Kind::ExtendAnd || s.kind == ErStep::Kind::ExtendAlias ||
            s.kind == ErStep::Kind::ExtendConst)
            out.push_back(s.axiom.y);
    return out;
}

Var ErDerivation::max_var() const
{
    Var m = 0;
    auto scan_clause = [&m](const Clause& c) {
        for (Lit p : c.lits())
            if (!p.is_const())
                m = std::max(m, p.var());
    };
    for (const Clause& c : premises)
        scan_clause(c);
    for (const ErStep& s : steps) {
        scan_clause(s.clause);
        if (s.kind == ErStep::Kind::ExtendAnd || s.kind == ErStep::Kind::ExtendAlias ||
            s.kind == ErStep::Kind::ExtendConst) {
            m = std::max(m, s.axiom.y);
            for (Var v : s.axiom.input_vars())
                m = std::max(m, v);
        }
    }
    for (const Clause& c : conclusions)
        scan_clause(c);
    for (Var v : protected_vars)
        m = std::max(m, v);
    return m;
}

namespace {

bool is_extend(const ErStep& s)
{
    return s.kind == ErStep::Kind::ExtendAnd || s.kind == ErStep::Kind::ExtendAlias ||
           s.kind == ErStep::Kind::ExtendConst;
}

void add_clause_vars(std::set<Var>& seen, const Clause& c)
{
    for (Lit p : c.lits())
        if (!p.is_const())
            seen.insert(p.var());
}

} // namespace

CheckResult check_er(const ErDerivation& d)
{
    std::set<Var> premise_vars;
    for (const Clause& c : d.premises)
        add_clause_vars(premise_vars, c);
    std::set<Var> protect(d.protected_vars.begin(), d.protected_vars.end());
    std::set<Var> seen = premise_vars;

    std::vector<Clause> seq; // 1-based via seq[i-1]
    auto ref_ok = [&seq](size_t r) { return r >= 1 && r <= seq.size(); };

    for (size_t i = 0; i < d.steps.size(); ++i) {
        const ErStep& s = d.steps[i];
        size_t stepno = i + 1;
        switch (s.kind) {
        case ErStep::Kind::Premise: {
            if (s.premise < 1 || s.premise > d.premises.size())
                return CheckResult::reject(stepno, "premise index out of range");
            const Clause& c = d.premises[s.premise - 1];
            if (s.clause != c)
                return CheckResult::reject(stepno, "premise step clause mismatch");
            seq.push_back(c);
            break;
        }
        case ErStep::Kind::Resolve: {
            if (!ref_ok(s.a) || !ref_ok(s.b))
                return CheckResult::reject(stepno, "resolution reference out of range");
            if (s.pivot.is_const())
                return CheckResult::reject(stepno, "resolution pivot must be a literal");
            const Clause& ca = seq[s.a - 1];
            const Clause& cb = seq[s.b - 1];
            if (!ca.contains(s.pivot))
                return CheckResult::reject(stepno, "first parent does not contain pivot");
            if (!cb.contains(~s.pivot))
                return CheckResult::reject(stepno,
                                           "second parent does not contain negated pivot");
            Clause expect = ca.without(s.pivot).union_with(cb.without(~s.pivot));
            if (s.clause != expect)
                return CheckResult::reject(stepno, "stated resolvent is incorrect");
            seq.push_back(s.clause);
            break;
        }
        case ErStep::Kind::Weaken: {
            if (!ref_ok(s.a))
                return CheckResult::reject(stepno, "weakening reference out of range");
            const Clause& ca = seq[s.a - 1];
            if (!ca.subset_of(s.clause))
                return CheckResult::reject(stepno, "weakening must extend the clause");
            for (Lit p : s.clause.lits())
                if (!p.is_const() && !ca.contains(p) && !seen.count(p.var()))
                    return CheckResult::reject(
                        stepno, "weakening introduces a variable not seen earlier");
            seq.push_back(s.clause);
            break;
        }
        case ErStep::Kind::DropZero: {
            if (!ref_ok(s.a))
                return CheckResult::reject(stepno, "zero-rule reference out of range");
            const Clause& ca = seq[s.a - 1];
            if (!ca.contains(Lit::constant(false)))
                return CheckResult::reject(stepno, "clause does not contain the constant 0");
            if (s.clause != ca.without(Lit::constant(false)))
                return CheckResult::reject(stepno, "zero rule must remove exactly the constant 0");
            seq.push_back(s.clause);
            break;
        }
        case ErStep::Kind::ExtendAnd:
        case ErStep::Kind::ExtendAlias:
        case ErStep::Kind::ExtendConst: {
            const ExtensionAxiom& ax = s.axiom;
            if (ax.y <= 0)
                return CheckResult::reject(stepno, "extension variable id must be positive");
            if (seen.count(ax.y) || premise_vars.count(ax.y))
                return CheckResult::reject(stepno, "extension variable already appeared");
            if (protect.count(ax.y))
                return CheckResult::reject(stepno, "extension variable is protected");
            if (ax.kind != ExtensionAxiom::Kind::Const && ax.u.is_const())
                return CheckResult::reject(stepno, "extension input must be a literal");
            if (ax.kind == ExtensionAxiom::Kind::And && ax.v.is_const())
                return CheckResult::reject(stepno, "extension input must be a literal");
            for (Var v : ax.input_vars())
                if (!seen.count(v))
                    return CheckResult::reject(stepno,
                                               "extension input variable has not appeared");
            seen.insert(ax.y);
            for (Clause& c : ax.clauses())
                seq.push_back(std::move(c));
            break;
        }
        }
        add_clause_vars(seen, seq.back());
    }

    // Conclusions must appear among the premises or the derived clauses.
    std::set<Clause> have(seq.begin(), seq.end());
    have.insert(d.premises.begin(), d.premises.end());
    for (size_t i = 0; i < d.conclusions.size(); ++i)
        if (!have.count(d.conclusions[i]))
            return CheckResult::reject(0, "conclusion clause " + std::to_string(i + 1) +
                                              " was not derived");
    return CheckResult::accept();
}

int Circuit::add_and(int a, int b)
{
    gates.push_back({Gate::Op::And, a, b, false});
    return static_cast<int>(node_count());
}

int Circuit::add_or(int a, int b)
{
    return -add_and(-a, -b);
}

int Circuit::add_xor(int a, int b)
{
    int t1 = add_and(a, -b);
    int t2 = add_and(-a, b);
    return -add_and(-t1, -t2);
}

int Circuit::add_alias(int a)
{
    gates.push_back({Gate::Op::Alias, a, 0, false});
    return static_cast<int>(node_count());
}

int Circuit::add_const(bool bit)
{
    gates.push_back({Gate::Op::Const, 0, 0, bit});
    return static_cast<int>(node_count());
}

CheckResult Circuit::validate() const
{
    auto ref_ok = [](int r, size_t before) {
        size_t k = static_cast<size_t>(r < 0 ? -r : r);
        return r != 0 && k <= before;
    };
    for (size_t g = 0; g < gates.size(); ++g) {
        size_t before = arity + g;
        const Gate& gate = gates[g];
        if (gate.op != Gate::Op::Const && !ref_ok(gate.a, before))
            return CheckResult::reject(g + 1, "gate input references a later node");
        if (gate.op == Gate::Op::And && !ref_ok(gate.b, before))
            return CheckResult::reject(g + 1, "gate input references a later node");
    }
    for (int r : outputs)
        if (r == 0 || static_cast<size_t>(r < 0 ? -r : r) > node_count())
            return CheckResult::reject(0, "output references a missing node");
    if (primary_output && *primary_output >= gates.size())
        return CheckResult::reject(0, "primary output references a missing gate");
    return CheckResult::accept();
}

std::vector<bool> Circuit::eval_nodes(const std::vector<bool>& inputs) const
{
    if (static_cast<int>(inputs.size()) != arity)
        throw std::invalid_argument("circuit arity mismatch");
    std::vector<bool> vals(node_count() + 1, false);
    for (int i = 0; i < arity; ++i)
        vals[i + 1] = inputs[i];
    auto litval = [&vals](int r) { return r > 0 ? vals[r] : !vals[-r]; };
    for (size_t g = 0; g < gates.size(); ++g) {
        const Gate& gate = gates[g];
        bool v = false;
        switch (gate.op) {
        case Gate::Op::And:
            v = litval(gate.a) && litval(gate.b);
            break;
        case Gate::Op::Alias:
            v = litval(gate.a);
            break;
        case Gate::Op::Const:
            v = gate.bit;
            break;
        }
        vals[arity + g + 1] = v;
    }
    return vals;
}

std::vector<bool> Circuit::eval(const std::vector<bool>& inputs) const
{
    std::vector<bool> vals = eval_nodes(inputs);
    std::vector<bool> out;
    out.reserve(outputs.size());
    for (int r : outputs)
        out.push_back(r > 0 ? vals[r] : !vals[-r]);
    return out;
}

CircuitAxioms circuit_axioms(const Circuit& c, const std::vector<Var>& inputs,
                             FreshVars& fresh)
{
    if (static_cast<int>(inputs.size()) != c.arity)
        throw std::invalid_argument("circuit_axioms: arity mismatch");
    if (auto r = c.validate(); !r)
        throw std::invalid_argument("circuit_axioms: " + r.reason);

    std::vector<Lit> node_lit(c.node_count() + 1);
    for (int i = 0; i < c.arity; ++i)
        node_lit[i + 1] = Lit::pos(inputs[i]);
    auto ref_lit = [&node_lit](int r) {
        return r > 0 ? node_lit[r] : ~node_lit[-r];
    };

    CircuitAxioms out;
    out.block.base_vars = inputs;
    for (size_t g = 0; g < c.gates.size(); ++g) {
        const Circuit::Gate& gate = c.gates[g];
        Var y = fresh.take();
        switch (gate.op) {
        case Circuit::Gate::Op::And:
            out.block.axioms.push_back(
                ExtensionAxiom::make_and(y, ref_lit(gate.a), ref_lit(gate.b)));
            break;
        case Circuit::Gate::Op::Alias:
            out.block.axioms.push_back(ExtensionAxiom::make_alias(y, ref_lit(gate.a)));
            break;
        case Circuit::Gate::Op::Const:
            out.block.axioms.push_back(ExtensionAxiom::make_const(y, gate.bit));
            break;
        }
        node_lit[c.arity + g + 1] = Lit::pos(y);
        out.gate_vars.push_back(y);
    }
    if (c.primary_output)
        out.output_var = out.gate_vars[*c.primary_output];
    for (int r : c.outputs)
        out.output_literals.push_back(ref_lit(r));
    return out;
}

// ---------------------------------------------------------------------------
// Derivation building helper: appends steps and tracks clause positions.

namespace {

class ErBuilder {
  public:
    explicit ErBuilder(ErDerivation& d) : d_(d)
    {
        for (const ErStep& s : d_.steps)
            note_step(s);
    }

    size_t import_premise(size_t idx)
    {
        return push(ErStep::make_premise(idx, d_.premises[idx - 1]));
    }

    size_t resolve(size_t a, size_t b, Lit pivot)
    {
        Clause r = clause(a).without(pivot).union_with(clause(b).without(~pivot));
        return push(ErStep::make_resolve(a, b, pivot, std::move(r)));
    }

    size_t weaken(size_t a, Clause target)
    {
        return push(ErStep::make_weaken(a, std::move(target)));
    }

    size_t drop_zero(size_t a)
    {
        return push(ErStep::make_drop_zero(a, clause(a).without(Lit::constant(false))));
    }

    std::vector<size_t> extend(const ExtensionAxiom& ax)
    {
        size_t first = seq_.size() + 1;
        push(ErStep::make_extend(ax));
        std::vector<size_t> out;
        for (size_t k = 0; k < ax.clause_count(); ++k)
            out.push_back(first + k);
        return out;
    }

    const Clause& clause(size_t pos) const { return seq_[pos - 1]; }
    size_t size() const { return seq_.size(); }

    /// Position of a clause equal to c, if one was derived.
    std::optional<size_t> find(const Clause& c) const
    {
        auto it = index_.find(c);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

  private:
    size_t push(ErStep s)
    {
        d_.steps.push_back(std::move(s));
        note_step(d_.steps.back());
        return seq_.size();
    }

    void note_step(const ErStep& s)
    {
        if (is_extend(s)) {
            for (Clause& c : s.axiom.clauses())
                note_clause(std::move(c));
        } else {
            note_clause(s.clause);
        }
    }

    void note_clause(Clause c)
    {
        seq_.push_back(std::move(c));
        index_.emplace(seq_.back(), seq_.size());
    }

    ErDerivation& d_;
    std::vector<Clause> seq_;
    std::map<Clause, size_t> index_;
};

} // namespace

ErDerivation rename_extension_vars(const ErDerivation& pi, FreshVars& fresh,
                                   const std::set<Var>& keep)
{
    fresh.reserve_past(pi.max_var());
    Substitution ren;
    for (Var v : pi.extension_vars())
        if (!keep.count(v))
            ren.set(v, Lit::pos(fresh.take()));
    if (ren.is_identity())
        return pi;

    for (const Clause& c : pi.conclusions)
        for (Var v : c.vars())
            if (ren.moves(v))
                throw std::invalid_argument(
                    "rename_extension_vars: conclusion uses a renamed variable");

    ErDerivation out;
    out.premises = pi.premises;
    out.protected_vars = pi.protected_vars;
    out.conclusions = pi.conclusions;
    out.steps.reserve(pi.steps.size());
    for (const ErStep& s : pi.steps) {
        ErStep t = s;
        if (is_extend(s)) {
            Var ny = s.axiom.y;
            if (ren.moves(ny))
                ny = ren(Lit::pos(ny)).var();
            t.axiom = s.axiom.renamed(ren, ny);
        } else {
            t.clause = substitute(ren, s.clause);
            if (s.kind == ErStep::Kind::Resolve)
                t.pivot = ren(s.pivot);
        }
        out.steps.push_back(std::move(t));
    }
    return out;
}

ErDerivation concat_same_premises(const ErDerivation& pi1, const ErDerivation& pi2)
{
    if (Cnf(pi1.premises) != Cnf(pi2.premises))
        throw std::invalid_argument("concat_same_premises: premise sets differ");

    ErDerivation out = pi1;
    // pi2 may list the shared premises in a different order.
    std::map<Clause, size_t> premise_pos;
    for (size_t i = 0; i < out.premises.size(); ++i)
        premise_pos.emplace(out.premises[i], i + 1);

    size_t shift = 0;
    for (const ErStep& s : pi1.steps)
        shift += s.clause_count();
    for (const ErStep& s : pi2.steps) {
        ErStep t = s;
        if (t.kind == ErStep::Kind::Premise) {
            t.premise = premise_pos.at(pi2.premises[s.premise - 1]);
        } else if (!is_extend(t)) {
            t.a += shift;
            if (t.kind == ErStep::Kind::Resolve)
                t.b += shift;
        }
        out.steps.push_back(std::move(t));
    }
    for (const Clause& c : pi2.conclusions)
        out.conclusions.push_back(c);
    for (Var v : pi2.protected_vars)
        out.protected_vars.push_back(v);
    return out;
}

ErDerivation compose_er(const ErDerivation& pi1, const ErDerivation& pi2,
                        FreshVars& fresh)
{
    fresh.reserve_past(pi1.max_var());

    std::set<Var> keep;
    {
        std::set<Var> ext2;
        for (Var v : pi2.extension_vars())
            ext2.insert(v);
        for (const Clause& c : pi2.conclusions)
            for (Var v : c.vars())
                if (ext2.count(v))
                    keep.insert(v);
    }
    // Kept extension variables of pi2 (those its conclusions mention) must not
    // clash with anything in pi1.
    std::set<Var> pi1_vars;
    for (const Clause& c : pi1.premises)
        add_clause_vars(pi1_vars, c);
    for (const Clause& c : pi1.clause_sequence())
        add_clause_vars(pi1_vars, c);
    for (Var v : keep)
        if (pi1_vars.count(v))
            throw std::invalid_argument(
                "compose_er: variable disjointness violated by kept extension variable x" +
                std::to_string(v));

    ErDerivation pi2r = rename_extension_vars(pi2, fresh, keep);

    ErDerivation out;
    out.premises = pi1.premises;
    out.protected_vars = pi1.protected_vars;
    out.steps = pi1.steps;
    ErBuilder b(out);

    std::map<Clause, size_t> premise_pos;
    for (size_t i = 0; i < out.premises.size(); ++i)
        premise_pos.emplace(out.premises[i], i + 1);

    // Remap of pi2 clause positions into the output sequence.
    std::vector<size_t> pos_map;
    pos_map.push_back(0); // 1-based
    for (const ErStep& s : pi2r.steps) {
        switch (s.kind) {
        case ErStep::Kind::Premise: {
            const Clause& c = s.clause;
            if (auto at = b.find(c)) {
                pos_map.push_back(*at);
            } else if (auto it = premise_pos.find(c); it != premise_pos.end()) {
                pos_map.push_back(b.import_premise(it->second));
            } else {
                throw std::invalid_argument(
                    "compose_er: premise of second derivation was not derived by the first");
            }
            break;
        }
        case ErStep::Kind::Resolve:
            pos_map.push_back(b.resolve(pos_map[s.a], pos_map[s.b], s.pivot));
            break;
        case ErStep::Kind::Weaken:
            pos_map.push_back(b.weaken(pos_map[s.a], s.clause));
            break;
        case ErStep::Kind::DropZero:
            pos_map.push_back(b.drop_zero(pos_map[s.a]));
            break;
        default: {
            auto ps = b.extend(s.axiom);
            for (size_t p : ps)
                pos_map.push_back(p);
            break;
        }
        }
    }

    out.conclusions = pi2r.conclusions;
    return out;
}

ErDerivation pull_conclusions(const ErDerivation& pi1, const ExtensionBlock& delta,
                              FreshVars& fresh)
{
    if (auto r = delta.validate(); !r)
        throw std::invalid_argument("pull_conclusions: not an extension block: " + r.reason);

    std::vector<Clause> delta_clauses = delta.clauses();
    Cnf delta_cnf(delta_clauses);
    std::set<Var> yvars;
    for (Var v : delta.defined_vars())
        yvars.insert(v);
    for (const Clause& c : pi1.premises)
        for (Var v : c.vars())
            if (yvars.count(v))
                throw std::invalid_argument(
                    "pull_conclusions: block variable occurs in the premises");

    fresh.reserve_past(pi1.max_var());

    // Conclusions split into the block itself and the rest A.
    std::vector<Clause> a_part;
    for (const Clause& c : pi1.conclusions)
        if (!delta_cnf.contains(c))
            a_part.push_back(c);

    Substitution zmap;
    std::map<Var, Var> y_to_z;
    for (Var y : delta.defined_vars()) {
        Var z = fresh.take();
        zmap.set(y, Lit::pos(z));
        y_to_z[y] = z;
    }

    ErDerivation out;
    out.premises = pi1.premises;
    out.premises.insert(out.premises.end(), delta_clauses.begin(), delta_clauses.end());
    out.protected_vars = pi1.protected_vars;

    // Copy of pi1 with y renamed to z everywhere.
    for (const ErStep& s : pi1.steps) {
        ErStep t = s;
        if (is_extend(s)) {
            Var ny = s.axiom.y;
            if (auto it = y_to_z.find(ny); it != y_to_z.end())
                ny = it->second;
            t.axiom = s.axiom.renamed(zmap, ny);
        } else {
            t.clause = substitute(zmap, s.clause);
            if (s.kind == ErStep::Kind::Resolve)
                t.pivot = zmap(s.pivot);
        }
        out.steps.push_back(std::move(t));
    }
    ErBuilder b(out);

    size_t premise_base = pi1.premises.size();
    auto import_delta_clause = [&](size_t flat_idx) {
        return b.import_premise(premise_base + flat_idx + 1);
    };

    // Positions of each defined variable's axiom clauses: in the premises for
    // the y copy, in the renamed derivation for the z copy.
    std::map<Var, size_t> y_axiom_flat; // index into delta_clauses of first clause
    {
        size_t at = 0;
        for (const ExtensionAxiom& ax : delta.axioms) {
            y_axiom_flat[ax.y] = at;
            at += ax.clause_count();
        }
    }

    std::map<Var, size_t> eq_yz, eq_zy; // positions of (~y | z) and (~z | y)

    for (const ExtensionAxiom& ax : delta.axioms) {
        Var y = ax.y;
        Var z = y_to_z.at(y);
        Lit py = Lit::pos(y), pz = Lit::pos(z);
        size_t flat = y_axiom_flat.at(y);

        // Resolve (guard | l) against the equivalences to obtain (guard | l'),
        // where l' = zmap(l); used left-to-right for ~y | z.
        auto to_primed = [&](size_t pos, Lit l) -> size_t {
            Lit lp = zmap(l);
            if (lp == l)
                return pos;
            Var j = l.var();
            if (l.negated())
                return b.resolve(eq_zy.at(j), pos, Lit::pos(j));
            return b.resolve(pos, eq_yz.at(j), Lit::pos(j));
        };

        switch (ax.kind) {
        case ExtensionAxiom::Kind::And: {
            Lit u = ax.u, v = ax.v;
            Lit up = zmap(u), vp = zmap(v);
            // Premise clauses of y's axiom.
            size_t p0 = import_delta_clause(flat);     // ~u | ~v | y
            size_t p1 = import_delta_clause(flat + 1); // ~y | u
            size_t p2 = import_delta_clause(flat + 2); // ~y | v
            // z's axiom clauses are somewhere in the copied steps.
            Clause d0{~up, ~vp, pz}, d1{Lit::neg(z), up}, d2{Lit::neg(z), vp};
            size_t q0 = *b.find(d0), q1 = *b.find(d1), q2 = *b.find(d2);

            // ~y | z.
            size_t yu = to_primed(p1, u); // ~y | u'
            size_t yv = to_primed(p2, v); // ~y | v'
            size_t cur = q0;
            if (b.clause(cur).contains(~up))
                cur = b.resolve(yu, cur, up);
            if (b.clause(cur).contains(~vp))
                cur = b.resolve(yv, cur, vp);
            if (b.clause(cur) != Clause{Lit::neg(y), pz})
                throw std::logic_error("pull_conclusions: equivalence derivation failed");
            eq_yz[y] = cur;

            // ~z | y: bridge z-side implications back to unprimed literals.
            auto back = [&](size_t pos, Lit l, Lit lp) -> size_t {
                if (lp == l)
                    return pos;
                Var j = l.var(); // original y_j
                Var zj = y_to_z.at(j);
                if (l.negated()) {
                    // have (~z | ~z_j), want (~z | ~y_j): resolve with (~y_j | z_j)
                    return b.resolve(eq_yz.at(j), pos, Lit::pos(zj));
                }
                // have (~z | z_j), want (~z | y_j): resolve with (~z_j | y_j)
                return b.resolve(pos, eq_zy.at(j), Lit::pos(zj));
            };
            size_t zu = back(q1, u, up); // ~z | u
            size_t zv = back(q2, v, vp); // ~z | v
            size_t cur2 = p0;
            if (b.clause(cur2).contains(~u))
                cur2 = b.resolve(zu, cur2, u);
            if (b.clause(cur2).contains(~v))
                cur2 = b.resolve(zv, cur2, v);
            if (b.clause(cur2) != Clause{Lit::neg(z), py})
                throw std::logic_error("pull_conclusions: equivalence derivation failed");
            eq_zy[y] = cur2;
            break;
        }
        case ExtensionAxiom::Kind::Alias: {
            Lit u = ax.u;
            Lit up = zmap(u);
            size_t p0 = import_delta_clause(flat);     // ~u | y
            size_t p1 = import_delta_clause(flat + 1); // ~y | u
            Clause d0{~up, pz}, d1{Lit::neg(z), up};
            size_t q0 = *b.find(d0), q1 = *b.find(d1);

            size_t yu = to_primed(p1, u); // ~y | u'
            eq_yz[y] = b.resolve(yu, q0, up);
            auto back = [&](size_t pos, Lit l, Lit lp) -> size_t {
                if (lp == l)
                    return pos;
                Var j = l.var();
                Var zj = y_to_z.at(j);
                if (l.negated())
                    return b.resolve(eq_yz.at(j), pos, Lit::pos(zj));
                return b.resolve(pos, eq_zy.at(j), Lit::pos(zj));
            };
            size_t zu = back(q1, u, up); // ~z | u
            eq_zy[y] = b.resolve(zu, p0, u);
            break;
        }
        case ExtensionAxiom::Kind::Const: {
            size_t p0 = import_delta_clause(flat); // y or ~y
            Clause dz{ax.bit ? pz : ~pz};
            size_t q0 = *b.find(dz);
            if (ax.bit) {
                eq_yz[y] = b.weaken(q0, Clause{Lit::neg(y), pz});
                eq_zy[y] = b.weaken(p0, Clause{Lit::neg(z), py});
            } else {
                eq_yz[y] = b.weaken(p0, Clause{Lit::neg(y), pz});
                eq_zy[y] = b.weaken(q0, Clause{Lit::neg(z), py});
            }
            break;
        }
        }
    }

    // Pull each conclusion of A back from the z variables to the y variables.
    for (const Clause& a : a_part) {
        Clause ap = substitute(zmap, a);
        auto at = b.find(ap);
        if (!at)
            throw std::logic_error("pull_conclusions: renamed conclusion missing");
        size_t cur = *at;
        for (Lit l : a.lits()) {
            if (l.is_const() || !yvars.count(l.var()))
                continue;
            Var j = l.var();
            Var zj = y_to_z.at(j);
            if (!l.negated()) {
                if (b.clause(cur).contains(Lit::pos(zj)))
                    cur = b.resolve(cur, eq_zy.at(j), Lit::pos(zj));
            } else {
                if (b.clause(cur).contains(Lit::neg(zj)))
                    cur = b.resolve(eq_yz.at(j), cur, Lit::pos(zj));
            }
        }
        if (b.clause(cur) != a)
            throw std::logic_error("pull_conclusions: pulled clause mismatch");
    }

    out.conclusions = delta_clauses;
    out.conclusions.insert(out.conclusions.end(), a_part.begin(), a_part.end());
    return out;
}

std::pair<ErDerivation, ExtensionBlock> hoist_extensions(const ErDerivation& pi)
{
    ExtensionBlock block;
    {
        std::set<Var> base;
        for (const Clause& c : pi.premises)
            for (Var v : c.vars())
                base.insert(v);
        block.base_vars.assign(base.begin(), base.end());
    }
    for (const ErStep& s : pi.steps)
        if (is_extend(s))
            block.axioms.push_back(s.axiom);

    ErDerivation out;
    out.premises = pi.premises;
    out.protected_vars = pi.protected_vars;
    out.conclusions = pi.conclusions;

    std::vector<Clause> block_clauses = block.clauses();
    out.premises.insert(out.premises.end(), block_clauses.begin(), block_clauses.end());

    ErBuilder b(out);
    // Import the hoisted axioms up front so references can be remapped onto
    // them.
    std::vector<size_t> block_pos;
    for (size_t k = 0; k < block_clauses.size(); ++k)
        block_pos.push_back(b.import_premise(pi.premises.size() + k + 1));

    std::vector<size_t> pos_map;
    pos_map.push_back(0);
    size_t next_block = 0;
    for (const ErStep& s : pi.steps) {
        if (is_extend(s)) {
            for (size_t k = 0; k < s.clause_count(); ++k)
                pos_map.push_back(block_pos[next_block++]);
            continue;
        }
        switch (s.kind) {
        case ErStep::Kind::Premise:
            pos_map.push_back(b.import_premise(s.premise));
            break;
        case ErStep::Kind::Resolve:
            pos_map.push_back(b.resolve(pos_map[s.a], pos_map[s.b], s.pivot));
            break;
        case ErStep::Kind::Weaken:
            pos_map.push_back(b.weaken(pos_map[s.a], s.clause));
            break;
        case ErStep::Kind::DropZero:
            pos_map.push_back(b.drop_zero(pos_map[s.a]));
            break;
        default:
            break;
        }
    }
    return {std::move(out), std::move(block)};
}

// Shared engine for the refutation-to-derivation transformation. Appends the
// transformed body of `pi` (a refutation of premises & {~z}) to the builder,
// mapping each clause C that avoids ~z to C | z. `premise_at` supplies the
// output position of a premise clause of pi when one is needed.
namespace {

size_t transform_refutation_body(const ErDerivation& pi, Var z, ErBuilder& b,
                                 const PremiseResolver& premise_at)
{
    Lit pz = Lit::pos(z), nz = Lit::neg(z);
    std::map<size_t, size_t> import_cache;
    std::vector<std::optional<size_t>> img;
    img.push_back(std::nullopt); // 1-based
    std::optional<size_t> final_pos;

    std::vector<Clause> seq = pi.clause_sequence();

    auto with_z = [&pz](const Clause& c) { return c.with(pz); };

    size_t at = 0; // current position in pi's clause sequence (0-based)
    for (const ErStep& s : pi.steps) {
        size_t n = s.clause_count();
        if (is_extend(s)) {
            auto ps = b.extend(s.axiom);
            for (size_t k = 0; k < n; ++k) {
                const Clause& c = seq[at + k];
                if (c.contains(pz))
                    img.push_back(ps[k]);
                else
                    img.push_back(b.weaken(ps[k], with_z(c)));
            }
            at += n;
            continue;
        }

        const Clause& c = seq[at];
        ++at;
        if (c.contains(nz)) {
            img.push_back(std::nullopt);
            continue;
        }
        switch (s.kind) {
        case ErStep::Kind::Premise: {
            PremiseImage where = premise_at(s.premise, c);
            size_t pos = 0;
            switch (where.kind) {
            case PremiseImage::Kind::Missing:
                throw std::invalid_argument(
                    "refutation transform: unmapped premise clause");
            case PremiseImage::Kind::AtPosition:
                pos = where.value;
                break;
            case PremiseImage::Kind::ImportPremise: {
                auto it = import_cache.find(where.value);
                if (it != import_cache.end())
                    pos = it->second;
                else {
                    pos = b.import_premise(where.value);
                    import_cache.emplace(where.value, pos);
                }
                break;
            }
            }
            img.push_back(c.contains(pz) ? pos : b.weaken(pos, with_z(c)));
            break;
        }
        case ErStep::Kind::Resolve: {
            if (s.pivot.var() == z) {
                size_t positive = s.pivot == pz ? s.a : s.b;
                auto src = img[positive];
                if (!src)
                    throw std::logic_error("refutation transform: missing parent image");
                Clause want = with_z(c);
                img.push_back(want == b.clause(*src) ? *src : b.weaken(*src, want));
            } else {
                auto ia = img[s.a], ib = img[s.b];
                if (!ia || !ib)
                    throw std::logic_error("refutation transform: missing parent image");
                img.push_back(b.resolve(*ia, *ib, s.pivot));
            }
            break;
        }
        case ErStep::Kind::Weaken: {
            auto ia = img[s.a];
            if (!ia)
                throw std::logic_error("refutation transform: missing weakening source");
            img.push_back(b.weaken(*ia, with_z(c)));
            break;
        }
        case ErStep::Kind::DropZero: {
            auto ia = img[s.a];
            if (!ia)
                throw std::logic_error("refutation transform: missing source image");
            img.push_back(b.drop_zero(*ia));
            break;
        }
        default:
            break;
        }
        if (c.empty())
            final_pos = *img.back();
    }
    if (!final_pos)
        throw std::invalid_argument("refutation transform: input does not derive the empty clause");
    return *final_pos;
}

} // namespace

ErDerivation refutation_to_derivation(const ErDerivation& pi, Var z)
{
    Clause unit{Lit::neg(z)};
    bool found = false;
    for (const Clause& c : pi.premises)
        if (c == unit)
            found = true;
    if (!found)
        throw std::invalid_argument("refutation_to_derivation: ~z is not a premise");

    ErDerivation out;
    std::vector<size_t> premise_map(pi.premises.size() + 1, 0);
    for (size_t i = 0; i < pi.premises.size(); ++i) {
        if (pi.premises[i] == unit)
            continue;
        out.premises.push_back(pi.premises[i]);
        premise_map[i + 1] = out.premises.size();
    }
    out.protected_vars = pi.protected_vars;

    bool z_visible = false;
    for (const Clause& c : out.premises)
        if (c.vars().count(z))
            z_visible = true;
    if (!z_visible)
        throw std::invalid_argument(
            "refutation_to_derivation: z does not occur in the remaining premises");

    ErBuilder b(out);
    transform_refutation_body(pi, z, b, [&](size_t idx, const Clause&) {
        size_t mapped = premise_map[idx];
        return mapped == 0 ? PremiseImage::missing() : PremiseImage::import(mapped);
    });
    out.conclusions = {Clause{Lit::pos(z)}};
    return out;
}

size_t detail_transform_refutation(const ErDerivation& pi, Var z,
                                   ErDerivation& target,
                                   const PremiseResolver& premise_at)
{
    ErBuilder b(target);
    return transform_refutation_body(pi, z, b, premise_at);
}

} // namespace pbproof
