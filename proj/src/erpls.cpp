#include "pbproof/erpls.hpp"

namespace pbproof {

ErplsStep ErplsStep::er(ErDerivation d)
{
    ErplsStep s;
    s.kind = Kind::Er;
    s.derivation = std::move(d);
    return s;
}

LexGadget ErplsStep::make_gadget() const
{
    std::vector<Lit> lhs, rhs;
    for (Var v : x_order) {
        lhs.push_back(Lit::pos(v));
        rhs.push_back(omega(Lit::pos(v)));
    }
    FreshVars fresh(gadget_base);
    return gen_lex(static_cast<int>(x_order.size()), false, true, lhs, rhs, fresh);
}

std::vector<Clause> ErplsStep::premises_a(const std::vector<Clause>& running) const
{
    std::vector<Clause> out = running;
    for (Clause& c : block.clauses())
        out.push_back(std::move(c));
    for (Lit p : clause.lits())
        out.push_back(Clause{~p});
    return out;
}

std::vector<Clause> ErplsStep::premises_b(const std::vector<Clause>& running) const
{
    std::vector<Clause> out = premises_a(running);
    for (Clause& c : make_gadget().clause_list())
        out.push_back(std::move(c));
    return out;
}

namespace {

void append_unique(std::vector<Clause>& list, Cnf& set, const Clause& c)
{
    if (!set.contains(c)) {
        list.push_back(c);
        set.insert(c);
    }
}

} // namespace

std::vector<std::vector<Clause>> ErplsProof::running_lists() const
{
    std::vector<std::vector<Clause>> out;
    std::vector<Clause> cur;
    Cnf set;
    for (const Clause& c : initial)
        append_unique(cur, set, c);
    out.push_back(cur);
    for (const ErplsStep& s : steps) {
        if (s.kind == ErplsStep::Kind::Er) {
            for (const Clause& c : s.derivation.conclusions)
                append_unique(cur, set, c);
        } else {
            append_unique(cur, set, s.clause);
        }
        out.push_back(cur);
    }
    return out;
}

Cnf ErplsProof::final_cnf() const
{
    return Cnf(running_lists().back());
}

CheckResult check_erpls(const ErplsProof& p)
{
    std::vector<Clause> running;
    Cnf running_set;
    for (const Clause& c : p.initial)
        append_unique(running, running_set, c);

    for (size_t i = 0; i < p.steps.size(); ++i) {
        const ErplsStep& s = p.steps[i];
        size_t stepno = i + 1;
        auto reject = [stepno](const std::string& why) {
            return CheckResult::reject(stepno, why);
        };

        if (s.kind == ErplsStep::Kind::Er) {
            if (Cnf(s.derivation.premises) != running_set)
                return reject("ER step premises differ from the running CNF");
            if (auto r = check_er(s.derivation); !r)
                return reject("ER derivation step " + std::to_string(r.step) + ": " +
                              r.reason);
            for (const Clause& c : s.derivation.conclusions)
                append_unique(running, running_set, c);
            continue;
        }

        // Dominance rule.
        std::set<Var> xset(s.x_order.begin(), s.x_order.end());
        if (xset.size() != s.x_order.size())
            return reject("variable order contains duplicates");
        if (xset != running_set.vars())
            return reject("variable order does not list the variables of the CNF");
        for (Var v : s.clause.vars())
            if (!xset.count(v))
                return reject("added clause mentions a variable outside the CNF");
        if (s.clause.contains(Lit::constant(false)) ||
            s.clause.contains(Lit::constant(true)))
            return reject("added clause must not contain constants");

        ExtensionBlock blk = s.block;
        blk.base_vars.assign(s.x_order.begin(), s.x_order.end());
        if (auto r = blk.validate(); !r)
            return reject("extension block axiom " + std::to_string(r.step) + ": " +
                          r.reason);
        std::set<Var> yset;
        for (Var y : blk.defined_vars())
            yset.insert(y);

        for (auto& [v, image] : s.omega.entries()) {
            if (!xset.count(v))
                return reject("substitution moves a variable outside the CNF");
            if (image.is_const())
                return reject("substitution image must be a literal over x and y");
            if (!xset.count(image.var()) && !yset.count(image.var()))
                return reject("substitution image outside the allowed variables");
        }

        LexGadget gadget;
        try {
            gadget = s.make_gadget();
        } catch (const std::exception& e) {
            return reject(std::string("lex gadget: ") + e.what());
        }
        std::set<Var> forbidden = running_set.vars();
        forbidden.insert(yset.begin(), yset.end());
        for (Var v : s.clause.vars())
            forbidden.insert(v);
        for (Var aux : gadget.aux_vars())
            if (forbidden.count(aux))
                return reject("gadget auxiliary appears in the CNF, the block or C");

        std::vector<Clause> prem_a = s.premises_a(running);
        if (Cnf(s.proof_a.premises) != Cnf(prem_a))
            return reject("first side derivation has the wrong premises");
        if (auto r = check_er(s.proof_a); !r)
            return reject("first side derivation step " + std::to_string(r.step) +
                          ": " + r.reason);
        {
            std::set<Clause> have(s.proof_a.premises.begin(), s.proof_a.premises.end());
            for (const Clause& c : s.proof_a.clause_sequence())
                have.insert(c);
            Cnf image = substitute(s.omega, running_set);
            for (const Clause& c : image.clauses())
                if (!have.count(c))
                    return reject("first side derivation does not derive the image CNF");
        }

        std::vector<Clause> prem_b = s.premises_b(running);
        if (Cnf(s.proof_b.premises) != Cnf(prem_b))
            return reject("second side derivation has the wrong premises");
        if (auto r = check_er(s.proof_b); !r)
            return reject("second side derivation step " + std::to_string(r.step) +
                          ": " + r.reason);
        {
            bool bot = false;
            for (const Clause& c : s.proof_b.clause_sequence())
                if (c.empty())
                    bot = true;
            for (const Clause& c : s.proof_b.premises)
                if (c.empty())
                    bot = true;
            if (!bot)
                return reject("second side derivation does not derive the empty clause");
        }

        append_unique(running, running_set, s.clause);
    }
    return CheckResult::accept();
}

bool step_equisat_test(const ErplsProof& p, const OracleLimits& lim)
{
    if (!check_erpls(p))
        return false;
    auto lists = p.running_lists();
    for (size_t i = 0; i + 1 < lists.size(); ++i)
        if (!equisatisfiable(Cnf(lists[i]), Cnf(lists[i + 1]), lim))
            return false;
    return true;
}

} // namespace pbproof
