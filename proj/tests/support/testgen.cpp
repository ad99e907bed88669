#include "support/testgen.hpp"

#include <map>

namespace pbproof::testgen {

Clause clause(std::initializer_list<int> dimacs_lits)
{
    std::vector<Lit> lits;
    for (int d : dimacs_lits)
        lits.push_back(L(d));
    return Clause(std::move(lits));
}

Cnf cnf(std::initializer_list<std::initializer_list<int>> clauses)
{
    std::vector<Clause> cs;
    for (auto& c : clauses)
        cs.push_back(clause(c));
    return Cnf(std::move(cs));
}

std::vector<Clause> clause_list(std::initializer_list<std::initializer_list<int>> cs)
{
    std::vector<Clause> out;
    for (auto& c : cs)
        out.push_back(clause(c));
    return out;
}

namespace {

struct TreeBuilder {
    const std::vector<Clause>& premises;
    ErDerivation& out;
    std::map<size_t, size_t> imported;
    std::vector<Clause> seq;

    size_t import_premise(size_t idx)
    {
        auto it = imported.find(idx);
        if (it != imported.end())
            return it->second;
        out.steps.push_back(ErStep::make_premise(idx, premises[idx - 1]));
        seq.push_back(premises[idx - 1]);
        imported.emplace(idx, seq.size());
        return seq.size();
    }

    size_t resolve(size_t a, size_t b, Lit pivot)
    {
        Clause r = seq[a - 1].without(pivot).union_with(seq[b - 1].without(~pivot));
        out.steps.push_back(ErStep::make_resolve(a, b, pivot, r));
        seq.push_back(std::move(r));
        return seq.size();
    }

    size_t drop_zero(size_t a)
    {
        Clause r = seq[a - 1].without(Lit::constant(false));
        out.steps.push_back(ErStep::make_drop_zero(a, r));
        seq.push_back(std::move(r));
        return seq.size();
    }

    const Clause& at(size_t pos) const { return seq[pos - 1]; }
};

// A clause is falsified under a partial assignment iff every literal
// evaluates to false.
bool falsified(const Clause& c, const Assignment& a)
{
    for (Lit p : c.lits()) {
        auto v = a.eval(p);
        if (!v || *v)
            return false;
    }
    return true;
}

std::optional<size_t> falsified_premise(const std::vector<Clause>& premises,
                                        const Assignment& a)
{
    for (size_t i = 0; i < premises.size(); ++i)
        if (falsified(premises[i], a))
            return i + 1;
    return std::nullopt;
}

// Returns the position of a derived clause falsified by `partial`.
size_t refute_rec(TreeBuilder& tb, const std::vector<Var>& order, size_t depth,
                  Assignment& partial)
{
    if (auto hit = falsified_premise(tb.premises, partial))
        return tb.import_premise(*hit);
    if (depth >= order.size())
        throw std::invalid_argument("tree_refutation: premises are satisfiable");

    Var v = order[depth];
    partial.set(v, false);
    size_t left = refute_rec(tb, order, depth + 1, partial);
    {
        // Un-assign by rebuilding; Assignment has no erase, so emulate.
        Assignment trimmed;
        for (auto& [x, b] : partial.values())
            if (x != v)
                trimmed.set(x, b);
        partial = trimmed;
    }
    if (!tb.at(left).contains(Lit::pos(v)))
        return left;

    partial.set(v, true);
    size_t right = refute_rec(tb, order, depth + 1, partial);
    {
        Assignment trimmed;
        for (auto& [x, b] : partial.values())
            if (x != v)
                trimmed.set(x, b);
        partial = trimmed;
    }
    if (!tb.at(right).contains(Lit::neg(v)))
        return right;

    return tb.resolve(left, right, Lit::pos(v));
}

} // namespace

ErDerivation tree_refutation(const std::vector<Clause>& premises,
                             const std::vector<Var>& branch_order)
{
    ErDerivation out;
    out.premises = premises;
    TreeBuilder tb{premises, out, {}, {}};
    Assignment partial;
    size_t root = refute_rec(tb, branch_order, 0, partial);
    while (tb.at(root).contains(Lit::constant(false)))
        root = tb.drop_zero(root);
    if (!tb.at(root).empty())
        throw std::logic_error("tree_refutation: root clause is not empty: " +
                               tb.at(root).to_string());
    out.conclusions = {Clause{}};
    return out;
}

ErDerivation tree_refutation_auto(const std::vector<Clause>& premises,
                                  const std::vector<Var>& prefix)
{
    std::set<Var> vs;
    for (const Clause& c : premises)
        for (Var v : c.vars())
            vs.insert(v);
    std::vector<Var> order = prefix;
    std::set<Var> used(prefix.begin(), prefix.end());
    for (Var v : vs)
        if (!used.count(v))
            order.push_back(v);
    return tree_refutation(premises, order);
}

Cnf random_cnf(std::mt19937& rng, int n, int m, int width)
{
    std::uniform_int_distribution<int> var(1, n);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<Clause> cs;
    for (int i = 0; i < m; ++i) {
        std::vector<Lit> lits;
        for (int k = 0; k < width; ++k) {
            int v = var(rng);
            lits.push_back(sign(rng) ? Lit::pos(v) : Lit::neg(v));
        }
        cs.push_back(Clause(std::move(lits)));
    }
    return Cnf(std::move(cs));
}

Substitution random_subst(std::mt19937& rng, int n, bool with_consts)
{
    std::uniform_int_distribution<int> var(1, n);
    std::uniform_int_distribution<int> kind(0, with_consts ? 5 : 3);
    Substitution s;
    for (Var v = 1; v <= n; ++v) {
        switch (kind(rng)) {
        case 0:
            break; // identity
        case 1:
            s.set(v, Lit::pos(var(rng)));
            break;
        case 2:
            s.set(v, Lit::neg(var(rng)));
            break;
        case 3:
            s.set(v, Lit::neg(v));
            break;
        case 4:
            s.set(v, Lit::constant(false));
            break;
        default:
            s.set(v, Lit::constant(true));
            break;
        }
    }
    return s;
}

Assignment random_assignment(std::mt19937& rng, int n)
{
    std::uniform_int_distribution<int> bit(0, 1);
    Assignment a;
    for (Var v = 1; v <= n; ++v)
        a.set(v, bit(rng) == 1);
    return a;
}

std::vector<SymmetricInstance> symmetric_pool()
{
    std::vector<SymmetricInstance> out;
    auto swap12 = [] {
        Substitution s;
        s.set(1, Lit::pos(2));
        s.set(2, Lit::pos(1));
        return s;
    };
    out.push_back({cnf({{1, 2}, {-1, -2}}), swap12()});
    out.push_back({cnf({{1, 2}, {-1, -2}, {1, -2, 3}, {2, -1, 3}}), swap12()});
    {
        // Negation symmetry x -> ~x.
        Substitution s;
        s.set(1, Lit::neg(1));
        out.push_back({cnf({{1, 2}, {-1, 2}}), s});
    }
    {
        // Rotation of three variables.
        Substitution s;
        s.set(1, Lit::pos(2));
        s.set(2, Lit::pos(3));
        s.set(3, Lit::pos(1));
        out.push_back({cnf({{1, 2, 3}, {-1, -2, -3}}), s});
    }
    {
        // Swap of two pairs.
        Substitution s;
        s.set(1, Lit::pos(3));
        s.set(3, Lit::pos(1));
        s.set(2, Lit::pos(4));
        s.set(4, Lit::pos(2));
        out.push_back({cnf({{1, 2}, {3, 4}, {-1, -3}, {-2, -4}}), s});
    }
    return out;
}

} // namespace pbproof::testgen
