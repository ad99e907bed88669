#include "pbproof/oracle.hpp"

namespace pbproof {

VarOrder default_order(const Cnf& g)
{
    auto vs = g.vars();
    return VarOrder(vs.begin(), vs.end());
}

VarOrder default_order(const PbFormula& f)
{
    auto vs = f.vars();
    return VarOrder(vs.begin(), vs.end());
}

namespace {

void check_cap(size_t n, const OracleLimits& lim)
{
    if (n > static_cast<size_t>(lim.max_vars))
        throw OracleCapExceeded(n);
}

Assignment from_mask(const VarOrder& vars, uint64_t mask)
{
    // Bit 0 of the mask is the last (least significant) variable, so that
    // counting masks upward enumerates assignments in lexicographic order.
    Assignment a;
    size_t n = vars.size();
    for (size_t i = 0; i < n; ++i)
        a.set(vars[i], (mask >> (n - 1 - i)) & 1);
    return a;
}

template <typename Pred>
std::optional<Assignment> first_model(const VarOrder& vars, const OracleLimits& lim,
                                      Pred pred)
{
    check_cap(vars.size(), lim);
    uint64_t count = uint64_t(1) << vars.size();
    for (uint64_t m = 0; m < count; ++m) {
        Assignment a = from_mask(vars, m);
        if (pred(a))
            return a;
    }
    return std::nullopt;
}

} // namespace

std::optional<Assignment> brute_sat(const Cnf& g, const VarOrder& vars,
                                    const OracleLimits& lim)
{
    return first_model(vars, lim, [&](const Assignment& a) { return satisfies(a, g); });
}

std::optional<Assignment> brute_sat(const PbFormula& f, const VarOrder& vars,
                                    const OracleLimits& lim)
{
    for (Var v : f.vars())
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            throw std::invalid_argument("brute_sat: order does not cover the formula");
    return first_model(vars, lim,
                       [&](const Assignment& a) { return f.satisfied_by(a); });
}

std::optional<Assignment>
brute_sat_with_blocks(const Cnf& g, const VarOrder& vars,
                      std::span<const ExtensionBlock> blocks,
                      const OracleLimits& lim)
{
    std::set<Var> known(vars.begin(), vars.end());
    for (const ExtensionBlock& b : blocks)
        for (Var v : b.defined_vars())
            known.insert(v);
    for (Var v : g.vars())
        if (!known.count(v))
            throw std::invalid_argument(
                "brute_sat_with_blocks: variable neither enumerated nor defined");
    return first_model(vars, lim, [&](const Assignment& a) {
        Assignment full = a;
        for (const ExtensionBlock& b : blocks)
            full = b.evaluate(full);
        return satisfies(full, g);
    });
}

bool equisatisfiable(const Cnf& a, const Cnf& b, const OracleLimits& lim)
{
    bool sa = brute_sat(a, default_order(a), lim).has_value();
    bool sb = brute_sat(b, default_order(b), lim).has_value();
    return sa == sb;
}

std::optional<Assignment> lex_min_model(const Cnf& g, const VarOrder& order,
                                        const OracleLimits& lim)
{
    for (Var v : g.vars())
        if (std::find(order.begin(), order.end(), v) == order.end())
            throw std::invalid_argument("lex_min_model: order does not cover the CNF");
    return brute_sat(g, order, lim); // masks are enumerated in lex order
}

BigInt lex_value(const Assignment& a, const VarOrder& order)
{
    BigInt v = 0;
    for (Var x : order) {
        v <<= 1;
        if (a.value(x))
            v += 1;
    }
    return v;
}

bool config_valid(const Configuration& cfg, const OracleLimits& lim)
{
    std::set<Var> vs = cfg.core.vars();
    for (Var v : cfg.derived.vars())
        vs.insert(v);
    for (Var v : cfg.zvars)
        vs.insert(v);
    VarOrder vars(vs.begin(), vs.end());
    check_cap(vars.size(), lim);

    std::vector<Lit> z = cfg.z_literals();
    uint64_t count = uint64_t(1) << vars.size();

    // Precompute the models of core and of core & derived.
    std::vector<Assignment> core_models, both_models;
    for (uint64_t m = 0; m < count; ++m) {
        Assignment a = from_mask(vars, m);
        if (cfg.core.satisfied_by(a)) {
            core_models.push_back(a);
            if (cfg.derived.satisfied_by(a))
                both_models.push_back(a);
        }
    }
    if (core_models.empty())
        return false;

    auto dominated = [&](const Assignment& beta, const Assignment& alpha) {
        // beta <= alpha under the order on the z variables.
        std::vector<Lit> bz, az;
        for (Var v : cfg.zvars) {
            bz.push_back(Lit::constant(beta.value(v)));
            az.push_back(Lit::constant(alpha.value(v)));
        }
        PbFormula ord = cfg.order.instantiate(bz, az);
        for (const PbConstraint& c : ord.constraints())
            if (!c.is_trivially_true())
                return false;
        return true;
    };
    (void)z;

    for (const Assignment& alpha : core_models) {
        bool ok = false;
        for (const Assignment& beta : both_models) {
            if (dominated(beta, alpha)) {
                ok = true;
                break;
            }
        }
        if (!ok)
            return false;
    }
    return true;
}

Assignment local_min_descent(const Cnf& gamma, const Substitution& omega,
                             const Assignment& alpha, const VarOrder& order)
{
    if (!satisfies(alpha, gamma))
        throw std::invalid_argument("local_min_descent: assignment does not satisfy the CNF");
    if (!is_symmetry(omega, gamma))
        throw std::invalid_argument("local_min_descent: substitution is not a symmetry");

    Assignment cur = alpha;
    for (;;) {
        // alpha o omega evaluated on the ordered variables.
        Assignment next;
        Substitution cs = cur.to_substitution();
        for (Var v : order) {
            Lit image = cs(omega(Lit::pos(v)));
            if (!image.is_const())
                throw std::invalid_argument("local_min_descent: assignment not total");
            next.set(v, image.const_value());
        }
        if (!(lex_value(next, order) < lex_value(cur, order)))
            return cur;
        if (!satisfies(next, gamma))
            return cur;
        cur = next;
    }
}

} // namespace pbproof
