#include "pbproof/symmetry.hpp"

#include <unordered_map>

namespace pbproof {

std::vector<LexGadget> QRefutation::leader_gadgets() const
{
    std::vector<LexGadget> out;
    FreshVars fresh(aux_base);
    Cnf g(gamma);
    for (const Substitution& w : symmetries)
        out.push_back(gen_lex_leader_gadget(g, w, order, fresh));
    return out;
}

std::vector<Clause> QRefutation::augmented() const
{
    std::vector<Clause> out = gamma;
    for (const LexGadget& g : leader_gadgets())
        for (Clause& c : g.clause_list())
            out.push_back(std::move(c));
    return out;
}

LexGadget gen_lex_leader_gadget(const Cnf& gamma, const Substitution& omega,
                                const VarOrder& order, FreshVars& fresh)
{
    if (!is_symmetry(omega, gamma))
        throw std::invalid_argument("gen_lex_leader: substitution is not a symmetry");
    std::set<Var> ordered(order.begin(), order.end());
    if (ordered.size() != order.size())
        throw std::invalid_argument("gen_lex_leader: duplicate ordered variable");
    for (Var v : gamma.vars())
        if (!ordered.count(v))
            throw std::invalid_argument("gen_lex_leader: order does not cover the CNF");

    std::vector<Lit> lhs, rhs;
    for (Var v : order) {
        lhs.push_back(Lit::pos(v));
        rhs.push_back(omega(Lit::pos(v)));
    }
    return gen_lex(static_cast<int>(order.size()), false, true, lhs, rhs, fresh);
}

Cnf gen_lex_leader(const Cnf& gamma, const Substitution& omega, const VarOrder& order)
{
    Var top = 0;
    for (Var v : order)
        top = std::max(top, v);
    for (Var v : omega.support())
        top = std::max(top, v);
    top = std::max(top, gamma.max_var());
    FreshVars fresh(top + 1);
    return gen_lex_leader_gadget(gamma, omega, order, fresh).cnf();
}

CheckResult check_q(const QRefutation& p, std::optional<size_t> k_limit)
{
    if (k_limit && p.symmetries.size() > *k_limit)
        return CheckResult::reject(0, "too many symmetries for the requested limit");

    Cnf g(p.gamma);
    std::set<Var> ordered(p.order.begin(), p.order.end());
    if (ordered.size() != p.order.size())
        return CheckResult::reject(0, "duplicate variable in the order");
    if (ordered != g.vars())
        return CheckResult::reject(0, "order does not list the CNF variables");

    Var top = g.max_var();
    for (const Substitution& w : p.symmetries)
        for (Var v : w.support())
            top = std::max(top, v);
    if (p.aux_base <= top)
        return CheckResult::reject(0, "auxiliary base collides with proof variables");

    for (size_t i = 0; i < p.symmetries.size(); ++i)
        if (!is_symmetry(p.symmetries[i], g))
            return CheckResult::reject(i + 1, "listed substitution is not a symmetry");

    std::vector<Clause> aug;
    try {
        aug = p.augmented();
    } catch (const std::exception& e) {
        return CheckResult::reject(0, e.what());
    }
    if (Cnf(p.refutation.premises) != Cnf(aug))
        return CheckResult::reject(0, "refutation premises differ from the augmented CNF");
    if (auto r = check_er(p.refutation); !r)
        return CheckResult::reject(r.step, "refutation: " + r.reason);
    bool bot = false;
    for (const Clause& c : p.refutation.clause_sequence())
        if (c.empty())
            bot = true;
    for (const Clause& c : p.refutation.premises)
        if (c.empty())
            bot = true;
    if (!bot)
        return CheckResult::reject(0, "refutation does not derive the empty clause");
    return CheckResult::accept();
}

Cnf asymmetrize(const Cnf& gamma)
{
    std::set<Var> vs = gamma.vars();
    std::vector<Var> xs(vs.begin(), vs.end());
    Var next = gamma.max_var() + 1;
    std::vector<Clause> out(gamma.clauses());
    std::vector<Lit> ys;
    for (Var x : xs) {
        ys.push_back(Lit::pos(next++));
        std::vector<Lit> lits = ys;
        lits.push_back(Lit::pos(x));
        out.push_back(Clause(std::move(lits)));
    }
    return Cnf(std::move(out));
}

// ---------------------------------------------------------------------------
// Circuit construction for the single-symmetry elimination argument.

namespace {

// Word-level helpers over signed node references. Words are msb-first.
struct CircuitBuilder {
    Circuit c;
    int cfalse = 0, ctrue = 0;

    explicit CircuitBuilder(int arity)
    {
        c.arity = arity;
        cfalse = c.add_const(false);
        ctrue = c.add_const(true);
    }

    int band(int a, int b) { return c.add_and(a, b); }
    int bor(int a, int b) { return c.add_or(a, b); }
    int bxor(int a, int b) { return c.add_xor(a, b); }
    int mux(int s, int when_true, int when_false)
    {
        return bor(band(s, when_true), band(-s, when_false));
    }

    std::vector<int> word_const(const BigInt& value, size_t width)
    {
        std::vector<int> out(width);
        for (size_t i = 0; i < width; ++i) {
            bool bit = ((value >> (width - 1 - i)) & 1) != 0;
            out[i] = bit ? ctrue : cfalse;
        }
        return out;
    }

    std::vector<int> word_mux(int s, const std::vector<int>& a,
                              const std::vector<int>& b)
    {
        std::vector<int> out(a.size());
        for (size_t i = 0; i < a.size(); ++i)
            out[i] = mux(s, a[i], b[i]);
        return out;
    }

    // a + b over equal widths, producing width+1 bits.
    std::vector<int> word_add(const std::vector<int>& a, const std::vector<int>& b)
    {
        size_t w = a.size();
        std::vector<int> out(w + 1);
        int carry = cfalse;
        for (size_t i = w; i-- > 0;) {
            int s1 = bxor(a[i], b[i]);
            int sum = bxor(s1, carry);
            int c1 = band(a[i], b[i]);
            int c2 = band(s1, carry);
            out[i + 1] = sum;
            carry = bor(c1, c2);
        }
        out[0] = carry;
        return out;
    }

    // a - b assuming a >= b; two's complement add of ~b + 1, truncated.
    std::vector<int> word_sub(const std::vector<int>& a, const std::vector<int>& b)
    {
        size_t w = a.size();
        std::vector<int> out(w);
        int borrow = cfalse;
        for (size_t i = w; i-- > 0;) {
            int d1 = bxor(a[i], b[i]);
            out[i] = bxor(d1, borrow);
            int b1 = band(-a[i], b[i]);
            int b2 = band(-d1, borrow);
            borrow = bor(b1, b2);
        }
        return out;
    }

    // a <= b as one bit; equal widths.
    int word_le(const std::vector<int>& a, const std::vector<int>& b)
    {
        // gt = exists k: a_k & ~b_k & (equal above k); return ~gt.
        int gt = cfalse;
        int eq = ctrue;
        for (size_t i = 0; i < a.size(); ++i) {
            gt = bor(gt, band(eq, band(a[i], -b[i])));
            eq = band(eq, -bxor(a[i], b[i]));
        }
        return -gt;
    }

    int word_eq_const(const std::vector<int>& a, const BigInt& value)
    {
        int eq = ctrue;
        size_t w = a.size();
        for (size_t i = 0; i < w; ++i) {
            bool bit = ((value >> (w - 1 - i)) & 1) != 0;
            eq = band(eq, bit ? a[i] : -a[i]);
        }
        return eq;
    }

    // value mod m for a constant m >= 1, restoring division; result width
    // is the width of m.
    std::vector<int> word_mod_const(const std::vector<int>& a, size_t m)
    {
        size_t rw = 1;
        while ((size_t(1) << rw) < m)
            ++rw;
        ++rw; // room for the pre-subtraction doubled value
        std::vector<int> r(rw, cfalse);
        std::vector<int> mc = word_const(BigInt(m), rw);
        for (size_t i = 0; i < a.size(); ++i) {
            // r = 2 r + a_i, reduced once if it reaches m.
            std::vector<int> shifted(rw);
            for (size_t k = 0; k + 1 < rw; ++k)
                shifted[k] = r[k + 1];
            shifted[rw - 1] = a[i];
            int ge = -word_le(shifted, word_const(BigInt(m) - 1, rw));
            std::vector<int> reduced = word_sub(shifted, mc);
            r = word_mux(ge, reduced, shifted);
        }
        return r;
    }
};

} // namespace

Circuit q1_circuit(const Cnf& gamma, const Substitution& omega,
                   const VarOrder& order)
{
    if (order.empty())
        throw std::invalid_argument("q1_circuit: empty variable order");
    if (!is_symmetry(omega, gamma))
        throw std::invalid_argument("q1_circuit: substitution is not a symmetry");
    std::set<Var> ordered(order.begin(), order.end());
    for (Var v : gamma.vars())
        if (!ordered.count(v))
            throw std::invalid_argument("q1_circuit: order does not cover the CNF");

    size_t n = order.size();
    size_t W = n + 1; // wide enough for 2^n + 1
    CircuitBuilder cb(static_cast<int>(n));

    std::unordered_map<Var, size_t> slot;
    for (size_t j = 0; j < n; ++j)
        slot[order[j]] = j;
    auto input_of_lit = [&](Lit p) -> int {
        if (p.is_const())
            return p.const_value() ? cb.ctrue : cb.cfalse;
        auto it = slot.find(p.var());
        if (it == slot.end())
            throw std::invalid_argument("q1_circuit: image variable is not ordered");
        int node = static_cast<int>(it->second) + 1;
        return p.negated() ? -node : node;
    };

    // Orbit data per ordered variable: the distinct prefix of
    // v, omega(v), omega^2(v), ... with its tail and cycle lengths.
    struct Orbit {
        std::vector<Lit> lits;
        size_t tail = 0, cycle = 1;
    };
    std::vector<Orbit> orbits(n);
    for (size_t j = 0; j < n; ++j) {
        std::unordered_map<int, size_t> seen;
        Lit cur = Lit::pos(order[j]);
        Orbit& o = orbits[j];
        for (;;) {
            auto it = seen.find(cur.code());
            if (it != seen.end()) {
                o.tail = it->second;
                o.cycle = o.lits.size() - o.tail;
                break;
            }
            seen[cur.code()] = o.lits.size();
            o.lits.push_back(cur);
            cur = omega(cur);
        }
    }

    // alpha_i(order[j]) for a W-bit index word.
    auto iterate_bits = [&](const std::vector<int>& idx) {
        std::vector<int> out(n);
        for (size_t j = 0; j < n; ++j) {
            const Orbit& o = orbits[j];
            int acc = cb.cfalse;
            // Tail positions: selected by equality with the index.
            for (size_t t = 0; t < o.tail; ++t) {
                int sel = cb.word_eq_const(idx, BigInt(t));
                acc = cb.bor(acc, cb.band(sel, input_of_lit(o.lits[t])));
            }
            // Cycle positions: i >= tail and (i - tail) mod cycle == t - tail.
            std::vector<int> ge_tail_word = cb.word_const(BigInt(o.tail), W);
            int ge_tail = cb.word_le(ge_tail_word, idx);
            std::vector<int> diff = cb.word_sub(idx, ge_tail_word);
            std::vector<int> rem = cb.word_mod_const(diff, o.cycle);
            for (size_t t = o.tail; t < o.lits.size(); ++t) {
                int sel = cb.band(ge_tail, cb.word_eq_const(rem, BigInt(t - o.tail)));
                acc = cb.bor(acc, cb.band(sel, input_of_lit(o.lits[t])));
            }
            out[j] = acc;
        }
        return out;
    };

    // Satisfaction of gamma under candidate bits.
    auto sat_bits = [&](const std::vector<int>& bits) {
        int all = cb.ctrue;
        for (const Clause& cl : gamma.clauses()) {
            int any = cb.cfalse;
            for (Lit p : cl.lits()) {
                int node;
                if (p.is_const())
                    node = p.const_value() ? cb.ctrue : cb.cfalse;
                else {
                    int base = bits[slot.at(p.var())];
                    node = p.negated() ? -base : base;
                }
                any = cb.bor(any, node);
            }
            all = cb.band(all, any);
        }
        return all;
    };

    BigInt two_n = BigInt(1) << n;
    auto good = [&](const std::vector<int>& idx) {
        std::vector<int> bits = iterate_bits(idx);
        int sat = sat_bits(bits);
        // value(bits) <= 2^n - idx.
        std::vector<int> padded(W, cb.cfalse);
        for (size_t j = 0; j < n; ++j)
            padded[W - n + j] = bits[j];
        std::vector<int> bound = cb.word_sub(cb.word_const(two_n, W), idx);
        int le = cb.word_le(padded, bound);
        return cb.band(sat, le);
    };

    // Boundary binary search on [0, 2^n + 1].
    std::vector<int> lo = cb.word_const(0, W);
    std::vector<int> hi = cb.word_const(two_n + 1, W);
    for (size_t round = 0; round < n + 1; ++round) {
        std::vector<int> sum = cb.word_add(lo, hi);
        std::vector<int> mid(sum.begin(), sum.begin() + W); // (lo + hi) / 2
        int g = good(mid);
        lo = cb.word_mux(g, mid, lo);
        hi = cb.word_mux(g, hi, mid);
    }

    std::vector<int> result = iterate_bits(lo);
    cb.c.outputs = result;
    return cb.c;
}

Assignment eval_q1_circuit(const Circuit& c, const VarOrder& order,
                           const Assignment& a)
{
    std::vector<bool> in;
    for (Var v : order)
        in.push_back(a.value(v));
    std::vector<bool> out = c.eval(in);
    Assignment res;
    for (size_t j = 0; j < order.size(); ++j)
        res.set(order[j], out[j]);
    return res;
}

} // namespace pbproof
