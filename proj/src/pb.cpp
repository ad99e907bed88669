#include "pbproof/pb.hpp"

#include <map>

namespace pbproof {

PbConstraint PbConstraint::make(const std::vector<std::pair<BigInt, Lit>>& terms,
                                Rel rel, const BigInt& bound)
{
    // Work in >= orientation: flip the sign of everything for <=.
    int sign = rel == Rel::Ge ? 1 : -1;
    std::map<Var, BigInt> acc;
    BigInt b = sign * bound;
    for (auto& [c, p] : terms) {
        BigInt sc = sign * c;
        if (p.is_const()) {
            if (p.const_value())
                b -= sc; // constant 1 contributes sc to the left side
            continue;
        }
        if (p.negated()) {
            // sc * (1 - v) = sc - sc * v
            acc[p.var()] -= sc;
            b -= sc;
        } else {
            acc[p.var()] += sc;
        }
    }
    PbConstraint out;
    out.bound_ = b;
    for (auto& [v, c] : acc)
        if (c != 0)
            out.terms_.emplace_back(v, c);
    return out;
}

PbConstraint PbConstraint::contradiction()
{
    PbConstraint out;
    out.bound_ = 1;
    return out;
}

PbConstraint PbConstraint::trivial()
{
    return PbConstraint();
}

BigInt PbConstraint::coeff(Var v) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
                               [](const auto& t, Var x) { return t.first < x; });
    if (it != terms_.end() && it->first == v)
        return it->second;
    return 0;
}

PbConstraint PbConstraint::negated() const
{
    // not (A x >= b) is A x <= b - 1, i.e. -A x >= 1 - b.
    PbConstraint out;
    out.bound_ = 1 - bound_;
    out.terms_.reserve(terms_.size());
    for (auto& [v, c] : terms_)
        out.terms_.emplace_back(v, -c);
    return out;
}

PbConstraint PbConstraint::restricted(const Substitution& w) const
{
    std::vector<std::pair<BigInt, Lit>> raw;
    raw.reserve(terms_.size());
    for (auto& [v, c] : terms_)
        raw.emplace_back(c, w(Lit::pos(v)));
    return make(raw, Rel::Ge, bound_);
}

bool PbConstraint::satisfied_by(const Assignment& a) const
{
    BigInt lhs = 0;
    for (auto& [v, c] : terms_)
        if (a.value(v))
            lhs += c;
    return lhs >= bound_;
}

BigInt PbConstraint::box_min() const
{
    BigInt m = 0;
    for (auto& [v, c] : terms_)
        if (c < 0)
            m += c;
    return m;
}

PbConstraint PbConstraint::scaled(const BigInt& m) const
{
    if (m < 0)
        throw std::invalid_argument("scaling multiplier must be >= 0");
    PbConstraint out;
    if (m == 0)
        return out;
    out.bound_ = bound_ * m;
    out.terms_.reserve(terms_.size());
    for (auto& [v, c] : terms_)
        out.terms_.emplace_back(v, c * m);
    return out;
}

PbConstraint PbConstraint::plus(const PbConstraint& other) const
{
    PbConstraint out;
    out.bound_ = bound_ + other.bound_;
    auto i = terms_.begin();
    auto j = other.terms_.begin();
    while (i != terms_.end() || j != other.terms_.end()) {
        if (j == other.terms_.end() || (i != terms_.end() && i->first < j->first)) {
            out.terms_.push_back(*i++);
        } else if (i == terms_.end() || j->first < i->first) {
            out.terms_.push_back(*j++);
        } else {
            BigInt c = i->second + j->second;
            if (c != 0)
                out.terms_.emplace_back(i->first, c);
            ++i;
            ++j;
        }
    }
    return out;
}

std::optional<PbConstraint> PbConstraint::divided(const BigInt& d) const
{
    if (d <= 0)
        return std::nullopt;
    PbConstraint out;
    out.terms_.reserve(terms_.size());
    for (auto& [v, c] : terms_) {
        if (c % d != 0)
            return std::nullopt;
        out.terms_.emplace_back(v, c / d);
    }
    // ceil(bound / d) for a positive divisor.
    BigInt q = bound_ / d;
    if (q * d < bound_)
        q += 1;
    out.bound_ = q;
    return out;
}

std::set<Var> PbConstraint::vars() const
{
    std::set<Var> out;
    for (auto& [v, _] : terms_)
        out.insert(v);
    return out;
}

Var PbConstraint::max_var() const
{
    return terms_.empty() ? 0 : terms_.back().first;
}

size_t PbConstraint::max_coeff_bits() const
{
    size_t bits = 0;
    auto count = [&bits](const BigInt& x) {
        BigInt a = x < 0 ? BigInt(-x) : x;
        size_t n = 0;
        while (a > 0) {
            ++n;
            a >>= 1;
        }
        bits = std::max(bits, n);
    };
    for (auto& [v, c] : terms_)
        count(c);
    count(bound_);
    return bits;
}

std::string PbConstraint::to_string() const
{
    std::string out;
    for (auto& [v, c] : terms_) {
        out += (c >= 0 ? "+" : "") + c.str() + " x" + std::to_string(v) + " ";
    }
    out += ">= " + bound_.str() + " ;";
    return out;
}

bool PbFormula::contains(const PbConstraint& c) const
{
    for (const PbConstraint& d : cs_)
        if (d == c)
            return true;
    return false;
}

bool PbFormula::contains_contradiction() const
{
    for (const PbConstraint& d : cs_)
        if (d.is_contradiction())
            return true;
    return false;
}

PbFormula PbFormula::restricted(const Substitution& w) const
{
    std::vector<PbConstraint> out;
    out.reserve(cs_.size());
    for (const PbConstraint& c : cs_)
        out.push_back(c.restricted(w));
    return PbFormula(std::move(out));
}

bool PbFormula::satisfied_by(const Assignment& a) const
{
    for (const PbConstraint& c : cs_)
        if (!c.satisfied_by(a))
            return false;
    return true;
}

std::set<Var> PbFormula::vars() const
{
    std::set<Var> out;
    for (const PbConstraint& c : cs_)
        for (auto& [v, _] : c.terms())
            out.insert(v);
    return out;
}

Var PbFormula::max_var() const
{
    Var m = 0;
    for (const PbConstraint& c : cs_)
        m = std::max(m, c.max_var());
    return m;
}

PbConstraint clause_to_pb(const Clause& c)
{
    std::vector<std::pair<BigInt, Lit>> terms;
    terms.reserve(c.size());
    for (Lit p : c.lits())
        terms.emplace_back(1, p);
    return PbConstraint::ge(terms, 1);
}

PbFormula cnf_to_pb(const Cnf& g)
{
    std::vector<PbConstraint> out;
    out.reserve(g.size());
    for (const Clause& c : g.clauses())
        out.push_back(clause_to_pb(c));
    return PbFormula(std::move(out));
}

} // namespace pbproof
