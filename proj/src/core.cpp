#include "pbproof/core.hpp"

#include <sstream>
#include <unordered_map>

namespace pbproof {

std::string Lit::to_string() const
{
    if (is_const())
        return const_value() ? "1" : "0";
    return (negated() ? "~x" : "x") + std::to_string(var());
}

bool Clause::tautologous() const
{
    // lits_ is sorted by code, so p and ~p are adjacent.
    for (size_t i = 0; i < lits_.size(); ++i) {
        if (lits_[i] == Lit::constant(true))
            return true;
        if (i + 1 < lits_.size() && lits_[i + 1] == ~lits_[i])
            return true;
    }
    return false;
}

Clause Clause::without(Lit p) const
{
    std::vector<Lit> out;
    out.reserve(lits_.size());
    for (Lit q : lits_)
        if (q != p)
            out.push_back(q);
    return Clause(std::move(out));
}

Clause Clause::with(Lit p) const
{
    std::vector<Lit> out = lits_;
    out.push_back(p);
    return Clause(std::move(out));
}

Clause Clause::union_with(const Clause& other) const
{
    std::vector<Lit> out = lits_;
    out.insert(out.end(), other.lits_.begin(), other.lits_.end());
    return Clause(std::move(out));
}

bool Clause::subset_of(const Clause& other) const
{
    return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(),
                         lits_.end());
}

std::set<Var> Clause::vars() const
{
    std::set<Var> out;
    for (Lit p : lits_)
        if (!p.is_const())
            out.insert(p.var());
    return out;
}

std::string Clause::to_string() const
{
    if (lits_.empty())
        return "<empty>";
    std::string out;
    for (size_t i = 0; i < lits_.size(); ++i) {
        if (i)
            out += " ";
        out += lits_[i].to_string();
    }
    return out;
}

void Cnf::insert(const Clause& c)
{
    auto it = std::lower_bound(clauses_.begin(), clauses_.end(), c);
    if (it == clauses_.end() || *it != c)
        clauses_.insert(it, c);
}

Cnf Cnf::union_with(const Cnf& other) const
{
    std::vector<Clause> out = clauses_;
    out.insert(out.end(), other.clauses_.begin(), other.clauses_.end());
    return Cnf(std::move(out));
}

bool Cnf::subset_of(const Cnf& other) const
{
    return std::includes(other.clauses_.begin(), other.clauses_.end(),
                         clauses_.begin(), clauses_.end());
}

std::set<Var> Cnf::vars() const
{
    std::set<Var> out;
    for (const Clause& c : clauses_)
        for (Lit p : c.lits())
            if (!p.is_const())
                out.insert(p.var());
    return out;
}

Var Cnf::max_var() const
{
    Var m = 0;
    for (const Clause& c : clauses_)
        for (Lit p : c.lits())
            if (!p.is_const())
                m = std::max(m, p.var());
    return m;
}

std::string Cnf::to_string() const
{
    std::string out;
    for (const Clause& c : clauses_) {
        out += "(" + c.to_string() + ") ";
    }
    return out.empty() ? "<top>" : out;
}

std::set<Var> Substitution::domain() const
{
    std::set<Var> out;
    for (auto& [v, _] : map_)
        out.insert(v);
    return out;
}

std::set<Var> Substitution::support() const
{
    std::set<Var> out;
    for (auto& [v, image] : map_) {
        out.insert(v);
        if (!image.is_const())
            out.insert(image.var());
    }
    return out;
}

std::string Substitution::to_string() const
{
    std::string out;
    for (auto& [v, image] : map_)
        out += "x" + std::to_string(v) + " -> " + image.to_string() + "\n";
    return out;
}

Substitution compose(const Substitution& tau, const Substitution& omega)
{
    Substitution out;
    for (auto& [v, image] : omega.entries())
        out.set(v, tau(image));
    for (auto& [v, image] : tau.entries())
        if (!omega.moves(v))
            out.set(v, image);
    return out;
}

Substitution iterate_substitution(const Substitution& omega, const BigInt& m)
{
    if (m < 0)
        throw std::invalid_argument("iterate_substitution: exponent must be >= 0");
    Substitution out;
    for (auto& [v, _] : omega.entries()) {
        // Orbit of v under repeated application: a tail of length k followed
        // by a cycle of length l, both bounded by the number of distinct
        // literals reachable, so the walk terminates quickly.
        std::vector<Lit> orbit;
        std::unordered_map<int, size_t> seen;
        Lit cur = Lit::pos(v);
        size_t tail = 0, cycle = 0;
        for (;;) {
            auto it = seen.find(cur.code());
            if (it != seen.end()) {
                tail = it->second;
                cycle = orbit.size() - tail;
                break;
            }
            seen[cur.code()] = orbit.size();
            orbit.push_back(cur);
            cur = omega(cur);
        }
        size_t idx;
        if (m < BigInt(orbit.size())) {
            idx = static_cast<size_t>(m.convert_to<long long>());
        } else {
            BigInt rem = (m - BigInt(tail)) % BigInt(cycle);
            idx = tail + static_cast<size_t>(rem.convert_to<long long>());
        }
        out.set(v, orbit[idx]);
    }
    return out;
}

std::string Assignment::to_string() const
{
    std::string out;
    for (auto& [v, b] : vals_)
        out += "x" + std::to_string(v) + "=" + (b ? "1" : "0") + " ";
    return out;
}

Clause substitute(const Substitution& w, const Clause& c)
{
    std::vector<Lit> out;
    out.reserve(c.size());
    for (Lit p : c.lits())
        out.push_back(w(p));
    return Clause(std::move(out));
}

Cnf substitute(const Substitution& w, const Cnf& g)
{
    std::vector<Clause> out;
    out.reserve(g.size());
    for (const Clause& c : g.clauses())
        out.push_back(substitute(w, c));
    return Cnf(std::move(out));
}

Cnf negate_clause(const Clause& c)
{
    std::vector<Clause> units;
    units.reserve(c.size());
    for (Lit p : c.lits())
        units.push_back(Clause{~p});
    return Cnf(std::move(units));
}

bool satisfies(const Substitution& w, const Cnf& g)
{
    for (const Clause& c : g.clauses())
        if (!substitute(w, c).tautologous())
            return false;
    return true;
}

bool satisfies(const Assignment& a, const Cnf& g)
{
    return satisfies(a.to_substitution(), g);
}

bool is_symmetry(const Substitution& w, const Cnf& g)
{
    return substitute(w, g) == g;
}

} // namespace pbproof
