#ifndef PBPROOF_CORE_HPP
#define PBPROOF_CORE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbproof {

using BigInt = boost::multiprecision::cpp_int;

/// Variable ids are positive integers; 0 is reserved.
using Var = int;

/// A literal is either a propositional constant (0 or 1) or a possibly
/// negated variable. Encoding: code 0 = constant 0, code 1 = constant 1,
/// code 2v = variable v, code 2v+1 = negated variable v. Negation is
/// code XOR 1, which makes it an involution and maps the constants to
/// each other.
class Lit {
  public:
    Lit() : code_(0) {}

    static Lit constant(bool b) { return Lit(b ? 1 : 0); }
    static Lit pos(Var v) { return Lit(2 * v); }
    static Lit neg(Var v) { return Lit(2 * v + 1); }

    /// DIMACS-style: positive int is a positive literal, negative is negated.
    static Lit from_dimacs(int d)
    {
        if (d == 0)
            throw std::invalid_argument("literal 0 is not a DIMACS literal");
        return d > 0 ? pos(d) : neg(-d);
    }

    bool is_const() const { return code_ < 2; }
    bool const_value() const { return code_ == 1; }
    Var var() const { return static_cast<Var>(code_ >> 1); }
    bool negated() const { return !is_const() && (code_ & 1); }

    Lit operator~() const { return Lit(code_ ^ 1); }

    int to_dimacs() const
    {
        if (is_const())
            throw std::logic_error("constants have no DIMACS form");
        return negated() ? -var() : var();
    }

    std::string to_string() const;

    int code() const { return code_; }

    friend bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
    friend bool operator!=(Lit a, Lit b) { return a.code_ != b.code_; }
    friend bool operator<(Lit a, Lit b) { return a.code_ < b.code_; }

  private:
    explicit Lit(int code) : code_(code) {}
    int code_;
};

/// A clause is a finite set of literals; constants and complementary pairs
/// are allowed. Stored sorted and deduplicated so that clause equality is
/// structural equality.
class Clause {
  public:
    Clause() = default;
    Clause(std::initializer_list<Lit> lits) : lits_(lits) { normalize(); }
    explicit Clause(std::vector<Lit> lits) : lits_(std::move(lits)) { normalize(); }

    bool empty() const { return lits_.empty(); }
    size_t size() const { return lits_.size(); }
    bool contains(Lit p) const
    {
        return std::binary_search(lits_.begin(), lits_.end(), p);
    }

    /// Tautologous: contains the constant 1 or some literal with its negation.
    bool tautologous() const;

    Clause without(Lit p) const;
    Clause with(Lit p) const;
    Clause union_with(const Clause& other) const;
    bool subset_of(const Clause& other) const;

    const std::vector<Lit>& lits() const { return lits_; }
    std::set<Var> vars() const;

    friend bool operator==(const Clause& a, const Clause& b) { return a.lits_ == b.lits_; }
    friend bool operator!=(const Clause& a, const Clause& b) { return !(a == b); }
    friend bool operator<(const Clause& a, const Clause& b) { return a.lits_ < b.lits_; }

    std::string to_string() const;

  private:
    void normalize()
    {
        std::sort(lits_.begin(), lits_.end());
        lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
    }
    std::vector<Lit> lits_;
};

/// A CNF is a finite set of clauses, kept sorted and deduplicated.
/// The empty CNF is the constant true formula.
class Cnf {
  public:
    Cnf() = default;
    Cnf(std::initializer_list<Clause> cs) : clauses_(cs) { normalize(); }
    explicit Cnf(std::vector<Clause> cs) : clauses_(std::move(cs)) { normalize(); }

    bool empty() const { return clauses_.empty(); }
    size_t size() const { return clauses_.size(); }
    bool contains(const Clause& c) const
    {
        return std::binary_search(clauses_.begin(), clauses_.end(), c);
    }
    bool contains_empty_clause() const { return contains(Clause{}); }

    void insert(const Clause& c);
    Cnf union_with(const Cnf& other) const;
    bool subset_of(const Cnf& other) const;

    const std::vector<Clause>& clauses() const { return clauses_; }
    std::set<Var> vars() const;
    Var max_var() const;

    friend bool operator==(const Cnf& a, const Cnf& b) { return a.clauses_ == b.clauses_; }
    friend bool operator!=(const Cnf& a, const Cnf& b) { return !(a == b); }

    std::string to_string() const;

  private:
    void normalize()
    {
        std::sort(clauses_.begin(), clauses_.end());
        clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
    }
    std::vector<Clause> clauses_;
};

/// A substitution maps variables to literals (or constants) and is extended
/// to all literals so that it respects negation and fixes the constants.
/// Identity entries are dropped, so two substitutions are equal as maps iff
/// they are equal as objects.
class Substitution {
  public:
    Substitution() = default;

    static Substitution identity() { return Substitution(); }

    void set(Var v, Lit image)
    {
        if (v <= 0)
            throw std::invalid_argument("variable ids are positive");
        if (image == Lit::pos(v))
            map_.erase(v);
        else
            map_[v] = image;
    }

    Lit operator()(Lit p) const
    {
        if (p.is_const())
            return p;
        auto it = map_.find(p.var());
        if (it == map_.end())
            return p;
        return p.negated() ? ~it->second : it->second;
    }

    bool is_identity() const { return map_.empty(); }
    bool moves(Var v) const { return map_.count(v) != 0; }
    const std::map<Var, Lit>& entries() const { return map_; }

    std::set<Var> domain() const;
    /// Variables mentioned anywhere (domain plus image variables).
    std::set<Var> support() const;

    friend bool operator==(const Substitution& a, const Substitution& b)
    {
        return a.map_ == b.map_;
    }
    friend bool operator!=(const Substitution& a, const Substitution& b)
    {
        return !(a == b);
    }

    std::string to_string() const;

  private:
    std::map<Var, Lit> map_;
};

/// compose(tau, omega)(p) = tau(omega(p)).
Substitution compose(const Substitution& tau, const Substitution& omega);

/// omega^m for an arbitrary-precision exponent, computed per variable by
/// walk-then-cycle decomposition of the orbit of each domain variable.
/// Runs in time polynomial in the support size and the bit length of m.
Substitution iterate_substitution(const Substitution& omega, const BigInt& m);

/// A total or partial 0/1 assignment. A total assignment over a variable
/// set is the same thing as a substitution into {0,1}.
class Assignment {
  public:
    Assignment() = default;

    void set(Var v, bool b) { vals_[v] = b; }
    bool defined(Var v) const { return vals_.count(v) != 0; }
    bool value(Var v) const
    {
        auto it = vals_.find(v);
        if (it == vals_.end())
            throw std::out_of_range("assignment undefined on variable");
        return it->second;
    }
    /// Evaluates a literal; nullopt if the underlying variable is unassigned.
    std::optional<bool> eval(Lit p) const
    {
        if (p.is_const())
            return p.const_value();
        auto it = vals_.find(p.var());
        if (it == vals_.end())
            return std::nullopt;
        return p.negated() ? !it->second : it->second;
    }

    bool total_on(const std::set<Var>& vars) const
    {
        for (Var v : vars)
            if (!defined(v))
                return false;
        return true;
    }

    Substitution to_substitution() const
    {
        Substitution s;
        for (auto& [v, b] : vals_)
            s.set(v, Lit::constant(b));
        return s;
    }

    const std::map<Var, bool>& values() const { return vals_; }

    friend bool operator==(const Assignment& a, const Assignment& b)
    {
        return a.vals_ == b.vals_;
    }

    std::string to_string() const;

  private:
    std::map<Var, bool> vals_;
};

Clause substitute(const Substitution& w, const Clause& c);
Cnf substitute(const Substitution& w, const Cnf& g);

/// negate_clause(C) is the CNF of unit clauses { ~p } for p in C.
Cnf negate_clause(const Clause& c);

/// omega |= Gamma: every clause of Gamma restricted by omega is tautologous.
/// For total assignments this is ordinary satisfaction.
bool satisfies(const Substitution& w, const Cnf& g);
bool satisfies(const Assignment& a, const Cnf& g);

/// A symmetry is a substitution with Gamma|w = Gamma as clause sets.
bool is_symmetry(const Substitution& w, const Cnf& g);

/// Monotone fresh-variable source. Starts above every id seen so far.
class FreshVars {
  public:
    explicit FreshVars(Var first = 1) : next_(first < 1 ? 1 : first) {}
    Var take() { return next_++; }
    Var peek() const { return next_; }
    void reserve_past(Var v)
    {
        if (v + 1 > next_)
            next_ = v + 1;
    }

  private:
    Var next_;
};

} // namespace pbproof

#endif
