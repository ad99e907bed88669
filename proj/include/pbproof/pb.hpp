#ifndef PBPROOF_PB_HPP
#define PBPROOF_PB_HPP

#include "pbproof/core.hpp"

#include <functional>
#include <utility>

namespace pbproof {

/// A pseudo-Boolean constraint, kept in a canonical normal form: positive
/// variables only, like terms merged, zero coefficients dropped, relation
/// fixed to >=. A term c * ~x is folded as -c * x with the bound lowered
/// by c, so normalization preserves the 0/1 solution set, and two
/// constraints are equal iff their normal forms are identical.
class PbConstraint {
  public:
    enum class Rel { Ge, Le };

    PbConstraint() = default;

    /// Builds from a raw literal form (coefficients over literals, either
    /// relation, integer bound) and normalizes.
    static PbConstraint make(const std::vector<std::pair<BigInt, Lit>>& terms,
                             Rel rel, const BigInt& bound);
    static PbConstraint ge(const std::vector<std::pair<BigInt, Lit>>& terms,
                           const BigInt& bound)
    {
        return make(terms, Rel::Ge, bound);
    }

    /// 0 >= 1.
    static PbConstraint contradiction();
    /// 0 >= 0.
    static PbConstraint trivial();

    const std::vector<std::pair<Var, BigInt>>& terms() const { return terms_; }
    const BigInt& bound() const { return bound_; }
    BigInt coeff(Var v) const;

    bool is_contradiction() const { return terms_.empty() && bound_ >= 1; }
    bool is_trivially_true() const { return terms_.empty() && bound_ <= 0; }

    /// pb_negate: from Ax >= b produce Ax <= b-1 (normalized back to >=).
    PbConstraint negated() const;

    PbConstraint restricted(const Substitution& w) const;

    bool satisfied_by(const Assignment& a) const;

    /// Sum of the smallest values each term can take over [0,1]; the
    /// constraint is implied by the variable bounds alone iff bound() is
    /// at most this.
    BigInt box_min() const;

    PbConstraint scaled(const BigInt& m) const;
    PbConstraint plus(const PbConstraint& other) const;
    /// Division with rounding: requires every coefficient divisible by d;
    /// the bound is rounded up. Returns nullopt if some coefficient is not
    /// divisible.
    std::optional<PbConstraint> divided(const BigInt& d) const;

    std::set<Var> vars() const;
    Var max_var() const;
    size_t max_coeff_bits() const;

    friend bool operator==(const PbConstraint& a, const PbConstraint& b)
    {
        return a.terms_ == b.terms_ && a.bound_ == b.bound_;
    }
    friend bool operator!=(const PbConstraint& a, const PbConstraint& b)
    {
        return !(a == b);
    }
    friend bool operator<(const PbConstraint& a, const PbConstraint& b)
    {
        return a.terms_ != b.terms_ ? a.terms_ < b.terms_ : a.bound_ < b.bound_;
    }

    /// OPB-style text, e.g. "+1 x1 -2 x3 >= 0 ;".
    std::string to_string() const;

  private:
    std::vector<std::pair<Var, BigInt>> terms_; // sorted by var, nonzero coeffs
    BigInt bound_ = 0;
};

/// An ordered list of PB constraints; membership tests use normal forms.
class PbFormula {
  public:
    PbFormula() = default;
    PbFormula(std::initializer_list<PbConstraint> cs) : cs_(cs) {}
    explicit PbFormula(std::vector<PbConstraint> cs) : cs_(std::move(cs)) {}

    bool empty() const { return cs_.empty(); }
    size_t size() const { return cs_.size(); }
    const PbConstraint& operator[](size_t i) const { return cs_[i]; }
    const std::vector<PbConstraint>& constraints() const { return cs_; }

    void push(const PbConstraint& c) { cs_.push_back(c); }
    bool contains(const PbConstraint& c) const;
    bool contains_contradiction() const;

    PbFormula restricted(const Substitution& w) const;
    bool satisfied_by(const Assignment& a) const;

    std::set<Var> vars() const;
    Var max_var() const;

    friend bool operator==(const PbFormula& a, const PbFormula& b)
    {
        return a.cs_ == b.cs_;
    }

  private:
    std::vector<PbConstraint> cs_;
};

/// C*: the PB translation of a clause. Each positive literal x contributes
/// x, each negated literal ~y contributes (1-y), constants contribute their
/// value, and the whole sum must be >= 1.
PbConstraint clause_to_pb(const Clause& c);
PbFormula cnf_to_pb(const Cnf& g);

} // namespace pbproof

#endif
