#ifndef PBPROOF_DOMINANCE_HPP
#define PBPROOF_DOMINANCE_HPP

#include "pbproof/cp.hpp"

namespace pbproof {

/// Multilinear order: O(x, y) is f(x) <= f(y) with f(x) = sum b_i x_i.
struct LinearOrder {
    std::vector<BigInt> coeffs;
};

/// General preorder given as a PB formula over dummy tuples, together with
/// CP proofs of reflexivity and transitivity.
struct GeneralOrder {
    std::vector<Var> u_dummies, v_dummies, w_dummies;
    PbFormula formula; // O(u, v)
    std::vector<CpStep> refl_steps;
    std::vector<CpStep> trans_steps;
};

/// Order component of a configuration. The trivial order of the initial
/// configuration is the linear order of arity zero, which instantiates to
/// the empty formula.
class OrderSpec {
  public:
    OrderSpec() = default;

    static OrderSpec trivial() { return OrderSpec(); }
    static OrderSpec linear(std::vector<BigInt> coeffs);
    static OrderSpec general(GeneralOrder g);

    bool is_linear() const { return !gen_.has_value(); }
    size_t arity() const;
    const LinearOrder& lin() const { return lin_; }
    const GeneralOrder& gen() const { return *gen_; }

    /// O(lhs, rhs) instantiated at literal tuples; arity must match.
    PbFormula instantiate(std::span<const Lit> lhs, std::span<const Lit> rhs) const;

    /// For general orders: runs the reflexivity and transitivity proofs.
    CheckResult validate_preorder_proofs() const;

  private:
    LinearOrder lin_;
    std::optional<GeneralOrder> gen_;
};

PbFormula linear_order_formula(const LinearOrder& f, std::span<const Lit> lhs,
                               std::span<const Lit> rhs);

/// Proof state of the dominance system: core and derived constraints, the
/// order, and the ordered variables it compares.
struct Configuration {
    PbFormula core;
    PbFormula derived;
    OrderSpec order;
    std::vector<Var> zvars;

    static Configuration initial(PbFormula input);
    std::vector<Lit> z_literals() const;
    std::vector<Lit> z_images(const Substitution& w) const;
    bool contains_contradiction() const;
};

struct DomStep {
    enum class Kind { ImplDeriv, Redundance, Deletion, Transfer, Dominance, OrderChange };

    Kind kind = Kind::ImplDeriv;
    PbConstraint constraint;              // added constraint (Impl/Red/Dom)
    Substitution omega;                   // witness substitution (Red/Dom/Del)
    std::vector<CpStep> witness1;         // main CP witness
    std::vector<CpStep> witness2;         // second dominance witness
    std::vector<size_t> derived_removals; // Deletion: 1-based, pre-step indices
    std::optional<size_t> core_removal;   // Deletion: 1-based, pre-step index
    std::vector<size_t> transfers;        // Transfer: 1-based derived indices
    OrderSpec new_order;                  // OrderChange
    std::vector<Var> new_zvars;

    static DomStep impl_derivation(PbConstraint c, std::vector<CpStep> w);
    static DomStep redundance(PbConstraint c, Substitution w, std::vector<CpStep> d);
    static DomStep dominance(PbConstraint c, Substitution w, std::vector<CpStep> d1,
                             std::vector<CpStep> d2);
    static DomStep transfer(std::vector<size_t> idxs);
    static DomStep deletion(std::vector<size_t> derived_idxs);
    static DomStep order_change(OrderSpec order, std::vector<Var> zvars);
};

enum class DomMode { Full, Linear, WeakLinear };

struct DomProof {
    PbFormula input;
    DomMode mode = DomMode::Full;
    std::vector<DomStep> steps;
};

/// Checks the proof rule by rule, replaying configurations. On acceptance,
/// `final_out` (when given) receives the final configuration. Linear and
/// weak-linear modes restrict orders to linear ones; weak mode additionally
/// requires the derived set to be empty when the dominance rule fires.
CheckResult check_dom(const DomProof& p, Configuration* final_out = nullptr);

/// Applies a step without checking its witnesses; used by emitters that
/// construct steps known to be valid, and by the checker after validation.
void apply_dom_step(Configuration& cfg, const DomStep& s);

/// True iff an accepted proof ends with the contradiction in core or derived.
bool dom_refutes(const DomProof& p);

} // namespace pbproof

#endif
