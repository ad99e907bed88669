#ifndef PBPROOF_CP_HPP
#define PBPROOF_CP_HPP

#include "pbproof/check.hpp"
#include "pbproof/er.hpp"
#include "pbproof/pb.hpp"

#include <functional>

namespace pbproof {

struct CpStep {
    enum class Kind { Hyp, AxGe, AxLe, Add, Div };

    Kind kind = Kind::Hyp;
    size_t hyp = 0;     // Hyp: 1-based index into the hypothesis list
    Var var = 0;        // AxGe / AxLe
    size_t a = 0, b = 0; // Add / Div: 1-based step references
    BigInt ma, mb;      // Add multipliers (nonnegative)
    BigInt d;           // Div divisor (positive, must divide every coefficient)

    static CpStep mk_hyp(size_t i);
    static CpStep mk_axge(Var v);
    static CpStep mk_axle(Var v);
    static CpStep mk_add(size_t a, BigInt ma, size_t b, BigInt mb);
    static CpStep mk_div(size_t a, BigInt d);
};

struct CpDerivation {
    PbFormula hypotheses;
    std::vector<CpStep> steps;
    PbFormula goals;
};

/// Runs the steps against the hypothesis list; on success fills `derived`
/// with one constraint per step. Rejects negative multipliers, division by a
/// non-divisor of some coefficient, and out-of-range references.
CheckResult run_cp_steps(const PbFormula& hyps, const std::vector<CpStep>& steps,
                         std::vector<PbConstraint>& derived);

/// Full check: steps run cleanly and every goal's normal form appears among
/// the step results.
CheckResult check_cp(const CpDerivation& d);
CheckResult check_cp_steps(const PbFormula& hyps, const std::vector<CpStep>& steps,
                           const PbFormula& targets);

/// Emission helper: appends steps, tracks every intermediate result, and
/// provides the axiom bookkeeping the emitters below share.
class CpBuilder {
  public:
    explicit CpBuilder(const PbFormula* hyps) : hyps_(hyps) {}

    size_t hyp(size_t idx);
    size_t axge(Var v);
    size_t axle(Var v);
    size_t add(size_t a, const BigInt& ma, size_t b, const BigInt& mb);
    size_t div(size_t a, const BigInt& d);

    /// 0 >= 0.
    size_t trivial();
    /// 0 >= -k for k >= 0.
    size_t slack(const BigInt& k);
    /// Any constraint implied by the variable-range axioms alone
    /// (bound() <= box_min()).
    size_t box_implied(const PbConstraint& target);
    /// Reaches `target` exactly from step `from` by adding Boolean axioms
    /// (coefficient deltas) and slack (bound lowering). Throws if the target
    /// bound is above what the axioms allow.
    size_t adjust(size_t from, const PbConstraint& target);

    const PbConstraint& result(size_t step) const { return results_[step - 1]; }
    size_t size() const { return steps_.size(); }
    const std::vector<CpStep>& steps() const { return steps_; }
    std::vector<CpStep> take_steps() { return std::move(steps_); }

  private:
    size_t push(CpStep s, PbConstraint r);
    const PbFormula* hyps_;
    std::vector<CpStep> steps_;
    std::vector<PbConstraint> results_;
};

/// Simulation of resolution by cutting planes: premises become hypotheses
/// via the clause translation, each resolution becomes an addition followed
/// by Boolean-axiom padding and a division by two, weakenings become
/// axiom additions. Rejects derivations containing extension steps.
CpDerivation res_to_cp(const ErDerivation& pi);

/// Emits the translation of one derivation step's clause, given the CP step
/// ids of the parent clauses. Returns the step id of the derived C*.
size_t emit_resolvent(CpBuilder& b, size_t parent_a, size_t parent_b, Lit pivot,
                      const Clause& resolvent);
size_t emit_weaken(CpBuilder& b, size_t parent, const Clause& weakened);

/// Short derivation of (~C)* from ~(C*): each literal of C is forced false.
CpDerivation negclause_bridge(const Clause& c);
/// In-place form: `neg_step` must hold ~(C*). Returns one step id per
/// literal of C, deriving the unit constraint (~p)*.
std::vector<size_t> emit_negclause_bridge(CpBuilder& b, size_t neg_step,
                                          const Clause& c);

/// One bit of the comparison adder of the ordering module: the literals
/// compared at this position, the carry chain, and the gate variables of the
/// fixed full-adder encoding. First bits have no carry-in, the final bit has
/// no compared literals and reduces to z = ~cin.
struct AdderBitShape {
    enum class Kind { First, Interior, Last };

    Kind kind = Kind::First;
    Lit x, y;     // compared literals (First/Interior)
    Var cin = 0;  // carry-in variable (Interior/Last)
    Var z = 0;    // sum output variable
    Var cout = 0; // carry-out variable (First/Interior)
    // Gate variables. First: g2, e. Interior: g1, g2, e, g3, g4, p, g6.
    Var g1 = 0, g2 = 0, e = 0, g3 = 0, g4 = 0, p = 0, g6 = 0;

    /// The extension axioms of this bit, in the fixed order shared with the
    /// ordering gadgets.
    std::vector<ExtensionAxiom> axioms() const;
    std::vector<Clause> clauses() const;

    /// The bit equation x + z + cin = y + 2 cout as a pair of constraints
    /// (>= direction first), with the boundary substitutions folded in.
    std::pair<PbConstraint, PbConstraint> equation() const;
};

/// Emits the constant-size CP derivation of the bit equation from the bit's
/// clause translations. `clause_step` maps an index into shape.clauses() to
/// the CP step holding that clause's translation. Returns (>=, <=) step ids.
std::pair<size_t, size_t>
emit_bit_equation(CpBuilder& b, const AdderBitShape& shape,
                  const std::function<size_t(size_t)>& clause_step);

/// Standalone template: hypotheses are the bit's clause translations, goals
/// are the two equation constraints.
CpDerivation equation_template(const AdderBitShape& shape);

} // namespace pbproof

#endif
