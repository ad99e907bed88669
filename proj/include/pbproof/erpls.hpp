#ifndef PBPROOF_ERPLS_HPP
#define PBPROOF_ERPLS_HPP

#include "pbproof/oracle.hpp"
#include "pbproof/ordering.hpp"

namespace pbproof {

/// One step of an ER-PLS proof: either an ER derivation from the running
/// CNF, or the dominance rule with its clause, variable order, extension
/// block, substitution, lex gadget and the two side derivations.
struct ErplsStep {
    enum class Kind { Er, Dom };

    Kind kind = Kind::Er;
    ErDerivation derivation; // ER rule

    Clause clause;            // dominance: the added clause C
    std::vector<Var> x_order; // all variables of the running CNF, msb first
    ExtensionBlock block;     // Delta over x;y
    Substitution omega;       // maps x into literals over x and y
    Var gadget_base = 0;      // first auxiliary id of the lex-order gadget
    ErDerivation proof_a;     // G & Delta & ~C |- G|omega
    ErDerivation proof_b;     // G & Delta & ~C & [x <=lex x|omega] |- bottom

    static ErplsStep er(ErDerivation d);

    /// The [x <=lex x|omega] gadget of a dominance step, reconstructed
    /// deterministically from the order, the substitution and the base id.
    LexGadget make_gadget() const;
    /// Premises of proof_a in canonical order: running CNF, block clauses,
    /// the unit clauses of ~C.
    std::vector<Clause> premises_a(const std::vector<Clause>& running) const;
    std::vector<Clause> premises_b(const std::vector<Clause>& running) const;
};

struct ErplsProof {
    std::vector<Clause> initial;
    std::vector<ErplsStep> steps;

    /// Running clause lists before each step and after the last one
    /// (ordered, duplicates dropped).
    std::vector<std::vector<Clause>> running_lists() const;
    Cnf final_cnf() const;
    bool refutes() const { return final_cnf().contains_empty_clause(); }
};

/// Validates every step against the running CNF: ER steps via check_er with
/// the running CNF as premises; dominance steps by checking the variable
/// order, the block, the substitution's range, the freshness of the gadget
/// auxiliaries, and the two side derivations.
CheckResult check_erpls(const ErplsProof& p);

/// Lemma-style property: in an accepted proof, each consecutive pair of
/// CNFs is equisatisfiable (by brute force).
bool step_equisat_test(const ErplsProof& p, const OracleLimits& lim = {});

} // namespace pbproof

#endif
