#ifndef PBPROOF_SYMMETRY_HPP
#define PBPROOF_SYMMETRY_HPP

#include "pbproof/erpls.hpp"

namespace pbproof {

/// ER plus static symmetry breaking: a list of symmetries of the input CNF,
/// one lex-leader block per symmetry (auxiliaries allocated deterministically
/// from aux_base, each block continuing after the previous one), and an ER
/// refutation of the augmented CNF.
struct QRefutation {
    std::vector<Clause> gamma;
    VarOrder order;                       // variables of gamma, msb first
    std::vector<Substitution> symmetries;
    Var aux_base = 0;
    ErDerivation refutation;

    std::vector<LexGadget> leader_gadgets() const;
    /// gamma followed by every leader block's clauses, the premise order the
    /// refutation is checked against.
    std::vector<Clause> augmented() const;
};

/// [z <=lex z|omega] for a symmetry omega: the non-strict gadget over the
/// ordered variables against their images, with fresh auxiliaries.
Cnf gen_lex_leader(const Cnf& gamma, const Substitution& omega,
                   const VarOrder& order);
LexGadget gen_lex_leader_gadget(const Cnf& gamma, const Substitution& omega,
                                const VarOrder& order, FreshVars& fresh);

/// Validates the symmetry property of each listed substitution, the
/// freshness and disjointness of the gadget auxiliaries, the symmetry-count
/// limit when given, and the ER refutation of the augmented CNF.
CheckResult check_q(const QRefutation& p,
                    std::optional<size_t> k_limit = std::nullopt);

/// Adds the clauses x_i | y_1 | ... | y_i over fresh variables y, one per
/// variable of gamma; the combination has no nontrivial symmetry among
/// literal permutations (checked exhaustively at test scale).
Cnf asymmetrize(const Cnf& gamma);

/// The symmetry-elimination circuit: on input an assignment a to the ordered
/// variables, computes iterates a_i = a o omega^i, finds by binary search an
/// index i where a_i satisfies gamma and is at most 2^n - i while one of the
/// two fails at i+1, and outputs a_i. If a satisfies gamma the output b
/// satisfies gamma and b <=lex b o omega.
Circuit q1_circuit(const Cnf& gamma, const Substitution& omega,
                   const VarOrder& order);

/// Convenience: run the circuit on a total assignment to `order`.
Assignment eval_q1_circuit(const Circuit& c, const VarOrder& order,
                           const Assignment& a);

} // namespace pbproof

#endif
