#ifndef PBPROOF_ORDERING_HPP
#define PBPROOF_ORDERING_HPP

#include "pbproof/cp.hpp"

namespace pbproof {

/// CNF gadget for lexicographic comparison of two literal tuples. The core
/// is an adder block expressing lhs + z = rhs + 2^r over an (r+1)-bit sum z
/// and carry chain c, built from extension axioms only, so that z, c and the
/// gate variables are functions of the compared tuples. The strict gadget
/// asserts z > 2^r via the unit z_{r+1} and the clause z_1 | ... | z_r; the
/// non-strict gadget runs the adder on swapped arguments and asserts the
/// negation through a flag variable w. With msb_first set, bit indices are
/// reversed so the first tuple position is most significant.
struct LexGadget {
    int r = 0;
    bool strict = true;
    bool msb_first = true;
    std::vector<Lit> lhs, rhs; // exposed argument tuples, length r

    ExtensionBlock block;            // adder axioms, then w-definition axioms
    std::vector<AdderBitShape> bits; // r+1 bit shapes in adder order
    size_t adder_axiom_count = 0;    // axioms [0, count) form the adder
    std::vector<Var> zvars;          // z_1..z_{r+1}, least significant first
    std::vector<Var> cvars;          // c_2..c_{r+1}
    std::vector<Var> nvars;          // w-definition chain (non-strict only)
    Var w = 0;                       // non-strict flag variable
    std::vector<Clause> units;       // constraining clauses beyond the block

    std::vector<Clause> clause_list() const; // block clauses then units
    Cnf cnf() const { return Cnf(clause_list()); }
    std::vector<Var> aux_vars() const; // every defined variable
    size_t bit_clause_offset(size_t bit) const;

    /// True iff the (unique) extension of `base` by the block satisfies the
    /// whole gadget; `base` must assign every variable of lhs and rhs.
    bool satisfied_by_extension(const Assignment& base) const;
};

/// Builds the gadget comparing lhs with rhs; auxiliary variables are drawn
/// from `fresh`.
LexGadget gen_lex(int r, bool strict, bool msb_first, std::span<const Lit> lhs,
                  std::span<const Lit> rhs, FreshVars& fresh);

/// Formal-variable instance: lhs over x1..xr, rhs over x(r+1)..x(2r),
/// auxiliaries following.
LexGadget gen_lex(int r, bool strict, bool msb_first);

/// The strict gadget over swapped arguments that shares this non-strict
/// gadget's adder: [rhs <lex lhs] with identical z, c and gate variables.
LexGadget strict_counterpart(const LexGadget& nonstrict);

/// L_<: sum 2^(i-1) x_i < sum 2^(i-1) y_i as one constraint, over the
/// formal variables of gen_lex(r, ...) (least significant bit first).
PbConstraint gen_L_strict(int r);
/// Same constraint over arbitrary literal tuples; with msb_first the first
/// position carries the highest power of two.
PbConstraint lex_constraint_strict(std::span<const Lit> lhs, std::span<const Lit> rhs,
                                   bool msb_first);

/// Lemma-style CP derivation P_<* |- L_<: derives the bit equations with the
/// per-bit templates, combines them into the scaled column sums, and adds
/// the strictness hypotheses. O(r) steps.
CpDerivation derive_L_from_P(int r);

/// Emits the same derivation against an existing builder. `clause_step`
/// maps an index into gadget.clause_list() to the step holding that
/// clause's translation. Returns the step deriving the L constraint.
size_t emit_L_from_gadget(CpBuilder& b, const LexGadget& strict_gadget,
                          const std::function<size_t(size_t)>& clause_step);

/// From a refutation of G & gadget (the non-strict comparison), derives the
/// strict comparison over swapped arguments from G alone: the shared adder
/// is re-introduced by extension, the refutation body is transformed to
/// derive the flag variable w, and w is resolved against its definition to
/// produce the strictness units.
ErDerivation strictify(const ErDerivation& pi, const LexGadget& gadget);

} // namespace pbproof

#endif
