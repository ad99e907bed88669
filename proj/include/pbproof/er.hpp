#ifndef PBPROOF_ER_HPP
#define PBPROOF_ER_HPP

#include "pbproof/check.hpp"
#include "pbproof/core.hpp"

#include <functional>

namespace pbproof {

/// One extension axiom: a defined variable y together with the clauses that
/// pin it to a conjunction of two literals, an alias of one literal, or a
/// constant. The clause order below is fixed and shared with the proof text
/// format.
struct ExtensionAxiom {
    enum class Kind { And, Alias, Const };

    Kind kind = Kind::Const;
    Var y = 0;
    Lit u, v;       // And: y <-> u & v. Alias: y <-> u.
    bool bit = false; // Const: y <-> bit.

    static ExtensionAxiom make_and(Var y, Lit u, Lit v)
    {
        return {Kind::And, y, u, v, false};
    }
    static ExtensionAxiom make_alias(Var y, Lit u)
    {
        return {Kind::Alias, y, u, {}, false};
    }
    static ExtensionAxiom make_const(Var y, bool bit)
    {
        return {Kind::Const, y, {}, {}, bit};
    }

    /// And: ~u | ~v | y, ~y | u, ~y | v. Alias: ~u | y, ~y | u. Const: y or ~y.
    std::vector<Clause> clauses() const;
    size_t clause_count() const
    {
        return kind == Kind::And ? 3 : kind == Kind::Alias ? 2 : 1;
    }
    /// Variables of the input literals.
    std::set<Var> input_vars() const;

    ExtensionAxiom renamed(const Substitution& w, Var new_y) const;

    friend bool operator==(const ExtensionAxiom& a, const ExtensionAxiom& b)
    {
        return a.kind == b.kind && a.y == b.y && a.u == b.u && a.v == b.v &&
               a.bit == b.bit;
    }
};

/// An ordered set of extension axioms over base variables x; defined
/// variables y, where each y_i may only be defined from the base variables
/// and earlier defined variables. Equivalently the description of a circuit
/// together with variables for its internal nodes.
struct ExtensionBlock {
    std::vector<Var> base_vars;
    std::vector<ExtensionAxiom> axioms;

    std::vector<Var> defined_vars() const;
    std::vector<Clause> clauses() const;
    Cnf cnf() const { return Cnf(clauses()); }

    /// Checks the definition-order and freshness conditions of the block.
    CheckResult validate() const;

    /// Extension blocks are functional: given values for the base variables,
    /// the defined variables take exactly one satisfying value. Returns the
    /// input extended with those values.
    Assignment evaluate(const Assignment& base) const;
};

struct ErStep {
    enum class Kind { Premise, Resolve, Weaken, DropZero, ExtendAnd, ExtendAlias, ExtendConst };

    Kind kind = Kind::Premise;
    size_t premise = 0;  // Premise: 1-based index into the premise list
    size_t a = 0, b = 0; // clause references (1-based positions in the clause sequence)
    Lit pivot;           // Resolve
    Clause clause;       // Premise/Resolve/Weaken/DropZero: the stated result
    ExtensionAxiom axiom; // Extend*

    static ErStep make_premise(size_t idx, Clause c);
    static ErStep make_resolve(size_t a, size_t b, Lit pivot, Clause result);
    static ErStep make_weaken(size_t a, Clause result);
    static ErStep make_drop_zero(size_t a, Clause result);
    static ErStep make_extend(ExtensionAxiom ax);

    /// Number of positions this step occupies in the clause sequence
    /// (extension steps contribute one position per axiom clause).
    size_t clause_count() const;
};

/// An extended resolution derivation: premises, an ordered list of steps,
/// and the conclusion clauses. The clause sequence of the derivation is the
/// concatenation of the steps' clauses; references inside steps are 1-based
/// positions in that sequence. Variables listed in protected_vars are
/// treated as "old" and may not be used as extension variables even when
/// they do not occur in the premises.
struct ErDerivation {
    std::vector<Clause> premises;
    std::vector<Var> protected_vars;
    std::vector<ErStep> steps;
    std::vector<Clause> conclusions;

    Cnf premise_cnf() const { return Cnf(premises); }
    Cnf conclusion_cnf() const { return Cnf(conclusions); }
    bool refutes() const;

    /// All clauses in sequence order (not including premises).
    std::vector<Clause> clause_sequence() const;
    /// Extension variables introduced by the steps, in order.
    std::vector<Var> extension_vars() const;
    Var max_var() const;
    size_t step_count() const { return steps.size(); }
};

/// Checks well-formedness of every step: resolution matches the stated pivot
/// and result, weakening only adds literals over variables already seen,
/// the zero rule removes exactly the constant 0, and extension variables are
/// fresh. Conclusions must appear among the premises or derived clauses.
CheckResult check_er(const ErDerivation& d);

/// Circuit with fan-in-2 gates. Gate inputs are signed node references:
/// nodes 1..arity are the inputs, node arity+k is the k-th gate, and a
/// negative reference denotes the negation of the node's value. All gates
/// are And over two (possibly negated) earlier nodes, an Alias of one, or a
/// constant, which is enough to express any Boolean circuit since negation
/// is free.
struct Circuit {
    struct Gate {
        enum class Op { And, Alias, Const };
        Op op = Op::Const;
        int a = 0, b = 0;
        bool bit = false;
    };

    int arity = 0;
    std::vector<Gate> gates;
    std::vector<int> outputs;             // signed node references
    std::optional<size_t> primary_output; // gate index of the distinguished output

    int add_and(int a, int b);
    int add_or(int a, int b);  // two gates
    int add_xor(int a, int b); // three gates
    int add_alias(int a);
    int add_const(bool bit);

    size_t node_count() const { return arity + gates.size(); }
    CheckResult validate() const;

    /// Evaluates all nodes on the given input bits; returns node values
    /// (index 0 unused, 1..arity inputs, then gates).
    std::vector<bool> eval_nodes(const std::vector<bool>& inputs) const;
    std::vector<bool> eval(const std::vector<bool>& inputs) const;
};

/// [y = C(x)]: one extension axiom per gate, in topological order, with
/// defined variables drawn from `fresh`. The block's distinguished output
/// variable (when the circuit has one) is returned alongside.
struct CircuitAxioms {
    ExtensionBlock block;
    std::vector<Var> gate_vars;        // one per gate
    std::optional<Var> output_var;     // y_out
    std::vector<Lit> output_literals;  // images of circuit outputs
};
CircuitAxioms circuit_axioms(const Circuit& c, const std::vector<Var>& inputs,
                             FreshVars& fresh);

/// Lemma-style composition: from pi1 : G & A |- B and pi2 : G & B |- D,
/// builds G & A |- D. Every premise of pi2 must occur among pi1's premises
/// or derived clauses; extension variables of pi2 that do not occur in its
/// conclusions are renamed fresh to avoid clashes.
ErDerivation compose_er(const ErDerivation& pi1, const ErDerivation& pi2,
                        FreshVars& fresh);

/// From pi1 : G(x) |- D & A with D an extension block over x;y, builds
/// G & D |- D & A by deriving a renamed copy D' (y -> z), proving y_i <-> z_i
/// clause by clause, and pulling the conclusions back to the y variables.
ErDerivation pull_conclusions(const ErDerivation& pi1, const ExtensionBlock& delta,
                              FreshVars& fresh);

/// Moves every extension step out of the derivation into a block, preserving
/// order. The returned derivation has the block's clauses appended to its
/// premises and contains no extension steps.
std::pair<ErDerivation, ExtensionBlock> hoist_extensions(const ErDerivation& pi);

/// From a refutation of G & {~z}, builds a derivation of z from G by adding
/// z to every clause, turning resolutions on z into weakenings. The variable
/// z must be visible in G or defined by an extension step of the refutation.
ErDerivation refutation_to_derivation(const ErDerivation& pi, Var z);

/// Renames every extension variable of pi (except those in `keep`) to fresh
/// ids. Premises and conclusions are left untouched, so this is only sound
/// when the renamed variables do not occur in them, which holds for
/// extension variables that are internal to the derivation.
ErDerivation rename_extension_vars(const ErDerivation& pi, FreshVars& fresh,
                                   const std::set<Var>& keep = {});

/// Concatenates two derivations over the same premise set. Steps of pi2
/// referring to premises are remapped; its extension variables are assumed
/// disjoint from pi1's (use rename_extension_vars first).
ErDerivation concat_same_premises(const ErDerivation& pi1, const ErDerivation& pi2);

/// How a premise of the transformed refutation is available in the target
/// derivation: already derived at a clause position, importable from the
/// target's premise list, or absent (only legal for clauses containing ~z,
/// which need no image).
struct PremiseImage {
    enum class Kind { Missing, AtPosition, ImportPremise };
    Kind kind = Kind::Missing;
    size_t value = 0;

    static PremiseImage missing() { return {}; }
    static PremiseImage at(size_t pos) { return {Kind::AtPosition, pos}; }
    static PremiseImage import(size_t premise_idx)
    {
        return {Kind::ImportPremise, premise_idx};
    }
};
using PremiseResolver = std::function<PremiseImage(size_t, const Clause&)>;

/// Low-level form of refutation_to_derivation that appends the transformed
/// body of pi (a refutation of its premises, one of which is {~z}) to an
/// existing derivation. Returns the position of the derived unit {z}.
size_t detail_transform_refutation(const ErDerivation& pi, Var z,
                                   ErDerivation& target,
                                   const PremiseResolver& premise_at);

} // namespace pbproof

#endif
