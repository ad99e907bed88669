#ifndef PBPROOF_TESTS_TESTGEN_HPP
#define PBPROOF_TESTS_TESTGEN_HPP

#include "pbproof/er.hpp"
#include "pbproof/pb.hpp"

#include <random>

namespace pbproof::testgen {

// Shorthand constructors for test fixtures.
inline Lit L(int dimacs) { return Lit::from_dimacs(dimacs); }
Clause clause(std::initializer_list<int> dimacs_lits);
Cnf cnf(std::initializer_list<std::initializer_list<int>> clauses);
std::vector<Clause> clause_list(std::initializer_list<std::initializer_list<int>> cs);

/// Builds a resolution refutation of the premises by a decision tree:
/// branch on the variables in the given order, take a falsified clause at
/// each leaf, and resolve the two branch clauses on the decision variable.
/// The premises must be unsatisfiable over `branch_order` (which must cover
/// their variables); throws otherwise. Pruning makes this fast whenever
/// most variables are functionally forced, so gadget CNFs are fine as long
/// as defined variables come after their inputs in the order.
ErDerivation tree_refutation(const std::vector<Clause>& premises,
                             const std::vector<Var>& branch_order);

/// tree_refutation with the order: the given prefix first, then the
/// remaining variables ascending.
ErDerivation tree_refutation_auto(const std::vector<Clause>& premises,
                                  const std::vector<Var>& prefix = {});

/// Uniform random k-CNF over variables 1..n.
Cnf random_cnf(std::mt19937& rng, int n, int m, int width);

/// Random substitution over variables 1..n mapping into literals over 1..n
/// (possibly constants when with_consts is set).
Substitution random_subst(std::mt19937& rng, int n, bool with_consts = false);

/// Random total assignment over 1..n.
Assignment random_assignment(std::mt19937& rng, int n);

/// A small pool of symmetric CNFs with a named nontrivial symmetry.
struct SymmetricInstance {
    Cnf gamma;
    Substitution omega;
};
std::vector<SymmetricInstance> symmetric_pool();

} // namespace pbproof::testgen

#endif
