#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pbproof/pb.hpp"
#include "support/testgen.hpp"

using namespace pbproof;
using namespace pbproof::testgen;

TEST_CASE("literal negation is an involution and maps constants to each other")
{
    CHECK(~Lit::constant(false) == Lit::constant(true));
    CHECK(~Lit::constant(true) == Lit::constant(false));
    for (int d : {1, -1, 7, -12}) {
        Lit p = L(d);
        CHECK(~~p == p);
        CHECK(~p != p);
    }
}

TEST_CASE("clause tautology detection")
{
    CHECK(clause({1, -1}).tautologous());
    CHECK(Clause{Lit::constant(true)}.tautologous());
    CHECK(!Clause{Lit::constant(false)}.tautologous());
    CHECK(!clause({1, 2, -3}).tautologous());
    CHECK(Clause{}.empty());
}

TEST_CASE("negate_clause produces the unit CNF")
{
    Cnf n = negate_clause(clause({1, -2}));
    CHECK(n == cnf({{-1}, {2}}));
    CHECK(negate_clause(Clause{}) == Cnf{});
    CHECK(negate_clause(clause({3})) == cnf({{-3}}));
}

TEST_CASE("substitution respects negation and fixes constants")
{
    Substitution w;
    w.set(1, Lit::neg(2));
    CHECK(w(L(1)) == L(-2));
    CHECK(w(L(-1)) == L(2));
    CHECK(w(Lit::constant(true)) == Lit::constant(true));
    CHECK(w(Lit::constant(false)) == Lit::constant(false));

    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        Substitution s = random_subst(rng, 5, true);
        for (int v = 1; v <= 5; ++v)
            CHECK(s(Lit::neg(v)) == ~s(Lit::pos(v)));
    }
}

TEST_CASE("substitution on clauses deduplicates as a set")
{
    Substitution w;
    w.set(1, Lit::neg(2));
    Clause c = substitute(w, clause({1, 2}));
    CHECK(c == clause({-2, 2}));
    CHECK(c.tautologous());

    CHECK(substitute(Substitution::identity(), cnf({{1, 2}, {-1}})) ==
          cnf({{1, 2}, {-1}}));
}

TEST_CASE("composition acts pointwise")
{
    Substitution tau, omega;
    tau.set(1, Lit::pos(2));  // x1 -> x2
    omega.set(2, Lit::pos(1)); // x2 -> x1
    Substitution c = compose(tau, omega);
    CHECK(c(L(1)) == L(2));
    CHECK(c(L(2)) == L(2));

    std::mt19937 rng(3);
    Substitution id;
    for (int round = 0; round < 100; ++round) {
        Substitution w = random_subst(rng, 4, true);
        CHECK(compose(w, id) == w);
        CHECK(compose(id, w) == w);
    }
}

TEST_CASE("restriction by a composition equals iterated restriction")
{
    std::mt19937 rng(11);
    for (int round = 0; round < 300; ++round) {
        Cnf g = random_cnf(rng, 4, 4, 3);
        Substitution tau = random_subst(rng, 4, true);
        Substitution omega = random_subst(rng, 4, true);
        CHECK(substitute(compose(tau, omega), g) ==
              substitute(tau, substitute(omega, g)));
    }
}

TEST_CASE("satisfaction through substitution composes")
{
    // tau |= G|omega iff tau o omega |= G, on small random instances.
    std::mt19937 rng(13);
    for (int round = 0; round < 300; ++round) {
        Cnf g = random_cnf(rng, 4, 4, 2);
        Substitution omega = random_subst(rng, 4, true);
        Substitution tau = random_assignment(rng, 4).to_substitution();
        CHECK(satisfies(tau, substitute(omega, g)) ==
              satisfies(compose(tau, omega), g));
    }
}

TEST_CASE("symmetry detection")
{
    Cnf g = cnf({{1, 2}, {-1, -2}});
    Substitution swap;
    swap.set(1, Lit::pos(2));
    swap.set(2, Lit::pos(1));
    CHECK(is_symmetry(swap, g));
    CHECK(is_symmetry(Substitution::identity(), g));

    Substitution flip;
    flip.set(1, Lit::neg(1));
    CHECK(!is_symmetry(flip, cnf({{1}})));
}

TEST_CASE("clause_to_pb translation")
{
    // x1 | ~x2 becomes x1 + (1 - x2) >= 1.
    PbConstraint c = clause_to_pb(clause({1, -2}));
    CHECK(c == PbConstraint::ge({{1, L(1)}, {1, L(-2)}}, 1));
    CHECK(c.coeff(1) == 1);
    CHECK(c.coeff(2) == -1);
    CHECK(c.bound() == 0);

    CHECK(clause_to_pb(Clause{}).is_contradiction());
    CHECK(clause_to_pb(clause({1, -1})) == PbConstraint::trivial());
}

TEST_CASE("clause satisfaction agrees with its PB translation")
{
    std::mt19937 rng(17);
    for (int round = 0; round < 300; ++round) {
        Cnf g = random_cnf(rng, 5, 3, 3);
        Assignment a = random_assignment(rng, 5);
        for (const Clause& c : g.clauses())
            CHECK(satisfies(a, Cnf{c}) == clause_to_pb(c).satisfied_by(a));
    }
}

TEST_CASE("pb normalization merges terms and folds constants")
{
    // From the redundance gadget: (1-u) + (1-v) + y >= 1 under y -> u
    // normalizes to 2 - v >= 1, i.e. -v >= -1.
    PbConstraint a =
        PbConstraint::ge({{1, L(-1)}, {1, L(-2)}, {1, L(3)}}, 1); // u=1, v=2, y=3
    Substitution sigma;
    sigma.set(3, Lit::pos(1));
    PbConstraint img = a.restricted(sigma);
    CHECK(img == PbConstraint::make({{1, L(2)}}, PbConstraint::Rel::Le, 1));
    CHECK(img.coeff(2) == -1);
    CHECK(img.bound() == -1);
}

TEST_CASE("pb negation flips the solution set and is involutive on solutions")
{
    PbConstraint c = PbConstraint::ge({{1, L(1)}, {1, L(2)}}, 1);
    PbConstraint n = c.negated();
    CHECK(n == PbConstraint::make({{1, L(1)}, {1, L(2)}}, PbConstraint::Rel::Le, 0));

    PbConstraint c2 = PbConstraint::ge({{2, L(1)}, {-3, L(2)}}, 0);
    PbConstraint n2 = c2.negated();
    CHECK(n2 ==
          PbConstraint::make({{2, L(1)}, {-3, L(2)}}, PbConstraint::Rel::Le, -1));

    std::mt19937 rng(23);
    for (int round = 0; round < 200; ++round) {
        Assignment a = random_assignment(rng, 3);
        std::uniform_int_distribution<int> coeff(-3, 3);
        PbConstraint r = PbConstraint::ge(
            {{coeff(rng), L(1)}, {coeff(rng), L(-2)}, {coeff(rng), L(3)}}, coeff(rng));
        CHECK(r.satisfied_by(a) != r.negated().satisfied_by(a));
        CHECK(r.negated().negated().satisfied_by(a) == r.satisfied_by(a));
    }
}

TEST_CASE("normalization preserves the solution set and is idempotent")
{
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> pick(1, 6);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int round = 0; round < 200; ++round) {
        std::vector<std::pair<BigInt, Lit>> raw;
        for (int k = 0; k < 5; ++k) {
            int v = pick(rng);
            raw.emplace_back(coeff(rng), sign(rng) ? Lit::pos(v) : Lit::neg(v));
        }
        BigInt bound = coeff(rng);
        bool le = sign(rng) == 1;
        PbConstraint c = PbConstraint::make(
            raw, le ? PbConstraint::Rel::Le : PbConstraint::Rel::Ge, bound);

        // Idempotence: renormalizing the normal form changes nothing.
        std::vector<std::pair<BigInt, Lit>> again;
        for (auto& [v, cf] : c.terms())
            again.emplace_back(cf, Lit::pos(v));
        CHECK(PbConstraint::ge(again, c.bound()) == c);

        // Solution preservation over all assignments of 6 variables.
        for (uint64_t m = 0; m < 64; ++m) {
            Assignment a;
            for (int v = 1; v <= 6; ++v)
                a.set(v, (m >> (v - 1)) & 1);
            BigInt lhs = 0;
            for (auto& [cf, p] : raw) {
                auto val = a.eval(p);
                if (*val)
                    lhs += cf;
            }
            bool raw_sat = le ? lhs <= bound : lhs >= bound;
            CHECK(raw_sat == c.satisfied_by(a));
        }
    }
}

TEST_CASE("iterate_substitution: identity and swap powers")
{
    Substitution id;
    CHECK(iterate_substitution(id, BigInt(1) << 64) == id);

    Substitution swap;
    swap.set(1, Lit::pos(2));
    swap.set(2, Lit::pos(1));
    CHECK(iterate_substitution(swap, 100) == id);
    CHECK(iterate_substitution(swap, 101) == swap);
}

TEST_CASE("iterate_substitution agrees with naive composition")
{
    std::mt19937 rng(31);
    for (int round = 0; round < 60; ++round) {
        Substitution w = random_subst(rng, 5, true);
        Substitution power; // w^0
        for (int m = 0; m <= 100; ++m) {
            CHECK(iterate_substitution(w, m) == power);
            power = compose(power, w); // g(w, m+1) = g(w, m) o w
        }
    }
}

TEST_CASE("iterate_substitution handles huge exponents per the cycle structure")
{
    // A 3-cycle with a tail: x1 -> x2 -> x3 -> x2, x4 -> ~x4.
    Substitution w;
    w.set(1, Lit::pos(2));
    w.set(2, Lit::pos(3));
    w.set(3, Lit::pos(2));
    w.set(4, Lit::neg(4));
    BigInt m = (BigInt(1) << 64); // even, and 2^64 = 1 mod ... check by hand
    Substitution r = iterate_substitution(w, m);
    // Orbit of x1: x1, x2, x3, x2, ... tail 1, cycle 2; (2^64 - 1) odd -> x3.
    CHECK(r(L(1)) == L(3));
    // Orbit of x4 has cycle 2 and 2^64 is even.
    CHECK(r(L(4)) == L(4));
}
