#ifndef PBPROOF_ORACLE_HPP
#define PBPROOF_ORACLE_HPP

#include "pbproof/dominance.hpp"
#include "pbproof/pb.hpp"

namespace pbproof {

/// Exhaustive-enumeration limits. The cap is on the number of enumerated
/// variables; anything past it throws.
struct OracleLimits {
    int max_vars = 24;
};

class OracleCapExceeded : public std::runtime_error {
  public:
    explicit OracleCapExceeded(size_t n)
        : std::runtime_error("oracle cap exceeded: " + std::to_string(n) +
                             " variables")
    {
    }
};

/// Variable enumeration order, most significant first.
using VarOrder = std::vector<Var>;

/// Collects the variables of a formula into a deterministic order.
VarOrder default_order(const Cnf& g);
VarOrder default_order(const PbFormula& f);

std::optional<Assignment> brute_sat(const Cnf& g, const VarOrder& vars,
                                    const OracleLimits& lim = {});
std::optional<Assignment> brute_sat(const PbFormula& f, const VarOrder& vars,
                                    const OracleLimits& lim = {});

/// Satisfiability with auxiliary variables projected out: only `vars` are
/// enumerated, the remaining variables must be defined by the extension
/// blocks, whose functional evaluation supplies their values. Sound and
/// complete when every clause variable is enumerated or defined.
std::optional<Assignment>
brute_sat_with_blocks(const Cnf& g, const VarOrder& vars,
                      std::span<const ExtensionBlock> blocks,
                      const OracleLimits& lim = {});

bool equisatisfiable(const Cnf& a, const Cnf& b, const OracleLimits& lim = {});

/// Lexicographically least satisfying total assignment under the order
/// (first variable most significant, 0 < 1).
std::optional<Assignment> lex_min_model(const Cnf& g, const VarOrder& order,
                                        const OracleLimits& lim = {});

/// Semantic validity of a configuration: the core is satisfiable, and every
/// total core model is dominated (under the configuration's order on the
/// z variables) by a model of core and derived together.
bool config_valid(const Configuration& cfg, const OracleLimits& lim = {});

/// Repeatedly replaces alpha by alpha composed with omega while the image is
/// strictly lex-smaller under the order and still satisfies gamma; returns
/// the fixed point. alpha must satisfy gamma and omega must be a symmetry.
Assignment local_min_descent(const Cnf& gamma, const Substitution& omega,
                             const Assignment& alpha, const VarOrder& order);

/// Numeric value of an assignment under the order, most significant first.
BigInt lex_value(const Assignment& a, const VarOrder& order);

} // namespace pbproof

#endif
