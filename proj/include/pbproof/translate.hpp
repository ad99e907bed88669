#ifndef PBPROOF_TRANSLATE_HPP
#define PBPROOF_TRANSLATE_HPP

#include "pbproof/dominance.hpp"
#include "pbproof/erpls.hpp"

namespace pbproof {

/// Introduces one extension axiom into the derived constraints by redundance
/// steps: three for a conjunction axiom, two for an alias, one for a
/// constant. `existing` is the current core followed by the current derived
/// constraints (the hypothesis list the witnesses index into); the defined
/// variable must occur neither there nor among the ordered variables.
std::vector<DomStep> extension_redundance(const PbFormula& existing,
                                          const ExtensionAxiom& axiom,
                                          const OrderSpec& order,
                                          const std::vector<Var>& zvars);

/// Translates one ER-rule application: premises are already core,
/// resolutions and weakenings become implicational derivations, extension
/// steps become redundance gadgets; the new conclusions are transferred to
/// the core and the derived set is reset. `running` is the clause list the
/// core mirrors positionally.
std::vector<DomStep> translate_er_rule(const ErDerivation& pi,
                                       const std::vector<Clause>& running,
                                       const Configuration& cfg);

/// Translates one dominance-rule application: an order change to the
/// lexicographic order on the step's variables, redundance steps for the
/// extension block (including the axioms hoisted out of the side
/// derivations), one dominance step whose witnesses are assembled from the
/// strictified side derivations, and the closing transfer and deletion.
std::vector<DomStep> translate_dom_rule(const ErplsStep& step,
                                        const std::vector<Clause>& running,
                                        const Configuration& cfg, FreshVars& fresh);

/// The whole compiler: an accepted ER-PLS proof of G becomes a linear
/// dominance derivation from G*. `seed` fixes the fresh-variable counter
/// (it must lie above every variable mentioned by the input proof).
DomProof erpls_to_lindom(const ErplsProof& p,
                         std::optional<Var> seed = std::nullopt);

} // namespace pbproof

#endif
