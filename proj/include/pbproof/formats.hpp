#ifndef PBPROOF_FORMATS_HPP
#define PBPROOF_FORMATS_HPP

#include "pbproof/dominance.hpp"
#include "pbproof/erpls.hpp"
#include "pbproof/symmetry.hpp"

#include <string>

namespace pbproof {

/// Parse failure with a 1-based source line.
class ParseError : public std::runtime_error {
  public:
    ParseError(size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg),
          line_(line)
    {
    }
    size_t line() const { return line_; }

  private:
    size_t line_;
};

// DIMACS CNF; the tokens t and f denote the constants 1 and 0 inside
// clauses. The "p cnf" header is accepted and ignored on input.
Cnf parse_cnf(const std::string& text);
std::string print_cnf(const Cnf& g);

// OPB-style PB formulas: lines of "<sign><int> (x<id>|~x<id>) ... (>=|<=) <int> ;".
PbFormula parse_opb(const std::string& text);
std::string print_opb(const PbFormula& f);

// Substitutions: one "x<id> -> (x<id>|~x<id>|0|1)" per line.
Substitution parse_subst(const std::string& text);
std::string print_subst(const Substitution& s);

ErDerivation parse_er(const std::string& text);
std::string print_er(const ErDerivation& d);

CpDerivation parse_cp(const std::string& text);
std::string print_cp(const CpDerivation& d);

ErplsProof parse_erpls(const std::string& text);
std::string print_erpls(const ErplsProof& p);

DomProof parse_dom(const std::string& text);
std::string print_dom(const DomProof& p);

QRefutation parse_q(const std::string& text);
std::string print_q(const QRefutation& p);

Configuration parse_config(const std::string& text);
std::string print_config(const Configuration& cfg);

} // namespace pbproof

#endif
