#include "pbproof/formats.hpp"

#include <sstream>

namespace pbproof {

namespace {

struct Token {
    std::string text;
    size_t line;
};

// Whitespace-separated tokens; a line whose first token is "c", "#" or "*"
// is a comment.
class TokenStream {
  public:
    explicit TokenStream(const std::string& text)
    {
        size_t line = 1;
        std::string cur;
        bool line_start = true, in_comment = false;
        auto flush = [&] {
            if (cur.empty())
                return;
            if (line_start && (cur == "c" || cur == "#" || cur == "*")) {
                in_comment = true;
            } else if (!in_comment) {
                toks_.push_back({cur, line});
            }
            line_start = false;
            cur.clear();
        };
        for (char ch : text) {
            if (ch == '\n') {
                flush();
                ++line;
                line_start = true;
                in_comment = false;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                flush();
            } else {
                cur += ch;
            }
        }
        flush();
    }

    bool eof() const { return at_ >= toks_.size(); }
    size_t line() const { return eof() ? last_line() : toks_[at_].line; }
    const std::string& peek()
    {
        if (eof())
            fail("unexpected end of input");
        return toks_[at_].text;
    }
    std::string next()
    {
        if (eof())
            fail("unexpected end of input");
        return toks_[at_++].text;
    }
    bool accept(const std::string& kw)
    {
        if (!eof() && toks_[at_].text == kw) {
            ++at_;
            return true;
        }
        return false;
    }
    void expect(const std::string& kw)
    {
        if (!accept(kw))
            fail("expected '" + kw + "'" + (eof() ? "" : ", found '" + peek() + "'"));
    }
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(eof() ? last_line() : toks_[at_].line, msg);
    }

    long long integer()
    {
        std::string t = next();
        try {
            size_t used = 0;
            long long v = std::stoll(t, &used);
            if (used != t.size())
                throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            fail("expected an integer, found '" + t + "'");
        }
    }

    BigInt big()
    {
        std::string t = next();
        bool ok = !t.empty();
        size_t start = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (start == t.size())
            ok = false;
        for (size_t i = start; ok && i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                ok = false;
        if (!ok)
            fail("expected an integer, found '" + t + "'");
        return BigInt(t);
    }

    Var var()
    {
        long long v = integer();
        if (v <= 0)
            fail("expected a positive variable id");
        return static_cast<Var>(v);
    }

  private:
    size_t last_line() const { return toks_.empty() ? 1 : toks_.back().line; }
    std::vector<Token> toks_;
    size_t at_ = 0;
};

// A clause as DIMACS literals terminated by 0; t/f for the constants.
Clause clause_body(TokenStream& ts)
{
    std::vector<Lit> lits;
    for (;;) {
        const std::string& t = ts.peek();
        if (t == "t") {
            ts.next();
            lits.push_back(Lit::constant(true));
        } else if (t == "f") {
            ts.next();
            lits.push_back(Lit::constant(false));
        } else {
            long long v = ts.integer();
            if (v == 0)
                break;
            lits.push_back(Lit::from_dimacs(static_cast<int>(v)));
        }
    }
    return Clause(std::move(lits));
}

std::vector<Clause> clause_section(TokenStream& ts)
{
    std::vector<Clause> out;
    while (!ts.accept("end"))
        out.push_back(clause_body(ts));
    return out;
}

std::string clause_text(const Clause& c)
{
    std::string out;
    for (Lit p : c.lits()) {
        if (p.is_const())
            out += p.const_value() ? "t " : "f ";
        else
            out += std::to_string(p.to_dimacs()) + " ";
    }
    out += "0";
    return out;
}

// One "x<id>" or "~x<id>" token as a literal; "0"/"1" as constants.
Lit lit_token(TokenStream& ts)
{
    std::string t = ts.next();
    if (t == "0")
        return Lit::constant(false);
    if (t == "1")
        return Lit::constant(true);
    bool neg = false;
    size_t at = 0;
    if (at < t.size() && t[at] == '~') {
        neg = true;
        ++at;
    }
    if (at >= t.size() || t[at] != 'x')
        ts.fail("expected a literal, found '" + t + "'");
    ++at;
    try {
        size_t used = 0;
        long long v = std::stoll(t.substr(at), &used);
        if (used != t.size() - at || v <= 0)
            throw std::invalid_argument(t);
        return neg ? Lit::neg(static_cast<Var>(v)) : Lit::pos(static_cast<Var>(v));
    } catch (const std::exception&) {
        ts.fail("expected a literal, found '" + t + "'");
    }
}

// OPB constraint: signed coefficient / literal pairs up to the relation.
PbConstraint constraint_body(TokenStream& ts)
{
    std::vector<std::pair<BigInt, Lit>> terms;
    PbConstraint::Rel rel = PbConstraint::Rel::Ge;
    for (;;) {
        const std::string& t = ts.peek();
        if (t == ">=" || t == "<=") {
            rel = ts.next() == ">=" ? PbConstraint::Rel::Ge : PbConstraint::Rel::Le;
            break;
        }
        BigInt c = ts.big();
        terms.emplace_back(std::move(c), lit_token(ts));
    }
    BigInt bound = ts.big();
    ts.expect(";");
    return PbConstraint::make(terms, rel, bound);
}

std::vector<Var> var_list(TokenStream& ts)
{
    std::vector<Var> out;
    for (;;) {
        long long v = ts.integer();
        if (v == 0)
            break;
        if (v < 0)
            ts.fail("expected a positive variable id");
        out.push_back(static_cast<Var>(v));
    }
    return out;
}

std::string var_list_text(const std::vector<Var>& vs)
{
    std::string out;
    for (Var v : vs)
        out += std::to_string(v) + " ";
    out += "0";
    return out;
}

Substitution subst_section(TokenStream& ts)
{
    Substitution s;
    while (!ts.accept("end")) {
        Lit from = lit_token(ts);
        if (from.is_const() || from.negated())
            ts.fail("substitution domain entries are positive variables");
        ts.expect("->");
        s.set(from.var(), lit_token(ts));
    }
    return s;
}

std::string subst_text(const Substitution& s)
{
    std::string out;
    for (auto& [v, image] : s.entries()) {
        out += "x" + std::to_string(v) + " -> ";
        if (image.is_const())
            out += image.const_value() ? "1" : "0";
        else
            out += image.to_string();
        out += "\n";
    }
    return out;
}

ExtensionAxiom axiom_line(TokenStream& ts)
{
    std::string tag = ts.next();
    if (tag == "e2") {
        Var y = ts.var();
        Lit u = Lit::from_dimacs(static_cast<int>(ts.integer()));
        Lit v = Lit::from_dimacs(static_cast<int>(ts.integer()));
        return ExtensionAxiom::make_and(y, u, v);
    }
    if (tag == "e1") {
        Var y = ts.var();
        Lit u = Lit::from_dimacs(static_cast<int>(ts.integer()));
        return ExtensionAxiom::make_alias(y, u);
    }
    if (tag == "e0") {
        Var y = ts.var();
        long long b = ts.integer();
        if (b != 0 && b != 1)
            ts.fail("extension constant must be 0 or 1");
        return ExtensionAxiom::make_const(y, b == 1);
    }
    ts.fail("expected an extension axiom, found '" + tag + "'");
}

std::string axiom_text(const ExtensionAxiom& ax)
{
    switch (ax.kind) {
    case ExtensionAxiom::Kind::And:
        return "e2 " + std::to_string(ax.y) + " " + std::to_string(ax.u.to_dimacs()) +
               " " + std::to_string(ax.v.to_dimacs());
    case ExtensionAxiom::Kind::Alias:
        return "e1 " + std::to_string(ax.y) + " " + std::to_string(ax.u.to_dimacs());
    case ExtensionAxiom::Kind::Const:
        return "e0 " + std::to_string(ax.y) + (ax.bit ? " 1" : " 0");
    }
    return {};
}

// ER steps between "steps" ... "end". Premise steps carry only the index;
// the caller resolves the clause from the premise list afterwards.
std::vector<ErStep> er_steps_section(TokenStream& ts)
{
    std::vector<ErStep> out;
    ts.expect("steps");
    while (!ts.accept("end")) {
        std::string tag = ts.next();
        if (tag == "p") {
            long long idx = ts.integer();
            if (idx <= 0)
                ts.fail("premise index must be positive");
            long long z = ts.integer();
            if (z != 0)
                ts.fail("expected the terminating 0");
            out.push_back(ErStep::make_premise(static_cast<size_t>(idx), Clause{}));
        } else if (tag == "r") {
            size_t a = static_cast<size_t>(ts.integer());
            size_t b = static_cast<size_t>(ts.integer());
            long long piv = ts.integer();
            if (piv == 0)
                ts.fail("resolution pivot must be a literal");
            Clause res = clause_body(ts);
            out.push_back(
                ErStep::make_resolve(a, b, Lit::from_dimacs(static_cast<int>(piv)), res));
        } else if (tag == "w") {
            size_t a = static_cast<size_t>(ts.integer());
            out.push_back(ErStep::make_weaken(a, clause_body(ts)));
        } else if (tag == "z") {
            size_t a = static_cast<size_t>(ts.integer());
            out.push_back(ErStep::make_drop_zero(a, clause_body(ts)));
        } else if (tag == "e2" || tag == "e1" || tag == "e0") {
            // Re-parse the tag inside axiom_line via a tiny rewind-free path.
            if (tag == "e2") {
                Var y = ts.var();
                Lit u = Lit::from_dimacs(static_cast<int>(ts.integer()));
                Lit v = Lit::from_dimacs(static_cast<int>(ts.integer()));
                out.push_back(ErStep::make_extend(ExtensionAxiom::make_and(y, u, v)));
            } else if (tag == "e1") {
                Var y = ts.var();
                Lit u = Lit::from_dimacs(static_cast<int>(ts.integer()));
                out.push_back(ErStep::make_extend(ExtensionAxiom::make_alias(y, u)));
            } else {
                Var y = ts.var();
                long long b = ts.integer();
                if (b != 0 && b != 1)
                    ts.fail("extension constant must be 0 or 1");
                out.push_back(ErStep::make_extend(ExtensionAxiom::make_const(y, b == 1)));
            }
        } else {
            ts.fail("unknown step tag '" + tag + "'");
        }
    }
    return out;
}

void resolve_premise_clauses(std::vector<ErStep>& steps,
                             const std::vector<Clause>& premises, TokenStream& ts)
{
    for (ErStep& s : steps)
        if (s.kind == ErStep::Kind::Premise) {
            if (s.premise < 1 || s.premise > premises.size())
                ts.fail("premise index out of range");
            s.clause = premises[s.premise - 1];
        }
}

std::string er_steps_text(const std::vector<ErStep>& steps)
{
    std::string out = "steps\n";
    for (const ErStep& s : steps) {
        switch (s.kind) {
        case ErStep::Kind::Premise:
            out += "p " + std::to_string(s.premise) + " 0\n";
            break;
        case ErStep::Kind::Resolve:
            out += "r " + std::to_string(s.a) + " " + std::to_string(s.b) + " " +
                   std::to_string(s.pivot.to_dimacs()) + " " + clause_text(s.clause) +
                   "\n";
            break;
        case ErStep::Kind::Weaken:
            out += "w " + std::to_string(s.a) + " " + clause_text(s.clause) + "\n";
            break;
        case ErStep::Kind::DropZero:
            out += "z " + std::to_string(s.a) + " " + clause_text(s.clause) + "\n";
            break;
        default:
            out += axiom_text(s.axiom) + "\n";
            break;
        }
    }
    out += "end\n";
    return out;
}

std::vector<CpStep> cp_steps_section(TokenStream& ts)
{
    std::vector<CpStep> out;
    while (!ts.accept("end")) {
        std::string tag = ts.next();
        if (tag == "h") {
            out.push_back(CpStep::mk_hyp(static_cast<size_t>(ts.integer())));
        } else if (tag == "axge") {
            out.push_back(CpStep::mk_axge(ts.var()));
        } else if (tag == "axle") {
            out.push_back(CpStep::mk_axle(ts.var()));
        } else if (tag == "add") {
            size_t a = static_cast<size_t>(ts.integer());
            BigInt ma = ts.big();
            size_t b = static_cast<size_t>(ts.integer());
            BigInt mb = ts.big();
            out.push_back(CpStep::mk_add(a, std::move(ma), b, std::move(mb)));
        } else if (tag == "div") {
            size_t a = static_cast<size_t>(ts.integer());
            out.push_back(CpStep::mk_div(a, ts.big()));
        } else {
            ts.fail("unknown step tag '" + tag + "'");
        }
    }
    return out;
}

std::string cp_steps_text(const std::vector<CpStep>& steps)
{
    std::string out;
    for (const CpStep& s : steps) {
        switch (s.kind) {
        case CpStep::Kind::Hyp:
            out += "h " + std::to_string(s.hyp) + "\n";
            break;
        case CpStep::Kind::AxGe:
            out += "axge " + std::to_string(s.var) + "\n";
            break;
        case CpStep::Kind::AxLe:
            out += "axle " + std::to_string(s.var) + "\n";
            break;
        case CpStep::Kind::Add:
            out += "add " + std::to_string(s.a) + " " + s.ma.str() + " " +
                   std::to_string(s.b) + " " + s.mb.str() + "\n";
            break;
        case CpStep::Kind::Div:
            out += "div " + std::to_string(s.a) + " " + s.d.str() + "\n";
            break;
        }
    }
    return out;
}

std::string constraint_text(const PbConstraint& c)
{
    std::string out;
    for (auto& [v, coeff] : c.terms())
        out += (coeff >= 0 ? "+" : "") + coeff.str() + " x" + std::to_string(v) + " ";
    out += ">= " + c.bound().str() + " ;";
    return out;
}

OrderSpec order_spec_section(TokenStream& ts, size_t arity)
{
    if (ts.accept("linear")) {
        ts.expect("coeffs");
        std::vector<BigInt> coeffs;
        for (size_t i = 0; i < arity; ++i)
            coeffs.push_back(ts.big());
        return OrderSpec::linear(std::move(coeffs));
    }
    ts.expect("general");
    GeneralOrder g;
    ts.expect("udum");
    g.u_dummies = var_list(ts);
    ts.expect("vdum");
    g.v_dummies = var_list(ts);
    ts.expect("wdum");
    g.w_dummies = var_list(ts);
    ts.expect("formula");
    while (!ts.accept("end"))
        g.formula.push(constraint_body(ts));
    ts.expect("refl");
    g.refl_steps = cp_steps_section(ts);
    ts.expect("trans");
    g.trans_steps = cp_steps_section(ts);
    if (g.u_dummies.size() != arity)
        ts.fail("order arity does not match the ordered variables");
    return OrderSpec::general(std::move(g));
}

std::string order_spec_text(const OrderSpec& o)
{
    std::string out;
    if (o.is_linear()) {
        out += "linear\ncoeffs";
        for (const BigInt& b : o.lin().coeffs)
            out += " " + b.str();
        out += "\n";
        return out;
    }
    const GeneralOrder& g = o.gen();
    out += "general\n";
    out += "udum " + var_list_text(g.u_dummies) + "\n";
    out += "vdum " + var_list_text(g.v_dummies) + "\n";
    out += "wdum " + var_list_text(g.w_dummies) + "\n";
    out += "formula\n";
    for (const PbConstraint& c : g.formula.constraints())
        out += constraint_text(c) + "\n";
    out += "end\n";
    out += "refl\n" + cp_steps_text(g.refl_steps) + "end\n";
    out += "trans\n" + cp_steps_text(g.trans_steps) + "end\n";
    return out;
}

} // namespace

Cnf parse_cnf(const std::string& text)
{
    TokenStream ts(text);
    std::vector<Clause> out;
    if (ts.accept("p")) {
        ts.expect("cnf");
        ts.integer();
        ts.integer();
    }
    while (!ts.eof())
        out.push_back(clause_body(ts));
    return Cnf(std::move(out));
}

std::string print_cnf(const Cnf& g)
{
    Var maxv = g.max_var();
    std::string out =
        "p cnf " + std::to_string(maxv) + " " + std::to_string(g.size()) + "\n";
    for (const Clause& c : g.clauses())
        out += clause_text(c) + "\n";
    return out;
}

PbFormula parse_opb(const std::string& text)
{
    TokenStream ts(text);
    PbFormula out;
    while (!ts.eof())
        out.push(constraint_body(ts));
    return out;
}

std::string print_opb(const PbFormula& f)
{
    std::string out;
    for (const PbConstraint& c : f.constraints())
        out += constraint_text(c) + "\n";
    return out;
}

Substitution parse_subst(const std::string& text)
{
    TokenStream ts(text + "\nend");
    return subst_section(ts);
}

std::string print_subst(const Substitution& s)
{
    return subst_text(s);
}

ErDerivation parse_er(const std::string& text)
{
    TokenStream ts(text);
    ErDerivation d;
    ts.expect("premises");
    d.premises = clause_section(ts);
    if (ts.accept("protected"))
        d.protected_vars = var_list(ts);
    d.steps = er_steps_section(ts);
    resolve_premise_clauses(d.steps, d.premises, ts);
    ts.expect("conclusions");
    d.conclusions = clause_section(ts);
    if (!ts.eof())
        ts.fail("trailing input");
    return d;
}

std::string print_er(const ErDerivation& d)
{
    std::string out = "premises\n";
    for (const Clause& c : d.premises)
        out += clause_text(c) + "\n";
    out += "end\n";
    if (!d.protected_vars.empty())
        out += "protected " + var_list_text(d.protected_vars) + "\n";
    out += er_steps_text(d.steps);
    out += "conclusions\n";
    for (const Clause& c : d.conclusions)
        out += clause_text(c) + "\n";
    out += "end\n";
    return out;
}

CpDerivation parse_cp(const std::string& text)
{
    TokenStream ts(text);
    CpDerivation d;
    ts.expect("hypotheses");
    while (!ts.accept("end"))
        d.hypotheses.push(constraint_body(ts));
    ts.expect("steps");
    d.steps = cp_steps_section(ts);
    ts.expect("goals");
    while (!ts.accept("end"))
        d.goals.push(constraint_body(ts));
    if (!ts.eof())
        ts.fail("trailing input");
    return d;
}

std::string print_cp(const CpDerivation& d)
{
    std::string out = "hypotheses\n";
    for (const PbConstraint& c : d.hypotheses.constraints())
        out += constraint_text(c) + "\n";
    out += "end\nsteps\n" + cp_steps_text(d.steps) + "end\ngoals\n";
    for (const PbConstraint& c : d.goals.constraints())
        out += constraint_text(c) + "\n";
    out += "end\n";
    return out;
}

namespace {

// An embedded ER body (steps and optionally conclusions); premises are
// supplied by the context.
ErDerivation embedded_er(TokenStream& ts, std::vector<Clause> premises,
                         bool with_conclusions)
{
    ErDerivation d;
    d.premises = std::move(premises);
    d.steps = er_steps_section(ts);
    resolve_premise_clauses(d.steps, d.premises, ts);
    if (with_conclusions) {
        ts.expect("conclusions");
        d.conclusions = clause_section(ts);
    }
    return d;
}

} // namespace

ErplsProof parse_erpls(const std::string& text)
{
    TokenStream ts(text);
    ErplsProof p;
    ts.expect("cnf");
    p.initial = clause_section(ts);

    // Maintain the running clause list to materialize implicit premises.
    std::vector<Clause> running;
    Cnf running_set;
    auto push_running = [&](const Clause& c) {
        if (!running_set.contains(c)) {
            running.push_back(c);
            running_set.insert(c);
        }
    };
    for (const Clause& c : p.initial)
        push_running(c);

    while (!ts.eof()) {
        ts.expect("begin");
        std::string kind = ts.next();
        if (kind == "er") {
            ErplsStep s = ErplsStep::er(embedded_er(ts, running, true));
            ts.expect("end");
            for (const Clause& c : s.derivation.conclusions)
                push_running(c);
            p.steps.push_back(std::move(s));
        } else if (kind == "dom") {
            ErplsStep s;
            s.kind = ErplsStep::Kind::Dom;
            ts.expect("clause");
            s.clause = clause_body(ts);
            ts.expect("order");
            s.x_order = var_list(ts);
            ts.expect("base");
            s.gadget_base = ts.var();
            ts.expect("block");
            while (!ts.accept("end"))
                s.block.axioms.push_back(axiom_line(ts));
            s.block.base_vars = s.x_order;
            ts.expect("omega");
            s.omega = subst_section(ts);
            ts.expect("proof-a");
            s.proof_a = embedded_er(ts, s.premises_a(running), false);
            ts.expect("end");
            ts.expect("proof-b");
            s.proof_b = embedded_er(ts, s.premises_b(running), false);
            ts.expect("end");
            ts.expect("end");
            s.proof_a.conclusions =
                substitute(s.omega, Cnf(running)).clauses();
            s.proof_b.conclusions = {Clause{}};
            push_running(s.clause);
            p.steps.push_back(std::move(s));
        } else {
            ts.fail("unknown rule '" + kind + "'");
        }
    }
    return p;
}

std::string print_erpls(const ErplsProof& p)
{
    std::string out = "cnf\n";
    for (const Clause& c : p.initial)
        out += clause_text(c) + "\n";
    out += "end\n";
    for (const ErplsStep& s : p.steps) {
        if (s.kind == ErplsStep::Kind::Er) {
            out += "begin er\n" + er_steps_text(s.derivation.steps);
            out += "conclusions\n";
            for (const Clause& c : s.derivation.conclusions)
                out += clause_text(c) + "\n";
            out += "end\nend\n";
        } else {
            out += "begin dom\n";
            out += "clause " + clause_text(s.clause) + "\n";
            out += "order " + var_list_text(s.x_order) + "\n";
            out += "base " + std::to_string(s.gadget_base) + "\n";
            out += "block\n";
            for (const ExtensionAxiom& ax : s.block.axioms)
                out += axiom_text(ax) + "\n";
            out += "end\nomega\n" + subst_text(s.omega) + "end\n";
            out += "proof-a\n" + er_steps_text(s.proof_a.steps) + "end\n";
            out += "proof-b\n" + er_steps_text(s.proof_b.steps) + "end\n";
            out += "end\n";
        }
    }
    return out;
}

DomProof parse_dom(const std::string& text)
{
    TokenStream ts(text);
    DomProof p;
    if (ts.accept("mode")) {
        std::string m = ts.next();
        if (m == "full")
            p.mode = DomMode::Full;
        else if (m == "linear")
            p.mode = DomMode::Linear;
        else if (m == "weak")
            p.mode = DomMode::WeakLinear;
        else
            ts.fail("unknown mode '" + m + "'");
    }
    ts.expect("opb");
    while (!ts.accept("end"))
        p.input.push(constraint_body(ts));

    while (!ts.eof()) {
        ts.expect("begin");
        std::string kind = ts.next();
        DomStep s;
        if (kind == "impl") {
            s.kind = DomStep::Kind::ImplDeriv;
            ts.expect("constraint");
            s.constraint = constraint_body(ts);
            ts.expect("cp");
            s.witness1 = cp_steps_section(ts);
        } else if (kind == "red") {
            s.kind = DomStep::Kind::Redundance;
            ts.expect("constraint");
            s.constraint = constraint_body(ts);
            ts.expect("omega");
            s.omega = subst_section(ts);
            ts.expect("cp");
            s.witness1 = cp_steps_section(ts);
        } else if (kind == "domin") {
            s.kind = DomStep::Kind::Dominance;
            ts.expect("constraint");
            s.constraint = constraint_body(ts);
            ts.expect("omega");
            s.omega = subst_section(ts);
            ts.expect("cp");
            s.witness1 = cp_steps_section(ts);
            ts.expect("cp");
            s.witness2 = cp_steps_section(ts);
        } else if (kind == "del") {
            s.kind = DomStep::Kind::Deletion;
            if (ts.accept("derived"))
                for (Var v : var_list(ts))
                    s.derived_removals.push_back(static_cast<size_t>(v));
            if (ts.accept("core")) {
                s.core_removal = static_cast<size_t>(ts.integer());
                ts.expect("omega");
                s.omega = subst_section(ts);
                ts.expect("cp");
                s.witness1 = cp_steps_section(ts);
            }
        } else if (kind == "xfer") {
            s.kind = DomStep::Kind::Transfer;
            ts.expect("derived");
            for (Var v : var_list(ts))
                s.transfers.push_back(static_cast<size_t>(v));
        } else if (kind == "order") {
            s.kind = DomStep::Kind::OrderChange;
            ts.expect("zvars");
            s.new_zvars = var_list(ts);
            s.new_order = order_spec_section(ts, s.new_zvars.size());
        } else {
            ts.fail("unknown rule '" + kind + "'");
        }
        ts.expect("end");
        p.steps.push_back(std::move(s));
    }
    return p;
}

std::string print_dom(const DomProof& p)
{
    std::string out = "mode ";
    out += p.mode == DomMode::Full     ? "full"
           : p.mode == DomMode::Linear ? "linear"
                                       : "weak";
    out += "\nopb\n";
    for (const PbConstraint& c : p.input.constraints())
        out += constraint_text(c) + "\n";
    out += "end\n";
    for (const DomStep& s : p.steps) {
        switch (s.kind) {
        case DomStep::Kind::ImplDeriv:
            out += "begin impl\nconstraint " + constraint_text(s.constraint) + "\n";
            out += "cp\n" + cp_steps_text(s.witness1) + "end\n";
            break;
        case DomStep::Kind::Redundance:
            out += "begin red\nconstraint " + constraint_text(s.constraint) + "\n";
            out += "omega\n" + subst_text(s.omega) + "end\n";
            out += "cp\n" + cp_steps_text(s.witness1) + "end\n";
            break;
        case DomStep::Kind::Dominance:
            out += "begin domin\nconstraint " + constraint_text(s.constraint) + "\n";
            out += "omega\n" + subst_text(s.omega) + "end\n";
            out += "cp\n" + cp_steps_text(s.witness1) + "end\n";
            out += "cp\n" + cp_steps_text(s.witness2) + "end\n";
            break;
        case DomStep::Kind::Deletion: {
            out += "begin del\n";
            if (!s.derived_removals.empty()) {
                std::vector<Var> idx;
                for (size_t i : s.derived_removals)
                    idx.push_back(static_cast<Var>(i));
                out += "derived " + var_list_text(idx) + "\n";
            }
            if (s.core_removal) {
                out += "core " + std::to_string(*s.core_removal) + "\n";
                out += "omega\n" + subst_text(s.omega) + "end\n";
                out += "cp\n" + cp_steps_text(s.witness1) + "end\n";
            }
            break;
        }
        case DomStep::Kind::Transfer: {
            std::vector<Var> idx;
            for (size_t i : s.transfers)
                idx.push_back(static_cast<Var>(i));
            out += "begin xfer\nderived " + var_list_text(idx) + "\n";
            break;
        }
        case DomStep::Kind::OrderChange:
            out += "begin order\nzvars " + var_list_text(s.new_zvars) + "\n";
            out += order_spec_text(s.new_order);
            break;
        }
        out += "end\n";
    }
    return out;
}

QRefutation parse_q(const std::string& text)
{
    TokenStream ts(text);
    QRefutation p;
    ts.expect("cnf");
    p.gamma = clause_section(ts);
    ts.expect("order");
    p.order = var_list(ts);
    ts.expect("base");
    p.aux_base = ts.var();
    while (ts.accept("omega"))
        p.symmetries.push_back(subst_section(ts));
    ts.expect("refutation");
    p.refutation = embedded_er(ts, p.augmented(), false);
    ts.expect("end");
    p.refutation.conclusions = {Clause{}};
    if (!ts.eof())
        ts.fail("trailing input");
    return p;
}

std::string print_q(const QRefutation& p)
{
    std::string out = "cnf\n";
    for (const Clause& c : p.gamma)
        out += clause_text(c) + "\n";
    out += "end\n";
    out += "order " + var_list_text(p.order) + "\n";
    out += "base " + std::to_string(p.aux_base) + "\n";
    for (const Substitution& s : p.symmetries)
        out += "omega\n" + subst_text(s) + "end\n";
    out += "refutation\n" + er_steps_text(p.refutation.steps) + "end\n";
    return out;
}

Configuration parse_config(const std::string& text)
{
    TokenStream ts(text);
    Configuration cfg;
    ts.expect("core");
    while (!ts.accept("end"))
        cfg.core.push(constraint_body(ts));
    ts.expect("derived");
    while (!ts.accept("end"))
        cfg.derived.push(constraint_body(ts));
    ts.expect("zvars");
    cfg.zvars = var_list(ts);
    cfg.order = order_spec_section(ts, cfg.zvars.size());
    if (!ts.eof())
        ts.fail("trailing input");
    return cfg;
}

std::string print_config(const Configuration& cfg)
{
    std::string out = "core\n";
    for (const PbConstraint& c : cfg.core.constraints())
        out += constraint_text(c) + "\n";
    out += "end\nderived\n";
    for (const PbConstraint& c : cfg.derived.constraints())
        out += constraint_text(c) + "\n";
    out += "end\nzvars " + var_list_text(cfg.zvars) + "\n";
    out += order_spec_text(cfg.order);
    return out;
}

} // namespace pbproof
