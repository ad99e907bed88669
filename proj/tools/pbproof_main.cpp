#include "pbproof/formats.hpp"
#include "pbproof/oracle.hpp"
#include "pbproof/translate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace pbproof;
using nlohmann::json;

namespace {

struct Verdict {
    std::string status = "accept"; // accept | reject | parse-error
    std::optional<size_t> step;
    std::string reason;
    json stats = json::object();

    int exit_code() const
    {
        if (status == "accept")
            return 0;
        if (status == "reject")
            return 1;
        return 2;
    }
    json to_json() const
    {
        json j;
        j["status"] = status;
        if (step)
            j["step"] = *step;
        if (!reason.empty())
            j["reason"] = reason;
        j["stats"] = stats;
        return j;
    }
};

std::string slurp(const std::string& path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out << text;
}

struct Options {
    bool json_output = false;
    int max_vars = 24;
    std::string out_path;
};

int finish(const Verdict& v, const Options& opt)
{
    if (opt.json_output) {
        std::cout << v.to_json().dump() << "\n";
    } else if (v.status == "accept") {
        std::cout << "accept\n";
    } else {
        std::cout << v.status;
        if (v.step)
            std::cout << " step " << *v.step;
        if (!v.reason.empty())
            std::cout << ": " << v.reason;
        std::cout << "\n";
    }
    return v.exit_code();
}

Verdict from_check(const CheckResult& r, size_t steps,
                   std::chrono::steady_clock::time_point t0)
{
    Verdict v;
    if (!r.ok) {
        v.status = "reject";
        v.step = r.step;
        v.reason = r.reason;
    }
    v.stats["steps"] = steps;
    auto dt = std::chrono::steady_clock::now() - t0;
    v.stats["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
    return v;
}

size_t max_coeff_bits(const PbFormula& f)
{
    size_t bits = 0;
    for (const PbConstraint& c : f.constraints())
        bits = std::max(bits, c.max_coeff_bits());
    return bits;
}

VarOrder parse_order_arg(const std::string& arg)
{
    VarOrder order;
    std::istringstream ss(arg);
    long long v;
    while (ss >> v)
        if (v > 0)
            order.push_back(static_cast<Var>(v));
    return order;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"checker and translator for extended resolution, cutting planes, "
                 "ER-PLS and dominance proofs"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.json_output, "emit the verdict as one JSON object");
    app.add_option("--max-vars", opt.max_vars, "oracle enumeration cap")
        ->capture_default_str();

    // ---- check ----
    auto* check = app.add_subcommand("check", "check a proof file");
    check->require_subcommand(1);
    std::string check_file;
    std::string dom_mode = "from-file";
    auto* check_er_cmd = check->add_subcommand("er", "extended resolution derivation");
    check_er_cmd->add_option("file", check_file, "proof file")->required();
    auto* check_cp_cmd = check->add_subcommand("cp", "cutting planes derivation");
    check_cp_cmd->add_option("file", check_file, "proof file")->required();
    auto* check_erpls_cmd = check->add_subcommand("erpls", "ER-PLS proof");
    check_erpls_cmd->add_option("file", check_file, "proof file")->required();
    auto* check_dom_cmd = check->add_subcommand("dom", "dominance proof");
    check_dom_cmd->add_option("file", check_file, "proof file")->required();
    check_dom_cmd->add_option("--mode", dom_mode, "full | linear | weak")
        ->check(CLI::IsMember({"full", "linear", "weak", "from-file"}));

    // ---- translate ----
    auto* translate = app.add_subcommand("translate", "translate between systems");
    translate->require_subcommand(1);
    auto* t_e2d = translate->add_subcommand("erpls-to-dom",
                                            "ER-PLS proof to linear dominance");
    std::string trans_file;
    long long seed = 0;
    t_e2d->add_option("file", trans_file, "ER-PLS proof file")->required();
    t_e2d->add_option("-o,--output", opt.out_path, "output file (default stdout)");
    t_e2d->add_option("--seed", seed, "fresh-variable counter base (0 = automatic)");

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate ordering gadgets");
    gen->require_subcommand(1);
    auto* gen_lex_cmd = gen->add_subcommand("lex", "lexicographic comparison gadget");
    int gen_bits = 0;
    bool gen_strict = false, gen_pb = false, gen_lsb = false;
    gen_lex_cmd->add_option("--bits", gen_bits, "arity")->required();
    gen_lex_cmd->add_flag("--strict", gen_strict, "strict comparison");
    gen_lex_cmd->add_flag("--pb", gen_pb, "emit the single PB constraint instead");
    gen_lex_cmd->add_flag("--lsb-first", gen_lsb,
                          "compare with the least significant position first");
    gen_lex_cmd->add_option("-o,--output", opt.out_path, "output file");

    auto* gen_leader = gen->add_subcommand("lex-leader", "lex-leader CNF for a symmetry");
    std::string leader_cnf, leader_omega, leader_order;
    gen_leader->add_option("--cnf", leader_cnf, "input CNF")->required();
    gen_leader->add_option("--omega", leader_omega, "symmetry substitution")->required();
    gen_leader->add_option("--order", leader_order,
                           "variable order, most significant first (default: ascending)");
    gen_leader->add_option("-o,--output", opt.out_path, "output file");

    // ---- break-symmetry ----
    auto* brk = app.add_subcommand("break-symmetry",
                                   "augment a CNF with a lex-leader constraint");
    std::string brk_cnf, brk_omega, brk_order;
    brk->add_option("--cnf", brk_cnf, "input CNF")->required();
    brk->add_option("--omega", brk_omega, "symmetry substitution")->required();
    brk->add_option("--order", brk_order, "variable order (default: ascending)");
    brk->add_option("-o,--output", opt.out_path, "output file");

    // ---- check-q ----
    auto* checkq = app.add_subcommand("check-q", "check a symmetry-breaking refutation");
    std::string q_file;
    long long q_limit = -1;
    checkq->add_option("file", q_file, "refutation file")->required();
    checkq->add_option("--max-symmetries", q_limit, "limit on the symmetry count");

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "brute-force semantic checks");
    oracle->require_subcommand(1);
    std::string o_file, o_file2, o_order;
    bool o_opb = false;
    auto* o_sat = oracle->add_subcommand("sat", "satisfiability by enumeration");
    o_sat->add_option("file", o_file, "CNF (or OPB with --opb)")->required();
    o_sat->add_flag("--opb", o_opb, "input is a PB formula");
    auto* o_equisat = oracle->add_subcommand("equisat", "equisatisfiability of two CNFs");
    o_equisat->add_option("a", o_file, "first CNF")->required();
    o_equisat->add_option("b", o_file2, "second CNF")->required();
    auto* o_lexmin = oracle->add_subcommand("lexmin", "lexicographically least model");
    o_lexmin->add_option("file", o_file, "CNF")->required();
    o_lexmin->add_option("--order", o_order, "variable order, most significant first");
    auto* o_valid = oracle->add_subcommand("valid", "configuration validity");
    o_valid->add_option("file", o_file, "configuration file")->required();

    // ---- asymmetrize ----
    auto* asym = app.add_subcommand("asymmetrize", "kill the symmetries of a CNF");
    std::string asym_file;
    asym->add_option("file", asym_file, "input CNF")->required();
    asym->add_option("-o,--output", opt.out_path, "output file");

    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();
    try {
        if (check->parsed()) {
            Verdict v;
            if (check_er_cmd->parsed()) {
                ErDerivation d = parse_er(slurp(check_file));
                v = from_check(check_er(d), d.steps.size(), t0);
            } else if (check_cp_cmd->parsed()) {
                CpDerivation d = parse_cp(slurp(check_file));
                v = from_check(check_cp(d), d.steps.size(), t0);
                v.stats["max_coeff_bits"] = max_coeff_bits(d.hypotheses);
            } else if (check_erpls_cmd->parsed()) {
                ErplsProof p = parse_erpls(slurp(check_file));
                v = from_check(check_erpls(p), p.steps.size(), t0);
            } else {
                DomProof p = parse_dom(slurp(check_file));
                if (dom_mode == "full")
                    p.mode = DomMode::Full;
                else if (dom_mode == "linear")
                    p.mode = DomMode::Linear;
                else if (dom_mode == "weak")
                    p.mode = DomMode::WeakLinear;
                v = from_check(check_dom(p), p.steps.size(), t0);
                v.stats["max_coeff_bits"] = max_coeff_bits(p.input);
            }
            return finish(v, opt);
        }

        if (t_e2d->parsed()) {
            ErplsProof p = parse_erpls(slurp(trans_file));
            std::optional<Var> s;
            if (seed > 0)
                s = static_cast<Var>(seed);
            DomProof out = erpls_to_lindom(p, s);
            emit(print_dom(out), opt.out_path);
            Verdict v = from_check(CheckResult::accept(), out.steps.size(), t0);
            if (opt.json_output)
                std::cerr << v.to_json().dump() << "\n";
            return 0;
        }

        if (gen_lex_cmd->parsed()) {
            if (gen_pb) {
                LexGadget g = gen_lex(gen_bits, gen_strict, !gen_lsb);
                PbConstraint c = gen_strict
                                     ? lex_constraint_strict(g.lhs, g.rhs, !gen_lsb)
                                     : lex_constraint_strict(g.rhs, g.lhs, !gen_lsb)
                                           .negated();
                emit(print_opb(PbFormula{c}), opt.out_path);
            } else {
                LexGadget g = gen_lex(gen_bits, gen_strict, !gen_lsb);
                emit(print_cnf(g.cnf()), opt.out_path);
            }
            return 0;
        }

        if (gen_leader->parsed() || brk->parsed()) {
            bool augment = brk->parsed();
            Cnf gamma = parse_cnf(slurp(augment ? brk_cnf : leader_cnf));
            Substitution omega = parse_subst(slurp(augment ? brk_omega : leader_omega));
            std::string order_arg = augment ? brk_order : leader_order;
            VarOrder order =
                order_arg.empty() ? default_order(gamma) : parse_order_arg(order_arg);
            Cnf leader = gen_lex_leader(gamma, omega, order);
            emit(print_cnf(augment ? gamma.union_with(leader) : leader), opt.out_path);
            return 0;
        }

        if (checkq->parsed()) {
            QRefutation p = parse_q(slurp(q_file));
            std::optional<size_t> lim;
            if (q_limit >= 0)
                lim = static_cast<size_t>(q_limit);
            Verdict v = from_check(check_q(p, lim), p.refutation.steps.size(), t0);
            return finish(v, opt);
        }

        if (oracle->parsed()) {
            OracleLimits lim{opt.max_vars};
            Verdict v;
            if (o_sat->parsed()) {
                std::optional<Assignment> model;
                if (o_opb) {
                    PbFormula f = parse_opb(slurp(o_file));
                    model = brute_sat(f, default_order(f), lim);
                } else {
                    Cnf g = parse_cnf(slurp(o_file));
                    model = brute_sat(g, default_order(g), lim);
                }
                if (model) {
                    v.stats["model"] = model->to_string();
                } else {
                    v.status = "reject";
                    v.reason = "unsatisfiable";
                }
            } else if (o_equisat->parsed()) {
                Cnf a = parse_cnf(slurp(o_file)), b = parse_cnf(slurp(o_file2));
                if (!equisatisfiable(a, b, lim)) {
                    v.status = "reject";
                    v.reason = "not equisatisfiable";
                }
            } else if (o_lexmin->parsed()) {
                Cnf g = parse_cnf(slurp(o_file));
                VarOrder order =
                    o_order.empty() ? default_order(g) : parse_order_arg(o_order);
                auto model = lex_min_model(g, order, lim);
                if (model) {
                    v.stats["model"] = model->to_string();
                } else {
                    v.status = "reject";
                    v.reason = "unsatisfiable";
                }
            } else {
                Configuration cfg = parse_config(slurp(o_file));
                if (!config_valid(cfg, lim)) {
                    v.status = "reject";
                    v.reason = "configuration is not valid";
                }
            }
            return finish(v, opt);
        }

        if (asym->parsed()) {
            Cnf g = parse_cnf(slurp(asym_file));
            emit(print_cnf(asymmetrize(g)), opt.out_path);
            return 0;
        }
    } catch (const ParseError& e) {
        Verdict v;
        v.status = "parse-error";
        v.reason = e.what();
        return finish(v, opt);
    } catch (const std::exception& e) {
        Verdict v;
        v.status = "parse-error";
        v.reason = e.what();
        return finish(v, opt);
    }
    return 2;
}
