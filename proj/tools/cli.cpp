// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "witt/conditions.hpp"
#include "witt/error.hpp"
#include "witt/fixtures.hpp"
#include "witt/frobenius_kernel.hpp"
#include "witt/json_io.hpp"
#include "witt/preimage.hpp"

namespace witt {

namespace {

const char* kGrammar = R"(Ring specs:
  Z | Z/<m> | GF(<q>) | GF(<q>)[T]/(<poly>) | Z[T]/(<poly>) | Zeta(<p>,<n>) | ZetaTower(<p>)
  also GF(<q>)[T] and Z[T] for the polynomial rings themselves.
Polynomial literals like T^2+T+1. Element literals: decimal integers; polynomials;
cyclotomic [c0,c1,...]@<level>.
Witt vectors are given as JSON: {"p": P, "ring": SPEC, "components": [LITERAL, ...]}
or as a bare array of element literals.
Exit codes: 0 ok, 1 usage, 2 capability gap, 3 verification failure, 4 internal error.)";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// JSON given inline, or read from a file when prefixed with '@'.
Json load_json(const std::string& text) {
    return parse_json(!text.empty() && text[0] == '@' ? read_file(text.substr(1)) : text);
}

WittVector load_witt(const std::string& text, const RingPtr& ring, unsigned p) {
    Json j = load_json(text);
    if (j.is_array()) j = Json{{"components", j}};
    return witt_from_json(j, ring, p);
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json ghost_json(const WittVector& x) {
    Json g = Json::array();
    for (const auto& c : ghost(x).components) g.push_back(c.to_string());
    return g;
}

struct Options {
    std::string ring = "Z";
    unsigned p = 0;
    unsigned level = 0;
    std::string which = "sum";
    std::string format = "text";
    std::string input;
    std::string op;
    std::string x, y, r;
    unsigned length = 0;
    unsigned n = 0;
    bool json = false;
    std::string target;
    bool trace = false;
    std::uint64_t budget = kDefaultSearchBudget;
    unsigned depth = 3;
    std::string fixture;
    bool list = false;
};

bool want_json(const Options& o) { return o.json || o.format == "json"; }

int cmd_poly(const Options& o, std::ostream& out) {
    PolyRecord rec;
    if (!o.input.empty()) {
        rec = poly_from_json(load_json("@" + o.input));
    } else {
        if (o.p == 0) throw UsageError("poly needs --p or --input");
        rec = {o.p, parse_poly_kind(o.which), o.level, universal_poly(o.p, parse_poly_kind(o.which), o.level)};
    }
    if (want_json(o))
        emit(out, poly_to_json(rec));
    else
        out << to_string(rec.kind) << " p=" << rec.p << " level=" << rec.level << ": " << rec.poly.to_string() << '\n';
    return 0;
}

int cmd_witt(const Options& o, std::ostream& out) {
    WittVector x;
    RingPtr ring;
    unsigned p = o.p;
    if (!o.input.empty()) {
        x = witt_from_json(load_json("@" + o.input));
        ring = x.ring();
        p = x.prime();
    } else {
        ring = Ring::parse(o.ring);
        if (p == 0) throw UsageError("witt needs --p");
        if (!o.x.empty()) x = load_witt(o.x, ring, p);
    }
    const std::string op = o.op.empty() ? "show" : o.op;
    auto need_x = [&] {
        if (x.length() == 0) throw UsageError("--op " + op + " needs --x or --input");
    };
    Json result;
    if (op == "teichmuller") {
        if (o.r.empty() || o.length == 0) throw UsageError("teichmuller needs --r and --length");
        result = witt_to_json(teichmuller(p, ring->parse_element(o.r), o.length));
    } else if (op == "ghost") {
        need_x();
        result = Json{{"p", p}, {"ring", ring->spec()}, {"ghost", ghost_json(x)}};
    } else if (op == "show" || op == "neg" || op == "frobenius" || op == "verschiebung") {
        need_x();
        WittVector v = op == "neg"         ? witt_neg(x)
                       : op == "frobenius" ? frobenius(x)
                       : op == "verschiebung" ? verschiebung(x)
                                              : x;
        result = witt_to_json(v);
    } else if (op == "add" || op == "sub" || op == "mul") {
        need_x();
        if (o.y.empty()) throw UsageError("--op " + op + " needs --y");
        WittVector y = load_witt(o.y, ring, p);
        result = witt_to_json(op == "add" ? witt_add(x, y) : op == "sub" ? witt_sub(x, y) : witt_mul(x, y));
    } else {
        throw UsageError("unknown --op '" + op + "'");
    }
    if (want_json(o)) {
        emit(out, result);
    } else if (result.contains("ghost")) {
        out << "ghost:";
        for (const auto& g : result["ghost"]) out << ' ' << g.get<std::string>();
        out << '\n';
    } else {
        out << witt_from_json(result).to_string() << '\n';
    }
    return 0;
}

int cmd_kernel(const Options& o, std::ostream& out) {
    auto ring = Ring::parse(o.ring);
    RingElement r = ring->parse_element(o.r);
    std::optional<IdealChainModel> model;
    if (IdealChainModel::available(ring, o.p, o.budget)) model = IdealChainModel::build(ring, o.p, o.n, o.budget);
    WittVector z = kernel_element(ring, o.p, r, o.n, model ? &*model : nullptr);
    if (!frobenius(z).is_zero()) throw InternalError("kernel element " + z.to_string() + " has F(z) != 0");
    if (want_json(o)) {
        Json j = witt_to_json(z);
        j["ghost"] = ghost_json(z);
        emit(out, j);
    } else {
        out << "z = " << z.to_string() << "\nghost:";
        for (const auto& g : ghost_json(z)) out << ' ' << g.get<std::string>();
        out << '\n';
    }
    return 0;
}

int cmd_preimage(const Options& o, std::ostream& out) {
    auto ring = Ring::parse(o.ring);
    WittVector y = load_witt(o.target, ring, o.p);
    SolverOracles oracles = SolverOracles::for_ring(ring, o.p, o.budget);
    PreimageResult res = solve_frobenius(y, oracles);
    if (want_json(o)) {
        Json j{{"target", witt_to_json(y)}, {"solution", witt_to_json(res.solution)}};
        if (o.trace) j["trace"] = res.trace;
        emit(out, j);
    } else {
        if (o.trace)
            for (const auto& line : res.trace) out << "  " << line << '\n';
        out << "F" << res.solution.to_string() << " = " << y.to_string() << '\n';
    }
    return 0;
}

int cmd_conditions(const Options& o, std::ostream& out) {
    auto ring = Ring::parse(o.ring);
    CheckBudget budget;
    budget.residues = o.budget;
    budget.witness_depth = o.depth;
    ConditionReport rep = condition_matrix(ring, o.p, budget, asserted_statuses(ring, o.p));
    if (want_json(o))
        emit(out, rep.to_json());
    else
        out << rep.to_text();
    return rep.contradictions.empty() ? 0 : 3;
}

int cmd_verify(const Options& o, std::ostream& out) {
    if (o.list) {
        for (const auto& f : fixture_registry()) out << f.name << "  " << f.ring << "  " << f.claim << '\n';
        return 0;
    }
    std::vector<FixtureResult> results = run_fixtures(o.fixture);
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    if (want_json(o)) {
        Json arr = Json::array();
        for (const auto& r : results) arr.push_back(r.to_json());
        emit(out, Json{{"passed", all}, {"fixtures", arr}});
    } else {
        for (const auto& r : results) {
            out << (r.passed ? "PASS " : "FAIL ") << r.name << '\n';
            if (!r.passed)
                for (const auto& d : r.details) out << "    " << d << '\n';
        }
        out << (all ? "all fixtures passed" : "some fixtures failed") << '\n';
    }
    return all ? 0 : 3;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact truncated p-typical Witt vectors", "wittvec"};
    app.footer(kGrammar);
    app.require_subcommand(1);
    Options o;
    const std::vector<std::string> kinds{"sum", "product", "neg", "frobenius", "f"};
    const std::vector<std::string> formats{"text", "json"};

    auto* poly = app.add_subcommand("poly", "Print a universal Witt polynomial");
    poly->add_option("--p", o.p, "Prime");
    poly->add_option("--level", o.level, "Component index");
    poly->add_option("--which", o.which, "sum | product | neg | frobenius | f")->check(CLI::IsMember(kinds));
    poly->add_option("--format", o.format, "text | json")->check(CLI::IsMember(formats));
    poly->add_option("--input", o.input, "Read a polynomial JSON file and print it back");

    auto* witt = app.add_subcommand("witt", "Witt vector arithmetic");
    witt->add_option("--ring", o.ring, "Ring spec");
    witt->add_option("--p", o.p, "Prime");
    witt->add_option("--op", o.op, "show | add | sub | mul | neg | frobenius | verschiebung | ghost | teichmuller");
    witt->add_option("--x", o.x, "First operand (JSON, or @FILE)");
    witt->add_option("--y", o.y, "Second operand (JSON, or @FILE)");
    witt->add_option("--r", o.r, "Element for teichmuller");
    witt->add_option("--length", o.length, "Length for teichmuller");
    witt->add_option("--input", o.input, "Witt vector JSON file used as --x, ring and p included");
    witt->add_option("--format", o.format, "text | json")->check(CLI::IsMember(formats));

    auto* kernel = app.add_subcommand("kernel", "Build z with z_0 = r and F(z) = 0");
    kernel->add_option("--ring", o.ring, "Ring spec")->required();
    kernel->add_option("--p", o.p, "Prime")->required();
    kernel->add_option("--r", o.r, "First component")->required();
    kernel->add_option("--n", o.n, "Truncation level; z has n+1 components")->required();
    kernel->add_option("--budget", o.budget, "Search budget for finite rings");
    kernel->add_flag("--emit-json,--json", o.json, "Print JSON");
    kernel->add_option("--emit,--format", o.format, "text | json")->check(CLI::IsMember(formats));

    auto* preimage = app.add_subcommand("preimage", "Solve F(x) = target");
    preimage->add_option("--ring", o.ring, "Ring spec")->required();
    preimage->add_option("--p", o.p, "Prime")->required();
    preimage->add_option("--target", o.target, "Target Witt vector (JSON, or @FILE)")->required();
    preimage->add_flag("--trace", o.trace, "Show the construction steps");
    preimage->add_option("--budget", o.budget, "Search budget for finite quotients");
    preimage->add_flag("--json", o.json, "Print JSON");
    preimage->add_option("--format", o.format, "text | json")->check(CLI::IsMember(formats));

    auto* conditions = app.add_subcommand("conditions", "Decide the surjectivity conditions");
    conditions->add_option("--ring", o.ring, "Ring spec")->required();
    conditions->add_option("--p", o.p, "Prime")->required();
    conditions->add_option("--budget", o.budget, "Maximum residues or pairs to enumerate");
    conditions->add_option("--depth", o.depth, "Truncation length for witness checks");
    conditions->add_flag("--json", o.json, "Print JSON");
    conditions->add_option("--format", o.format, "text | json")->check(CLI::IsMember(formats));

    auto* verify = app.add_subcommand("verify", "Run the regression fixtures");
    verify->add_option("--fixture", o.fixture, "Run only this fixture");
    verify->add_flag("--list", o.list, "List fixtures");
    verify->add_flag("--json", o.json, "Print JSON");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (poly->parsed()) return cmd_poly(o, out);
        if (witt->parsed()) return cmd_witt(o, out);
        if (kernel->parsed()) return cmd_kernel(o, out);
        if (preimage->parsed()) return cmd_preimage(o, out);
        if (conditions->parsed()) return cmd_conditions(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 4;
    }
}

}  // namespace witt
