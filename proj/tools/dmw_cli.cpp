// dmw: construct, verify and compute with the Drinfeld modules of the
// library. Output is deterministic for a given configuration and seed.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "dmw/analytic.hpp"
#include "dmw/checks.hpp"
#include "dmw/radical.hpp"
#include "dmw/symbolic.hpp"
#include "dmw/weil.hpp"

using namespace dmw;
using ffield::Word;
using json = nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int q = 2;
    int m = 2;
    std::optional<std::string> theta;
    std::optional<std::string> J;
    std::string ideal = "x";
    std::optional<int> trunc;
    int d = 3;
    std::string suite = "all";
    std::string format = "json";
    uint64_t seed = 1;
    bool sigma = false;
    bool tamper = false;
    size_t compat_pairs = 0;
    size_t table_limit = 256;
};

// F_{q^m} as packed in the finite modules, with tau the q-th power
ffield::FieldPtr afield_base(const RunConfig& c) {
    if (c.m < 2 || c.m % 2) throw ConfigError("--ext must be even and >= 2 (the field contains zeta)");
    const auto base = checks::constant_field(c.q);
    const int k = base->frob_deg();
    return ffield::make_field(base->p(), k * c.m, {.frob_deg = k, .max_size = ~Word(0)});
}

// "k" picks the k-th theta with pi(theta) != 0 in packed order; "@w" is the
// packed element w itself.
Word resolve_theta(const RunConfig& c) {
    const auto B = afield_base(c);
    const std::string s = c.theta.value_or("1");
    try {
        if (!s.empty() && s[0] == '@') {
            const Word w = std::stoull(s.substr(1));
            if (w >= B->size()) throw ConfigError("theta outside F_{q^m}");
            return w;
        }
        const auto z = funcfield::zeta_data(B);
        Word k = std::stoull(s);
        for (Word w = 0; w < B->size(); ++w) {
            if (w == z.zeta || w == z.zetaq) continue;
            if (k-- == 0) return w;
        }
    } catch (const std::invalid_argument&) {
        throw ConfigError("--theta: expected an index or @packed");
    }
    throw ConfigError("--theta index beyond the valid thetas of F_{q^m}");
}

Word parse_word(const std::string& s, const char* flag) {
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw ConfigError(std::string(flag) + ": expected a packed field element");
    }
}

json report_json(const drinfeld::Report& r) {
    return {{"checks", r.to_json()}, {"failures", r.failures()}, {"ok", r.ok()}};
}

json emit_module(const RunConfig& c) {
    using funcfield::SFrac;
    using Rad = radical::Radical<SFrac>;
    using SymR = symbolic::Sym<Rad>;
    if (c.J && *c.J == "symbolic") {
        const auto z = funcfield::zeta_data(checks::constant_field(c.q));
        const auto base = drinfeld::generic_sfrac(z);
        const auto rctx = radical::radical_extend(-base.Tsq(), c.q + 1);
        auto emb = [rctx](const SFrac& a) { return SymR::constant(Rad::embed(rctx, a)); };
        const auto F = drinfeld::lift<SymR>(base, emb);
        const SymR nu = SymR::constant(Rad::root(rctx));
        const auto m = drinfeld::rank2_J(F, SymR::var(Rad::root(rctx)), nu);
        return {{"module", drinfeld::jsonify(m)},
                {"wedge", drinfeld::jsonify(drinfeld::wedge(m))},
                {"J", "symbolic"},
                {"nu", "root of X^(q+1) + T^(sigma+q)"}};
    }
    if (c.J) {
        const auto M = weil::finite_rank2(c.q, c.m / 2, resolve_theta(c), parse_word(*c.J, "--J"));
        return {{"module", drinfeld::jsonify(M.phi)}, {"wedge", drinfeld::jsonify(M.psi)}, {"spec", M.spec}};
    }
    if (c.theta) {
        const auto z = funcfield::zeta_data(afield_base(c));
        const auto F = drinfeld::finite_afield(z, resolve_theta(c));
        const auto m = c.sigma ? drinfeld::standard_sigma(F) : drinfeld::standard(F);
        return {{"module", drinfeld::jsonify(m)}};
    }
    const auto F = drinfeld::generic_sfrac(funcfield::zeta_data(checks::constant_field(c.q)));
    const auto m = c.sigma ? drinfeld::standard_sigma(F) : drinfeld::standard(F);
    return {{"module", drinfeld::jsonify(m)}};
}

domain::IdealSpec parse_ideal(const domain::CtxPtr& ctx, const std::string& s) {
    if (s == "x") return domain::IdealSpec::make_principal({{1}, {0}, 0});
    if (s == "y") return domain::IdealSpec::make_principal({{0}, {1}, 0});
    try {
        return domain::IdealSpec::make_principal(domain::parse_principal(ctx, s));
    } catch (const std::exception& e) {
        throw ConfigError(std::string("--ideal: ") + e.what());
    }
}

std::pair<json, bool> pairing(const RunConfig& c) {
    const Word J = c.J ? parse_word(*c.J, "--J") : 1;
    const auto M = weil::finite_rank2(c.q, c.m / 2, resolve_theta(c), J);
    const auto I = parse_ideal(M.ctx, c.ideal);
    weil::SuiteOptions opt;
    opt.compat_pairs = c.compat_pairs;
    opt.table_limit = c.table_limit;
    opt.seed = c.seed;
    json d;
    weil::property_suite(M.phi, M.ctx, I, opt, &d);
    bool compatible = d["properties"]["compatible"].get<bool>();
    json out;
    const auto P = weil::principal_of(M.ctx, I);
    // I_inf^2 = (x): the second compatibility check
    if (P.alpha == std::vector<Word>{1} && P.beta == std::vector<Word>{0} && P.alpha_d == 0) {
        json di;
        const bool ok = weil::compat_iinf(M.phi, M.ctx, opt, &di).ok();
        compatible = compatible && ok;
        out["compatibility_Iinf"] = di;
    }
    const auto& p = d["properties"];
    out["ideal"] = domain::jsonify(M.ctx->z.field, P);
    out["module"] = M.spec;
    out["extension_degree"] = d["extension_degree"];
    out["kernel_size"] = d["kernel_size"];
    out["kernel_psi_size"] = d["kernel_psi_size"];
    out["seed"] = c.seed;
    if (d.contains("pairing_table")) out["pairing_table"] = d["pairing_table"];
    out["properties"] = {{"multilinear", p["multilinear"]}, {"alternating", p["alternating"]},
                         {"surjective", p["surjective"]},   {"galois", p["galois"]},
                         {"compatible", compatible},        {"membership", p["membership"]}};
    bool ok = compatible;
    for (const auto& [k, v] : out["properties"].items()) ok = ok && v.get<bool>();
    return {out, ok};
}

void print(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [k, v] : j.items()) {
        if (k == "checks" && v.is_object()) {
            for (const auto& [n, ok] : v.items()) std::cout << (ok.get<bool>() ? "PASS " : "FAIL ") << n << "\n";
        } else {
            std::cout << k << ": " << v.dump() << "\n";
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Drinfeld modules over the class-number-two ring: construction, verification, pairings, periods"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig c;
    std::string theta, J;
    int trunc = 0;
    app.add_option("--q", c.q, "size of the constant field F_q")->check(CLI::Range(2, 1 << 16));
    app.add_option("--ext", c.m, "degree m of the finite A-field over F_q (even)");
    auto* o_theta = app.add_option("--theta", theta, "index into the valid thetas (default 1), or @packed");
    auto* o_J = app.add_option("--J", J, "packed element of F_{q^m}, or \"symbolic\"");
    app.add_option("--ideal", c.ideal, "x, y, or \"alpha=..;beta=..;alphad=..\"");
    auto* o_trunc = app.add_option("--trunc", trunc, "truncation N");
    app.add_option("--d", c.d, "period level d")->check(CLI::PositiveNumber);
    app.add_option("--suite", c.suite, "rank1, rank2, analytic, weil or all");
    app.add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", c.seed, "seed for sampled checks");
    app.add_flag("--sigma", c.sigma, "emit the conjugate standard model");
    app.add_flag("--tamper", c.tamper, "debug: perturb one coefficient before checking");
    app.add_option("--compat-pairs", c.compat_pairs, "pairs for the compatibility check (0 = all)");
    app.add_option("--table-limit", c.table_limit, "bound on the printed pairing table");

    auto* emit = app.add_subcommand("emit-module", "print phi_x, phi_y and the wedge");
    auto* verify = app.add_subcommand("verify", "run an identity suite");
    auto* pair = app.add_subcommand("pairing", "Weil pairing property suite over a finite A-field");
    auto* period = app.add_subcommand("period", "Laurent approximations of xi^(q-1)");
    auto* ex = app.add_subcommand("example-q2", "the worked example at q = 2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (o_theta->count()) c.theta = theta;
    if (o_J->count()) c.J = J;
    if (o_trunc->count()) c.trunc = trunc;

    try {
        json out;
        bool ok = true;
        if (emit->parsed()) {
            out = emit_module(c);
        } else if (verify->parsed()) {
            checks::SuiteConfig sc{c.q, c.trunc.value_or(c.q == 2 ? 5 : 4), c.seed, c.tamper};
            drinfeld::Report rep;
            try {
                rep = checks::run_suite(c.suite, sc);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            out = report_json(rep);
            out["suite"] = c.suite;
            out["q"] = c.q;
            out["seed"] = c.seed;
            out["N"] = sc.N;
            ok = rep.ok();
        } else if (pair->parsed()) {
            std::tie(out, ok) = pairing(c);
        } else if (period->parsed()) {
            const int N = c.trunc.value_or(40);
            if (N < 1) throw ConfigError("--trunc must be positive");
            analytic::Tower tw(checks::constant_field(c.q));
            const auto xp = analytic::xi_pow(tw, c.d, N);
            out = analytic::jsonify(xp);
            ok = xp.valuation == -1;
        } else if (ex->parsed()) {
            json d;
            const auto rep = drinfeld::example_q2(&d);
            out = report_json(rep);
            out["detail"] = d;
            ok = rep.ok();
        }
        print(out, c.format);
        return ok ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // invalid parameters surface as library errors (pi(theta) = 0, bad q, ...)
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
}
