#include "dmw/checks.hpp"

#include <random>
#include <stdexcept>

#include "dmw/analytic.hpp"
#include "dmw/radical.hpp"
#include "dmw/symbolic.hpp"
#include "dmw/weil.hpp"

namespace dmw::checks {

using domain::DomainElem;
using domain::IdealSpec;
using domain::Principal;
using drinfeld::DrinfeldModule;
using ffield::Word;
using funcfield::RatFunc;
using funcfield::SFrac;
using skew::SkewPoly;
using Rad = radical::Radical<SFrac>;
using SymR = symbolic::Sym<Rad>;

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// F(nu), nu^(q+1) = -T^(sigma+q), with a symbolic parameter on top
struct SymSetup {
    drinfeld::AField<SymR> F;
    SymR nu;
};

SymSetup sym_setup(int q) {
    const auto z = funcfield::zeta_data(constant_field(q));
    const auto base = drinfeld::generic_sfrac(z);
    const auto ctx = radical::radical_extend(-base.Tsq(), q + 1);
    auto emb = [ctx](const SFrac& a) { return SymR::constant(Rad::embed(ctx, a)); };
    return {drinfeld::lift<SymR>(base, emb), SymR::constant(Rad::root(ctx))};
}

template <class R>
void swap_tau12(DrinfeldModule<R>& m) {
    auto c = m.phi_x.coeffs();
    std::swap(c[1], c[2]);
    m.phi_x = SkewPoly<R>(c[0], c);
}

std::vector<Principal> random_principals(int q, unsigned d, bool need_a0, bool need_b0, size_t n,
                                         std::mt19937_64& rng) {
    std::vector<Principal> out;
    while (out.size() < n) {
        Principal p;
        for (unsigned j = 0; j < d; ++j) {
            p.alpha.push_back(rng() % static_cast<unsigned>(q));
            p.beta.push_back(rng() % static_cast<unsigned>(q));
        }
        p.alpha_d = rng() % static_cast<unsigned>(q);
        if (need_a0 && p.alpha[0] == 0) continue;
        if (need_b0 && p.beta[0] == 0) continue;
        if (p.alpha[0] == 0 && p.beta[0] == 0) continue;
        out.push_back(p);
    }
    return out;
}

bool is_identity(const ffield::Matrix& M) {
    for (size_t i = 0; i < M.size(); ++i)
        for (size_t j = 0; j < M[i].size(); ++j)
            if (M[i][j] != (i == j ? 1u : 0u)) return false;
    return true;
}

}  // namespace

ffield::FieldPtr constant_field(int q) {
    if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
    const auto f = ffield::prime_factors(static_cast<Word>(q));
    if (f.size() != 1) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    const auto p = static_cast<uint32_t>(f.front());
    int k = 0;
    for (long long v = q; v > 1; v /= p) ++k;
    return ffield::make_field(p, 2 * k, {.frob_deg = k});
}

void merge(Report& into, const std::string& prefix, const Report& r) {
    for (const auto& [n, v] : r.items) into.add(prefix + "." + n, v);
}

Report standard_models(int q, bool tamper) {
    const auto z = funcfield::zeta_data(constant_field(q));
    const auto F = drinfeld::generic_sfrac(z);
    auto P = drinfeld::standard(F);
    const auto Ps = drinfeld::standard_sigma(F);
    if (tamper) swap_tau12(P);
    Report rep;
    merge(rep, "standard", drinfeld::validate(P));
    merge(rep, "standard_sigma", drinfeld::validate(Ps));
    rep.add("standard.zeta_type", drinfeld::module_type(P) == drinfeld::ModuleType::Zeta);
    rep.add("standard_sigma.zetaq_type", drinfeld::module_type(Ps) == drinfeld::ModuleType::ZetaQ);
    const SFrac Tsm1 = F.Ts * F.T.inverse();
    const SFrac mid = F.Ts + power(F.T, q - 1) * F.Ts;
    rep.add("standard.x_display", P.phi_x == drinfeld::sk(F.x, {F.x, mid, Tsm1}));
    rep.add("standard.y_minus_zeta_x", P.phi_y - P.phi_x.lmul(F.zeta()) == SkewPoly<SFrac>::linear(F.T));
    return rep;
}

Report hayes_coefficients(int q) {
    const auto z = funcfield::zeta_data(constant_field(q));
    const auto F = drinfeld::generic_ratfunc(z);
    const auto m = drinfeld::psi_family(F, z.zeta, F.c(1));
    const RatFunc t = F.t, tq = t.frob();
    Report rep;
    rep.add("T_sigma_minus_1", F.Ts * F.T.inverse() == (t - F.zetaq()) * (t - F.zeta()).inverse());
    rep.add("T_sigma_plus_T_q_minus_1_sigma",
            F.Ts + power(F.T, q - 1) * F.Ts == (tq + t - F.c(z.tr)) * ((t - F.zeta()) * (tq - F.zeta())).inverse());
    rep.add("psi_x_tau2", m.phi_x.coef(2) == F.Ts * F.T.inverse());
    rep.add("psi_x_tau1", m.phi_x.coef(1) == F.Ts + power(F.T, q - 1) * F.Ts);
    return rep;
}

Report annihilators(int q) {
    const auto ctx = domain::make_domain(constant_field(q));
    const auto F = drinfeld::generic_sfrac(ctx->z);
    const auto P = drinfeld::standard(F);
    Report rep;
    rep.add("right_gcd_x_y", skew::right_gcd(P.phi_x, P.phi_y) == SkewPoly<SFrac>::linear(F.T));
    rep.add("annihilator_Iinf", drinfeld::annihilator(P, ctx, IdealSpec::iinf()) == SkewPoly<SFrac>::linear(F.T));

    // Hayes module psi^u, u^(q+1) = T^(sigma+q)
    const auto rctx = radical::radical_extend(F.Tsq(), q + 1);
    auto emb = [rctx](const SFrac& a) { return Rad::embed(rctx, a); };
    const auto G = drinfeld::lift<Rad>(F, emb);
    const Rad u = Rad::root(rctx);
    const auto H = drinfeld::hayes(G, u, ctx->z.zeta);
    rep.add("hayes_validate", drinfeld::validate(H).ok());
    const auto i0 = drinfeld::annihilator(H, ctx, IdealSpec::i0());
    rep.add("hayes_I0", i0 == drinfeld::sk(u, {-u - u * (G.zetaq() * G.T).inverse(), u.one()}));
    rep.add("hayes_Iinf", drinfeld::annihilator(H, ctx, IdealSpec::iinf()) == drinfeld::sk(u, {-u, u.one()}));
    return rep;
}

Report standard_isogeny(int q) {
    const auto z = funcfield::zeta_data(constant_field(q));
    const auto F = drinfeld::generic_sfrac(z);
    const auto rctx = radical::radical_extend(F.Ts * F.T.inverse(), q - 1);
    auto emb = [rctx](const SFrac& a) { return Rad::embed(rctx, a); };
    const auto G = drinfeld::lift<Rad>(F, emb);
    const auto lam = drinfeld::standard_isogeny(G, Rad::root(rctx));
    const auto P = drinfeld::standard(G), Ps = drinfeld::standard_sigma(G);
    Report rep;
    rep.add("x", lam * P.phi_x == Ps.phi_x * lam);
    rep.add("y", lam * P.phi_y == Ps.phi_y * lam);
    return rep;
}

Report l_closed_form(int q, int jmax) {
    analytic::Tower tw(constant_field(q));
    Report rep;
    for (int j = 0; j <= jmax; ++j) rep.add("L" + std::to_string(j), tw.L(j) == tw.closed_form_L(j));
    return rep;
}

Report exp_log(int q, int N, bool tamper) {
    const auto fld = constant_field(q);
    analytic::Tower tw(fld);
    const auto ctx = domain::make_domain(fld);
    const auto& F = tw.afield();
    const auto Psi = drinfeld::standard(F);
    using analytic::LinSeries;
    using analytic::truncate;
    LinSeries ex = tw.exp_trunc(N);
    const LinSeries lg = tw.log_trunc(N);
    if (tamper) {
        auto c = ex.coeffs();
        c[1] = c[1] + F.c(1);
        ex = LinSeries(c[0], c);
    }
    Report rep;
    rep.add("log_exp", truncate(lg * ex, N) == LinSeries::constant(F.c(1)));
    rep.add("exp_log", truncate(ex * lg, N) == LinSeries::constant(F.c(1)));
    rep.add("functional_x", truncate(drinfeld::phi_of(Psi, DomainElem::x(ctx)) * ex, N) ==
                                truncate(ex * LinSeries::constant(F.x), N));
    rep.add("functional_y", truncate(drinfeld::phi_of(Psi, DomainElem::y(ctx)) * ex, N) ==
                                truncate(ex * LinSeries::constant(F.y), N));
    bool bin = true;
    for (const auto& a : domain::rr_basis(ctx, 2)) {
        const auto pa = drinfeld::phi_of(Psi, a);
        for (int j = 0; j <= 4; ++j) bin = bin && tw.binom(a.to_ratfunc(), j) == pa.coef(j);
    }
    rep.add("binomials", bin);
    return rep;
}

Report e_k_brute(int q, int k) {
    const auto fld = constant_field(q);
    analytic::Tower tw(fld);
    const auto E = tw.E(k);
    const auto brute = analytic::brute_E(domain::make_domain(fld), k);
    bool ok = static_cast<long long>(brute.size()) == ipow(q, 2 * k + 1) + 1;
    size_t j = 0;
    for (size_t e = 0; ok && e < brute.size(); ++e) {
        if (j < E.size() && static_cast<long long>(e) == ipow(q, static_cast<int>(j))) {
            ok = brute[e] == E[j];
            ++j;
        } else {
            ok = brute[e].is_zero();
        }
    }
    Report rep;
    rep.add("E" + std::to_string(k) + "_brute", ok && j == E.size());
    return rep;
}

Report periods(int q, int dmax, int dgrow, int N) {
    analytic::Tower tw(constant_field(q));
    Report rep;
    for (int d = 1; d <= dmax; ++d) {
        rep.add("alpha" + std::to_string(d), tw.alpha(d) == tw.alpha_closed(d));
        rep.add("beta" + std::to_string(d), tw.beta(d) == tw.beta_closed(d));
    }
    int prev = -1;
    for (int d = 1; d <= dgrow; ++d) {
        const auto xp = analytic::xi_pow(tw, d, N);
        rep.add("valuation_d" + std::to_string(d), xp.valuation == -1);
        rep.add("agreement_grows_d" + std::to_string(d), xp.agreement > prev);
        prev = xp.agreement;
    }
    return rep;
}

Report rank2_symbolic(int q, bool tamper) {
    auto [F, nu] = sym_setup(q);
    const Rad proto = nu.terms().begin()->second;
    const SymR J = SymR::var(proto);
    auto m = drinfeld::rank2_J(F, J, nu);
    if (tamper) swap_tau12(m);
    Report rep;
    merge(rep, "PhiJ", drinfeld::validate(m));
    rep.add("PhiJ.leading", m.phi_x.lead() == power(J, q * q + q));
    const auto w = drinfeld::wedge(m);
    const auto disp = drinfeld::psi_family(F, F.z.zeta, -(nu * (F.T * J).inverse()));
    rep.add("wedge_display", w.phi_x == disp.phi_x && w.phi_y == disp.phi_y);

    const SymR lambda = SymR::var(proto);
    const auto ml = drinfeld::rank2_lambda_nu(F, lambda, nu);
    merge(rep, "lambda_nu", drinfeld::validate(ml));
    const auto k = drinfeld::rank2_constants(F, lambda, nu);
    rep.add("relation", drinfeld::verify_rank2_relation(ml, k.A, k.B, k.C, k.alpha, k.delta));
    rep.add("relation_B_is_zeta_A", k.B == F.zeta() * k.A);
    return rep;
}

Report duality(int q, unsigned dmax, size_t samples, uint64_t seed) {
    using namespace weil;
    const auto f = constant_field(q);
    const auto ctx = domain::make_domain(f);
    std::mt19937_64 rng(seed);
    Report rep;
    for (unsigned d = 1; d <= dmax; ++d) {
        bool w_ok = true, v_ok = true, case1 = true;
        for (const auto& p : random_principals(q, d, true, false, samples, rng)) {
            const auto w = dual_w(ctx, p);
            w_ok = w_ok && is_identity(pairing_matrix(ctx, p, w));
            const domain::QuotientBasis B(ctx, p);
            case1 = case1 && residue_pairing(B.basis().back(), w.back().to_ratfunc() * omega_star(ctx, p)) == 1;
        }
        for (const auto& p : random_principals(q, d, false, true, samples, rng))
            v_ok = v_ok && is_identity(pairing_matrix(ctx, p, dual_v(ctx, p), true));
        const std::string s = "d" + std::to_string(d);
        rep.add("w_kronecker_" + s, w_ok);
        rep.add("v_kronecker_" + s, v_ok);
        rep.add("w_top_element_" + s, case1);
    }
    // residues of polynomial differentials
    const auto one = DomainElem::constant(ctx, 1);
    const RatFunc t = RatFunc::var(f);
    const RatFunc pi(ctx->pi, ffield::Poly::constant(f, 1));
    bool res3 = true, resG = true;
    for (Word a = 0; a < static_cast<Word>(q); ++a)
        for (Word b = 0; b < static_cast<Word>(q); ++b)
            for (Word c = 0; c < static_cast<Word>(q); ++c) {
                const RatFunc g = RatFunc::constant(f, a) + RatFunc::constant(f, b) * t + RatFunc::constant(f, c) * t * t;
                res3 = res3 && residue_pairing(one, g) == f->add(b, f->mul(c, ctx->z.tr));
            }
    for (int j = 1; j <= 3; ++j)
        for (int it = 0; it < 5; ++it) {
            std::vector<Word> c(static_cast<size_t>(2 * j + 1));
            for (auto& w : c) w = rng() % static_cast<unsigned>(q);
            const RatFunc G(ffield::Poly(f, c), ffield::Poly::constant(f, 1));
            resG = resG && residue_pairing(one, G * power(pi, -j)) == 0;
        }
    rep.add("residue_quadratic", res3);
    rep.add("residue_G_over_pi_j", resG);
    return rep;
}

Report operators(int q, unsigned dmax, size_t samples, uint64_t seed, bool tamper) {
    using namespace weil;
    const auto ctx = domain::make_domain(constant_field(q));
    const auto& f = ctx->z.field;
    std::mt19937_64 rng(seed);
    Report rep;
    const auto X1 = SymPoly::X(ctx, 2, 0), X2 = SymPoly::X(ctx, 2, 1);
    const auto Y1 = SymPoly::Y(ctx, 2, 0), Y2 = SymPoly::Y(ctx, 2, 1);
    const IdealSpec Ix = IdealSpec::make_principal({{1}, {0}, 0});
    const IdealSpec Iy = IdealSpec::make_principal({{0}, {1}, 0});
    auto op = [&](const IdealSpec& I, int r) {
        auto s = weil_operator(ctx, I, r);
        if (tamper && I.principal.alpha[0] == 1) s = s + SymPoly::constant(ctx, r, 1);
        return s;
    };
    rep.add("x_rank2_display", op(Ix, 2) == Y1 + Y2);
    rep.add("y_rank2_display", op(Iy, 2) == SymPoly::constant(ctx, 2, 1) - (X1 + X2).scale(ctx->z.nrm));
    for (const auto& [name, I] : {std::pair{"x", Ix}, std::pair{"y", Iy}}) {
        const auto p = principal_of(ctx, I);
        const domain::QuotientBasis B(ctx, p);
        for (int r = 2; r <= 3; ++r)
            rep.add(std::string(name) + "_rank" + std::to_string(r) + "_construction",
                    reduce_mod(op(I, r), B) == reduce_mod(construction(ctx, B.basis(), dual_by_pairing(ctx, p), r), B));
    }
    const auto one = DomainElem::constant(ctx, 1);
    for (unsigned d = 1; d <= dmax; ++d) {
        bool kappa_ok = true, constr = true;
        for (const auto& p : random_principals(q, d, true, true, samples, rng)) {
            const Word kappa = f->add(f->add(ctx->z.tr, f->div(f->mul(p.beta[0], ctx->z.nrm), p.alpha[0])),
                                      f->div(p.alpha[0], p.beta[0]));
            const auto P = domain::generator(ctx, p);
            const auto rel = (SymPoly::tensor({P, one}) + SymPoly::tensor({one, P})).scale(kappa);
            kappa_ok = kappa_ok && o_prime(ctx, p) - o_second(ctx, p) == rel;
        }
        for (const auto& p : random_principals(q, d, false, false, samples, rng)) {
            const domain::QuotientBasis B(ctx, p);
            constr = constr && reduce_mod(weil_operator(ctx, IdealSpec::make_principal(p), 2), B) ==
                                   reduce_mod(construction(ctx, B.basis(), dual_by_pairing(ctx, p), 2), B);
        }
        const std::string s = "d" + std::to_string(d);
        rep.add("prime_minus_second_" + s, kappa_ok);
        rep.add("rank2_construction_" + s, constr);
    }
    return rep;
}

Report weil_pairing(int q, int ext, Word theta, Word J, size_t compat_pairs, uint64_t seed, nlohmann::json* detail) {
    using namespace weil;
    if (ext < 2 || ext % 2) throw std::invalid_argument("the A-field degree m must be even and >= 2");
    const auto M = finite_rank2(q, ext / 2, theta, J);
    SuiteOptions opt;
    opt.compat_pairs = compat_pairs;
    opt.seed = seed;
    Report rep;
    nlohmann::json d = {{"module", M.spec}};
    for (const auto& [name, I] : {std::pair{"x", IdealSpec::make_principal({{1}, {0}, 0})},
                                  std::pair{"y", IdealSpec::make_principal({{0}, {1}, 0})}}) {
        nlohmann::json dd;
        merge(rep, name, property_suite(M.phi, M.ctx, I, opt, &dd));
        dd.erase("pairing_table");
        dd.erase("weil_operator");
        d[name] = dd;
    }
    nlohmann::json di;
    merge(rep, "Iinf", compat_iinf(M.phi, M.ctx, opt, &di));
    if (q == 2) rep.add("Iinf.constant_is_one", di["constant_is_one"].get<bool>());
    d["Iinf"] = di;
    if (detail) *detail = d;
    return rep;
}

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
    const int q = cfg.q;
    Report rep;
    const bool all = name == "all";
    if (!all && name != "rank1" && name != "rank2" && name != "analytic" && name != "weil")
        throw std::invalid_argument("unknown suite '" + name + "'");
    if (all || name == "rank1") {
        merge(rep, "rank1", standard_models(q, cfg.tamper));
        merge(rep, "rank1.hayes", hayes_coefficients(q));
        merge(rep, "rank1.annihilators", annihilators(q));
        merge(rep, "rank1.isogeny", standard_isogeny(q));
    }
    if (all || name == "rank2") {
        merge(rep, "rank2", rank2_symbolic(q, cfg.tamper));
        if (q == 2) merge(rep, "rank2.example_q2", drinfeld::example_q2());
    }
    if (all || name == "analytic") {
        merge(rep, "analytic.L", l_closed_form(q, q == 2 ? 6 : 4));
        merge(rep, "analytic.series", exp_log(q, cfg.N, cfg.tamper));
        merge(rep, "analytic.E", e_k_brute(q, 1));
        merge(rep, "analytic.periods", periods(q, q == 2 ? 4 : 3, 2, q == 2 ? 200 : 700));
    }
    if (all || name == "weil") {
        merge(rep, "weil.duality", duality(q, 3, 10, cfg.seed));
        merge(rep, "weil.operators", operators(q, 3, 10, cfg.seed, cfg.tamper));
        merge(rep, "weil.pairing", weil_pairing(q, 2, 1, 1, q == 2 ? 0 : 200, cfg.seed));
    }
    return rep;
}

}  // namespace dmw::checks
