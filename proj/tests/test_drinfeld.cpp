#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dmw/drinfeld.hpp"
#include "dmw/radical.hpp"
#include "dmw/symbolic.hpp"

using namespace dmw;
using namespace dmw::drinfeld;
using ffield::FieldElem;
using ffield::make_field;
using funcfield::RatFunc;
using funcfield::SFrac;
using Rad = radical::Radical<SFrac>;
using SymR = symbolic::Sym<Rad>;

namespace {

ffield::FieldPtr field_for_q(int q) {
    switch (q) {
        case 2: return make_field(2, 2);
        case 3: return make_field(3, 2);
        case 4: return make_field(2, 4, {.frob_deg = 2});
        case 5: return make_field(5, 2);
    }
    throw std::runtime_error("q");
}

// zeta <-> zeta^q on the constants, t fixed
RatFunc conj(const RatFunc& r) {
    const int k = r.field()->frob_deg();
    return RatFunc(r.num().map_coeffs_pth(k), r.den().map_coeffs_pth(k));
}

template <class R>
SkewPoly<R> conj_skew(const SkewPoly<R>& f) {
    return f.map([](const R& c) { return conj(c); });
}

template <class R>
SkewPoly<R> conjugate(const SkewPoly<R>& f, const R& e) {
    return f.lmul(e).rmul(e.inverse());
}

// F(nu) with nu^(q+1) = -T^(sigma+q), then a symbolic parameter on top
struct SymSetup {
    AField<SymR> F;
    SymR nu;
};

SymSetup sym_setup(int q) {
    const auto z = funcfield::zeta_data(field_for_q(q));
    const auto base = generic_sfrac(z);
    const auto ctx = radical::radical_extend(-base.Tsq(), q + 1);
    auto emb = [ctx](const SFrac& a) { return SymR::constant(Rad::embed(ctx, a)); };
    auto F = lift<SymR>(base, emb);
    return {F, SymR::constant(Rad::root(ctx))};
}

}  // namespace

TEST_CASE("standard models validate and match their displays") {
    for (int q : {2, 3, 4, 5}) {
        CAPTURE(q);
        const auto z = funcfield::zeta_data(field_for_q(q));
        const auto F = generic_sfrac(z);
        const auto P = standard(F), Ps = standard_sigma(F);
        CHECK(validate(P).ok());
        CHECK(validate(Ps).ok());
        CHECK(module_type(P) == ModuleType::Zeta);
        CHECK(module_type(Ps) == ModuleType::ZetaQ);
        // Psi_x = T^(sigma-1) tau^2 + (T^sigma + T^(q-1+sigma)) tau + x
        const SFrac Tsm1 = F.Ts * F.T.inverse();
        CHECK(P.phi_x.coef(2) == Tsm1);
        CHECK(P.phi_x.coef(1) == F.Ts + power(F.T, q - 1) * F.Ts);
        // Psi_y = zeta T^(sigma-1) tau^2 + (t T^sigma + zeta T^(q-1+sigma)) tau + y
        CHECK(P.phi_y.coef(2) == F.zeta() * Tsm1);
        CHECK(P.phi_y.coef(1) == F.t * F.Ts + F.zeta() * power(F.T, q - 1) * F.Ts);
        CHECK(P.phi_y - P.phi_x.lmul(F.zeta()) == SkewPoly<SFrac>::linear(F.T));
    }
}

TEST_CASE("the sigma model is the conjugate of the standard model") {
    for (int q : {2, 3, 4}) {
        const auto z = funcfield::zeta_data(field_for_q(q));
        const auto F = generic_ratfunc(z);
        const auto P = standard(F), Ps = standard_sigma(F);
        CHECK(conj_skew(P.phi_x) == Ps.phi_x);
        CHECK(conj_skew(P.phi_y) == Ps.phi_y);
        // T^sigma + T^(q-1+sigma) = (t^q + t - Tr zeta)/((t - zeta)(t^q - zeta))
        const RatFunc tq = F.t.frob();
        CHECK(F.Ts + power(F.T, q - 1) * F.Ts ==
              (tq + F.t - F.c(z.tr)) * ((F.t - F.zeta()) * (tq - F.zeta())).inverse());
    }
}

TEST_CASE("perturbation is detected") {
    const auto z = funcfield::zeta_data(field_for_q(3));
    auto P = standard(generic_sfrac(z));
    auto c = P.phi_x.coeffs();
    std::swap(c[1], c[2]);
    P.phi_x = SkewPoly<SFrac>(c[0], c);
    auto rep = validate(P);
    CHECK_FALSE(rep.ok());
    auto f = rep.failures();
    CHECK(std::find(f.begin(), f.end(), "commute") != f.end());
}

TEST_CASE("phi_of and commutation on Riemann-Roch bases") {
    for (int q : {2, 3}) {
        const auto fld = field_for_q(q);
        const auto ctx = domain::make_domain(fld);
        const auto F = generic_ratfunc(ctx->z);
        const auto P = standard(F);
        CHECK(phi_of(P, domain::DomainElem::constant(ctx, 1)) == SkewPoly<RatFunc>::constant(F.c(1)));
        auto x2 = domain::DomainElem::x(ctx).pow(2);
        CHECK(phi_of(P, x2).degree() == 4);
        const auto basis = domain::rr_basis(ctx, 2);
        for (const auto& a : basis) {
            auto pa = phi_of(P, a);
            CHECK(pa.degree() == static_cast<int>(domain::deg(a)));
            CHECK(pa.coef(0) == a.to_ratfunc());
            for (const auto& b : basis) CHECK(pa * phi_of(P, b) == phi_of(P, b) * pa);
        }
    }
}

TEST_CASE("annihilators of I_inf and I_0") {
    for (int q : {2, 3}) {
        CAPTURE(q);
        const auto ctx = domain::make_domain(field_for_q(q));
        const auto F = generic_sfrac(ctx->z);
        const auto P = standard(F);
        const auto Iinf = annihilator(P, ctx, domain::IdealSpec::iinf());
        CHECK(Iinf == SkewPoly<SFrac>::linear(F.T));
        CHECK(skew::right_gcd(P.phi_x, P.phi_y) == SkewPoly<SFrac>::linear(F.T));
        // composition: I_inf^2 = (x)
        SkewPoly<SFrac> img_x = skew::right_divmod(Iinf * P.phi_x, Iinf).quot;
        SkewPoly<SFrac> img_y = skew::right_divmod(Iinf * P.phi_y, Iinf).quot;
        CHECK(skew::right_divmod(Iinf * P.phi_x, Iinf).rem.is_zero());
        DrinfeldModule<SFrac> Pp{F, img_x, img_y, "image", {}};
        CHECK(validate(Pp).ok());
        CHECK(annihilator(Pp, ctx, domain::IdealSpec::iinf()) * Iinf == P.phi_x.monic());

        // Hayes module with u^(q+1) = 1/((t - zeta)(t^q - zeta))
        const auto rctx = radical::radical_extend(F.Tsq(), q + 1);
        auto emb = [rctx](const SFrac& a) { return Rad::embed(rctx, a); };
        const auto G = lift<Rad>(F, emb);
        const Rad u = Rad::root(rctx);
        const auto H = hayes(G, u, ctx->z.zeta);
        CHECK(validate(H).ok());
        CHECK(H.phi_x == sk(u, {G.x, -((G.x + power(u, q + 1)) * u.inverse()), u.one()}));
        const auto ui0 = annihilator(H, ctx, domain::IdealSpec::i0());
        CHECK(ui0 == sk(u, {-u - u * (G.zetaq() * G.T).inverse(), u.one()}));
        const auto uinf = annihilator(H, ctx, domain::IdealSpec::iinf());
        CHECK(uinf == sk(u, {-u, u.one()}));
        // tau - u exchanges the types: psi^u -> psi^(x/u)
        const auto H2 = hayes(G, G.x * u.inverse(), ctx->z.zetaq);
        CHECK(validate(H2).ok());
        CHECK(isogeny_check(uinf, H, H2));
        CHECK(isogeny_check(SkewPoly<Rad>::constant(u.one()), H, H));
        CHECK_THROWS_AS(hayes(G, u * G.t, ctx->z.zeta), DrinfeldError);
    }
}

TEST_CASE("rank-one motive relation") {
    for (int q : {2, 3}) {
        const auto z = funcfield::zeta_data(field_for_q(q));
        const auto F = generic_sfrac(z);
        for (Word zs : {z.zeta, z.zetaq}) {
            const Word zsq = zs == z.zeta ? z.zetaq : z.zeta;
            for (const SFrac& a : {F.c(1), F.Ts * F.Ts, F.T * F.c(z.zeta)}) {
                const auto m = psi_family(F, zs, a);
                CHECK(validate(m).ok());
                const SFrac b = F.c(zs) * a;
                const SFrac c = a * (F.t - F.c(zsq)).inverse();
                CHECK(verify_motive_rank1(m, a, b, c));
                CHECK_FALSE(verify_motive_rank1(m, a, b, c + F.c(1)));
            }
        }
    }
}

TEST_CASE("standard isogeny between Psi and Psi^sigma") {
    for (int q : {2, 3}) {
        const auto z = funcfield::zeta_data(field_for_q(q));
        const auto F = generic_sfrac(z);
        const auto rctx = radical::radical_extend(F.Ts * F.T.inverse(), q - 1);
        auto emb = [rctx](const SFrac& a) { return Rad::embed(rctx, a); };
        const auto G = lift<Rad>(F, emb);
        const auto lam = standard_isogeny(G, Rad::root(rctx));
        CHECK(isogeny_check(lam, standard(G), standard_sigma(G)));
        CHECK_FALSE(isogeny_check(lam, standard(G), standard(G)));
        // factored forms
        const auto tT = SkewPoly<Rad>::linear(G.T), tTs = SkewPoly<Rad>::linear(G.Ts);
        CHECK(standard(G).phi_x == (tT * tT).lmul(G.Ts * G.T.inverse()));
        CHECK(standard_sigma(G).phi_x == (tTs * tTs).lmul(G.T * G.Ts.inverse()));
    }
}

TEST_CASE("rank two in (lambda, nu), symbolic lambda") {
    for (int q : {2, 3}) {
        CAPTURE(q);
        auto [F, nu] = sym_setup(q);
        const SymR lambda = SymR::var(nu.terms().begin()->second);
        const auto m = rank2_lambda_nu(F, lambda, nu);
        auto rep = validate(m);
        CHECK(rep.ok());
        CHECK(module_type(m) == ModuleType::ZetaQ);
        const auto k = rank2_constants(F, lambda, nu);
        CHECK(k.B == F.zeta() * k.A);
        CHECK(verify_rank2_relation(m, k.A, k.B, k.C, k.alpha, k.delta));
        CHECK_FALSE(verify_rank2_relation(m, k.A, k.B, k.C + F.c(1), k.alpha, k.delta));
        const auto w = wedge(m);
        CHECK(validate(w).ok());
        const auto fam = psi_family(F, F.z.zeta, -(k.delta * F.T.inverse()));
        CHECK(w.phi_x == fam.phi_x);
        CHECK(w.phi_y == fam.phi_y);
    }
}

TEST_CASE("Phi^J, symbolic J, and its relation to the (lambda, nu) family") {
    for (int q : {2, 3}) {
        CAPTURE(q);
        auto [F, nu] = sym_setup(q);
        const Rad proto = nu.terms().begin()->second;
        const SymR J = SymR::var(proto);
        const auto m = rank2_J(F, J, nu);
        CHECK(validate(m).ok());
        CHECK(m.phi_x.lead() == power(J, q * q + q));
        const auto w = wedge(m);
        CHECK(validate(w).ok());
        CHECK(w.rank() == 1);
        const auto fam = psi_family(F, F.z.zeta, -(nu * (F.T * J).inverse()));
        CHECK(w.phi_x == fam.phi_x);
        CHECK(w.phi_y == fam.phi_y);

        // lambda = mu^(q-1): Phi^J = e phi^(lambda, nu) e^-1 with e = mu^(-q), J = lambda^(q^2+1)
        const SymR mu = SymR::var(proto);
        const SymR lambda = power(mu, q - 1);
        const SymR e = power(mu, -q);
        const auto base = rank2_lambda_nu(F, lambda, nu);
        const auto mJ = rank2_J(F, j_invariant(lambda), nu);
        CHECK(conjugate(base.phi_x, e) == mJ.phi_x);
        CHECK(conjugate(base.phi_y, e) == mJ.phi_y);
        const auto wb = wedge(base), wJ = wedge(mJ);
        const SymR eq1 = power(e, q + 1);
        CHECK(conjugate(wb.phi_x, eq1) == wJ.phi_x);
        CHECK(conjugate(wb.phi_y, eq1) == wJ.phi_y);
    }
}

TEST_CASE("flipping the sign of the T J / nu term breaks Phi^J in odd characteristic") {
    auto [F, nu] = sym_setup(3);
    const SymR J = SymR::var(nu.terms().begin()->second);
    auto m = rank2_J(F, J, nu);
    const SymR tj = F.T * J * ((F.zetaq() - F.zeta()) * nu).inverse();
    auto cx = m.phi_x.coeffs();
    auto cy = m.phi_y.coeffs();
    cx[2] = cx[2] - tj - tj;
    cy[2] = cy[2] - F.zetaq() * (tj + tj);
    m.phi_x = SkewPoly<SymR>(J, cx);
    m.phi_y = SkewPoly<SymR>(J, cy);
    CHECK_FALSE(validate(m).ok());
}

TEST_CASE("J-invariant and isomorphism") {
    const auto F16 = make_field(2, 4);
    FieldElem lam(F16, 7), nu(F16, 11);
    CHECK(is_isomorphic(lam, nu, lam, nu));
    for (ffield::Word w = 1; w < 16; ++w) {
        FieldElem om(F16, w);
        CHECK(is_isomorphic(lam, nu, om * lam, power(om, 5) * nu));
    }
    FieldElem lam2(F16, 1);
    while (j_invariant(lam2) == j_invariant(lam)) lam2 = lam2 * FieldElem(F16, 2);
    CHECK_FALSE(is_isomorphic(lam, nu, lam2, nu));
}

TEST_CASE("worked example at q = 2") {
    nlohmann::json detail;
    auto rep = example_q2(&detail);
    for (const auto& [name, ok] : rep.items) {
        CAPTURE(name);
        CHECK(ok);
    }
    CHECK(detail.contains("lambda"));
}
