#include "dmw/drinfeld.hpp"

#include "dmw/radical.hpp"

namespace dmw::drinfeld {

using ffield::FieldElem;
using funcfield::RatFunc;
using funcfield::SFrac;
using funcfield::SFracRing;

namespace {

nlohmann::json generic_spec(const ZetaData& z) {
    return {{"kind", "generic"}, {"q", z.q}, {"p", z.field->p()}, {"field_degree", z.field->e()}};
}

std::shared_ptr<const SFracRing> sfrac_ring(const ZetaData& z) {
    auto R = std::make_shared<SFracRing>();
    R->field = z.field;
    R->z1 = z.zeta;
    R->z2 = z.zetaq;
    return R;
}

}  // namespace

AField<RatFunc> generic_ratfunc(const ZetaData& z) {
    const auto f = z.field;
    return make_afield<RatFunc>(z, RatFunc::var(f), [f](Word w) { return RatFunc::constant(f, w); }, generic_spec(z));
}

AField<SFrac> generic_sfrac(const ZetaData& z) {
    auto R = sfrac_ring(z);
    return make_afield<SFrac>(z, SFrac::var(R), [R](Word w) { return SFrac::constant(R, w); }, generic_spec(z));
}

AField<FieldElem> finite_afield(const ZetaData& z, Word theta) {
    const auto f = z.field;
    const FieldElem th(f, theta);
    const FieldElem pi = (th - FieldElem(f, z.zeta)) * (th - FieldElem(f, z.zetaq));
    if (pi.is_zero()) throw DrinfeldError("finite A-field: pi(theta) = 0");
    nlohmann::json spec = {{"kind", "finite"}, {"q", z.q}, {"p", f->p()}, {"field_degree", f->e()},
                           {"theta", ffield::word_json(*f, theta)}};
    return make_afield<FieldElem>(z, th, [f](Word w) { return FieldElem(f, w); }, spec);
}

Report example_q2(nlohmann::json* detail) {
    using Rad = radical::Radical<SFrac>;
    const auto F4 = ffield::make_field(2, 2);
    const auto z = funcfield::zeta_data(F4);
    const auto R = sfrac_ring(z);
    const SFrac s = SFrac::var(R);
    auto k = [&](Word w) { return SFrac::constant(R, w); };
    const SFrac zeta = k(z.zeta), zeta2 = k(z.zetaq);

    // u^3 = 1/((sqrt t - zeta)(t - zeta))
    const SFrac cu = ((s - zeta) * (s * s - zeta)).inverse();
    const auto ctx = radical::radical_extend(cu, 3);
    auto emb = [ctx](const SFrac& a) { return Rad::embed(ctx, a); };
    const auto Fs = lift<Rad>(make_afield<SFrac>(z, s, k, {}), emb);
    nlohmann::json spec = {{"kind", "example_q2"}, {"q", 2}, {"base", "F4(s), t = s^2, u^3 = 1/((s - zeta)(s^2 - zeta))"}};
    const auto Ft = lift<Rad>(make_afield<SFrac>(z, s * s, k, spec), emb);

    const Rad u = Rad::root(ctx);
    const Rad S = emb(s), Z = emb(zeta), Z2 = emb(zeta2);
    Report rep;

    // psi_sqrt: the Hayes module over the A-field t -> s
    const auto psi = hayes(Fs, u, z.zeta);
    const Rad sx = Fs.x, sy = Fs.y;
    const Rad u3 = power(u, 3);
    rep.add("psi_sqrt_x", psi.phi_x == sk(u, {sx, (sx + u3) * u.inverse(), u.one()}));
    rep.add("psi_sqrt_y", psi.phi_y == sk(u, {sy, (sy + u3 * Z) * u.inverse(), Z}));

    DrinfeldModule<Rad> phi{Ft, psi.phi_x * psi.phi_x, psi.phi_y * psi.phi_y, "example_q2", {}};
    rep.add("validate", validate(phi).ok());
    rep.add("zetaq_type", module_type(phi) == ModuleType::ZetaQ);
    const auto iinf = skew::right_gcd(phi.phi_x, phi.phi_y);
    rep.add("phi_Iinf_equals_psi_sqrt_x", iinf == psi.phi_x);

    const Rad lambda = Z * (u * (S - Z2)).inverse();
    const Rad nu = u * (Z * (S - Z)).inverse();
    rep.add("nu_relation", nu_relation(Ft, nu));
    bool match = false;
    try {
        const auto fam = rank2_lambda_nu(Ft, lambda, nu);
        match = fam.phi_x == phi.phi_x && fam.phi_y == phi.phi_y;
    } catch (const std::exception&) {
        match = false;
    }
    rep.add("lambda_nu_reproduce_phi", match);
    const Rad J = j_invariant(lambda);
    rep.add("J_equals_lambda5", J == power(lambda, 5));
    rep.add("J_closed_form", J == nu * power(S - Z, 3) * (S - Z2).inverse());
    if (detail) {
        *detail = {{"field", spec},
                   {"phi_x", skew::jsonify(phi.phi_x)},
                   {"phi_y", skew::jsonify(phi.phi_y)},
                   {"phi_Iinf", skew::jsonify(iinf)},
                   {"lambda", radical::jsonify(lambda)},
                   {"nu", radical::jsonify(nu)},
                   {"J", radical::jsonify(J)}};
    }
    return rep;
}

}  // namespace dmw::drinfeld
