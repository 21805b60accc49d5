#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dmw/funcfield.hpp"

using namespace dmw::funcfield;
using dmw::ffield::make_field;
using dmw::ffield::random_word;

namespace {

RatFunc random_rf(const FieldPtr& F, std::mt19937_64& rng, int dn, int dd) {
    std::vector<Word> n(dn + 1), d(dd + 1);
    for (auto& w : n) w = random_word(*F, rng);
    for (auto& w : d) w = random_word(*F, rng);
    d.back() = 1;
    return RatFunc(Poly(F, n), Poly(F, d));
}

}  // namespace

TEST_CASE("rational function arithmetic matches evaluation") {
    auto F = make_field(3, 4, {.frob_deg = 2});
    std::mt19937_64 rng(4);
    for (int it = 0; it < 50; ++it) {
        RatFunc a = random_rf(F, rng, 3, 2), b = random_rf(F, rng, 2, 3);
        Word x = random_word(*F, rng);
        if (a.den().eval(x) == 0 || b.den().eval(x) == 0) continue;
        CHECK((a + b).eval(x) == F->add(a.eval(x), b.eval(x)));
        CHECK((a * b).eval(x) == F->mul(a.eval(x), b.eval(x)));
        CHECK(a.frob().eval(x) == F->frob(a.eval(x)));
        CHECK((a - a).is_zero());
        if (!a.is_zero()) CHECK(a * a.inverse() == a.one());
    }
}

TEST_CASE("canonical form is unique") {
    auto F = make_field(2, 2);
    Poly t1 = Poly::linear(F, 1), t2 = Poly::linear(F, 2);
    CHECK(RatFunc(t1 * t2, t2 * t2) == RatFunc(t1, t2));
    CHECK(RatFunc(t1.scale(3), t2.scale(3)).den().lead() == 1);
}

TEST_CASE("standard elements satisfy the curve equation") {
    for (auto [p, e] : std::vector<std::pair<uint32_t, int>>{{2, 2}, {3, 2}, {2, 4}, {5, 2}}) {
        auto F = make_field(p, e, {.frob_deg = e / 2});
        auto z = zeta_data(F);
        auto s = std_elements(z);
        RatFunc tr = RatFunc::constant(F, z.tr), nz = RatFunc::constant(F, z.nrm);
        CHECK((s.y * s.y - tr * s.x * s.y + nz * s.x * s.x - s.x).is_zero());
        CHECK(F->frob(z.zeta) == z.zetaq);
        CHECK(F->frob(z.zetaq) == z.zeta);
        CHECK(z.zeta != z.zetaq);
        // 1/T + ... : T^sigma is the conjugate
        CHECK(s.T.frob() != s.Ts);
    }
}

TEST_CASE("SFrac ring agrees with RatFunc") {
    auto F = make_field(3, 2, {.frob_deg = 1});
    auto z = zeta_data(F);
    auto R = std::make_shared<SFracRing>(SFracRing{F, z.zeta, z.zetaq});
    std::mt19937_64 rng(8);
    for (int it = 0; it < 40; ++it) {
        std::vector<Word> c1(4), c2(3);
        for (auto& w : c1) w = random_word(*F, rng);
        for (auto& w : c2) w = random_word(*F, rng);
        SFrac a(R, Poly(F, c1), int(rng() % 4), int(rng() % 3));
        SFrac b(R, Poly(F, c2), int(rng() % 3), int(rng() % 4));
        CHECK((a + b).to_ratfunc() == a.to_ratfunc() + b.to_ratfunc());
        CHECK((a * b).to_ratfunc() == a.to_ratfunc() * b.to_ratfunc());
        CHECK(a.frob().to_ratfunc() == a.to_ratfunc().frob());
        CHECK(to_sfrac(R, a.to_ratfunc()) == a);
    }
    SFrac u(R, Poly::linear(F, z.zeta).scale(2), 0, 3);
    CHECK(u.is_unit());
    CHECK(u * u.inverse() == u.one());
}

TEST_CASE("Laurent expansions") {
    auto F = make_field(2, 2);
    auto z = zeta_data(F);
    auto s = std_elements(z);
    const int N = 20;
    auto eT = expand_at_infinity(s.T, z, N);
    CHECK(eT.val() == -1);
    CHECK(eT.coeffs()[0] == 1);
    auto ex = expand_at_infinity(s.x, z, N), ey = expand_at_infinity(s.y, z, N);
    CHECK(ex.val() == -1);
    CHECK(ey.val() == -1);
    auto prod = expand_at_infinity(s.x * s.y, z, N);
    CHECK(agreement_order(prod, ex * ey) >= N - 1);
    auto inv = ex.inverse();
    CHECK(agreement_order(inv * ex, LaurentSeries::monomial(F, 1, 0, N)) >= N - 1);
    // frob of a series is the series of the frob only when the expansion point is Frobenius-fixed;
    // here check that (f^q) expanded at 0 equals frob of f expanded at 0 over F_2-rational f.
    RatFunc f(Poly(F, {1, 1}), Poly(F, {0, 1, 1}));
    auto e0 = expand_at(f, 0, N);
    auto eq = expand_at(f * f, 0, 2 * N);
    CHECK(agreement_order(e0.frob(), eq) >= N);
}

TEST_CASE("residues") {
    auto F = make_field(3, 2);
    auto z = zeta_data(F);
    auto s = std_elements(z);
    // Res_{zeta} dt/pi = 1/(zeta - zeta^q)
    Word expect = F->inv(F->sub(z.zeta, z.zetaq));
    CHECK(residue_at_zeta(s.x, z) == expect);
    // a polynomial has no residue
    CHECK(residue_at(s.t, z.zeta) == 0);
    // residue of 1/(t-a)^2 is 0
    CHECK(residue_at(s.Ts * s.Ts, z.zeta) == 0);
}

TEST_CASE("r-th power tests") {
    auto F = make_field(2, 6);
    std::mt19937_64 rng(6);
    for (int it = 0; it < 20; ++it) {
        RatFunc a = random_rf(F, rng, 2, 2);
        if (a.is_zero()) continue;
        RatFunc a3 = a * a * a;
        CHECK(is_rth_power(a3, 3));
        CHECK(is_rth_power(a * a, 2));
        CHECK(!is_rth_power(a3 * RatFunc(Poly::linear(F, 5)), 3));
    }
    CHECK(!is_rth_power(RatFunc::var(F), 2));
}
