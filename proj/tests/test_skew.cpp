#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dmw/funcfield.hpp"
#include "dmw/radical.hpp"
#include "dmw/skew.hpp"
#include "dmw/symbolic.hpp"

using namespace dmw;
using ffield::FieldElem;
using ffield::make_field;
using ffield::random_word;
using funcfield::RatFunc;
using skew::SkewPoly;

namespace {

SkewPoly<FieldElem> random_skew(const ffield::FieldPtr& F, std::mt19937_64& rng, int deg) {
    std::vector<FieldElem> c;
    for (int i = 0; i <= deg; ++i) c.emplace_back(F, random_word(*F, rng));
    return SkewPoly<FieldElem>(FieldElem(F, 0), c);
}

}  // namespace

TEST_CASE("twist rule and small products") {
    auto F = make_field(3, 2);
    auto z = funcfield::zeta_data(F);
    auto s = funcfield::std_elements(z);
    auto tau = SkewPoly<RatFunc>::tau(s.T);
    auto a = SkewPoly<RatFunc>::constant(s.T);
    CHECK(tau * a == SkewPoly<RatFunc>(s.T, {s.T.zero(), s.T.frob()}));
    auto l = SkewPoly<RatFunc>::linear(s.T);
    auto sq = l * l;
    CHECK(sq == SkewPoly<RatFunc>(s.T, {s.T * s.T, s.T.frob() + s.T, s.T.one()}));
    CHECK(l * SkewPoly<RatFunc>::constant(s.T.one()) == l);
}

TEST_CASE("associativity and the right-Euclidean law") {
    auto F = make_field(2, 4, {.frob_deg = 2});
    std::mt19937_64 rng(13);
    for (int it = 0; it < 30; ++it) {
        auto f = random_skew(F, rng, 5), g = random_skew(F, rng, 3), h = random_skew(F, rng, 2);
        CHECK((f * g) * h == f * (g * h));
        if (g.is_zero()) continue;
        auto dm = skew::right_divmod(f, g);
        CHECK(dm.quot * g + dm.rem == f);
        CHECK((dm.rem.is_zero() || dm.rem.degree() < g.degree()));
    }
}

TEST_CASE("division by tau - u") {
    auto F = make_field(2, 6);
    std::mt19937_64 rng(21);
    FieldElem u(F, random_word(*F, rng) | 1);
    auto t2 = SkewPoly<FieldElem>::tau(u, 2);
    auto g = SkewPoly<FieldElem>(u, {-u, u.one()});
    auto dm = skew::right_divmod(t2, g);
    CHECK(dm.quot == SkewPoly<FieldElem>(u, {u.frob(), u.one()}));
    CHECK(dm.rem == SkewPoly<FieldElem>::constant(u.frob() * u));
    CHECK(skew::right_divmod(g, g).quot == SkewPoly<FieldElem>::constant(u.one()));
}

TEST_CASE("right gcd recovers a planted common factor") {
    auto F = make_field(3, 4, {.frob_deg = 1});
    std::mt19937_64 rng(5);
    for (int it = 0; it < 10; ++it) {
        auto d = random_skew(F, rng, 2).monic();
        auto a = random_skew(F, rng, 2), b = random_skew(F, rng, 3);
        auto g = skew::right_gcd(a * d, b * d);
        CHECK(skew::right_divmod(g, d).rem.is_zero());
        CHECK(skew::right_divmod(a * d, g).rem.is_zero());
        CHECK(skew::right_divmod(b * d, g).rem.is_zero());
    }
    auto f = random_skew(F, rng, 3);
    CHECK(skew::right_gcd(f, SkewPoly<FieldElem>(f.proto())) == f.monic());
}

TEST_CASE("evaluation is a composition homomorphism and F_q-linear") {
    auto F = make_field(2, 4, {.frob_deg = 1});
    std::mt19937_64 rng(17);
    for (int it = 0; it < 30; ++it) {
        auto f = random_skew(F, rng, 3), g = random_skew(F, rng, 2);
        FieldElem xi(F, random_word(*F, rng)), eta(F, random_word(*F, rng));
        CHECK(skew::evaluate(f * g, xi) == skew::evaluate(f, skew::evaluate(g, xi)));
        CHECK(skew::evaluate(f, xi + eta) == skew::evaluate(f, xi) + skew::evaluate(f, eta));
        CHECK(skew::evaluate(f, xi.zero()).is_zero());
    }
}

TEST_CASE("radical extensions") {
    for (uint32_t p : {2u, 3u}) {
        auto F = make_field(p, 2);
        auto z = funcfield::zeta_data(F);
        auto s = funcfield::std_elements(z);
        const int q = static_cast<int>(F->q());
        RatFunc c = -(s.Ts * power(s.T, q));
        auto ctx = radical::radical_extend(c, q + 1);
        auto nu = radical::Radical<RatFunc>::root(ctx);
        CHECK(power(nu, q + 1) == radical::Radical<RatFunc>::embed(ctx, c));
        CHECK(nu.frob() == power(nu, q));
        auto w = nu + nu.scalar(1) + nu * nu * radical::Radical<RatFunc>::embed(ctx, s.t);
        CHECK(w * w.inverse() == w.one());
        CHECK(w.frob() == power(w, q));
    }
    // a perfect cube is rejected
    auto F = make_field(2, 2);
    auto s = funcfield::std_elements(funcfield::zeta_data(F));
    CHECK_THROWS_AS(radical::radical_extend(s.T * s.T * s.T, 3), RingError);
    // q = 3: the square root of T^(sigma-1)
    auto F3 = make_field(3, 2);
    auto s3 = funcfield::std_elements(funcfield::zeta_data(F3));
    CHECK_NOTHROW(radical::radical_extend(s3.Ts * s3.T.inverse(), 2));
}

TEST_CASE("symbolic parameter ring") {
    auto F = make_field(2, 2);
    FieldElem one(F, 1);
    using S = symbolic::Sym<FieldElem>;
    auto J = S::var(one);
    auto f = J * J + S::constant(FieldElem(F, 2)) * J;
    CHECK(f.frob() == J.frob() * J.frob() + S::constant(FieldElem(F, 2).frob()) * J.frob());
    CHECK(J.frob() == power(J, 2));
    CHECK(J * J.inverse() == J.one());
    CHECK(f.eval(FieldElem(F, 3)) == FieldElem(F, 3) * FieldElem(F, 3) + FieldElem(F, 2) * FieldElem(F, 3));
}
