#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "dmw/domain.hpp"

using namespace dmw;
using domain::DomainElem;
using ffield::make_field;
using ffield::Poly;
using ffield::Word;

namespace {

// F_q inside the coefficient field
std::vector<Word> fq_elements(const ffield::FieldPtr& F) {
    std::vector<Word> r;
    for (Word w = 0; w < F->size(); ++w)
        if (F->frob(w) == w) r.push_back(w);
    return r;
}

DomainElem random_elem(const domain::CtxPtr& ctx, std::mt19937_64& rng, unsigned k) {
    auto fq = fq_elements(ctx->z.field);
    std::vector<Word> c(2 * k + 1);
    for (auto& w : c) w = fq[rng() % fq.size()];
    return domain::from_rr_coords(ctx, c, k);
}

}  // namespace

TEST_CASE("x, y and the defining relation") {
    for (uint32_t p : {2u, 3u}) {
        auto ctx = domain::make_domain(make_field(p, 2));
        auto x = DomainElem::x(ctx), y = DomainElem::y(ctx);
        CHECK(x.to_ratfunc() == ctx->s.x);
        CHECK(y.to_ratfunc() == ctx->s.y);
        auto rhs = (x * y).scale(ctx->z.tr) - (x * x).scale(ctx->z.nrm) + x;
        CHECK(y * y == rhs);
        CHECK((y * y).to_ratfunc() == ctx->s.y * ctx->s.y);
        CHECK_THROWS_WITH_AS(domain::from_ratfunc(ctx, ctx->s.t), doctest::Contains("infinite place"),
                             domain::DomainError);
        CHECK_THROWS_WITH_AS(domain::from_ratfunc(ctx, (ctx->s.t - ctx->s.t.one()).inverse()),
                             doctest::Contains("finite place"), domain::DomainError);
    }
}

TEST_CASE("round trip and multiplicativity") {
    auto ctx = domain::make_domain(make_field(3, 2));
    std::mt19937_64 rng(3);
    for (int it = 0; it < 40; ++it) {
        auto a = random_elem(ctx, rng, 3), b = random_elem(ctx, rng, 2);
        CHECK(domain::from_ratfunc(ctx, a.to_ratfunc()) == a);
        CHECK((a * b).to_ratfunc() == a.to_ratfunc() * b.to_ratfunc());
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(domain::deg(a * b) == domain::deg(a) + domain::deg(b));
        CHECK(static_cast<int>(domain::deg(a)) == -2 * domain::valuation_at_p(a));
    }
    CHECK(domain::deg(DomainElem::x(ctx)) == 2);
    CHECK(domain::deg(DomainElem::constant(ctx, 1)) == 0);
}

TEST_CASE("Riemann-Roch bases") {
    auto ctx = domain::make_domain(make_field(2, 2));
    auto b1 = domain::rr_basis(ctx, 1);
    REQUIRE(b1.size() == 3);
    CHECK(b1[0] == DomainElem::constant(ctx, 1));
    CHECK(b1[1] == DomainElem::x(ctx));
    CHECK(b1[2] == DomainElem::y(ctx));
    for (unsigned k = 1; k <= 5; ++k) {
        auto b = domain::rr_basis(ctx, k);
        CHECK(b.size() == 2 * k + 1);
        for (const auto& e : b) {
            CHECK(domain::valuation_at_p(e) >= -static_cast<int>(k));
            CHECK(domain::from_ratfunc(ctx, e.to_ratfunc()) == e);
        }
    }
}

TEST_CASE("ideal identities") {
    for (uint32_t p : {2u, 3u}) {
        auto ctx = domain::make_domain(make_field(p, 2));
        using domain::IdealSpec;
        auto sq = domain::generators(ctx, IdealSpec::product({IdealSpec::iinf(), IdealSpec::iinf()}));
        CHECK(domain::ideal_equals_principal(sq, DomainElem::x(ctx), 1));
        auto mixed = domain::generators(ctx, IdealSpec::product({IdealSpec::i0(), IdealSpec::iinf()}));
        CHECK(domain::ideal_equals_principal(mixed, DomainElem::y(ctx), 1));
        // I_inf alone is not principal of degree 1 over x
        CHECK_FALSE(domain::ideal_equals_principal(domain::generators(ctx, IdealSpec::iinf()), DomainElem::x(ctx), 2));
    }
}

// quotient size by enumerating L(KP) and counting multiples of P
TEST_CASE("quotient sizes by enumeration") {
    auto ctx = domain::make_domain(make_field(2, 2));
    auto fq = fq_elements(ctx->z.field);
    REQUIRE(fq.size() == 2);
    auto count_quotient = [&](const DomainElem& P, unsigned K) {
        const unsigned n = 2 * K + 1;
        size_t multiples = 0;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<Word> c(n);
            for (unsigned i = 0; i < n; ++i) c[i] = (mask >> i) & 1u;
            if (domain::divides(P, domain::from_rr_coords(ctx, c, K))) ++multiples;
        }
        return (size_t(1) << n) / multiples;
    };
    auto x = DomainElem::x(ctx), y = DomainElem::y(ctx);
    CHECK(count_quotient(x * x, 4) == 16);
    CHECK(domain::deg(x * x) == 4);
    CHECK(count_quotient(y, 3) == 4);
    auto P = x * x + y + DomainElem::constant(ctx, 1);
    CHECK(count_quotient(P, 4) == (size_t(1) << domain::deg(P)));
}

TEST_CASE("quotient bases and the reducer") {
    for (uint32_t p : {2u, 3u}) {
        auto ctx = domain::make_domain(make_field(p, 2));
        const auto F = ctx->z.field;
        // d = 1, alpha_0 != 0
        domain::Principal p1{{1}, {0}, 1};
        domain::QuotientBasis q1(ctx, p1);
        REQUIRE(q1.basis().size() == 2);
        CHECK(q1.basis()[1] == DomainElem::y(ctx));
        // (y): B2 = {1, x}, x^2 = zeta^(-(q+1)) x
        domain::Principal py{{0}, {1}, 0};
        domain::QuotientBasis qy(ctx, py);
        CHECK(qy.modulus() == DomainElem::y(ctx));
        CHECK_FALSE(qy.first_kind());
        REQUIRE(qy.basis().size() == 2);
        CHECK(qy.basis()[1] == DomainElem::x(ctx));
        auto xx = DomainElem::x(ctx) * DomainElem::x(ctx);
        CHECK(qy.reduce(xx) == std::vector<Word>{0, F->inv(ctx->z.nrm)});
        CHECK_THROWS_AS(domain::QuotientBasis(ctx, domain::Principal{{0}, {0}, 1}), domain::DomainError);

        std::mt19937_64 rng(p);
        auto fq = fq_elements(F);
        for (int it = 0; it < 10; ++it) {
            domain::Principal pr;
            for (int j = 0; j < 2; ++j) {
                pr.alpha.push_back(fq[rng() % fq.size()]);
                pr.beta.push_back(fq[rng() % fq.size()]);
            }
            pr.alpha_d = fq[rng() % fq.size()];
            if (pr.alpha[0] == 0 && pr.beta[0] == 0) pr.alpha[0] = 1;
            domain::QuotientBasis qb(ctx, pr);
            CHECK(qb.basis().size() == 4);
            auto e = random_elem(ctx, rng, 6);
            auto c = qb.reduce(e);
            CHECK(domain::divides(qb.modulus(), e - qb.lift(c)));
        }
    }
}

TEST_CASE("serialization and ideal parsing") {
    auto ctx = domain::make_domain(make_field(3, 2));
    auto e = DomainElem::from_lists(ctx, 2, {1, 0, 2}, {1});
    auto j = domain::jsonify(e);
    CHECK(j["c"] == nlohmann::json::array({2, 0}));
    CHECK(domain::domain_from_json(ctx, j) == e);
    auto pr = domain::parse_principal(ctx, "alpha=1,0;beta=2,1;alphad=1");
    CHECK(pr.d() == 2);
    CHECK(pr.beta[0] == 2);
    CHECK_THROWS_AS(domain::parse_principal(ctx, "alpha=0;beta=0;alphad=1"), domain::DomainError);
    CHECK_THROWS_AS(domain::parse_principal(ctx, "alpha=5;beta=0;alphad=1"), domain::DomainError);
}
