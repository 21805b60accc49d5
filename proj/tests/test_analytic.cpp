#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dmw/analytic.hpp"

using namespace dmw;
using analytic::LinSeries;
using analytic::Tower;
using ffield::make_field;
using ffield::Poly;
using funcfield::RatFunc;

namespace {

ffield::FieldPtr field_for_q(int q) { return q == 2 ? make_field(2, 2) : make_field(3, 2); }

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

TEST_CASE("brackets") {
    for (int q : {2, 3}) {
        Tower tw(field_for_q(q));
        const auto& z = tw.zeta();
        for (int k = 1; k <= 3; ++k) {
            CHECK(tw.bracket(2 * (k + 1)) - tw.bracket(2 * k) == frob_n(tw.bracket(2), 2 * k));
            CHECK(tw.bracket(2 * k + 1) - tw.bracket(2 * k - 1) == frob_n(tw.bracket(2), 2 * k - 1));
        }
        for (int k = 1; k <= 4; ++k)
            CHECK(funcfield::expand_at_infinity(tw.bracket(k), z, 4).val() == -ipow(q, k));
    }
}

TEST_CASE("first terms of D and L") {
    for (int q : {2, 3}) {
        Tower tw(field_for_q(q));
        const auto& F = tw.afield();
        const auto f = tw.zeta().field;
        const RatFunc t = F.t, tq = t.frob();
        const RatFunc D1 = (t - tq) * (power(t - F.zeta(), q) * (t - F.zetaq())).inverse();
        const RatFunc L1 = (t - tq) * ((tq - F.zetaq()) * (t - F.zetaq())).inverse();
        CHECK(tw.D(0) == F.c(1));
        CHECK(tw.L(0) == F.c(1));
        CHECK(tw.D(1) == D1);
        CHECK(tw.L(1) == L1);
        CHECK(tw.D(1) == tw.L(1));
        CHECK(tw.closed_form_L(0) == F.c(1));
        (void)f;
    }
}

TEST_CASE("closed form of L_j") {
    Tower t2(field_for_q(2));
    for (int j = 0; j <= 6; ++j) CHECK(t2.L(j) == t2.closed_form_L(j));
    Tower t3(field_for_q(3));
    for (int j = 0; j <= 4; ++j) CHECK(t3.L(j) == t3.closed_form_L(j));
}

TEST_CASE("exponential, logarithm and binomials") {
    for (auto [q, N] : {std::pair{2, 5}, std::pair{3, 4}}) {
        CAPTURE(q);
        const auto fld = field_for_q(q);
        Tower tw(fld);
        const auto ctx = domain::make_domain(fld);
        const auto& F = tw.afield();
        const auto Psi = drinfeld::standard(F);
        const LinSeries ex = tw.exp_trunc(N), lg = tw.log_trunc(N);
        CHECK(ex.coef(0) == F.c(1));
        CHECK(analytic::truncate(lg * ex, N) == LinSeries::constant(F.c(1)));
        CHECK(analytic::truncate(ex * lg, N) == LinSeries::constant(F.c(1)));
        for (const auto& a : {domain::DomainElem::x(ctx), domain::DomainElem::y(ctx)}) {
            const auto lhs = analytic::truncate(drinfeld::phi_of(Psi, a) * ex, N);
            const auto rhs = analytic::truncate(ex * LinSeries::constant(a.to_ratfunc()), N);
            CHECK(lhs == rhs);
        }
        for (const auto& a : domain::rr_basis(ctx, 2)) {
            const auto pa = drinfeld::phi_of(Psi, a);
            const RatFunc ar = a.to_ratfunc();
            CHECK(tw.binom(ar, 0) == ar);
            for (int j = 0; j <= 4; ++j) CHECK(tw.binom(ar, j) == pa.coef(j));
        }
        // [f/3] = 0 on L(P)
        std::mt19937_64 rng(q);
        for (int it = 0; it < 5; ++it) {
            std::vector<ffield::Word> c(3);
            for (auto& w : c) w = rng() % static_cast<unsigned>(q);
            const auto f = domain::from_rr_coords(ctx, c, 1);
            CHECK(tw.binom(f.to_ratfunc(), 3).is_zero());
        }
        CHECK(tw.binom(F.x, 1) == F.Ts + power(F.T, q - 1) * F.Ts);
    }
}

TEST_CASE("E_k against the brute-force product") {
    for (auto [q, k] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) {
        CAPTURE(q);
        CAPTURE(k);
        const auto fld = field_for_q(q);
        Tower tw(fld);
        const auto ctx = domain::make_domain(fld);
        const auto E = tw.E(k);
        const auto brute = analytic::brute_E(ctx, k);
        REQUIRE(static_cast<long long>(brute.size()) == ipow(q, 2 * k + 1) + 1);
        size_t j = 0;
        bool ok = true;
        for (size_t e = 0; e < brute.size(); ++e) {
            if (j < E.size() && static_cast<long long>(e) == ipow(q, static_cast<int>(j))) {
                ok = ok && brute[e] == E[j];
                ++j;
            } else {
                ok = ok && brute[e].is_zero();
            }
        }
        CHECK(ok);
        CHECK_FALSE(E.back().is_zero());
        // roots: every element of L(kP)
        const auto basis = domain::rr_basis(ctx, static_cast<unsigned>(k));
        for (const auto& a : basis) {
            RatFunc acc = tw.afield().c(0), p = a.to_ratfunc();
            for (size_t i = 0; i < E.size(); ++i) {
                if (i > 0) p = p.frob();
                acc = acc + E[i] * p;
            }
            CHECK(acc.is_zero());
        }
    }
    Tower tw(field_for_q(3));
    CHECK_THROWS(analytic::brute_E(domain::make_domain(field_for_q(3)), 4));
}

TEST_CASE("partial products and the period") {
    for (auto [q, dmax] : {std::pair{2, 4}, std::pair{3, 3}}) {
        CAPTURE(q);
        Tower tw(field_for_q(q));
        for (int d = 1; d <= dmax; ++d) {
            CHECK(tw.alpha(d) == tw.alpha_closed(d));
            CHECK(tw.beta(d) == tw.beta_closed(d));
            CHECK(tw.xi_exact(d) == tw.xi_partial(d));
        }
    }
    // agreement of the exact quotient with the truncated limit form grows with d
    for (auto [q, dmax, N] : {std::tuple{2, 3, 200}, std::tuple{3, 2, 700}}) {
        CAPTURE(q);
        Tower tw(field_for_q(q));
        int prev = -1;
        for (int d = 1; d <= dmax; ++d) {
            auto xp = analytic::xi_pow(tw, d, N);
            CHECK(xp.valuation == -1);
            CHECK(xp.agreement == ipow(q, 2 * d) * (q * q - 1));
            CHECK(xp.agreement > prev);
            prev = xp.agreement;
        }
    }
}
