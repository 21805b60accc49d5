#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dmw/ffield.hpp"

using namespace dmw::ffield;

namespace {

// Schoolbook arithmetic on digit vectors modulo the field's modulus; shares
// nothing with the table or bitwise paths.
std::vector<uint32_t> naive_mul(const Field& F, std::vector<uint32_t> a, std::vector<uint32_t> b) {
    const uint32_t p = F.p();
    const int e = F.e();
    std::vector<uint64_t> r(2 * e, 0);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) r[i + j] = (r[i + j] + uint64_t(a[i]) * b[j]) % p;
    const auto& m = F.modulus();
    for (int k = 2 * e - 2; k >= e; --k) {
        const uint64_t c = r[k];
        if (!c) continue;
        for (int i = 0; i <= e; ++i) r[k - e + i] = (r[k - e + i] + (p - m[i]) * c) % p;
    }
    std::vector<uint32_t> out(e);
    for (int i = 0; i < e; ++i) out[i] = static_cast<uint32_t>(r[i]);
    return out;
}

}  // namespace

TEST_CASE("multiplication agrees with schoolbook reduction") {
    std::mt19937_64 rng(7);
    for (auto [p, e] : std::vector<std::pair<uint32_t, int>>{{2, 1}, {2, 4}, {2, 6}, {3, 2}, {3, 4}, {5, 2}, {7, 3}, {2, 24}}) {
        auto F = make_field(p, e, {.frob_deg = 1, .max_size = Word(1) << 40});
        for (int it = 0; it < 200; ++it) {
            Word a = random_word(*F, rng), b = random_word(*F, rng);
            CHECK(F->digits(F->mul(a, b)) == naive_mul(*F, F->digits(a), F->digits(b)));
        }
    }
}

TEST_CASE("field axioms on random elements") {
    std::mt19937_64 rng(11);
    for (auto [p, e] : std::vector<std::pair<uint32_t, int>>{{2, 2}, {2, 6}, {3, 4}, {5, 2}, {2, 30}}) {
        auto F = make_field(p, e, {.frob_deg = 1, .max_size = Word(1) << 40});
        for (int it = 0; it < 100; ++it) {
            Word a = random_word(*F, rng), b = random_word(*F, rng), c = random_word(*F, rng);
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            CHECK(F->add(a, F->neg(a)) == 0);
            if (a) CHECK(F->mul(a, F->inv(a)) == 1);
            // Frobenius is additive and multiplicative
            CHECK(F->pth(F->add(a, b), 1) == F->add(F->pth(a, 1), F->pth(b, 1)));
            CHECK(F->pth(a, e) == a);
        }
    }
}

TEST_CASE("multiplicative group order") {
    for (auto [p, e] : std::vector<std::pair<uint32_t, int>>{{2, 4}, {3, 2}, {3, 3}, {2, 6}}) {
        auto F = make_field(p, e);
        CHECK(F->primitive());
        Word g = F->generator();
        Word n = F->size() - 1;
        CHECK(F->pow(g, n) == 1);
        for (auto r : prime_factors(n)) CHECK(F->pow(g, n / r) != 1);
    }
}

TEST_CASE("memoised descriptors") {
    auto a = make_field(3, 4, {.frob_deg = 2});
    auto b = make_field(3, 4, {.frob_deg = 2});
    CHECK(a.get() == b.get());
    CHECK(a->q() == 9);
}

TEST_CASE("roots and nth roots") {
    auto F = make_field(2, 6);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 20; ++it) {
        Word r1 = random_word(*F, rng), r2 = random_word(*F, rng);
        Poly f = Poly::linear(F, r1) * Poly::linear(F, r2) * Poly(F, {1, 1, 1});
        auto rs = roots(f);
        CHECK(std::find(rs.begin(), rs.end(), r1) != rs.end());
        CHECK(std::find(rs.begin(), rs.end(), r2) != rs.end());
        for (Word r : rs) CHECK(f.eval(r) == 0);
    }
    FieldElem a(F, F->generator());
    auto cubes = nth_roots(a.pow(3), 3);
    CHECK(cubes.size() == 3);
    for (auto& c : cubes) CHECK(c.pow(3) == a.pow(3));
    // generator of F_64^* is not a cube
    CHECK(nth_roots(a, 3).empty());
}

TEST_CASE("large-field root finding") {
    auto F = make_field(2, 40, {.frob_deg = 1, .max_size = Word(1) << 60});
    std::mt19937_64 rng(5);
    Word r1 = random_word(*F, rng), r2 = random_word(*F, rng);
    Poly f = Poly::linear(F, r1) * Poly::linear(F, r2);
    auto rs = roots(f);
    CHECK(rs.size() == (r1 == r2 ? 1u : 2u));
    for (Word r : rs) CHECK(f.eval(r) == 0);
}

TEST_CASE("polynomial division and gcd") {
    auto F = make_field(3, 2);
    std::mt19937_64 rng(9);
    for (int it = 0; it < 30; ++it) {
        std::vector<Word> ca(6), cb(4), cc(3);
        for (auto& w : ca) w = random_word(*F, rng);
        for (auto& w : cb) w = random_word(*F, rng);
        for (auto& w : cc) w = random_word(*F, rng);
        cc.back() = 1;
        Poly a(F, ca), b(F, cb), c(F, cc);
        if (b.is_zero()) continue;
        auto dm = divmod(a, b);
        CHECK(dm.quot * b + dm.rem == a);
        CHECK((dm.rem.is_zero() || dm.rem.degree() < b.degree()));
        Poly g = gcd(a * c, b * c);
        CHECK(divmod(g, c).rem.is_zero());
        auto x = xgcd(a, b);
        CHECK(x.s * a + x.t * b == x.g);
    }
}

TEST_CASE("taylor shift and frobenius of polynomials") {
    auto F = make_field(2, 4, {.frob_deg = 2});
    std::mt19937_64 rng(1);
    std::vector<Word> c(5);
    for (auto& w : c) w = random_word(*F, rng);
    Poly f(F, c);
    Word a = random_word(*F, rng), x = random_word(*F, rng);
    CHECK(f.taylor_shift(a).eval(x) == f.eval(F->add(x, a)));
    CHECK(f.frob().eval(x) == F->frob(f.eval(x)));
    Poly g = f * Poly::linear(F, a);
    CHECK(g.div_linear(a) == f);
}

TEST_CASE("embeddings and trace/norm") {
    auto F4 = make_field(2, 2, {.frob_deg = 1});
    auto F16 = make_field(2, 4, {.frob_deg = 1});
    Embedding emb(F4, F16);
    std::mt19937_64 rng(2);
    for (int it = 0; it < 20; ++it) {
        Word a = random_word(*F4, rng), b = random_word(*F4, rng);
        CHECK(emb.apply(F4->mul(a, b)) == F16->mul(emb.apply(a), emb.apply(b)));
        CHECK(emb.preimage(emb.apply(a)) == a);
        Word z = random_word(*F16, rng);
        auto tn = trace_norm(FieldElem(F16, z), F4);
        CHECK(emb.apply(tn.trace.value()) == F16->add(z, F16->pth(z, 2)));
        CHECK(emb.apply(tn.norm.value()) == F16->mul(z, F16->pth(z, 2)));
    }
    // elements fixed by squaring-twice are exactly the image of F4
    int fixed = 0;
    for (Word z = 0; z < 16; ++z)
        if (F16->pth(z, 2) == z) {
            ++fixed;
            CHECK(emb.in_image(z));
        }
    CHECK(fixed == 4);
}
