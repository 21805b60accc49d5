#include "dmw/analytic.hpp"

namespace dmw::analytic {

using ffield::Poly;
using ffield::Word;

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// t - t^(q^j)
Poly t_minus_tqj(const ffield::FieldPtr& f, long long q, int j) {
    const auto n = static_cast<size_t>(ipow(q, j));
    std::vector<Word> c(n + 1, 0);
    c[1] = 1;
    c[n] = f->add(c[n], f->neg(1));
    return Poly(f, c);
}

}  // namespace

LinSeries truncate(const LinSeries& f, int N) {
    std::vector<RatFunc> c;
    for (int i = 0; i < N && i <= f.degree(); ++i) c.push_back(f.coef(i));
    return LinSeries(f.proto(), c);
}

Tower::Tower(const ffield::FieldPtr& field) : F_(drinfeld::generic_ratfunc(funcfield::zeta_data(field))) {
    D_.push_back(F_.c(1));
    L_.push_back(F_.c(1));
}

RatFunc Tower::bracket(int k) const {
    if (k == 0) return F_.c(0);
    const RatFunc Tk = frob_n(F_.T, k);
    return k % 2 == 0 ? Tk - F_.T : Tk - F_.Ts;
}

RatFunc Tower::D(int j) const {
    std::lock_guard<std::mutex> g(mu_);
    const auto& f = F_.z.field;
    const long long q = F_.q();
    while (static_cast<int>(D_.size()) <= j) {
        const int i = static_cast<int>(D_.size());
        // (t - zeta^(q^(i-1)))^(q^i) (t - zeta^q)
        const Word zi = (i - 1) % 2 == 0 ? F_.z.zeta : F_.z.zetaq;
        const Poly den = Poly::linear(f, zi).pow(static_cast<uint64_t>(ipow(q, i))) * Poly::linear(f, F_.z.zetaq);
        D_.push_back(D_.back().frob() * RatFunc(t_minus_tqj(f, q, i), den));
    }
    return D_[static_cast<size_t>(j)];
}

RatFunc Tower::L(int j) const {
    std::lock_guard<std::mutex> g(mu_);
    const auto& f = F_.z.field;
    const long long q = F_.q();
    while (static_cast<int>(L_.size()) <= j) {
        const int i = static_cast<int>(L_.size());
        // (t - zeta^(q^(i+1))) (t - zeta)^(q^i - q^(i-1)) (t - zeta^q)^(q^(i-1))
        const Word zi = (i + 1) % 2 == 0 ? F_.z.zeta : F_.z.zetaq;
        const long long qi = ipow(q, i), qi1 = ipow(q, i - 1);
        const Poly den = Poly::linear(f, zi) * Poly::linear(f, F_.z.zeta).pow(static_cast<uint64_t>(qi - qi1)) *
                         Poly::linear(f, F_.z.zetaq).pow(static_cast<uint64_t>(qi1));
        L_.push_back(L_.back() * RatFunc(t_minus_tqj(f, q, i), den));
    }
    return L_[static_cast<size_t>(j)];
}

RatFunc Tower::closed_form_L(int j) const {
    RatFunc r = F_.c(1);
    for (int k = 1; k <= j; ++k) r = r * bracket(k);
    return r * power(F_.Ts * F_.T.inverse(), ipow(q(), j) - 1);
}

LinSeries Tower::exp_trunc(int N) const {
    std::vector<RatFunc> c;
    for (int j = 0; j < N; ++j) c.push_back(D(j).inverse());
    return LinSeries(F_.t, c);
}

LinSeries Tower::log_trunc(int N) const {
    std::vector<RatFunc> c;
    for (int j = 0; j < N; ++j) {
        RatFunc v = L(j).inverse();
        c.push_back(j % 2 == 0 ? v : -v);
    }
    return LinSeries(F_.t, c);
}

RatFunc Tower::binom(const RatFunc& a, int r) const {
    RatFunc acc = F_.c(0);
    RatFunc aq = a;
    for (int j = 0; j <= r; ++j) {
        if (j > 0) aq = aq.frob();
        RatFunc term = aq * (D(j) * frob_n(L(r - j), j)).inverse();
        acc = (r - j) % 2 == 0 ? acc + term : acc - term;
    }
    return acc;
}

std::vector<RatFunc> Tower::E(int k) const {
    const int r = 2 * k + 1;
    const RatFunc Lr = L(r);
    std::vector<RatFunc> c;
    for (int j = 0; j <= r; ++j) {
        RatFunc v = Lr * (D(j) * frob_n(L(r - j), j)).inverse();
        // -(-1)^(r-j)
        c.push_back((r - j) % 2 == 0 ? -v : v);
    }
    return c;
}

RatFunc Tower::alpha(int d) const {
    RatFunc r = F_.c(1);
    for (int j = 2; j <= d; ++j) r = r * (F_.c(1) - bracket(2 * (j - 1)) * bracket(2 * j).inverse());
    return r;
}

RatFunc Tower::beta(int d) const {
    RatFunc r = F_.c(1);
    for (int j = 1; j <= d; ++j) r = r * (F_.c(1) - bracket(2 * j - 1) * bracket(2 * j + 1).inverse());
    return r;
}

RatFunc Tower::alpha_closed(int d) const {
    const long long q2 = q() * q();
    RatFunc den = F_.c(1);
    for (int j = 1; j <= d; ++j) den = den * bracket(2 * j);
    return power(bracket(2), (ipow(q2, d) - 1) / (q2 - 1)) * den.inverse();
}

RatFunc Tower::beta_closed(int d) const {
    const long long q2 = q() * q();
    RatFunc den = F_.c(1);
    for (int j = 0; j <= d; ++j) den = den * bracket(2 * j + 1);
    return bracket(1) * power(bracket(2), (ipow(q(), 2 * d + 1) - q()) / (q2 - 1)) * den.inverse();
}

RatFunc Tower::xi_exact(int d) const { return -(L(2 * d + 1) * L(2 * d).frob().inverse()); }

namespace {
RatFunc xi_prefactor(const Tower& tw) {
    const auto& F = tw.afield();
    const long long q = tw.q();
    return -(power(tw.bracket(1), 1 - q) * tw.bracket(2) * power(F.Ts * F.T.inverse(), q - 1));
}
}  // namespace

RatFunc Tower::xi_partial(int d) const {
    return xi_prefactor(*this) * power(alpha(d), q() - 1) * beta(d - 1).frob() * beta(d).inverse();
}

RatFunc Tower::xi_limit_form(int d) const {
    return xi_prefactor(*this) * power(alpha(d) * beta(d), q() - 1);
}

std::vector<RatFunc> brute_E(const domain::CtxPtr& ctx, int k, Word max_size) {
    const auto& f = ctx->z.field;
    const auto fq = ffield::make_field(f->p(), f->frob_deg(), {.frob_deg = f->frob_deg()});
    const ffield::Embedding emb(fq, f);
    const Word qq = fq->size();
    const unsigned n = 2 * static_cast<unsigned>(k) + 1;
    Word total = 1;
    for (unsigned i = 0; i < n; ++i) total *= qq;
    if (total > max_size) throw domain::DomainError("brute_E: |L(kP)| exceeds the size bound");
    const RatFunc zero = RatFunc::constant(f, 0), one = RatFunc::constant(f, 1);
    std::vector<RatFunc> poly{zero, one};
    for (Word idx = 1; idx < total; ++idx) {
        std::vector<Word> c(n);
        Word v = idx;
        for (unsigned i = 0; i < n; ++i) {
            c[i] = emb.apply(v % qq);
            v /= qq;
        }
        const RatFunc a = domain::from_rr_coords(ctx, c, static_cast<unsigned>(k)).to_ratfunc();
        const RatFunc m = -a.inverse();
        // poly * (1 + m X)
        std::vector<RatFunc> next(poly.size() + 1, zero);
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i] = next[i] + poly[i];
            if (!poly[i].is_zero()) next[i + 1] = next[i + 1] + poly[i] * m;
        }
        poly = std::move(next);
    }
    while (!poly.empty() && poly.back().is_zero()) poly.pop_back();
    return poly;
}

XiPow xi_pow(const Tower& tw, int d, int N) {
    XiPow r;
    r.d = d;
    r.exact = funcfield::expand_at_infinity(tw.xi_exact(d), tw.zeta(), N);
    r.limit_form = funcfield::expand_at_infinity(tw.xi_limit_form(d), tw.zeta(), N);
    r.agreement = funcfield::agreement_order(r.exact, r.limit_form);
    r.valuation = r.exact.val();
    return r;
}

nlohmann::json jsonify(const XiPow& x) {
    return {{"d", x.d}, {"valuation", x.valuation}, {"coeffs", funcfield::jsonify(x.exact)}, {"agreement_order", x.agreement}};
}

}  // namespace dmw::analytic
