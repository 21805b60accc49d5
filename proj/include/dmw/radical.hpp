// Simple radical extensions Base[X]/(X^n - c), with q-power map extended by
// rho -> rho^q. Towers are built by nesting.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dmw/ffield.hpp"
#include "dmw/ring.hpp"

namespace dmw::radical {

template <QRing B>
struct RadicalCtx {
    int n = 1;
    B c;
    std::vector<B> cpow;  // c^k, k <= q
};

template <QRing B>
class Radical {
  public:
    using Ctx = std::shared_ptr<const RadicalCtx<B>>;

    Radical() = default;
    Radical(Ctx ctx, std::vector<B> a) : ctx_(std::move(ctx)), a_(std::move(a)) {}

    static Radical embed(const Ctx& ctx, const B& b) {
        std::vector<B> a(static_cast<size_t>(ctx->n), b.zero());
        a[0] = b;
        return Radical(ctx, std::move(a));
    }
    // the designated root
    static Radical root(const Ctx& ctx) {
        if (ctx->n == 1) return embed(ctx, ctx->c);
        std::vector<B> a(static_cast<size_t>(ctx->n), ctx->c.zero());
        a[1] = ctx->c.one();
        return Radical(ctx, std::move(a));
    }

    const Ctx& ctx() const { return ctx_; }
    const std::vector<B>& coords() const { return a_; }
    int n() const { return ctx_->n; }
    bool in_base() const {
        for (size_t i = 1; i < a_.size(); ++i)
            if (!a_[i].is_zero()) return false;
        return true;
    }
    const B& base_part() const { return a_[0]; }

    Radical operator+(const Radical& o) const {
        std::vector<B> r(a_.size(), a_[0]);
        for (size_t i = 0; i < a_.size(); ++i) r[i] = a_[i] + o.a_[i];
        return Radical(ctx_, std::move(r));
    }
    Radical operator-(const Radical& o) const {
        std::vector<B> r(a_.size(), a_[0]);
        for (size_t i = 0; i < a_.size(); ++i) r[i] = a_[i] - o.a_[i];
        return Radical(ctx_, std::move(r));
    }
    Radical operator-() const {
        std::vector<B> r(a_.size(), a_[0]);
        for (size_t i = 0; i < a_.size(); ++i) r[i] = -a_[i];
        return Radical(ctx_, std::move(r));
    }
    Radical operator*(const Radical& o) const {
        const size_t n = a_.size();
        const B z = a_[0].zero();
        std::vector<B> hi(n, z), lo(n, z);
        for (size_t i = 0; i < n; ++i) {
            if (a_[i].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) {
                if (o.a_[j].is_zero()) continue;
                const B p = a_[i] * o.a_[j];
                if (i + j < n)
                    lo[i + j] = lo[i + j] + p;
                else
                    hi[i + j - n] = hi[i + j - n] + p;
            }
        }
        for (size_t k = 0; k < n; ++k)
            if (!hi[k].is_zero()) lo[k] = lo[k] + ctx_->c * hi[k];
        return Radical(ctx_, std::move(lo));
    }
    Radical& operator+=(const Radical& o) { return *this = *this + o; }
    Radical& operator*=(const Radical& o) { return *this = *this * o; }
    bool operator==(const Radical& o) const {
        for (size_t i = 0; i < a_.size(); ++i)
            if (!(a_[i] == o.a_[i])) return false;
        return true;
    }
    bool operator!=(const Radical& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& b : a_)
            if (!b.is_zero()) return false;
        return true;
    }
    Radical zero() const { return embed(ctx_, a_[0].zero()); }
    Radical one() const { return embed(ctx_, a_[0].one()); }
    Radical scalar(long long k) const { return embed(ctx_, a_[0].scalar(k)); }
    long long q() const { return a_[0].q(); }

    // sum frob(a_i) rho^(iq), rho^n = c
    Radical frob() const {
        const size_t n = a_.size();
        const long long qq = q();
        std::vector<B> r(n, a_[0].zero());
        for (size_t i = 0; i < n; ++i) {
            if (a_[i].is_zero()) continue;
            const long long e = static_cast<long long>(i) * qq;
            const size_t k = static_cast<size_t>(e / static_cast<long long>(n));
            const size_t pos = static_cast<size_t>(e % static_cast<long long>(n));
            B v = a_[i].frob();
            if (k > 0) v = v * cpow(k);
            r[pos] = r[pos] + v;
        }
        return Radical(ctx_, std::move(r));
    }

    // norm down to the base: determinant of multiplication by *this
    B norm() const {
        auto M = mult_matrix();
        std::map<unsigned, B> memo;
        return det_cols(M, full_mask(), memo);
    }
    bool is_unit() const { return norm().is_unit(); }
    Radical inverse() const {
        if (in_base()) return embed(ctx_, a_[0].inverse());
        auto M = mult_matrix();
        std::map<unsigned, B> memo;
        const unsigned full = full_mask();
        const B d = det_cols(M, full, memo);
        if (!d.is_unit()) throw RingError("radical inverse: norm is not a unit");
        const B di = d.inverse();
        const size_t n = a_.size();
        std::vector<B> x(n, d.zero());
        for (size_t i = 0; i < n; ++i) {
            B cof = det_cols(M, full & ~(1u << i), memo);
            if (i % 2 == 1) cof = -cof;
            x[i] = cof * di;
        }
        return Radical(ctx_, std::move(x));
    }

  private:
    const B& cpow(size_t k) const {
        if (k >= ctx_->cpow.size()) throw RingError("radical: power table too short");
        return ctx_->cpow[k];
    }
    unsigned full_mask() const { return (1u << a_.size()) - 1u; }
    // column j = coordinates of (*this) * rho^j
    std::vector<std::vector<B>> mult_matrix() const {
        const size_t n = a_.size();
        std::vector<std::vector<B>> M(n, std::vector<B>(n, a_[0].zero()));
        for (size_t j = 0; j < n; ++j)
            for (size_t i = 0; i < n; ++i) {
                const size_t e = i + j;
                if (e < n)
                    M[e][j] = a_[i];
                else
                    M[e - n][j] = ctx_->c * a_[i];
            }
        return M;
    }
    // determinant of rows (n - |mask|)..n-1 restricted to columns in mask
    static B det_cols(const std::vector<std::vector<B>>& M, unsigned mask, std::map<unsigned, B>& memo) {
        const size_t n = M.size();
        const int k = __builtin_popcount(mask);
        if (k == 0) return M[0][0].one();
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        const size_t row = n - static_cast<size_t>(k);
        B acc = M[0][0].zero();
        int pos = 0;
        for (size_t j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            if (!M[row][j].is_zero()) {
                B term = M[row][j] * det_cols(M, mask & ~(1u << j), memo);
                acc = (pos % 2 == 0) ? acc + term : acc - term;
            }
            ++pos;
        }
        memo.emplace(mask, acc);
        return acc;
    }

    Ctx ctx_;
    std::vector<B> a_;
};

template <QRing B>
nlohmann::json jsonify(const Radical<B>& a) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& b : a.coords()) c.push_back(jsonify(b));
    return {{"root_degree", a.n()}, {"coords", c}};
}

// Base[X]/(X^n - c). With check = true the irreducibility criterion is applied
// whenever the base supports r-th power tests; a violation names the exponent.
template <QRing B>
std::shared_ptr<const RadicalCtx<B>> radical_extend(const B& c, int n, bool check = true) {
    if (n < 1) throw RingError("radical_extend: n must be positive");
    if (c.is_zero()) throw RingError("radical_extend: zero radicand");
    if constexpr (requires(const B& b) { is_rth_power(b, 2); }) {
        if (check) {
            for (auto r : ffield::prime_factors(static_cast<ffield::Word>(n)))
                if (is_rth_power(c, static_cast<int>(r)))
                    throw RingError("radical_extend: X^" + std::to_string(n) + " - c is reducible (c is a " +
                                    std::to_string(r) + "-th power)");
            if (n % 4 == 0) {
                const B four = c.scalar(4);
                if (!four.is_zero() && is_rth_power(-(c * four.inverse()), 4))
                    throw RingError("radical_extend: X^" + std::to_string(n) + " - c is reducible (c in -4 K^4)");
            }
        }
    }
    auto ctx = std::make_shared<RadicalCtx<B>>();
    ctx->n = n;
    ctx->c = c;
    ctx->cpow.push_back(c.one());
    for (long long k = 1; k <= c.q(); ++k) ctx->cpow.push_back(ctx->cpow.back() * c);
    return ctx;
}

}  // namespace dmw::radical
