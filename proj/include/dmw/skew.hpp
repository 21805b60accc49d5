// Twisted polynomials R{tau} with tau * a = frob(a) * tau.
#pragma once

#include <vector>

#include "dmw/ring.hpp"

namespace dmw::skew {

template <QRing R>
class SkewPoly {
  public:
    SkewPoly() = default;
    // proto supplies the ring context for zero/one; any element of R works.
    explicit SkewPoly(const R& proto) : z_(proto.zero()) {}
    SkewPoly(const R& proto, std::vector<R> c) : z_(proto.zero()), c_(std::move(c)) { trim(); }
    static SkewPoly constant(const R& a) { return SkewPoly(a, {a}); }
    static SkewPoly tau(const R& proto, int k = 1) {
        std::vector<R> c(static_cast<size_t>(k) + 1, proto.zero());
        c.back() = proto.one();
        return SkewPoly(proto, std::move(c));
    }
    // tau + a
    static SkewPoly linear(const R& a) { return SkewPoly(a, {a, a.one()}); }

    const R& proto() const { return z_; }
    const std::vector<R>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    R coef(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(i)] : z_; }
    R lead() const { return c_.empty() ? z_ : c_.back(); }

    SkewPoly operator+(const SkewPoly& o) const {
        std::vector<R> r(std::max(c_.size(), o.c_.size()), z_);
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < c_.size() && i < o.c_.size())
                r[i] = c_[i] + o.c_[i];
            else
                r[i] = i < c_.size() ? c_[i] : o.c_[i];
        }
        return SkewPoly(z_, std::move(r));
    }
    SkewPoly operator-() const {
        std::vector<R> r;
        r.reserve(c_.size());
        for (const auto& a : c_) r.push_back(-a);
        return SkewPoly(z_, std::move(r));
    }
    SkewPoly operator-(const SkewPoly& o) const { return *this + (-o); }

    // sum a_i tau^i * sum b_j tau^j = sum a_i frob^i(b_j) tau^(i+j)
    SkewPoly operator*(const SkewPoly& o) const {
        if (is_zero() || o.is_zero()) return SkewPoly(z_);
        std::vector<R> r(c_.size() + o.c_.size() - 1, z_);
        std::vector<R> fb = o.c_;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i > 0)
                for (auto& b : fb) b = b.frob();
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < fb.size(); ++j)
                if (!fb[j].is_zero()) r[i + j] = r[i + j] + c_[i] * fb[j];
        }
        return SkewPoly(z_, std::move(r));
    }
    SkewPoly& operator+=(const SkewPoly& o) { return *this = *this + o; }
    SkewPoly& operator*=(const SkewPoly& o) { return *this = *this * o; }

    // a * f
    SkewPoly lmul(const R& a) const {
        std::vector<R> r;
        r.reserve(c_.size());
        for (const auto& c : c_) r.push_back(a * c);
        return SkewPoly(z_, std::move(r));
    }
    // f * a
    SkewPoly rmul(const R& a) const {
        std::vector<R> r;
        r.reserve(c_.size());
        R fa = a;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i > 0) fa = fa.frob();
            r.push_back(c_[i] * fa);
        }
        return SkewPoly(z_, std::move(r));
    }
    // apply frob to every coefficient
    SkewPoly map(auto&& f) const {
        std::vector<R> r;
        r.reserve(c_.size());
        for (const auto& c : c_) r.push_back(f(c));
        return SkewPoly(z_, std::move(r));
    }

    bool operator==(const SkewPoly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }
    bool operator!=(const SkewPoly& o) const { return !(*this == o); }

    SkewPoly monic() const {
        if (is_zero()) return *this;
        return lmul(lead().inverse());
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    R z_;
    std::vector<R> c_;
};

template <QRing R>
nlohmann::json jsonify(const SkewPoly<R>& f) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& a : f.coeffs()) c.push_back(jsonify(a));
    return {{"coeffs", c}};
}

template <QRing R>
SkewPoly<R> smul(const SkewPoly<R>& f, const SkewPoly<R>& g) {
    return f * g;
}

template <QRing R>
struct DivMod {
    SkewPoly<R> quot, rem;
};

// f = quot * g + rem, deg rem < deg g. Requires a unit leading coefficient in g.
template <QRing R>
DivMod<R> right_divmod(const SkewPoly<R>& f, const SkewPoly<R>& g) {
    if (g.is_zero()) throw RingError("right division by zero");
    const R lg = g.lead();
    if (!lg.is_unit()) throw RingError("right division: leading coefficient is not a unit");
    const int dg = g.degree();
    std::vector<R> linv{lg.inverse()};
    SkewPoly<R> r = f;
    std::vector<R> qc(static_cast<size_t>(std::max(f.degree() - dg + 1, 0)), f.proto());
    while (!r.is_zero() && r.degree() >= dg) {
        const int k = r.degree() - dg;
        while (static_cast<int>(linv.size()) <= k) linv.push_back(linv.back().frob());
        const R c = r.lead() * linv[static_cast<size_t>(k)];
        qc[static_cast<size_t>(k)] = c;
        std::vector<R> m(static_cast<size_t>(k) + 1, f.proto());
        m[static_cast<size_t>(k)] = c;
        SkewPoly<R> step = SkewPoly<R>(f.proto(), std::move(m)) * g;
        const int before = r.degree();
        r = r - step;
        if (!r.is_zero() && r.degree() >= before) throw RingError("right division: leading term did not cancel");
    }
    return {SkewPoly<R>(f.proto(), std::move(qc)), r};
}

// Monic greatest common right divisor; normalises once at the end.
template <QRing R>
SkewPoly<R> right_gcd(SkewPoly<R> f, SkewPoly<R> g) {
    if (f.is_zero() && g.is_zero()) throw RingError("right_gcd of two zeros");
    while (!g.is_zero()) {
        auto dm = right_divmod(f, g);
        f = std::move(g);
        g = std::move(dm.rem);
    }
    return f.monic();
}

// sum c_i xi^(q^i), with coefficients mapped into xi's ring by emb.
template <QRing R, class E, class Emb>
E evaluate(const SkewPoly<R>& f, const E& xi, Emb&& emb) {
    E acc = xi.zero();
    E p = xi;
    for (int i = 0; i <= f.degree(); ++i) {
        if (i > 0) p = p.frob();
        const R& c = f.coeffs()[static_cast<size_t>(i)];
        if (!c.is_zero()) acc = acc + emb(c) * p;
    }
    return acc;
}

template <QRing R>
R evaluate(const SkewPoly<R>& f, const R& xi) {
    return evaluate(f, xi, [](const R& c) { return c; });
}

}  // namespace dmw::skew
