// Laurent polynomials in one transcendental parameter (lambda or J) with the
// q-power map acting coefficientwise and sending the parameter to its q-th power.
#pragma once

#include <map>

#include "dmw/ring.hpp"

namespace dmw::symbolic {

template <QRing R>
class Sym {
  public:
    Sym() = default;
    explicit Sym(const R& proto) : z_(proto.zero()) {}
    Sym(const R& proto, std::map<long long, R> t) : z_(proto.zero()), t_(std::move(t)) { trim(); }
    static Sym constant(const R& a) { return Sym(a, {{0, a}}); }
    static Sym var(const R& proto, long long k = 1) { return Sym(proto, {{k, proto.one()}}); }

    const std::map<long long, R>& terms() const { return t_; }
    const R& proto() const { return z_; }

    Sym operator+(const Sym& o) const {
        auto r = t_;
        for (const auto& [e, c] : o.t_) {
            auto it = r.find(e);
            if (it == r.end())
                r.emplace(e, c);
            else
                it->second = it->second + c;
        }
        return Sym(z_, std::move(r));
    }
    Sym operator-() const {
        std::map<long long, R> r;
        for (const auto& [e, c] : t_) r.emplace(e, -c);
        return Sym(z_, std::move(r));
    }
    Sym operator-(const Sym& o) const { return *this + (-o); }
    Sym operator*(const Sym& o) const {
        std::map<long long, R> r;
        for (const auto& [e1, c1] : t_)
            for (const auto& [e2, c2] : o.t_) {
                const R p = c1 * c2;
                auto it = r.find(e1 + e2);
                if (it == r.end())
                    r.emplace(e1 + e2, p);
                else
                    it->second = it->second + p;
            }
        return Sym(z_, std::move(r));
    }
    Sym& operator+=(const Sym& o) { return *this = *this + o; }
    Sym& operator*=(const Sym& o) { return *this = *this * o; }
    bool operator==(const Sym& o) const {
        if (t_.size() != o.t_.size()) return false;
        auto a = t_.begin();
        auto b = o.t_.begin();
        for (; a != t_.end(); ++a, ++b)
            if (a->first != b->first || !(a->second == b->second)) return false;
        return true;
    }
    bool operator!=(const Sym& o) const { return !(*this == o); }

    bool is_zero() const { return t_.empty(); }
    // only monomials with unit coefficient are invertible
    bool is_unit() const { return t_.size() == 1 && t_.begin()->second.is_unit(); }
    Sym inverse() const {
        if (!is_unit()) throw RingError("symbolic inverse of a non-monomial");
        return Sym(z_, {{-t_.begin()->first, t_.begin()->second.inverse()}});
    }
    Sym zero() const { return Sym(z_); }
    Sym one() const { return constant(z_.one()); }
    Sym scalar(long long n) const { return constant(z_.scalar(n)); }
    long long q() const { return z_.q(); }
    Sym frob() const {
        std::map<long long, R> r;
        const long long qq = q();
        for (const auto& [e, c] : t_) r.emplace(e * qq, c.frob());
        return Sym(z_, std::move(r));
    }

    // Substitute a value for the parameter.
    R eval(const R& v) const {
        R acc = z_;
        for (const auto& [e, c] : t_) acc = acc + c * power(v, e);
        return acc;
    }

  private:
    void trim() {
        for (auto it = t_.begin(); it != t_.end();) {
            if (it->second.is_zero())
                it = t_.erase(it);
            else
                ++it;
        }
    }
    R z_;
    std::map<long long, R> t_;
};

template <QRing R>
nlohmann::json jsonify(const Sym<R>& a) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [e, c] : a.terms()) j.push_back({{"exp", e}, {"coef", jsonify(c)}});
    return {{"terms", j}};
}

}  // namespace dmw::symbolic
