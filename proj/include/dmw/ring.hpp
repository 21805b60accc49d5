// Requirements on coefficient rings of twisted polynomials, and small
// generic helpers.
#pragma once

#include <concepts>
#include <stdexcept>

#include <json.hpp>

namespace dmw {

class RingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A commutative ring carrying its own context, with a designated q-power
// endomorphism frob(). Elements know their ring, so zero()/one() need no
// external handle.
template <class R>
concept QRing = std::copyable<R> && requires(const R& a, const R& b, long long n) {
    { a + b } -> std::same_as<R>;
    { a - b } -> std::same_as<R>;
    { a * b } -> std::same_as<R>;
    { -a } -> std::same_as<R>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.is_unit() } -> std::convertible_to<bool>;
    { a.inverse() } -> std::same_as<R>;
    { a.zero() } -> std::same_as<R>;
    { a.one() } -> std::same_as<R>;
    { a.scalar(n) } -> std::same_as<R>;
    { a.frob() } -> std::same_as<R>;
    { a.q() } -> std::convertible_to<long long>;
    { jsonify(a) } -> std::same_as<nlohmann::json>;
};

template <QRing R>
R frob_n(const R& a, int k) {
    R r = a;
    for (int i = 0; i < k; ++i) r = r.frob();
    return r;
}

// a^n; negative n requires a unit.
template <QRing R>
R power(const R& a, long long n) {
    if (n < 0) return power(a.inverse(), -n);
    R r = a.one(), b = a;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

template <QRing R>
R divide(const R& a, const R& b) {
    return a * b.inverse();
}

}  // namespace dmw
