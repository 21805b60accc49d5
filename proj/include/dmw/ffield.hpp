// Finite fields F_{p^e} with a designated Frobenius degree, and dense
// univariate polynomials over them.
#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace dmw::ffield {

// Elements are packed as sum c_i p^i (c_i the coordinates over F_p in the
// power basis of the modulus root). 128 bits cover every desk-scale tower.
using Word = unsigned __int128;

class FieldError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct FieldOptions {
    // tau acts as x -> x^(p^frob_deg); frob_deg must divide e.
    int frob_deg = 1;
    // make_field refuses fields larger than this.
    Word max_size = Word(1) << 20;
    // log/exp tables are built up to this size.
    Word table_size = Word(1) << 20;
};

class Field {
  public:
    Field(uint32_t p, int e, const FieldOptions& opt);

    uint32_t p() const { return p_; }
    int e() const { return e_; }
    int frob_deg() const { return frob_deg_; }
    Word size() const { return size_; }
    Word q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }
    bool primitive() const { return primitive_; }
    Word generator() const { return gen_; }
    bool has_tables() const { return !exp_.empty(); }

    Word add(Word a, Word b) const;
    Word sub(Word a, Word b) const { return add(a, neg(b)); }
    Word neg(Word a) const;
    Word mul(Word a, Word b) const;
    Word inv(Word a) const;
    Word div(Word a, Word b) const { return mul(a, inv(b)); }
    Word pow(Word a, Word n) const;
    Word pow_signed(Word a, long long n) const;
    // a^(p^k)
    Word pth(Word a, int k) const;
    // a^(q^k), q = p^frob_deg
    Word frob(Word a, int k = 1) const { return pth(a, k * frob_deg_); }
    Word from_int(long long n) const;
    Word one() const { return 1; }

    std::vector<uint32_t> digits(Word a) const;
    Word pack(const std::vector<uint32_t>& d) const;
    bool same(const Field& o) const;

  private:
    Word mul_slow(Word a, Word b) const;

    uint32_t p_;
    int e_;
    int frob_deg_;
    Word size_;
    Word q_;
    std::vector<uint32_t> modulus_;  // length e+1, monic
    bool primitive_ = false;
    Word gen_ = 0;
    Word modmask_ = 0;  // p = 2: modulus as bits, including X^e
    std::vector<uint32_t> exp_;   // length 2(n-1)
    std::vector<uint32_t> log_;   // length n
    std::vector<int64_t> zech_;   // log(1 + g^k), -1 if zero
};

using FieldPtr = std::shared_ptr<const Field>;

// Deterministic and memoised: equal arguments give the same descriptor.
FieldPtr make_field(uint32_t p, int e, const FieldOptions& opt = {});

bool is_prime(uint64_t n);
std::vector<uint64_t> prime_factors(Word n);

class FieldElem {
  public:
    FieldElem() = default;
    FieldElem(FieldPtr f, Word v) : f_(std::move(f)), v_(v) {}

    const FieldPtr& field() const { return f_; }
    Word value() const { return v_; }

    FieldElem operator+(const FieldElem& o) const { return {f_, f_->add(v_, o.v_)}; }
    FieldElem operator-(const FieldElem& o) const { return {f_, f_->sub(v_, o.v_)}; }
    FieldElem operator*(const FieldElem& o) const { return {f_, f_->mul(v_, o.v_)}; }
    FieldElem operator-() const { return {f_, f_->neg(v_)}; }
    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
    bool operator==(const FieldElem& o) const { return v_ == o.v_; }
    bool operator!=(const FieldElem& o) const { return v_ != o.v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_unit() const { return v_ != 0; }
    FieldElem inverse() const;
    FieldElem zero() const { return {f_, 0}; }
    FieldElem one() const { return {f_, 1}; }
    FieldElem scalar(long long n) const { return {f_, f_->from_int(n)}; }
    FieldElem frob() const { return {f_, f_->frob(v_, 1)}; }
    FieldElem frob(int k) const { return {f_, f_->frob(v_, k)}; }
    long long q() const { return static_cast<long long>(f_->q()); }
    FieldElem pow(long long n) const { return {f_, f_->pow_signed(v_, n)}; }

  private:
    FieldPtr f_;
    Word v_ = 0;
};

nlohmann::json jsonify(const FieldElem& a);
nlohmann::json word_json(const Field& f, Word a);
FieldElem elem_from_json(const FieldPtr& f, const nlohmann::json& j);
std::string word_str(Word w);

// Tr and N from a's field down to sub, expressed in sub's own representation.
struct TraceNorm {
    FieldElem trace;
    FieldElem norm;
};
TraceNorm trace_norm(const FieldElem& a, const FieldPtr& sub);

// a^(|base|^k)
FieldElem frobenius(const FieldElem& a, const FieldPtr& base, int k);

// All b with b^n = a, sorted by packed value.
std::vector<FieldElem> nth_roots(const FieldElem& a, long long n);

Word random_word(const Field& f, std::mt19937_64& rng);

// Dense polynomial over a finite field, low degree first, no trailing zeros.
class Poly {
  public:
    Poly() = default;
    explicit Poly(FieldPtr f) : f_(std::move(f)) {}
    Poly(FieldPtr f, std::vector<Word> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }
    static Poly constant(FieldPtr f, Word a) { return Poly(std::move(f), std::vector<Word>{a}); }
    static Poly monomial(FieldPtr f, Word a, size_t k);
    // t - a
    static Poly linear(FieldPtr f, Word a);

    const FieldPtr& field() const { return f_; }
    const std::vector<Word>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Word coef(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    Word lead() const { return c_.empty() ? 0 : c_.back(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scale(Word a) const;
    Poly shift(size_t k) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }

    // q^k-th power: coefficients raised and t -> t^(q^k).
    Poly frob(int k = 1) const;
    // Coefficientwise p^k-th power only.
    Poly map_coeffs_pth(int k) const;
    Word eval(Word x) const;
    Poly derivative() const;
    Poly monic() const;
    Poly pow(uint64_t n) const;
    // Taylor shift: f(t + a) as a polynomial in t.
    Poly taylor_shift(Word a) const;
    // Divide by (t - a) assuming it divides.
    Poly div_linear(Word a) const;

    void trim();

  private:
    FieldPtr f_;
    std::vector<Word> c_;
};

struct PolyDivMod {
    Poly quot;
    Poly rem;
};
PolyDivMod divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic, gcd(0,0) = 0
struct PolyXgcd {
    Poly g, s, t;  // s a + t b = g
};
PolyXgcd xgcd(const Poly& a, const Poly& b);
Poly powmod(const Poly& base, Word n, const Poly& m);

// Roots in the coefficient field, sorted by packed value, without multiplicity.
std::vector<Word> roots(const Poly& f, uint64_t seed = 1);

// Field homomorphism src -> dst fixed by the smallest root of src's modulus.
class Embedding {
  public:
    Embedding() = default;
    Embedding(FieldPtr src, FieldPtr dst);
    const FieldPtr& src() const { return src_; }
    const FieldPtr& dst() const { return dst_; }
    Word image_of_generator() const { return img_; }
    Word apply(Word a) const;
    FieldElem apply(const FieldElem& a) const { return {dst_, apply(a.value())}; }
    bool in_image(Word b) const;
    Word preimage(Word b) const;  // throws when b is outside the image

  private:
    FieldPtr src_, dst_;
    Word img_ = 0;
    std::vector<Word> powers_;  // img^i, i < src.e
};

}  // namespace dmw::ffield
