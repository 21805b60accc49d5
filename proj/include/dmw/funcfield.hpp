// Rational functions in t over a finite field, the subring with poles only at
// t = zeta and t = zeta^q, truncated Laurent series, and residues.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dmw/ffield.hpp"

namespace dmw::funcfield {

using ffield::FieldElem;
using ffield::FieldPtr;
using ffield::Poly;
using ffield::Word;

class RatFunc {
  public:
    RatFunc() = default;
    // Canonicalises: gcd removed, denominator monic.
    RatFunc(const Poly& num, const Poly& den);
    explicit RatFunc(const Poly& num);
    static RatFunc constant(const FieldPtr& f, Word a);
    static RatFunc var(const FieldPtr& f);

    const FieldPtr& field() const { return num_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const { return *this * o.inverse(); }
    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_unit() const { return !num_.is_zero(); }
    RatFunc inverse() const;
    RatFunc zero() const { return constant(field(), 0); }
    RatFunc one() const { return constant(field(), 1); }
    RatFunc scalar(long long n) const { return constant(field(), field()->from_int(n)); }
    RatFunc constant_like(Word a) const { return constant(field(), a); }
    RatFunc frob() const;
    long long q() const { return static_cast<long long>(field()->q()); }
    Word eval(Word x) const;

  private:
    struct Raw {};
    RatFunc(Raw, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
    Poly num_, den_;
};

nlohmann::json jsonify(const RatFunc& a);
nlohmann::json poly_json(const Poly& p);

// Order of vanishing of p at t = a.
int order_at(const Poly& p, Word a);
// Valuation of f at the place t = a.
int valuation_at(const RatFunc& f, Word a);

// Is f an r-th power in F(t)? r must be prime.
bool is_rth_power(const RatFunc& f, int r);
bool poly_is_rth_power(const Poly& f, int r);

// Constants tied to zeta, a generator of F_{q^2} inside the coefficient field.
struct ZetaData {
    FieldPtr field;
    long long q = 0;
    Word zeta = 0, zetaq = 0, tr = 0, nrm = 0;  // zeta, zeta^q, Tr(zeta), zeta^(q+1)
};

// field must have frob_deg f with 2f | e; zeta is the image of the generator
// of make_field(p, 2f) under the canonical embedding.
ZetaData zeta_data(const FieldPtr& field);

struct StdElements {
    RatFunc t, pi, T, Ts, x, y;
};
StdElements std_elements(const ZetaData& z);

// Ring F[t, 1/(t-z1), 1/(t-z2)]: value num / ((t-z1)^a (t-z2)^b).
struct SFracRing {
    FieldPtr field;
    Word z1 = 0, z2 = 0;
};

class SFrac {
  public:
    SFrac() = default;
    SFrac(std::shared_ptr<const SFracRing> R, Poly num, int a, int b);
    static SFrac constant(std::shared_ptr<const SFracRing> R, Word c);
    static SFrac var(std::shared_ptr<const SFracRing> R);

    const std::shared_ptr<const SFracRing>& ring() const { return R_; }
    const Poly& num() const { return num_; }
    int a() const { return a_; }
    int b() const { return b_; }

    SFrac operator+(const SFrac& o) const;
    SFrac operator-(const SFrac& o) const;
    SFrac operator*(const SFrac& o) const;
    SFrac operator-() const { return SFrac(R_, -num_, a_, b_); }
    bool operator==(const SFrac& o) const { return a_ == o.a_ && b_ == o.b_ && num_ == o.num_; }
    bool operator!=(const SFrac& o) const { return !(*this == o); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_unit() const;
    SFrac inverse() const;
    SFrac zero() const { return constant(R_, 0); }
    SFrac one() const { return constant(R_, 1); }
    SFrac scalar(long long n) const { return constant(R_, R_->field->from_int(n)); }
    SFrac constant_like(Word c) const { return constant(R_, c); }
    SFrac frob() const;
    long long q() const { return static_cast<long long>(R_->field->q()); }
    RatFunc to_ratfunc() const;

  private:
    void normalize();
    std::shared_ptr<const SFracRing> R_;
    Poly num_;
    int a_ = 0, b_ = 0;
};

nlohmann::json jsonify(const SFrac& a);
// Throws if f has poles outside {z1, z2}.
SFrac to_sfrac(const std::shared_ptr<const SFracRing>& R, const RatFunc& f);
bool is_rth_power(const SFrac& f, int r);

// Truncated Laurent series sum_{i<N} c_i u^(val+i).
class LaurentSeries {
  public:
    LaurentSeries() = default;
    LaurentSeries(FieldPtr f, long long val, std::vector<Word> c);
    static LaurentSeries zero_to(FieldPtr f, long long abs_prec);
    static LaurentSeries monomial(FieldPtr f, Word c, long long val, int N);

    const FieldPtr& field() const { return f_; }
    long long val() const { return val_; }
    const std::vector<Word>& coeffs() const { return c_; }
    int trunc() const { return static_cast<int>(c_.size()); }
    bool is_zero() const { return c_.empty() || c_[0] == 0; }
    long long abs_prec() const { return val_ + static_cast<long long>(c_.size()); }
    Word coef_at(long long k) const;

    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator-() const;
    LaurentSeries scale(Word a) const;
    LaurentSeries inverse() const;
    LaurentSeries pow(long long n) const;
    // q-th power (Frobenius of F and u -> u^q).
    LaurentSeries frob() const;
    LaurentSeries truncate(int N) const;

  private:
    void normalize();
    FieldPtr f_;
    long long val_ = 0;
    std::vector<Word> c_;
};

nlohmann::json jsonify(const LaurentSeries& s);

// Number of leading coefficients on which a and b agree (same valuation required).
int agreement_order(const LaurentSeries& a, const LaurentSeries& b);

// Expansion of f in u = t - a with N coefficients.
LaurentSeries expand_at(const RatFunc& f, Word a, int N);
// Expansion at the infinite place of A: uniformizer 1/T = t - zeta^q.
LaurentSeries expand_at_infinity(const RatFunc& f, const ZetaData& z, int N);
Word residue_at(const RatFunc& f, Word a);
Word residue_at_zeta(const RatFunc& f, const ZetaData& z);

}  // namespace dmw::funcfield
