#include "dmw/funcfield.hpp"

#include <algorithm>

namespace dmw::funcfield {

using ffield::Field;
using ffield::FieldError;

namespace {

Poly mul_linear_pow(Poly p, Word z, int times) {
    if (times <= 0 || p.is_zero()) return p;
    const Field& F = *p.field();
    const Word nz = F.neg(z);
    for (int k = 0; k < times; ++k) {
        std::vector<Word> c = p.coeffs();
        std::vector<Word> r(c.size() + 1, 0);
        for (size_t i = 0; i < c.size(); ++i) {
            r[i + 1] = F.add(r[i + 1], c[i]);
            r[i] = F.add(r[i], F.mul(nz, c[i]));
        }
        p = Poly(p.field(), std::move(r));
    }
    return p;
}

// Strip factors (t - z) from p; returns the count.
int strip_linear(Poly& p, Word z) {
    int k = 0;
    while (!p.is_zero() && p.degree() >= 1 && p.eval(z) == 0) {
        p = p.div_linear(z);
        ++k;
    }
    return k;
}

}  // namespace

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw FieldError("rational function with zero denominator");
    const FieldPtr& f = den.field();
    if (num.is_zero()) {
        num_ = Poly(f);
        den_ = Poly::constant(f, 1);
        return;
    }
    Poly g = ffield::gcd(num, den);
    Poly n = g.is_one() ? num : ffield::divmod(num, g).quot;
    Poly d = g.is_one() ? den : ffield::divmod(den, g).quot;
    const Word li = f->inv(d.lead());
    num_ = li == 1 ? n : n.scale(li);
    den_ = li == 1 ? d : d.scale(li);
}

RatFunc::RatFunc(const Poly& num) : num_(num), den_(Poly::constant(num.field(), 1)) {}

RatFunc RatFunc::constant(const FieldPtr& f, Word a) {
    return RatFunc(Raw{}, Poly::constant(f, a), Poly::constant(f, 1));
}

RatFunc RatFunc::var(const FieldPtr& f) {
    return RatFunc(Raw{}, Poly(f, std::vector<Word>{0, 1}), Poly::constant(f, 1));
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return zero();
    if (den_.is_one() && o.den_.is_one()) return RatFunc(Raw{}, num_ * o.num_, den_);
    Poly g1 = ffield::gcd(num_, o.den_), g2 = ffield::gcd(o.num_, den_);
    Poly a = g1.is_one() ? num_ : ffield::divmod(num_, g1).quot;
    Poly d = g1.is_one() ? o.den_ : ffield::divmod(o.den_, g1).quot;
    Poly c = g2.is_one() ? o.num_ : ffield::divmod(o.num_, g2).quot;
    Poly b = g2.is_one() ? den_ : ffield::divmod(den_, g2).quot;
    return RatFunc(Raw{}, a * c, b * d);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) {
        Poly n = num_ + o.num_;
        if (den_.is_one()) return RatFunc(Raw{}, n, den_);
        if (n.is_zero()) return zero();
        Poly h = ffield::gcd(n, den_);
        if (h.is_one()) return RatFunc(Raw{}, n, den_);
        return RatFunc(Raw{}, ffield::divmod(n, h).quot, ffield::divmod(den_, h).quot);
    }
    Poly g = ffield::gcd(den_, o.den_);
    Poly b1 = g.is_one() ? den_ : ffield::divmod(den_, g).quot;
    Poly d1 = g.is_one() ? o.den_ : ffield::divmod(o.den_, g).quot;
    Poly n = num_ * d1 + o.num_ * b1;
    if (n.is_zero()) return zero();
    Poly den = den_ * d1;
    if (g.is_one()) return RatFunc(Raw{}, n, den);
    Poly h = ffield::gcd(n, g);
    if (h.is_one()) return RatFunc(Raw{}, n, den);
    return RatFunc(Raw{}, ffield::divmod(n, h).quot, ffield::divmod(den, h).quot);
}

RatFunc RatFunc::operator-() const { return RatFunc(Raw{}, -num_, den_); }

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw FieldError("inverse of the zero rational function");
    const Word li = field()->inv(num_.lead());
    return RatFunc(Raw{}, den_.scale(li), num_.scale(li));
}

RatFunc RatFunc::frob() const { return RatFunc(Raw{}, num_.frob(), den_.frob()); }

Word RatFunc::eval(Word x) const {
    const Word d = den_.eval(x);
    if (d == 0) throw FieldError("evaluation at a pole");
    return field()->div(num_.eval(x), d);
}

nlohmann::json poly_json(const Poly& p) {
    nlohmann::json j = nlohmann::json::array();
    for (Word c : p.coeffs()) j.push_back(ffield::word_json(*p.field(), c));
    return j;
}

nlohmann::json jsonify(const RatFunc& a) { return {{"num", poly_json(a.num())}, {"den", poly_json(a.den())}}; }

int order_at(const Poly& p, Word a) {
    if (p.is_zero()) throw FieldError("order of the zero polynomial");
    Poly s = p;
    return strip_linear(s, a);
}

int valuation_at(const RatFunc& f, Word a) { return order_at(f.num(), a) - order_at(f.den(), a); }

bool poly_is_rth_power(const Poly& f, int r) {
    if (f.is_zero()) return true;
    const Field& F = *f.field();
    if (r <= 0) throw FieldError("r must be positive");
    if (static_cast<uint32_t>(r) == F.p()) {
        for (size_t i = 0; i < f.coeffs().size(); ++i)
            if (f.coeffs()[i] && i % F.p() != 0) return false;
        return true;
    }
    if (f.degree() % r != 0) return false;
    const Word n1 = F.size() - 1;
    Word g = static_cast<Word>(r), m = n1;
    while (m) {
        Word t = g % m;
        g = m;
        m = t;
    }
    if (F.pow(f.lead(), n1 / g) != 1) return false;
    const Poly mf = f.monic();
    const int k = f.degree() / r;
    // Reversed series: M(x) = x^(rk) mf(1/x), G = M^(1/r) solved top-down.
    std::vector<Word> M(static_cast<size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) M[static_cast<size_t>(i)] = mf.coef(static_cast<size_t>(r * k - i));
    std::vector<Word> G(static_cast<size_t>(k) + 1, 0);
    G[0] = 1;
    const Word rinv = F.inv(F.from_int(r));
    auto series_pow_coef = [&](int upto) {
        // coefficient of x^upto in G^r truncated
        std::vector<Word> acc(static_cast<size_t>(upto) + 1, 0);
        acc[0] = 1;
        for (int e = 0; e < r; ++e) {
            std::vector<Word> nx(static_cast<size_t>(upto) + 1, 0);
            for (int i = 0; i <= upto; ++i) {
                if (!acc[static_cast<size_t>(i)]) continue;
                for (int j = 0; i + j <= upto; ++j)
                    nx[static_cast<size_t>(i + j)] =
                        F.add(nx[static_cast<size_t>(i + j)], F.mul(acc[static_cast<size_t>(i)], G[static_cast<size_t>(j)]));
            }
            acc = std::move(nx);
        }
        return acc[static_cast<size_t>(upto)];
    };
    for (int i = 1; i <= k; ++i) {
        const Word c = series_pow_coef(i);  // with G_i = 0
        G[static_cast<size_t>(i)] = F.mul(F.sub(M[static_cast<size_t>(i)], c), rinv);
    }
    std::vector<Word> gc(static_cast<size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) gc[static_cast<size_t>(k - i)] = G[static_cast<size_t>(i)];
    Poly gp(f.field(), gc);
    return gp.pow(static_cast<uint64_t>(r)) == mf;
}

bool is_rth_power(const RatFunc& f, int r) { return poly_is_rth_power(f.num(), r) && poly_is_rth_power(f.den(), r); }

ZetaData zeta_data(const FieldPtr& field) {
    const int f = field->frob_deg();
    if (field->e() % (2 * f) != 0) throw FieldError("coefficient field does not contain F_{q^2}");
    ffield::FieldOptions opt;
    opt.frob_deg = f;
    auto F2 = ffield::make_field(field->p(), 2 * f, opt);
    ffield::Embedding emb(F2, field);
    ZetaData z;
    z.field = field;
    z.q = static_cast<long long>(field->q());
    z.zeta = emb.image_of_generator();
    z.zetaq = field->frob(z.zeta);
    z.tr = field->add(z.zeta, z.zetaq);
    z.nrm = field->mul(z.zeta, z.zetaq);
    return z;
}

StdElements std_elements(const ZetaData& z) {
    const FieldPtr& f = z.field;
    StdElements s;
    s.t = RatFunc::var(f);
    Poly pi(f, std::vector<Word>{z.nrm, f->neg(z.tr), 1});
    s.pi = RatFunc(pi);
    s.T = RatFunc(Poly::constant(f, 1), Poly::linear(f, z.zetaq));
    s.Ts = RatFunc(Poly::constant(f, 1), Poly::linear(f, z.zeta));
    s.x = RatFunc(Poly::constant(f, 1), pi);
    s.y = RatFunc(Poly(f, std::vector<Word>{0, 1}), pi);
    return s;
}

// ---------------------------------------------------------------- SFrac

SFrac::SFrac(std::shared_ptr<const SFracRing> R, Poly num, int a, int b) : R_(std::move(R)), num_(std::move(num)), a_(a), b_(b) {
    if (a_ < 0) {
        num_ = mul_linear_pow(num_, R_->z1, -a_);
        a_ = 0;
    }
    if (b_ < 0) {
        num_ = mul_linear_pow(num_, R_->z2, -b_);
        b_ = 0;
    }
    normalize();
}

SFrac SFrac::constant(std::shared_ptr<const SFracRing> R, Word c) {
    Poly p = Poly::constant(R->field, c);
    return SFrac(std::move(R), std::move(p), 0, 0);
}

SFrac SFrac::var(std::shared_ptr<const SFracRing> R) {
    Poly p(R->field, std::vector<Word>{0, 1});
    return SFrac(std::move(R), std::move(p), 0, 0);
}

void SFrac::normalize() {
    if (num_.is_zero()) {
        a_ = b_ = 0;
        return;
    }
    while (a_ > 0 && num_.eval(R_->z1) == 0) {
        num_ = num_.div_linear(R_->z1);
        --a_;
    }
    while (b_ > 0 && num_.eval(R_->z2) == 0) {
        num_ = num_.div_linear(R_->z2);
        --b_;
    }
}

SFrac SFrac::operator*(const SFrac& o) const {
    if (is_zero() || o.is_zero()) return zero();
    return SFrac(R_, num_ * o.num_, a_ + o.a_, b_ + o.b_);
}

SFrac SFrac::operator+(const SFrac& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    const int a = std::max(a_, o.a_), b = std::max(b_, o.b_);
    Poly n1 = mul_linear_pow(mul_linear_pow(num_, R_->z1, a - a_), R_->z2, b - b_);
    Poly n2 = mul_linear_pow(mul_linear_pow(o.num_, R_->z1, a - o.a_), R_->z2, b - o.b_);
    return SFrac(R_, n1 + n2, a, b);
}

SFrac SFrac::operator-(const SFrac& o) const { return *this + (-o); }

bool SFrac::is_unit() const {
    if (is_zero()) return false;
    Poly p = num_;
    strip_linear(p, R_->z1);
    strip_linear(p, R_->z2);
    return p.degree() == 0;
}

SFrac SFrac::inverse() const {
    if (is_zero()) throw FieldError("inverse of zero");
    Poly p = num_;
    const int i = strip_linear(p, R_->z1);
    const int j = strip_linear(p, R_->z2);
    if (p.degree() != 0) throw FieldError("SFrac inverse: numerator has zeros outside {zeta, zeta^q}");
    const Word ci = R_->field->inv(p.coef(0));
    Poly n = mul_linear_pow(mul_linear_pow(Poly::constant(R_->field, ci), R_->z1, a_), R_->z2, b_);
    return SFrac(R_, n, i, j);
}

SFrac SFrac::frob() const {
    const int qq = static_cast<int>(q());
    return SFrac(R_, num_.frob(), a_ * qq, b_ * qq);
}

RatFunc SFrac::to_ratfunc() const {
    Poly den = mul_linear_pow(mul_linear_pow(Poly::constant(R_->field, 1), R_->z1, a_), R_->z2, b_);
    return RatFunc(num_, den);
}

nlohmann::json jsonify(const SFrac& a) { return jsonify(a.to_ratfunc()); }

SFrac to_sfrac(const std::shared_ptr<const SFracRing>& R, const RatFunc& f) {
    Poly d = f.den();
    const int a = strip_linear(d, R->z1);
    const int b = strip_linear(d, R->z2);
    if (d.degree() != 0) throw FieldError("to_sfrac: pole outside {zeta, zeta^q}");
    return SFrac(R, f.num().scale(R->field->inv(d.coef(0))), a, b);
}

bool is_rth_power(const SFrac& f, int r) { return is_rth_power(f.to_ratfunc(), r); }

// ---------------------------------------------------------------- LaurentSeries

LaurentSeries::LaurentSeries(FieldPtr f, long long val, std::vector<Word> c) : f_(std::move(f)), val_(val), c_(std::move(c)) {
    normalize();
}

LaurentSeries LaurentSeries::zero_to(FieldPtr f, long long abs_prec) {
    LaurentSeries s;
    s.f_ = std::move(f);
    s.val_ = abs_prec;
    return s;
}

LaurentSeries LaurentSeries::monomial(FieldPtr f, Word c, long long val, int N) {
    std::vector<Word> v(static_cast<size_t>(std::max(N, 1)), 0);
    v[0] = c;
    return LaurentSeries(std::move(f), val, std::move(v));
}

void LaurentSeries::normalize() {
    size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    if (k > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(k));
        val_ += static_cast<long long>(k);
    }
}

Word LaurentSeries::coef_at(long long k) const {
    if (k < val_ || k >= abs_prec()) return 0;
    return c_[static_cast<size_t>(k - val_)];
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    if (c_.empty() || o.c_.empty()) {
        const long long p = c_.empty() ? (o.c_.empty() ? val_ + o.val_ : val_ + o.val_) : val_ + o.val_;
        return zero_to(f_ ? f_ : o.f_, p);
    }
    const size_t N = std::min(c_.size(), o.c_.size());
    const Field& F = *f_;
    std::vector<Word> r(N, 0);
    for (size_t i = 0; i < N; ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; i + j < N; ++j)
            if (o.c_[j]) r[i + j] = F.add(r[i + j], F.mul(c_[i], o.c_[j]));
    }
    return LaurentSeries(f_, val_ + o.val_, std::move(r));
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    const FieldPtr& f = f_ ? f_ : o.f_;
    const long long P = std::min(abs_prec(), o.abs_prec());
    const long long v = std::min(val_, o.val_);
    if (P <= v) return zero_to(f, P);
    std::vector<Word> r(static_cast<size_t>(P - v));
    for (long long k = v; k < P; ++k) r[static_cast<size_t>(k - v)] = f->add(coef_at(k), o.coef_at(k));
    LaurentSeries s(f, v, std::move(r));
    if (s.c_.empty()) s.val_ = P;
    return s;
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries s = *this;
    for (auto& c : s.c_) c = f_->neg(c);
    return s;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::scale(Word a) const {
    if (a == 0) return zero_to(f_, abs_prec());
    LaurentSeries s = *this;
    for (auto& c : s.c_) c = f_->mul(a, c);
    return s;
}

LaurentSeries LaurentSeries::inverse() const {
    if (c_.empty()) throw FieldError("inverse of a series that is zero to its precision");
    const Field& F = *f_;
    const size_t N = c_.size();
    std::vector<Word> h(N, 0);
    const Word i0 = F.inv(c_[0]);
    h[0] = i0;
    for (size_t n = 1; n < N; ++n) {
        Word s = 0;
        for (size_t j = 1; j <= n; ++j)
            if (c_[j] && h[n - j]) s = F.add(s, F.mul(c_[j], h[n - j]));
        h[n] = F.neg(F.mul(s, i0));
    }
    return LaurentSeries(f_, -val_, std::move(h));
}

LaurentSeries LaurentSeries::pow(long long n) const {
    if (n < 0) return inverse().pow(-n);
    LaurentSeries r = monomial(f_, 1, 0, trunc()), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

LaurentSeries LaurentSeries::frob() const {
    const size_t qq = static_cast<size_t>(f_->q());
    if (c_.empty()) return zero_to(f_, val_ * static_cast<long long>(qq));
    std::vector<Word> r(c_.size() * qq, 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i * qq] = f_->frob(c_[i], 1);
    return LaurentSeries(f_, val_ * static_cast<long long>(qq), std::move(r));
}

LaurentSeries LaurentSeries::truncate(int N) const {
    LaurentSeries s = *this;
    if (static_cast<int>(s.c_.size()) > N) s.c_.resize(static_cast<size_t>(N));
    return s;
}

nlohmann::json jsonify(const LaurentSeries& s) {
    nlohmann::json c = nlohmann::json::array();
    for (Word w : s.coeffs()) c.push_back(ffield::word_json(*s.field(), w));
    return {{"val", s.val()}, {"coeffs", c}, {"trunc", s.trunc()}};
}

int agreement_order(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.val() != b.val()) return 0;
    const size_t n = std::min(a.coeffs().size(), b.coeffs().size());
    size_t k = 0;
    while (k < n && a.coeffs()[k] == b.coeffs()[k]) ++k;
    return static_cast<int>(k);
}

LaurentSeries expand_at(const RatFunc& f, Word a, int N) {
    const FieldPtr& F = f.field();
    if (f.is_zero()) return LaurentSeries::zero_to(F, 0);
    Poly n = f.num().taylor_shift(a), d = f.den().taylor_shift(a);
    size_t kn = 0, kd = 0;
    while (n.coeffs()[kn] == 0) ++kn;
    while (d.coeffs()[kd] == 0) ++kd;
    std::vector<Word> nc(static_cast<size_t>(N), 0), dc(static_cast<size_t>(N), 0);
    for (size_t i = 0; i < static_cast<size_t>(N); ++i) {
        nc[i] = n.coef(kn + i);
        dc[i] = d.coef(kd + i);
    }
    LaurentSeries ns(F, 0, nc), ds(F, 0, dc);
    LaurentSeries r = ns * ds.inverse();
    return LaurentSeries(F, static_cast<long long>(kn) - static_cast<long long>(kd), r.coeffs());
}

LaurentSeries expand_at_infinity(const RatFunc& f, const ZetaData& z, int N) { return expand_at(f, z.zetaq, N); }

Word residue_at(const RatFunc& f, Word a) {
    if (f.is_zero()) return 0;
    const int v = valuation_at(f, a);
    if (v >= 0) return 0;
    LaurentSeries s = expand_at(f, a, -v);
    return s.coef_at(-1);
}

Word residue_at_zeta(const RatFunc& f, const ZetaData& z) { return residue_at(f, z.zeta); }

}  // namespace dmw::funcfield
