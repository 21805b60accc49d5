#include "dmw/ffield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

namespace dmw::ffield {

namespace {

using PV = std::vector<uint32_t>;  // polynomial over F_p, low degree first

uint32_t mulp(uint32_t a, uint32_t b, uint32_t p) {
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
}

uint32_t invp(uint32_t a, uint32_t p) {
    // Fermat
    uint64_t r = 1, b = a % p, n = p - 2;
    while (n) {
        if (n & 1) r = r * b % p;
        b = b * b % p;
        n >>= 1;
    }
    return static_cast<uint32_t>(r);
}

void ptrim(PV& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PV pmod(PV a, const PV& m, uint32_t p) {
    ptrim(a);
    const size_t dm = m.size() - 1;
    const uint32_t li = invp(m.back(), p);
    while (a.size() > dm && !a.empty()) {
        const uint32_t c = mulp(a.back(), li, p);
        const size_t sh = a.size() - 1 - dm;
        for (size_t i = 0; i <= dm; ++i) a[sh + i] = (a[sh + i] + p - mulp(c, m[i], p)) % p;
        ptrim(a);
    }
    return a;
}

PV pmulmod(const PV& a, const PV& b, const PV& m, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PV r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulp(a[i], b[j], p)) % p;
    }
    return pmod(r, m, p);
}

PV ppowmod(PV b, Word n, const PV& m, uint32_t p) {
    PV r{1};
    r = pmod(r, m, p);
    b = pmod(b, m, p);
    while (n) {
        if (n & 1) r = pmulmod(r, b, m, p);
        n >>= 1;
        if (n) b = pmulmod(b, b, m, p);
    }
    return r;
}

PV pgcd(PV a, PV b, uint32_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        PV r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

PV psub(PV a, const PV& b, uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    ptrim(a);
    return a;
}

Word wpow(Word b, int e) {
    Word r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// Rabin's test.
bool irreducible(const PV& f, uint32_t p) {
    const int e = static_cast<int>(f.size()) - 1;
    if (e == 1) return true;
    if (f[0] == 0) return false;
    const PV x{0, 1};
    auto frob_iter = [&](int k) {
        PV h = x;
        for (int i = 0; i < k; ++i) h = ppowmod(h, p, f, p);
        return h;
    };
    if (!psub(frob_iter(e), x, p).empty()) return false;
    for (uint64_t r : prime_factors(static_cast<Word>(e))) {
        PV h = psub(frob_iter(e / static_cast<int>(r)), x, p);
        PV g = pgcd(f, h, p);
        if (g.size() != 1) return false;
    }
    return true;
}

bool primitive_root_of(const PV& f, uint32_t p, Word n) {
    const Word ord = n - 1;
    for (uint64_t r : prime_factors(ord)) {
        PV h = ppowmod(PV{0, 1}, ord / r, f, p);
        if (h == PV{1}) return false;
    }
    return true;
}

uint64_t modpow_u64(uint64_t b, uint64_t e, uint64_t m) {
    if (m == 1) return 0;
    unsigned __int128 r = 1, bb = b % m;
    while (e) {
        if (e & 1) r = r * bb % m;
        bb = bb * bb % m;
        e >>= 1;
    }
    return static_cast<uint64_t>(r);
}

}  // namespace

std::string word_str(Word w) {
    if (w == 0) return "0";
    std::string s;
    while (w) {
        s.push_back(static_cast<char>('0' + static_cast<int>(w % 10)));
        w /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint64_t> prime_factors(Word n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; static_cast<Word>(d) * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) {
        if (n >> 64) throw FieldError("prime_factors: cofactor exceeds 64 bits");
        out.push_back(static_cast<uint64_t>(n));
    }
    return out;
}

Field::Field(uint32_t p, int e, const FieldOptions& opt) : p_(p), e_(e), frob_deg_(opt.frob_deg) {
    if (!is_prime(p)) throw FieldError("make_field: characteristic " + std::to_string(p) + " is not prime");
    if (e < 1) throw FieldError("make_field: extension degree must be positive");
    if (frob_deg_ < 1 || e % frob_deg_ != 0) throw FieldError("make_field: frob_deg must divide e");
    Word s = 1;
    for (int i = 0; i < e; ++i) {
        if (s > (Word(1) << 120) / p) throw FieldError("make_field: field too large for packed words");
        s *= p;
    }
    size_ = s;
    q_ = wpow(p, frob_deg_);
    if (size_ > opt.max_size) throw FieldError("make_field: size bound exceeded (p^e = " + word_str(size_) + ")");
    const bool want_tables = size_ <= opt.table_size;

    if (e == 1) {
        // X + c with root -c; the smallest c whose root is a primitive root.
        for (uint32_t c = 0; c < p; ++c) {
            const uint32_t r = (p - c) % p;
            if (r == 0) continue;
            bool prim = true;
            for (uint64_t f : prime_factors(p - 1))
                if (modpow_u64(r, (p - 1) / f, p) == 1) prim = false;
            if (prim) {
                modulus_ = {c, 1};
                gen_ = r;
                primitive_ = true;
                break;
            }
        }
    } else {
        PV first_irr;
        for (Word v = 0; v < size_; ++v) {
            PV f(static_cast<size_t>(e) + 1, 0);
            Word w = v;
            for (int i = 0; i < e; ++i) {
                f[static_cast<size_t>(i)] = static_cast<uint32_t>(w % p);
                w /= p;
            }
            f[static_cast<size_t>(e)] = 1;
            if (f[0] == 0) continue;
            if (!irreducible(f, p)) continue;
            if (!want_tables) {
                first_irr = f;
                break;
            }
            if (primitive_root_of(f, p, size_)) {
                first_irr = f;
                primitive_ = true;
                break;
            }
        }
        modulus_ = first_irr;
        gen_ = p;  // the class of X
    }
    if (p == 2) {
        modmask_ = 0;
        for (int i = 0; i <= e; ++i)
            if (modulus_[static_cast<size_t>(i)]) modmask_ |= Word(1) << i;
    }
    if (want_tables && primitive_) {
        const uint64_t n = static_cast<uint64_t>(size_);
        exp_.assign(2 * (n - 1), 0);
        log_.assign(n, 0);
        Word g = 1;
        for (uint64_t i = 0; i < n - 1; ++i) {
            exp_[i] = static_cast<uint32_t>(g);
            exp_[i + n - 1] = static_cast<uint32_t>(g);
            log_[static_cast<size_t>(g)] = static_cast<uint32_t>(i);
            g = mul_slow(g, gen_);
        }
        if (p != 2) {
            zech_.assign(n - 1, -1);
            for (uint64_t k = 0; k < n - 1; ++k) {
                auto d = digits(exp_[k]);
                d[0] = (d[0] + 1) % p;
                Word s1 = pack(d);
                zech_[k] = s1 == 0 ? -1 : static_cast<int64_t>(log_[static_cast<size_t>(s1)]);
            }
        }
    }
}

std::vector<uint32_t> Field::digits(Word a) const {
    std::vector<uint32_t> d(static_cast<size_t>(e_), 0);
    if (p_ == 2) {
        for (int i = 0; i < e_; ++i) d[static_cast<size_t>(i)] = static_cast<uint32_t>((a >> i) & 1);
        return d;
    }
    int i = 0;
    while (a >> 64) {
        d[static_cast<size_t>(i++)] = static_cast<uint32_t>(a % p_);
        a /= p_;
    }
    uint64_t s = static_cast<uint64_t>(a);
    while (s) {
        d[static_cast<size_t>(i++)] = static_cast<uint32_t>(s % p_);
        s /= p_;
    }
    return d;
}

Word Field::pack(const std::vector<uint32_t>& d) const {
    Word r = 0;
    if (p_ == 2) {
        for (size_t i = 0; i < d.size(); ++i)
            if (d[i] & 1) r |= Word(1) << i;
        return r;
    }
    for (size_t i = d.size(); i-- > 0;) r = r * p_ + d[i] % p_;
    return r;
}

Word Field::add(Word a, Word b) const {
    if (p_ == 2) return a ^ b;
    if (e_ == 1) return (a + b) % p_;
    if (!zech_.empty()) {
        if (a == 0) return b;
        if (b == 0) return a;
        const uint64_t n1 = static_cast<uint64_t>(size_) - 1;
        const uint64_t la = log_[static_cast<size_t>(a)], lb = log_[static_cast<size_t>(b)];
        const uint64_t k = (lb + n1 - la) % n1;
        const int64_t z = zech_[k];
        if (z < 0) return 0;
        return exp_[la + static_cast<uint64_t>(z)];
    }
    auto da = digits(a), db = digits(b);
    for (size_t i = 0; i < da.size(); ++i) da[i] = (da[i] + db[i]) % p_;
    return pack(da);
}

Word Field::neg(Word a) const {
    if (p_ == 2 || a == 0) return a;
    if (e_ == 1) return (p_ - a % p_) % p_;
    auto d = digits(a);
    for (auto& x : d) x = (p_ - x) % p_;
    return pack(d);
}

Word Field::mul_slow(Word a, Word b) const {
    if (a == 0 || b == 0) return 0;
    if (e_ == 1) return static_cast<Word>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b) % p_);
    if (p_ == 2) {
        Word r = 0, aa = a;
        for (int i = 0; i < e_; ++i) {
            if ((b >> i) & 1) r ^= aa;
            aa <<= 1;
            if ((aa >> e_) & 1) aa ^= modmask_;
        }
        return r;
    }
    auto da = digits(a), db = digits(b);
    std::vector<uint64_t> r(2 * static_cast<size_t>(e_) - 1, 0);
    for (int i = 0; i < e_; ++i) {
        if (!da[static_cast<size_t>(i)]) continue;
        for (int j = 0; j < e_; ++j)
            r[static_cast<size_t>(i + j)] =
                (r[static_cast<size_t>(i + j)] + static_cast<uint64_t>(da[static_cast<size_t>(i)]) * db[static_cast<size_t>(j)]) % p_;
    }
    for (int k = 2 * e_ - 2; k >= e_; --k) {
        const uint64_t c = r[static_cast<size_t>(k)];
        if (!c) continue;
        for (int i = 0; i <= e_; ++i)
            r[static_cast<size_t>(k - e_ + i)] =
                (r[static_cast<size_t>(k - e_ + i)] + (p_ - c) * modulus_[static_cast<size_t>(i)]) % p_;
    }
    std::vector<uint32_t> out(static_cast<size_t>(e_));
    for (int i = 0; i < e_; ++i) out[static_cast<size_t>(i)] = static_cast<uint32_t>(r[static_cast<size_t>(i)]);
    return pack(out);
}

Word Field::mul(Word a, Word b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) return exp_[log_[static_cast<size_t>(a)] + log_[static_cast<size_t>(b)]];
    return mul_slow(a, b);
}

Word Field::pow(Word a, Word n) const {
    if (n == 0) return 1;
    if (a == 0) return 0;
    if (!exp_.empty()) {
        const uint64_t n1 = static_cast<uint64_t>(size_) - 1;
        const uint64_t k = static_cast<uint64_t>(n % n1);
        return exp_[static_cast<uint64_t>(static_cast<Word>(log_[static_cast<size_t>(a)]) * k % n1)];
    }
    Word r = 1, b = a;
    while (n) {
        if (n & 1) r = mul(r, b);
        n >>= 1;
        if (n) b = mul(b, b);
    }
    return r;
}

Word Field::pow_signed(Word a, long long n) const {
    if (n >= 0) return pow(a, static_cast<Word>(n));
    return pow(inv(a), static_cast<Word>(-static_cast<__int128>(n)));
}

Word Field::inv(Word a) const {
    if (a == 0) throw FieldError("inverse of zero");
    if (!exp_.empty()) {
        const uint64_t n1 = static_cast<uint64_t>(size_) - 1;
        return exp_[(n1 - log_[static_cast<size_t>(a)]) % n1];
    }
    return pow(a, size_ - 2);
}

Word Field::pth(Word a, int k) const {
    k %= e_;
    if (k < 0) k += e_;
    if (a == 0 || k == 0) return a;
    if (!exp_.empty()) {
        const uint64_t n1 = static_cast<uint64_t>(size_) - 1;
        const uint64_t m = modpow_u64(p_, static_cast<uint64_t>(k), n1);
        return exp_[static_cast<uint64_t>(static_cast<Word>(log_[static_cast<size_t>(a)]) * m % n1)];
    }
    for (int i = 0; i < k; ++i) a = pow(a, p_);
    return a;
}

Word Field::from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Word>(r);
}

bool Field::same(const Field& o) const {
    return this == &o || (p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_);
}

FieldPtr make_field(uint32_t p, int e, const FieldOptions& opt) {
    static std::mutex mu;
    static std::map<std::tuple<uint32_t, int, int, uint64_t, uint64_t>, FieldPtr> cache;
    const auto key = std::make_tuple(p, e, opt.frob_deg, static_cast<uint64_t>(opt.table_size),
                                     static_cast<uint64_t>(std::min<Word>(opt.max_size, ~uint64_t(0))));
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const Field>(p, e, opt);
    cache.emplace(key, f);
    return f;
}

FieldElem FieldElem::inverse() const { return {f_, f_->inv(v_)}; }

nlohmann::json word_json(const Field& f, Word a) {
    nlohmann::json j = nlohmann::json::array();
    for (uint32_t d : f.digits(a)) j.push_back(d);
    return j;
}

nlohmann::json jsonify(const FieldElem& a) { return word_json(*a.field(), a.value()); }

FieldElem elem_from_json(const FieldPtr& f, const nlohmann::json& j) {
    if (j.is_number_integer()) return {f, f->from_int(j.get<long long>())};
    if (!j.is_array() || static_cast<int>(j.size()) > f->e()) throw FieldError("field element JSON must be a digit array");
    std::vector<uint32_t> d(static_cast<size_t>(f->e()), 0);
    for (size_t i = 0; i < j.size(); ++i) {
        long long v = j[i].get<long long>();
        if (v < 0 || v >= static_cast<long long>(f->p())) throw FieldError("digit out of range");
        d[i] = static_cast<uint32_t>(v);
    }
    return {f, f->pack(d)};
}

TraceNorm trace_norm(const FieldElem& a, const FieldPtr& sub) {
    const Field& F = *a.field();
    if (sub->p() != F.p() || F.e() % sub->e() != 0) throw FieldError("trace_norm: not a subfield");
    const int k = F.e() / sub->e();
    Word tr = 0, nm = 1;
    for (int i = 0; i < k; ++i) {
        const Word c = F.pth(a.value(), sub->e() * i);
        tr = F.add(tr, c);
        nm = F.mul(nm, c);
    }
    Embedding emb(sub, a.field());
    return {{sub, emb.preimage(tr)}, {sub, emb.preimage(nm)}};
}

FieldElem frobenius(const FieldElem& a, const FieldPtr& base, int k) {
    const Field& F = *a.field();
    if (base->p() != F.p() || F.e() % base->e() != 0) throw FieldError("frobenius: base is not a subfield");
    return {a.field(), F.pth(a.value(), base->e() * k)};
}

std::vector<FieldElem> nth_roots(const FieldElem& a, long long n) {
    if (n <= 0) throw FieldError("nth_roots: n must be positive");
    const Field& F = *a.field();
    std::vector<FieldElem> out;
    if (F.size() <= (Word(1) << 20)) {
        for (Word v = 0; v < F.size(); ++v)
            if (F.pow(v, static_cast<Word>(n)) == a.value()) out.emplace_back(a.field(), v);
        return out;
    }
    std::vector<Word> c(static_cast<size_t>(n) + 1, 0);
    c[0] = F.neg(a.value());
    c[static_cast<size_t>(n)] = 1;
    for (Word r : roots(Poly(a.field(), c))) out.emplace_back(a.field(), r);
    return out;
}

Word random_word(const Field& f, std::mt19937_64& rng) {
    Word w = (static_cast<Word>(rng()) << 64) | rng();
    return w % f.size();
}

// ---------------------------------------------------------------- Poly

Poly Poly::monomial(FieldPtr f, Word a, size_t k) {
    std::vector<Word> c(k + 1, 0);
    c[k] = a;
    return Poly(std::move(f), std::move(c));
}

Poly Poly::linear(FieldPtr f, Word a) {
    const Word na = f->neg(a);
    return Poly(f, std::vector<Word>{na, 1});
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
    const FieldPtr& f = f_ ? f_ : o.f_;
    std::vector<Word> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f->add(coef(i), o.coef(i));
    return Poly(f, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    const FieldPtr& f = f_ ? f_ : o.f_;
    std::vector<Word> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f->sub(coef(i), o.coef(i));
    return Poly(f, std::move(r));
}

Poly Poly::operator-() const {
    std::vector<Word> r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = f_->neg(c_[i]);
    return Poly(f_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    const FieldPtr& f = f_ ? f_ : o.f_;
    if (c_.empty() || o.c_.empty()) return Poly(f);
    std::vector<Word> r(c_.size() + o.c_.size() - 1, 0);
    const Field& F = *f;
    if (F.p() == 2) {
        for (size_t i = 0; i < c_.size(); ++i) {
            const Word a = c_[i];
            if (!a) continue;
            if (a == 1) {
                for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] ^= o.c_[j];
            } else {
                for (size_t j = 0; j < o.c_.size(); ++j)
                    if (o.c_[j]) r[i + j] ^= F.mul(a, o.c_[j]);
            }
        }
    } else {
        for (size_t i = 0; i < c_.size(); ++i) {
            const Word a = c_[i];
            if (!a) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                if (o.c_[j]) r[i + j] = F.add(r[i + j], F.mul(a, o.c_[j]));
        }
    }
    return Poly(f, std::move(r));
}

Poly Poly::scale(Word a) const {
    if (a == 0) return Poly(f_);
    std::vector<Word> r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = f_->mul(a, c_[i]);
    return Poly(f_, std::move(r));
}

Poly Poly::shift(size_t k) const {
    if (c_.empty()) return *this;
    std::vector<Word> r(k, 0);
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(f_, std::move(r));
}

Poly Poly::frob(int k) const {
    if (c_.empty() || k == 0) return *this;
    Word step = 1;
    for (int i = 0; i < k; ++i) step *= f_->q();
    const size_t st = static_cast<size_t>(step);
    std::vector<Word> r((c_.size() - 1) * st + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i * st] = f_->frob(c_[i], k);
    return Poly(f_, std::move(r));
}

Poly Poly::map_coeffs_pth(int k) const {
    std::vector<Word> r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = f_->pth(c_[i], k);
    return Poly(f_, std::move(r));
}

Word Poly::eval(Word x) const {
    Word r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, x), c_[i]);
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(f_);
    std::vector<Word> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_->mul(f_->from_int(static_cast<long long>(i % f_->p())), c_[i]);
    return Poly(f_, std::move(r));
}

Poly Poly::monic() const {
    if (c_.empty()) return *this;
    return scale(f_->inv(lead()));
}

Poly Poly::pow(uint64_t n) const {
    Poly r = constant(f_, 1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

Poly Poly::taylor_shift(Word a) const {
    // Horner in t + a
    std::vector<Word> r;
    for (size_t i = c_.size(); i-- > 0;) {
        // r <- r * (t + a) + c_i
        r.push_back(0);
        for (size_t j = r.size() - 1; j > 0; --j) r[j] = f_->add(r[j - 1], f_->mul(a, r[j]));
        r[0] = f_->add(f_->mul(a, r[0]), c_[i]);
    }
    return Poly(f_, std::move(r));
}

Poly Poly::div_linear(Word a) const {
    if (c_.size() <= 1) return Poly(f_);
    std::vector<Word> r(c_.size() - 1);
    Word carry = 0;
    for (size_t i = c_.size(); i-- > 1;) {
        carry = f_->add(c_[i], f_->mul(a, carry));
        r[i - 1] = carry;
    }
    return Poly(f_, std::move(r));
}

PolyDivMod divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw FieldError("polynomial division by zero");
    const FieldPtr& f = b.field();
    const Field& F = *f;
    std::vector<Word> r = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {Poly(f), a};
    std::vector<Word> q(static_cast<size_t>(a.degree() - db + 1), 0);
    const Word li = F.inv(b.lead());
    const auto& bc = b.coeffs();
    for (int k = a.degree(); k >= db; --k) {
        const Word c = r[static_cast<size_t>(k)];
        if (!c) continue;
        const Word m = F.mul(c, li);
        q[static_cast<size_t>(k - db)] = m;
        const Word nm = F.neg(m);
        for (int i = 0; i <= db; ++i)
            if (bc[static_cast<size_t>(i)])
                r[static_cast<size_t>(k - db + i)] = F.add(r[static_cast<size_t>(k - db + i)], F.mul(nm, bc[static_cast<size_t>(i)]));
    }
    r.resize(static_cast<size_t>(db));
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).rem;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

PolyXgcd xgcd(const Poly& a, const Poly& b) {
    const FieldPtr& f = a.field() ? a.field() : b.field();
    Poly r0 = a, r1 = b, s0 = Poly::constant(f, 1), s1(f), t0(f), t1 = Poly::constant(f, 1);
    while (!r1.is_zero()) {
        auto qr = divmod(r0, r1);
        Poly r2 = qr.rem, s2 = s0 - qr.quot * s1, t2 = t0 - qr.quot * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const Word li = f->inv(r0.lead());
    return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

Poly powmod(const Poly& base, Word n, const Poly& m) {
    const FieldPtr& f = m.field();
    Poly r = divmod(Poly::constant(f, 1), m).rem, b = divmod(base, m).rem;
    while (n) {
        if (n & 1) r = divmod(r * b, m).rem;
        n >>= 1;
        if (n) b = divmod(b * b, m).rem;
    }
    return r;
}

namespace {

void split_roots(const Poly& g, std::mt19937_64& rng, std::vector<Word>& out) {
    const FieldPtr& f = g.field();
    const Field& F = *f;
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(F.neg(F.div(g.coef(0), g.coef(1))));
        return;
    }
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const Word a = random_word(F, rng), b = random_word(F, rng);
        Poly w(f, std::vector<Word>{b, a == 0 ? Word(1) : a});
        Poly h(f);
        if (F.p() == 2) {
            Poly acc = divmod(w, g).rem, cur = acc;
            for (int i = 1; i < F.e(); ++i) {
                cur = divmod(cur * cur, g).rem;
                acc = acc + cur;
            }
            h = acc;
        } else {
            h = powmod(w, (F.size() - 1) / 2, g) - Poly::constant(f, 1);
        }
        Poly d = gcd(g, h);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_roots(d, rng, out);
            split_roots(divmod(g, d).quot, rng, out);
            return;
        }
    }
    throw FieldError("root splitting did not converge");
}

}  // namespace

std::vector<Word> roots(const Poly& f, uint64_t seed) {
    if (f.is_zero()) throw FieldError("roots of the zero polynomial");
    const Field& F = *f.field();
    std::vector<Word> out;
    if (f.degree() <= 0) return out;
    if (F.size() <= (Word(1) << 12)) {
        for (Word v = 0; v < F.size(); ++v)
            if (f.eval(v) == 0) out.push_back(v);
        return out;
    }
    const FieldPtr& fp = f.field();
    Poly m = f.monic();
    // X^|F| mod m by iterated p-th powers.
    Poly h(fp, std::vector<Word>{0, 1});
    for (int i = 0; i < F.e(); ++i) h = powmod(h, F.p(), m);
    Poly g = gcd(m, h - Poly(fp, std::vector<Word>{0, 1}));
    std::mt19937_64 rng(seed);
    split_roots(g, rng, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------- Embedding

Embedding::Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->p() != dst_->p() || dst_->e() % src_->e() != 0)
        throw FieldError("embedding: source is not a subfield of the target");
    if (src_->same(*dst_)) {
        img_ = dst_->generator();
    } else {
        std::vector<Word> c;
        for (uint32_t d : src_->modulus()) c.push_back(dst_->from_int(d));
        auto rs = roots(Poly(dst_, c));
        if (rs.empty()) throw FieldError("embedding: modulus has no root in the target");
        img_ = rs.front();
    }
    Word pw = 1;
    for (int i = 0; i < src_->e(); ++i) {
        powers_.push_back(pw);
        pw = dst_->mul(pw, img_);
    }
}

Word Embedding::apply(Word a) const {
    auto d = src_->digits(a);
    Word r = 0;
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i]) r = dst_->add(r, dst_->mul(dst_->from_int(d[i]), powers_[i]));
    return r;
}

namespace {

// Solve M c = b over F_p; M has columns cols (digit vectors). Returns false when inconsistent.
bool solve_fp(const std::vector<std::vector<uint32_t>>& cols, const std::vector<uint32_t>& b, uint32_t p,
              std::vector<uint32_t>& sol) {
    const size_t n = cols.size(), m = b.size();
    std::vector<std::vector<uint32_t>> A(m, std::vector<uint32_t>(n + 1));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) A[i][j] = cols[j][i];
        A[i][n] = b[i];
    }
    std::vector<int> piv(n, -1);
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t r = row;
        while (r < m && A[r][col] == 0) ++r;
        if (r == m) continue;
        std::swap(A[r], A[row]);
        const uint32_t iv = invp(A[row][col], p);
        for (auto& x : A[row]) x = mulp(x, iv, p);
        for (size_t i = 0; i < m; ++i) {
            if (i == row || A[i][col] == 0) continue;
            const uint32_t c = A[i][col];
            for (size_t j = 0; j <= n; ++j) A[i][j] = (A[i][j] + p - mulp(c, A[row][j], p)) % p;
        }
        piv[col] = static_cast<int>(row);
        ++row;
    }
    for (size_t i = row; i < m; ++i)
        if (A[i][n] != 0) return false;
    sol.assign(n, 0);
    for (size_t j = 0; j < n; ++j)
        if (piv[j] >= 0) sol[j] = A[static_cast<size_t>(piv[j])][n];
    return true;
}

}  // namespace

bool Embedding::in_image(Word b) const {
    std::vector<std::vector<uint32_t>> cols;
    for (Word w : powers_) cols.push_back(dst_->digits(w));
    std::vector<uint32_t> sol;
    return solve_fp(cols, dst_->digits(b), dst_->p(), sol);
}

Word Embedding::preimage(Word b) const {
    std::vector<std::vector<uint32_t>> cols;
    for (Word w : powers_) cols.push_back(dst_->digits(w));
    std::vector<uint32_t> sol;
    if (!solve_fp(cols, dst_->digits(b), dst_->p(), sol)) throw FieldError("embedding: element outside the image");
    return src_->pack(sol);
}

}  // namespace dmw::ffield
