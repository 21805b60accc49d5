#include "dmw/domain.hpp"

#include <sstream>

#include "dmw/linalg.hpp"

namespace dmw::domain {

namespace {

bool in_fq(const ffield::Field& F, Word w) { return F.frob(w) == w; }

void check_fq(const Poly& p) {
    const auto& F = *p.field();
    for (Word w : p.coeffs())
        if (!in_fq(F, w)) throw DomainError("domain element coefficient outside F_q");
}

Poly x_poly(const FieldPtr& f) { return Poly::monomial(f, 1, 1); }

// Evaluate a(x) at x = 1/pi as a rational function.
RatFunc eval_in_x(const CtxPtr& ctx, const Poly& a) {
    const FieldPtr& f = ctx->z.field;
    if (a.is_zero()) return RatFunc::constant(f, 0);
    // a(1/pi) = sum a_i pi^(n-i) / pi^n
    const int n = a.degree();
    Poly num(f);
    Poly pw = Poly::constant(f, 1);
    for (int i = n; i >= 0; --i) {
        num = num + pw.scale(a.coef(static_cast<size_t>(i)));
        pw = pw * ctx->pi;
    }
    return RatFunc(num, ctx->pi.pow(static_cast<uint64_t>(n)));
}

FieldPtr fq_of(const FieldPtr& F) { return ffield::make_field(F->p(), F->frob_deg(), {.frob_deg = F->frob_deg()}); }

}  // namespace

CtxPtr make_domain(const FieldPtr& field) {
    auto c = std::make_shared<DomainCtx>();
    c->z = funcfield::zeta_data(field);
    c->s = funcfield::std_elements(c->z);
    c->pi = Poly(field, {c->z.nrm, field->neg(c->z.tr), 1});
    return c;
}

DomainElem::DomainElem(CtxPtr ctx, Poly a, Poly b) : ctx_(std::move(ctx)), a_(std::move(a)), b_(std::move(b)) {
    check_fq(a_);
    check_fq(b_);
}

DomainElem DomainElem::constant(const CtxPtr& ctx, Word c) {
    const FieldPtr& f = ctx->z.field;
    return DomainElem(ctx, Poly::constant(f, c), Poly(f));
}
DomainElem DomainElem::x(const CtxPtr& ctx) {
    const FieldPtr& f = ctx->z.field;
    return DomainElem(ctx, x_poly(f), Poly(f));
}
DomainElem DomainElem::y(const CtxPtr& ctx) {
    const FieldPtr& f = ctx->z.field;
    return DomainElem(ctx, Poly(f), Poly::constant(f, 1));
}
DomainElem DomainElem::from_lists(const CtxPtr& ctx, Word c, const std::vector<Word>& a,
                                  const std::vector<Word>& b) {
    const FieldPtr& f = ctx->z.field;
    std::vector<Word> ac{c};
    ac.insert(ac.end(), a.begin(), a.end());
    return DomainElem(ctx, Poly(f, ac), Poly(f, b));
}

DomainElem DomainElem::operator+(const DomainElem& o) const { return DomainElem(ctx_, a_ + o.a_, b_ + o.b_); }
DomainElem DomainElem::operator-(const DomainElem& o) const { return DomainElem(ctx_, a_ - o.a_, b_ - o.b_); }
DomainElem DomainElem::operator-() const { return DomainElem(ctx_, -a_, -b_); }
DomainElem DomainElem::scale(Word c) const { return DomainElem(ctx_, a_.scale(c), b_.scale(c)); }

// y^2 = Tr xy - N x^2 + x
DomainElem DomainElem::operator*(const DomainElem& o) const {
    const FieldPtr& f = field();
    const Poly bb = b_ * o.b_;
    const Poly x = x_poly(f);
    const Poly red = x - Poly::monomial(f, ctx_->z.nrm, 2);
    Poly a = a_ * o.a_ + red * bb;
    Poly b = a_ * o.b_ + o.a_ * b_ + (x * bb).scale(ctx_->z.tr);
    return DomainElem(ctx_, std::move(a), std::move(b));
}

DomainElem DomainElem::pow(unsigned n) const {
    DomainElem r = constant(ctx_, 1), b = *this;
    while (n) {
        if (n & 1u) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

RatFunc DomainElem::to_ratfunc() const { return eval_in_x(ctx_, a_) + ctx_->s.y * eval_in_x(ctx_, b_); }

nlohmann::json jsonify(const DomainElem& e) {
    const auto& F = *e.field();
    nlohmann::json a = nlohmann::json::array(), b = nlohmann::json::array();
    for (int i = 1; i <= e.a().degree(); ++i) a.push_back(ffield::word_json(F, e.a().coef(static_cast<size_t>(i))));
    for (int i = 0; i <= e.b().degree(); ++i) b.push_back(ffield::word_json(F, e.b().coef(static_cast<size_t>(i))));
    return {{"c", ffield::word_json(F, e.a().coef(0))}, {"a", a}, {"b", b}};
}

DomainElem domain_from_json(const CtxPtr& ctx, const nlohmann::json& j) {
    const FieldPtr& f = ctx->z.field;
    auto w = [&](const nlohmann::json& v) { return ffield::elem_from_json(f, v).value(); };
    std::vector<Word> a, b;
    for (const auto& v : j.at("a")) a.push_back(w(v));
    for (const auto& v : j.at("b")) b.push_back(w(v));
    return DomainElem::from_lists(ctx, w(j.at("c")), a, b);
}

std::optional<DomainElem> try_from_ratfunc(const CtxPtr& ctx, const RatFunc& f) {
    try {
        return from_ratfunc(ctx, f);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

DomainElem from_ratfunc(const CtxPtr& ctx, const RatFunc& f) {
    const FieldPtr& F = ctx->z.field;
    Poly den = f.den();
    int k = 0;
    while (den.degree() > 0) {
        auto dm = ffield::divmod(den, ctx->pi);
        if (!dm.rem.is_zero()) break;
        den = dm.quot;
        ++k;
    }
    if (den.degree() > 0) {
        auto rs = ffield::roots(den);
        std::ostringstream os;
        os << "from_ratfunc: pole at a finite place of F(t) other than P_pi";
        if (!rs.empty())
            os << " (t = " << ffield::word_str(rs.front()) << ")";
        else
            os << " (irreducible factor of degree " << den.degree() << ")";
        throw DomainError(os.str());
    }
    Poly num = f.num().scale(F->inv(den.lead()));
    if (num.degree() > 2 * k) throw DomainError("from_ratfunc: pole at the infinite place of F(t), which is not P_pi");
    // pi-adic digits: num = sum (u_j + v_j t) pi^j, then f = sum (u_j + v_j t) x^(k-j)
    std::vector<Word> a(static_cast<size_t>(k) + 1, 0), b(static_cast<size_t>(k), 0);
    for (int j = 0; j <= k; ++j) {
        auto dm = ffield::divmod(num, ctx->pi);
        const size_t e = static_cast<size_t>(k - j);
        a[e] = dm.rem.coef(0);
        const Word v = dm.rem.coef(1);
        if (v != 0) {
            if (e == 0) throw DomainError("from_ratfunc: pole at the infinite place of F(t), which is not P_pi");
            b[e - 1] = v;
        }
        num = dm.quot;
    }
    for (Word w : a)
        if (!in_fq(*F, w)) throw DomainError("from_ratfunc: function is not defined over F_q");
    for (Word w : b)
        if (!in_fq(*F, w)) throw DomainError("from_ratfunc: function is not defined over F_q");
    return DomainElem(ctx, Poly(F, a), Poly(F, b));
}

unsigned deg(const DomainElem& e) {
    if (e.is_zero()) throw DomainError("deg of zero");
    // x^i and x^(i-1) y both have valuation -i, and a + b t never vanishes at zeta
    const int da = e.a().degree();
    const int db = e.b().is_zero() ? -1 : e.b().degree() + 1;
    return static_cast<unsigned>(2 * std::max(da, db));
}

int valuation_at_p(const DomainElem& e) {
    if (e.is_zero()) throw DomainError("valuation of zero");
    return funcfield::valuation_at(e.to_ratfunc(), e.ctx()->z.zeta);
}

std::vector<DomainElem> rr_basis(const CtxPtr& ctx, unsigned k) {
    if (k < 1) throw DomainError("rr_basis: k must be positive");
    std::vector<DomainElem> r;
    const FieldPtr& f = ctx->z.field;
    for (unsigned i = 0; i <= k; ++i) r.emplace_back(ctx, Poly::monomial(f, 1, i), Poly(f));
    for (unsigned i = 0; i < k; ++i) r.emplace_back(ctx, Poly(f), Poly::monomial(f, 1, i));
    return r;
}

std::vector<Word> rr_coords(const DomainElem& e, unsigned k) {
    if (e.a().degree() > static_cast<int>(k) || e.b().degree() >= static_cast<int>(k))
        throw DomainError("rr_coords: element outside L(kP)");
    std::vector<Word> c(2 * k + 1, 0);
    for (unsigned i = 0; i <= k; ++i) c[i] = e.a().coef(i);
    for (unsigned i = 0; i < k; ++i) c[k + 1 + i] = e.b().coef(i);
    return c;
}

DomainElem from_rr_coords(const CtxPtr& ctx, const std::vector<Word>& c, unsigned k) {
    const FieldPtr& f = ctx->z.field;
    std::vector<Word> a(c.begin(), c.begin() + k + 1), b(c.begin() + k + 1, c.begin() + 2 * k + 1);
    return DomainElem(ctx, Poly(f, a), Poly(f, b));
}

IdealSpec IdealSpec::make_principal(Principal p) {
    if (p.alpha.size() != p.beta.size()) throw DomainError("principal ideal: alpha and beta lengths differ");
    if (p.alpha.empty()) throw DomainError("principal ideal: d must be positive");
    if (p.alpha[0] == 0 && p.beta[0] == 0)
        throw DomainError("principal ideal: alpha_0 = beta_0 = 0, the generator is divisible by x");
    return {Kind::Principal, std::move(p), {}};
}

nlohmann::json jsonify(const FieldPtr& f, const Principal& p) {
    nlohmann::json a = nlohmann::json::array(), b = nlohmann::json::array();
    for (Word w : p.alpha) a.push_back(ffield::word_json(*f, w));
    for (Word w : p.beta) b.push_back(ffield::word_json(*f, w));
    return {{"alpha", a}, {"beta", b}, {"alpha_d", ffield::word_json(*f, p.alpha_d)}};
}

Principal parse_principal(const CtxPtr& ctx, const std::string& s) {
    const FieldPtr& F = ctx->z.field;
    const auto Fq = fq_of(F);
    const ffield::Embedding emb(Fq, F);
    auto elem = [&](const std::string& tok) {
        long long v = 0;
        try {
            size_t used = 0;
            v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw DomainError("ideal: bad coefficient '" + tok + "'");
        }
        if (v < 0 || static_cast<Word>(v) >= Fq->size()) throw DomainError("ideal: coefficient out of range for F_q");
        return emb.apply(static_cast<Word>(v));
    };
    auto list = [&](const std::string& body) {
        std::vector<Word> r;
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) r.push_back(elem(tok));
        return r;
    };
    Principal p;
    bool have_a = false, have_b = false, have_d = false;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ';')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw DomainError("ideal: expected key=value in '" + part + "'");
        const std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        if (key == "alpha") {
            p.alpha = list(val);
            have_a = true;
        } else if (key == "beta") {
            p.beta = list(val);
            have_b = true;
        } else if (key == "alphad") {
            p.alpha_d = elem(val);
            have_d = true;
        } else {
            throw DomainError("ideal: unknown key '" + key + "'");
        }
    }
    if (!have_a || !have_b || !have_d) throw DomainError("ideal: alpha, beta and alphad are all required");
    return IdealSpec::make_principal(p).principal;
}

DomainElem generator(const CtxPtr& ctx, const Principal& p) {
    const FieldPtr& f = ctx->z.field;
    const size_t d = p.d();
    std::vector<Word> a(d + 1, 0), b(d, 0);
    a[0] = p.alpha_d;
    for (size_t j = 0; j < d; ++j) {
        a[d - j] = p.alpha[j];
        b[d - j - 1] = p.beta[j];
    }
    return DomainElem(ctx, Poly(f, a), Poly(f, b));
}

std::vector<DomainElem> generators(const CtxPtr& ctx, const IdealSpec& I) {
    using K = IdealSpec::Kind;
    const FieldPtr& f = ctx->z.field;
    switch (I.kind) {
        case K::Principal:
            return {generator(ctx, I.principal)};
        case K::Iinf:
            return {DomainElem::x(ctx), DomainElem::y(ctx)};
        case K::I0: {
            // x - zeta^(-q-1)
            const Word c = f->inv(ctx->z.nrm);
            return {DomainElem::x(ctx) - DomainElem::constant(ctx, c), DomainElem::y(ctx)};
        }
        case K::Product: {
            std::vector<DomainElem> acc{DomainElem::constant(ctx, 1)};
            for (const auto& fac : I.factors) {
                auto g = generators(ctx, fac);
                std::vector<DomainElem> next;
                for (const auto& a : acc)
                    for (const auto& b : g) next.push_back(a * b);
                acc = std::move(next);
            }
            return acc;
        }
    }
    return {};
}

bool divides(const DomainElem& g, const DomainElem& a) {
    if (g.is_zero()) return a.is_zero();
    return try_from_ratfunc(g.ctx(), a.to_ratfunc() / g.to_ratfunc()).has_value();
}

bool in_ideal(const DomainElem& g, const std::vector<DomainElem>& gens, unsigned m) {
    const auto& ctx = g.ctx();
    const FieldPtr& F = ctx->z.field;
    unsigned top = 0;
    for (const auto& h : gens) top = std::max(top, deg(h) / 2);
    unsigned K = m + top;
    if (!g.is_zero()) K = std::max(K, deg(g) / 2);
    const auto basis = rr_basis(ctx, std::max(m, 1u));
    const size_t rows = 2 * K + 1;
    ffield::Matrix A(rows);
    for (const auto& h : gens)
        for (const auto& b : basis) {
            auto c = rr_coords(b * h, K);
            for (size_t i = 0; i < rows; ++i) A[i].push_back(c[i]);
        }
    return ffield::solve(*F, A, rr_coords(g, K)).has_value();
}

bool ideal_equals_principal(const std::vector<DomainElem>& gens, const DomainElem& g, unsigned m) {
    for (const auto& h : gens)
        if (!divides(g, h)) return false;
    return in_ideal(g, gens, m);
}

QuotientBasis::QuotientBasis(const CtxPtr& ctx, const Principal& p, bool second) : ctx_(ctx) {
    if (p.d() == 0 || (p.alpha[0] == 0 && p.beta[0] == 0))
        throw DomainError("quotient_basis: alpha_0 = beta_0 = 0");
    if (second && p.beta[0] == 0) throw DomainError("quotient_basis: B2 needs beta_0 != 0");
    P_ = generator(ctx, p);
    first_ = p.alpha[0] != 0 && !second;
    const unsigned d = p.d();
    const auto x = DomainElem::x(ctx), y = DomainElem::y(ctx);
    DomainElem xi = DomainElem::constant(ctx, 1);
    for (unsigned i = 0; i < d; ++i) {
        basis_.push_back(xi);
        if (first_ || i + 1 < d) basis_.push_back(y * xi);
        xi = xi * x;
    }
    if (!first_) basis_.push_back(xi);
}

std::vector<Word> QuotientBasis::reduce(const DomainElem& e) const {
    const FieldPtr& F = ctx_->z.field;
    const unsigned d = static_cast<unsigned>(basis_.size() / 2);
    const unsigned K = e.is_zero() ? d : std::max(d, (deg(e) + 1) / 2);
    const size_t rows = 2 * K + 1;
    ffield::Matrix A(rows);
    for (const auto& b : basis_) {
        auto c = rr_coords(b, K);
        for (size_t i = 0; i < rows; ++i) A[i].push_back(c[i]);
    }
    if (K > d)
        for (const auto& b : rr_basis(ctx_, K - d)) {
            auto c = rr_coords(b * P_, K);
            for (size_t i = 0; i < rows; ++i) A[i].push_back(c[i]);
        }
    {
        // multiples by constants
        auto c = rr_coords(P_, K);
        for (size_t i = 0; i < rows; ++i) A[i].push_back(c[i]);
    }
    auto sol = ffield::solve(*F, A, rr_coords(e, K));
    if (!sol) throw DomainError("quotient reducer: no solution (singular system)");
    return std::vector<Word>(sol->begin(), sol->begin() + static_cast<long>(basis_.size()));
}

DomainElem QuotientBasis::lift(const std::vector<Word>& c) const {
    DomainElem r = DomainElem::constant(ctx_, 0);
    for (size_t i = 0; i < basis_.size(); ++i)
        if (c[i]) r = r + basis_[i].scale(c[i]);
    return r;
}

}  // namespace dmw::domain
