#include "dmw/weil.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "dmw/linalg.hpp"

namespace dmw::weil {

using domain::QuotientBasis;
using ffield::Poly;

namespace {

FieldElem el(const FieldPtr& f, Word w) { return FieldElem(f, w); }

DomainElem mono(const CtxPtr& ctx, int a, int b) {
    DomainElem e = DomainElem::x(ctx).pow(static_cast<unsigned>(a));
    return b ? DomainElem::y(ctx) * e : e;
}

DomainElem cst(const CtxPtr& ctx, const FieldElem& c) { return DomainElem::constant(ctx, c.value()); }

// coefficient accessors with the conventions beta_{-1} = 0, alpha_d
struct Coeffs {
    FieldPtr f;
    const Principal& p;
    FieldElem alpha(int k) const {
        if (k == static_cast<int>(p.d())) return el(f, p.alpha_d);
        return k < 0 ? el(f, 0) : el(f, p.alpha[static_cast<size_t>(k)]);
    }
    FieldElem beta(int k) const { return k < 0 ? el(f, 0) : el(f, p.beta[static_cast<size_t>(k)]); }
};

ffield::FieldOptions ext_options(int frob_deg) {
    ffield::FieldOptions o;
    o.frob_deg = frob_deg;
    o.max_size = ~Word(0);
    return o;
}

SymPoly mono2(const CtxPtr& ctx, int a1, int b1, int a2, int b2, const FieldElem& c) {
    return SymPoly::tensor({mono(ctx, a1, b1), mono(ctx, a2, b2)}).scale(c.value());
}

}  // namespace

FieldElem moore(const std::vector<FieldElem>& xi) {
    if (xi.empty()) throw WeilError("moore: no arguments");
    const size_t r = xi.size();
    std::vector<std::vector<FieldElem>> A(r);
    for (size_t i = 0; i < r; ++i) {
        FieldElem v = xi[i];
        for (size_t j = 0; j < r; ++j) {
            A[i].push_back(v);
            v = v.frob();
        }
    }
    FieldElem det = xi[0].one();
    for (size_t c = 0; c < r; ++c) {
        size_t piv = c;
        while (piv < r && A[piv][c].is_zero()) ++piv;
        if (piv == r) return xi[0].zero();
        if (piv != c) {
            std::swap(A[piv], A[c]);
            det = -det;
        }
        det *= A[c][c];
        const FieldElem inv = A[c][c].inverse();
        for (size_t i = c + 1; i < r; ++i) {
            if (A[i][c].is_zero()) continue;
            const FieldElem m = A[i][c] * inv;
            for (size_t j = c; j < r; ++j) A[i][j] -= m * A[c][j];
        }
    }
    return det;
}

// ---------------------------------------------------------------- SymPoly

void SymPoly::add_term(const Key& k, Word c) {
    if (c == 0) return;
    const auto& f = ctx_->z.field;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second = f->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

SymPoly SymPoly::tensor(const std::vector<DomainElem>& slots) {
    if (slots.empty()) throw WeilError("tensor: no slots");
    const CtxPtr& ctx = slots.front().ctx();
    const auto& f = ctx->z.field;
    const int r = static_cast<int>(slots.size());
    SymPoly out(ctx, r);
    // (a, b, c) monomials of each slot
    std::vector<std::vector<std::tuple<int, int, Word>>> ms(slots.size());
    for (size_t i = 0; i < slots.size(); ++i) {
        const auto& e = slots[i];
        for (int k = 0; k <= e.a().degree(); ++k)
            if (e.a().coef(static_cast<size_t>(k))) ms[i].emplace_back(k, 0, e.a().coef(static_cast<size_t>(k)));
        for (int k = 0; k <= e.b().degree(); ++k)
            if (e.b().coef(static_cast<size_t>(k))) ms[i].emplace_back(k, 1, e.b().coef(static_cast<size_t>(k)));
        if (ms[i].empty()) return out;
    }
    std::vector<size_t> idx(slots.size(), 0);
    while (true) {
        Key k(2 * slots.size());
        Word c = 1;
        for (size_t i = 0; i < slots.size(); ++i) {
            const auto& [a, b, w] = ms[i][idx[i]];
            k[2 * i] = a;
            k[2 * i + 1] = b;
            c = f->mul(c, w);
        }
        out.add_term(k, c);
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == ms[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return out;
}

SymPoly SymPoly::constant(const CtxPtr& ctx, int r, Word c) {
    SymPoly s(ctx, r);
    s.add_term(Key(2 * static_cast<size_t>(r), 0), c);
    return s;
}

SymPoly SymPoly::X(const CtxPtr& ctx, int r, int i) {
    SymPoly s(ctx, r);
    Key k(2 * static_cast<size_t>(r), 0);
    k[2 * static_cast<size_t>(i)] = 1;
    s.add_term(k, 1);
    return s;
}

SymPoly SymPoly::Y(const CtxPtr& ctx, int r, int i) {
    SymPoly s(ctx, r);
    Key k(2 * static_cast<size_t>(r), 0);
    k[2 * static_cast<size_t>(i) + 1] = 1;
    s.add_term(k, 1);
    return s;
}

DomainElem SymPoly::slot_monomial(const CtxPtr& ctx, const Key& k, int i) {
    return mono(ctx, k[2 * static_cast<size_t>(i)], k[2 * static_cast<size_t>(i) + 1]);
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
    if (!ctx_) return o;
    SymPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

SymPoly SymPoly::operator-(const SymPoly& o) const { return *this + o.scale(o.ctx_->z.field->neg(1)); }

SymPoly SymPoly::scale(Word c) const {
    SymPoly r(ctx_, r_);
    if (!ctx_) return r;
    for (const auto& [k, v] : terms_) r.add_term(k, ctx_->z.field->mul(v, c));
    return r;
}

SymPoly SymPoly::operator*(const SymPoly& o) const {
    if (r_ != o.r_) throw WeilError("SymPoly: rank mismatch");
    const auto& f = ctx_->z.field;
    SymPoly out(ctx_, r_);
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_) {
            Key k(k1.size());
            bool simple = true;
            for (size_t i = 0; i < k.size(); ++i) {
                k[i] = k1[i] + k2[i];
                if (i % 2 == 1 && k[i] > 1) simple = false;
            }
            if (simple) {
                out.add_term(k, f->mul(c1, c2));
                continue;
            }
            std::vector<DomainElem> slots;
            for (int i = 0; i < r_; ++i) slots.push_back(slot_monomial(ctx_, k1, i) * slot_monomial(ctx_, k2, i));
            out = out + tensor(slots).scale(f->mul(c1, c2));
        }
    return out;
}

bool SymPoly::is_symmetric() const {
    for (int i = 0; i < r_; ++i)
        for (int j = i + 1; j < r_; ++j) {
            std::map<Key, Word> sw;
            for (const auto& [k0, c] : terms_) {
                Key k = k0;
                std::swap(k[2 * static_cast<size_t>(i)], k[2 * static_cast<size_t>(j)]);
                std::swap(k[2 * static_cast<size_t>(i) + 1], k[2 * static_cast<size_t>(j) + 1]);
                sw.emplace(std::move(k), c);
            }
            if (sw != terms_) return false;
        }
    return true;
}

nlohmann::json jsonify(const SymPoly& s) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : s.terms()) {
        nlohmann::json xs = nlohmann::json::array(), ys = nlohmann::json::array();
        for (size_t i = 0; i < k.size(); i += 2) {
            xs.push_back(k[i]);
            ys.push_back(k[i + 1]);
        }
        terms.push_back({{"x", xs}, {"y", ys}, {"c", ffield::word_json(*s.ctx()->z.field, c)}});
    }
    return {{"rank", s.rank()}, {"terms", terms}};
}

ReducedTensor reduce_mod(const SymPoly& s, const QuotientBasis& B) {
    const auto& ctx = s.ctx();
    const auto& f = ctx->z.field;
    std::map<std::pair<int, int>, std::vector<std::pair<size_t, Word>>> cache;
    auto coords = [&](int a, int b) -> const std::vector<std::pair<size_t, Word>>& {
        auto it = cache.find({a, b});
        if (it != cache.end()) return it->second;
        std::vector<std::pair<size_t, Word>> nz;
        const auto c = B.reduce(mono(ctx, a, b));
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i]) nz.emplace_back(i, c[i]);
        return cache.emplace(std::pair{a, b}, std::move(nz)).first->second;
    };
    ReducedTensor out;
    const size_t r = static_cast<size_t>(s.rank());
    for (const auto& [k, c] : s.terms()) {
        std::vector<const std::vector<std::pair<size_t, Word>>*> slots;
        bool empty = false;
        for (size_t i = 0; i < r; ++i) {
            slots.push_back(&coords(k[2 * i], k[2 * i + 1]));
            empty = empty || slots.back()->empty();
        }
        if (empty) continue;
        std::vector<size_t> idx(r, 0);
        while (true) {
            std::vector<size_t> key(r);
            Word v = c;
            for (size_t i = 0; i < r; ++i) {
                key[i] = (*slots[i])[idx[i]].first;
                v = f->mul(v, (*slots[i])[idx[i]].second);
            }
            Word& cur = out[key];
            cur = f->add(cur, v);
            if (cur == 0) out.erase(key);
            size_t i = 0;
            while (i < r && ++idx[i] == slots[i]->size()) idx[i++] = 0;
            if (i == r) break;
        }
    }
    return out;
}

// ---------------------------------------------------------------- duality

Word residue_pairing(const DomainElem& f, const RatFunc& h) {
    const auto& ctx = f.ctx();
    const auto& F = ctx->z.field;
    const RatFunc g = f.to_ratfunc() * h * RatFunc(Poly::constant(F, 1), ctx->pi);
    const Word res = funcfield::residue_at_zeta(g, ctx->z);
    return F->add(res, F->frob(res));
}

RatFunc omega_star(const CtxPtr& ctx, const Principal& p) { return domain::generator(ctx, p).to_ratfunc().inverse(); }

ffield::Matrix pairing_matrix(const CtxPtr& ctx, const Principal& p, const std::vector<DomainElem>& h, bool second) {
    const QuotientBasis B(ctx, p, second);
    const RatFunc os = omega_star(ctx, p);
    ffield::Matrix M;
    for (const auto& e : B.basis()) {
        std::vector<Word> row;
        for (const auto& w : h) row.push_back(residue_pairing(e, w.to_ratfunc() * os));
        M.push_back(std::move(row));
    }
    return M;
}

std::vector<DomainElem> dual_by_pairing(const CtxPtr& ctx, const Principal& p, bool second) {
    const QuotientBasis B(ctx, p, second);
    const auto& basis = B.basis();
    const auto G = pairing_matrix(ctx, p, basis, second);
    const auto& F = ctx->z.field;
    std::vector<DomainElem> out;
    for (size_t j = 0; j < basis.size(); ++j) {
        std::vector<Word> rhs(basis.size(), 0);
        rhs[j] = 1;
        auto c = ffield::solve(*F, G, rhs);
        if (!c) throw WeilError("dual_by_pairing: the residue pairing is degenerate");
        DomainElem w = DomainElem::constant(ctx, 0);
        for (size_t k = 0; k < basis.size(); ++k) w = w + basis[k].scale((*c)[k]);
        out.push_back(w);
    }
    return out;
}

std::vector<DomainElem> dual_w(const CtxPtr& ctx, const Principal& p) {
    const auto& f = ctx->z.field;
    if (p.d() == 0 || p.alpha[0] == 0) throw WeilError("dual_w: needs alpha_0 != 0");
    const Coeffs C{f, p};
    const int d = static_cast<int>(p.d());
    const FieldElem z = el(f, ctx->z.zeta), zq = el(f, ctx->z.zetaq), tr = el(f, ctx->z.tr), N = el(f, ctx->z.nrm);
    const FieldElem a0 = C.alpha(0), b0 = C.beta(0), a0i = a0.inverse();
    const FieldElem s = tr + b0 * N * a0i;  // Tr zeta + beta_0 zeta^(q+1) / alpha_0
    const FieldElem g = b0 * N * a0i;
    std::vector<DomainElem> w(2 * static_cast<size_t>(d), DomainElem::constant(ctx, 0));

    w[2 * static_cast<size_t>(d - 1) + 1] = cst(ctx, (b0 * z + a0) * (b0 * zq + a0) * a0i);
    for (int j = 1; j <= d - 1; ++j) {
        DomainElem e = cst(ctx, C.alpha(j) + s * C.beta(j));
        for (int k = 0; k < j; ++k)
            e = e + mono(ctx, j - k - 1, 1).scale(C.beta(k).value()) + mono(ctx, j - k, 0).scale(C.alpha(k).value());
        w[2 * static_cast<size_t>(d - 1 - j) + 1] = e;
    }
    for (int j = 1; j <= d - 1; ++j) {
        DomainElem e = cst(ctx, C.beta(j - 1) - N * C.beta(j) + C.alpha(j) * a0i * N * b0);
        for (int k = 0; k < j; ++k) {
            e = e + mono(ctx, j - 1 - k, 1).scale(C.alpha(k).value());
            e = e + mono(ctx, j - k, 0).scale((-(tr * C.alpha(k)) + C.beta(k - 1) - N * C.beta(k)).value());
        }
        w[2 * static_cast<size_t>(d - j)] = e;
    }
    {
        const FieldElem two = f->p() == 2 ? el(f, 0) : el(f, 2);
        DomainElem e = cst(ctx, C.beta(d - 1) + tr * C.alpha(d) + two * N * C.alpha(d) * a0i * b0);
        for (int k = 1; k <= d - 1; ++k) {
            e = e + mono(ctx, d - k - 1, 1).scale((s * C.beta(k) + C.alpha(k)).value());
            e = e + mono(ctx, d - k, 0).scale((g * C.alpha(k) + C.beta(k - 1) - N * C.beta(k)).value());
        }
        e = e + mono(ctx, d - 1, 1).scale((s * b0 + a0).value());
        w[0] = e;
    }
    return w;
}

std::vector<DomainElem> dual_v(const CtxPtr& ctx, const Principal& p) {
    const auto& f = ctx->z.field;
    if (p.d() == 0 || p.beta[0] == 0) throw WeilError("dual_v: needs beta_0 != 0");
    const Coeffs C{f, p};
    const int d = static_cast<int>(p.d());
    const FieldElem z = el(f, ctx->z.zeta), zq = el(f, ctx->z.zetaq), tr = el(f, ctx->z.tr), N = el(f, ctx->z.nrm);
    const FieldElem a0 = C.alpha(0), b0 = C.beta(0), b0i = b0.inverse();
    const FieldElem s = tr + a0 * b0i;  // Tr zeta + alpha_0 / beta_0
    std::vector<DomainElem> v(2 * static_cast<size_t>(d), DomainElem::constant(ctx, 0));
    // index of x^i is 2i (i < d), of y x^i is 2i + 1 (i < d - 1), of x^d is 2d - 1
    v[2 * static_cast<size_t>(d) - 1] = cst(ctx, -((b0 * z + a0) * (b0 * zq + a0) * b0i));
    for (int j = 1; j <= d - 1; ++j) {
        DomainElem e = cst(ctx, C.alpha(j) - a0 * C.beta(j) * b0i);
        for (int k = 0; k < j; ++k)
            e = e + mono(ctx, j - k - 1, 1).scale(C.beta(k).value()) + mono(ctx, j - k, 0).scale(C.alpha(k).value());
        v[2 * static_cast<size_t>(d - 1 - j) + 1] = e;
    }
    for (int j = 1; j <= d - 1; ++j) {
        DomainElem e = cst(ctx, C.beta(j - 1) - N * C.beta(j) - s * C.alpha(j));
        for (int k = 0; k < j; ++k) {
            e = e + mono(ctx, j - k - 1, 1).scale(C.alpha(k).value());
            e = e + mono(ctx, j - k, 0).scale((-(tr * C.alpha(k)) + C.beta(k - 1) - N * C.beta(k)).value());
        }
        v[2 * static_cast<size_t>(d - j)] = e;
    }
    {
        const FieldElem two = f->p() == 2 ? el(f, 0) : el(f, 2);
        DomainElem e = cst(ctx, -(tr * C.alpha(d)) + C.beta(d - 1) - two * a0 * C.alpha(d) * b0i);
        for (int k = 1; k <= d - 1; ++k) {
            e = e + mono(ctx, d - k - 1, 1).scale((C.alpha(k) - a0 * b0i * C.beta(k)).value());
            e = e - mono(ctx, d - k, 0).scale((s * C.alpha(k) - C.beta(k - 1) + N * C.beta(k)).value());
        }
        e = e - mono(ctx, d, 0).scale((s * a0 + N * b0).value());
        v[0] = e;
    }
    return v;
}

SymPoly construction(const CtxPtr& ctx, const std::vector<DomainElem>& basis, const std::vector<DomainElem>& duals,
                     int r) {
    if (r < 2) throw WeilError("construction: rank must be at least 2");
    if (basis.size() != duals.size()) throw WeilError("construction: basis and duals differ in length");
    const size_t n = basis.size();
    SymPoly out(ctx, r);
    std::vector<size_t> idx(static_cast<size_t>(r - 1), 0);
    while (true) {
        std::vector<DomainElem> slots;
        DomainElem w = DomainElem::constant(ctx, 1);
        for (size_t i : idx) {
            slots.push_back(basis[i]);
            w = w * duals[i];
        }
        slots.push_back(w);
        out = out + SymPoly::tensor(slots);
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == n) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return out;
}

// --------------------------------------------------------- closed forms

namespace {

// The three mixed sums shared by O' and O''. Each paired half-sum in the
// symmetric display collapses to a single sum over j, since j -> m - j
// permutes the summation range; this also makes sense when 2 = 0.
SymPoly mixed_sums(const CtxPtr& ctx, const Coeffs& C, int d) {
    const auto& f = ctx->z.field;
    const FieldElem tr = el(f, ctx->z.tr), N = el(f, ctx->z.nrm);
    SymPoly o(ctx, 2);
    for (int k = 0; k <= d - 2; ++k)
        for (int j = 0; j + k <= d - 2; ++j) o = o + mono2(ctx, j, 1, d - 2 - j - k, 1, C.beta(k));
    for (int k = 0; k <= d - 1; ++k)
        for (int j = 0; j + k <= d - 1; ++j) {
            o = o + mono2(ctx, j, 1, d - 1 - j - k, 0, C.alpha(k));
            o = o + mono2(ctx, j, 0, d - 1 - j - k, 1, C.alpha(k));
        }
    // the printed zeta^(k+1) is read as zeta^(q+1), as in w(x^(d-j))
    for (int k = 0; k <= d - 2; ++k)
        for (int j = 1; j + k <= d - 1; ++j)
            o = o - mono2(ctx, j, 0, d - j - k, 0, C.alpha(k) * tr - C.beta(k - 1) + N * C.beta(k));
    return o;
}

SymPoly sym_pair(const CtxPtr& ctx, int a, int b, const FieldElem& c) {
    return mono2(ctx, a, b, 0, 0, c) + mono2(ctx, 0, 0, a, b, c);
}

}  // namespace

SymPoly o_prime(const CtxPtr& ctx, const Principal& p) {
    const auto& f = ctx->z.field;
    if (p.d() == 0 || p.alpha[0] == 0) throw WeilError("o_prime: needs alpha_0 != 0");
    const Coeffs C{f, p};
    const int d = static_cast<int>(p.d());
    const FieldElem tr = el(f, ctx->z.tr), N = el(f, ctx->z.nrm);
    const FieldElem a0i = C.alpha(0).inverse(), b0 = C.beta(0);
    const FieldElem g = b0 * N * a0i, s = tr + g;
    const FieldElem two = f->p() == 2 ? el(f, 0) : el(f, 2);
    SymPoly o = SymPoly::constant(ctx, 2, (C.beta(d - 1) + tr * C.alpha(d) + two * N * C.alpha(d) * a0i * b0).value());
    for (int k = 0; k <= d - 1; ++k) {
        o = o + sym_pair(ctx, d - k - 1, 1, s * C.beta(k));
        o = o + sym_pair(ctx, d - k, 0, g * C.alpha(k) + C.beta(k - 1) - N * C.beta(k));
    }
    return o + mixed_sums(ctx, C, d);
}

SymPoly o_second(const CtxPtr& ctx, const Principal& p) {
    const auto& f = ctx->z.field;
    if (p.d() == 0 || p.beta[0] == 0) throw WeilError("o_second: needs beta_0 != 0");
    const Coeffs C{f, p};
    const int d = static_cast<int>(p.d());
    const FieldElem tr = el(f, ctx->z.tr), N = el(f, ctx->z.nrm);
    const FieldElem a0 = C.alpha(0), b0i = C.beta(0).inverse();
    const FieldElem s = tr + a0 * b0i;
    const FieldElem two = f->p() == 2 ? el(f, 0) : el(f, 2);
    SymPoly o = SymPoly::constant(ctx, 2, (-(tr * C.alpha(d)) + C.beta(d - 1) - two * a0 * C.alpha(d) * b0i).value());
    for (int k = 0; k <= d - 1; ++k) {
        // the alpha_k part of this coefficient already comes from the mixed sums
        o = o + sym_pair(ctx, d - k - 1, 1, -(a0 * b0i * C.beta(k)));
        o = o - sym_pair(ctx, d - k, 0, s * C.alpha(k) - C.beta(k - 1) + N * C.beta(k));
    }
    return o + mixed_sums(ctx, C, d);
}

SymPoly wo_x(const CtxPtr& ctx, int r) {
    if (r < 2) throw WeilError("wo_x: rank must be at least 2");
    SymPoly o(ctx, r);
    for (int skip = 0; skip < r; ++skip) {
        SymPoly t = SymPoly::constant(ctx, r, 1);
        for (int l = 0; l < r; ++l)
            if (l != skip) t = t * SymPoly::Y(ctx, r, l);
        o = o + t;
    }
    return o;
}

SymPoly wo_y(const CtxPtr& ctx, int r) {
    if (r < 2) throw WeilError("wo_y: rank must be at least 2");
    const auto& f = ctx->z.field;
    const FieldElem mN = -el(f, ctx->z.nrm);
    SymPoly o(ctx, r);
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        const int k = std::popcount(mask);
        if (k >= r) continue;
        SymPoly t = SymPoly::constant(ctx, r, mN.pow(k).value());
        for (int l = 0; l < r; ++l)
            if (mask & (1u << l)) t = t * SymPoly::X(ctx, r, l);
        o = o + t;
    }
    return o;
}

std::optional<Principal> principal_of(const DomainElem& g) {
    if (g.is_zero()) return std::nullopt;
    const unsigned D = domain::deg(g);
    if (D == 0) return std::nullopt;
    const unsigned d = D / 2;
    Principal p;
    p.alpha_d = g.a().coef(0);
    for (unsigned j = 0; j < d; ++j) {
        p.alpha.push_back(g.a().coef(d - j));
        p.beta.push_back(g.b().coef(d - 1 - j));
    }
    if (p.alpha[0] == 0 && p.beta[0] == 0) return std::nullopt;
    return p;
}

Principal principal_of(const CtxPtr& ctx, const IdealSpec& I) {
    using K = IdealSpec::Kind;
    if (I.kind == K::Principal) return I.principal;
    if (I.kind == K::Product) {
        DomainElem g = DomainElem::constant(ctx, 1);
        for (const auto& fac : I.factors) g = g * domain::generator(ctx, principal_of(ctx, fac));
        auto p = principal_of(g);
        if (!p) throw WeilError("principal_of: degenerate product");
        return *p;
    }
    throw WeilError("weil operator: only principal ideals are supported");
}

SymPoly weil_operator(const CtxPtr& ctx, const IdealSpec& I, int r) {
    if (r < 2) throw WeilError("weil_operator: rank must be at least 2");
    const Principal p = principal_of(ctx, I);
    if (p.d() == 0 || (p.alpha[0] == 0 && p.beta[0] == 0))
        throw WeilError("weil_operator: alpha_0 = beta_0 = 0");
    if (r == 2) return p.alpha[0] != 0 ? o_prime(ctx, p) : o_second(ctx, p);
    const bool unit_lin = p.d() == 1 && p.alpha_d == 0;
    if (unit_lin && p.alpha[0] == 1 && p.beta[0] == 0) return wo_x(ctx, r);
    if (unit_lin && p.alpha[0] == 0 && p.beta[0] == 1) return wo_y(ctx, r);
    const QuotientBasis B(ctx, p);
    return construction(ctx, B.basis(), B.first_kind() ? dual_w(ctx, p) : dual_v(ctx, p), r);
}

// ---------------------------------------------------------- evaluation

Evaluator::Evaluator(const FModule& m, const FieldPtr& ext) : emb_(m.F.z.field, ext) {
    for (int i = 0; i <= m.phi_x.degree(); ++i) px_.push_back(emb_.apply(m.phi_x.coef(i)));
    for (int i = 0; i <= m.phi_y.degree(); ++i) py_.push_back(emb_.apply(m.phi_y.coef(i)));
}

FieldElem Evaluator::apply(const std::vector<FieldElem>& c, const FieldElem& mu) const {
    FieldElem acc = mu.zero(), p = mu;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i > 0) p = p.frob();
        acc += c[i] * p;
    }
    return acc;
}

FieldElem Evaluator::eval(const FSkew& f, const FieldElem& mu) const {
    std::vector<FieldElem> c;
    for (int i = 0; i <= f.degree(); ++i) c.push_back(emb_.apply(f.coef(i)));
    return apply(c, mu);
}

FieldElem Evaluator::phi(const DomainElem& a, const FieldElem& mu) const {
    FieldElem va = mu.zero(), vb = mu.zero(), p = mu;
    const int n = std::max(a.a().degree(), a.b().degree());
    for (int i = 0; i <= n; ++i) {
        if (i > 0) p = phi_x(p);
        const auto ii = static_cast<size_t>(i);
        if (a.a().coef(ii)) va += emb_.apply(FieldElem(a.field(), a.a().coef(ii))) * p;
        if (a.b().coef(ii)) vb += emb_.apply(FieldElem(a.field(), a.b().coef(ii))) * p;
    }
    return va + phi_y(vb);
}

namespace {

// Values phi_{x^a y^b}(mu) for the monomials a tensor needs.
class MonoTable {
  public:
    MonoTable(const Evaluator& ev, const FieldElem& mu) : ev_(ev), mu_(mu) {}
    const FieldElem& get(int a, int b) {
        auto it = v_.find({a, b});
        if (it != v_.end()) return it->second;
        FieldElem r;
        if (a == 0 && b == 0)
            r = mu_;
        else if (b == 1)
            r = ev_.phi_y(get(a, 0));
        else
            r = ev_.phi_x(get(a - 1, 0));
        return v_.emplace(std::pair{a, b}, r).first->second;
    }

  private:
    const Evaluator& ev_;
    FieldElem mu_;
    std::map<std::pair<int, int>, FieldElem> v_;
};

FieldElem dm_with(const SymPoly& tensor, const Evaluator& ev, const std::vector<MonoTable*>& tabs) {
    const auto& cf = tensor.ctx()->z.field;
    FieldElem acc(ev.ext(), 0);
    std::vector<FieldElem> args(tabs.size());
    for (const auto& [k, c] : tensor.terms()) {
        for (size_t i = 0; i < tabs.size(); ++i) args[i] = tabs[i]->get(k[2 * i], k[2 * i + 1]);
        acc += ev.embed(FieldElem(cf, c)) * moore(args);
    }
    return acc;
}

}  // namespace

FieldElem dm_product(const SymPoly& tensor, const FModule& m, const std::vector<FieldElem>& mu) {
    if (static_cast<int>(mu.size()) != tensor.rank()) throw WeilError("dm_product: wrong number of points");
    const FieldPtr E = mu.front().field();
    for (const auto& v : mu)
        if (!v.field()->same(*E)) throw WeilError("dm_product: points lie in different fields");
    if (!tensor.ctx()->z.field->same(*m.F.z.field)) throw WeilError("dm_product: tensor and module fields differ");
    const Evaluator ev(m, E);
    std::vector<MonoTable> tabs;
    for (const auto& v : mu) tabs.emplace_back(ev, v);
    std::vector<MonoTable*> ptr;
    for (auto& t : tabs) ptr.push_back(&t);
    return dm_with(tensor, ev, ptr);
}

// ------------------------------------------------------------- torsion

namespace {

FieldPtr extension(const FieldPtr& K, int s) {
    return ffield::make_field(K->p(), K->e() * s, ext_options(K->frob_deg()));
}

Word ipow_w(Word b, int e) {
    Word r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// F_p-basis of the kernel of the F_p-linear map mu -> f(mu) on ext.
ffield::Matrix kernel_basis(const FSkew& f, const FieldPtr& ext) {
    const FieldPtr K = f.coef(0).field();
    const ffield::Embedding emb(K, ext);
    std::vector<FieldElem> c;
    for (int i = 0; i <= f.degree(); ++i) c.push_back(emb.apply(f.coef(i)));
    const int n = ext->e();
    const auto Fp = ffield::make_field(ext->p(), 1);
    ffield::Matrix A(static_cast<size_t>(n), std::vector<Word>(static_cast<size_t>(n), 0));
    for (int j = 0; j < n; ++j) {
        FieldElem mu(ext, ipow_w(ext->p(), j)), acc(ext, 0);
        for (size_t i = 0; i < c.size(); ++i) {
            if (i > 0) mu = mu.frob();
            acc += c[i] * mu;
        }
        const auto dg = ext->digits(acc.value());
        for (size_t r = 0; r < dg.size() && r < static_cast<size_t>(n); ++r) A[r][static_cast<size_t>(j)] = dg[r];
    }
    return ffield::nullspace(*Fp, A, static_cast<size_t>(n));
}

std::vector<FieldElem> span_points(const ffield::Matrix& basis, const FieldPtr& ext) {
    const uint32_t p = ext->p();
    Word total = 1;
    for (size_t i = 0; i < basis.size(); ++i) {
        total *= p;
        if (total > (Word(1) << 22)) throw WeilError("kernel enumeration exceeds 2^22 points");
    }
    std::vector<FieldElem> pts;
    const auto n = static_cast<size_t>(ext->e());
    for (Word idx = 0; idx < total; ++idx) {
        std::vector<uint32_t> dg(n, 0);
        Word v = idx;
        for (const auto& b : basis) {
            const auto c = static_cast<uint32_t>(v % p);
            v /= p;
            if (!c) continue;
            for (size_t r = 0; r < n; ++r) dg[r] = static_cast<uint32_t>((dg[r] + c * static_cast<uint32_t>(b[r])) % p);
        }
        pts.emplace_back(ext, ext->pack(dg));
    }
    std::sort(pts.begin(), pts.end(), [](const FieldElem& a, const FieldElem& b) { return a.value() < b.value(); });
    return pts;
}

}  // namespace

std::vector<FieldElem> kernel_in(const FSkew& f, const FieldPtr& ext) { return span_points(kernel_basis(f, ext), ext); }

TorsionSet torsion_kernel(const FModule& m, const CtxPtr& ctx, const IdealSpec& I, int cap) {
    TorsionSet ts;
    ts.annihilator = drinfeld::annihilator(m, ctx, I);
    if (ts.annihilator.coef(0).is_zero()) throw WeilError("torsion_kernel: phi_I is inseparable");
    const FieldPtr K = m.F.z.field;
    const int k = K->frob_deg();
    const auto want = static_cast<size_t>(ts.annihilator.degree() * k);
    size_t best = 0;
    for (int s = 1; s <= cap; ++s) {
        if (static_cast<double>(K->e() * s) * std::log2(static_cast<double>(K->p())) > 120.0) break;
        const FieldPtr E = extension(K, s);
        const auto B = kernel_basis(ts.annihilator, E);
        best = std::max(best, B.size());
        if (B.size() < want) continue;
        ts.ext = E;
        ts.s = s;
        ts.points = span_points(B, E);
        const auto n = static_cast<size_t>(ts.annihilator.degree());
        for (const auto& pt : ts.points) {
            if (ts.basis.size() == n) break;
            if (pt.is_zero()) continue;
            auto trial = ts.basis;
            trial.push_back(pt);
            if (!moore(trial).is_zero()) ts.basis = std::move(trial);
        }
        return ts;
    }
    throw WeilError("torsion_kernel: extension cap " + std::to_string(cap) + " exceeded; F_p-dimension " +
                    std::to_string(best) + " of " + std::to_string(want) + " found");
}

nlohmann::json jsonify(const TorsionSet& t) {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& b : t.basis) basis.push_back(ffield::jsonify(b));
    return {{"extension_degree", t.s},
            {"field_degree", t.ext->e()},
            {"kernel_size", t.points.size()},
            {"basis", basis},
            {"annihilator", skew::jsonify(t.annihilator)}};
}

FieldElem weil_pairing(const FModule& m, const CtxPtr& ctx, const IdealSpec& I, const std::vector<FieldElem>& mu) {
    const auto phiI = drinfeld::annihilator(m, ctx, I);
    if (mu.empty()) throw WeilError("weil_pairing: no points");
    const Evaluator ev(m, mu.front().field());
    for (const auto& v : mu)
        if (!ev.eval(phiI, v).is_zero()) throw WeilError("weil_pairing: point not in the kernel of phi_I");
    return dm_product(weil_operator(ctx, I, m.rank()), m, mu);
}

// --------------------------------------------------------- the suite

namespace {

struct Table {
    std::vector<FieldElem> pts;
    std::map<Word, size_t> index;
    std::vector<std::vector<FieldElem>> w;  // w[i][j] = Weil(pts[i], pts[j])

    size_t at(const FieldElem& v) const {
        auto it = index.find(v.value());
        if (it == index.end()) throw WeilError("suite: value left the kernel");
        return it->second;
    }
};

Table pair_table(const SymPoly& wo, const Evaluator& ev, const std::vector<FieldElem>& pts) {
    Table t;
    t.pts = pts;
    for (size_t i = 0; i < pts.size(); ++i) t.index.emplace(pts[i].value(), i);
    std::vector<MonoTable> tabs;
    for (const auto& p : pts) tabs.emplace_back(ev, p);
    t.w.assign(pts.size(), std::vector<FieldElem>(pts.size()));
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j) {
            t.w[i][j] = dm_with(wo, ev, {&tabs[i], &tabs[j]});
        }
    return t;
}

}  // namespace

drinfeld::Report property_suite(const FModule& m, const CtxPtr& ctx, const IdealSpec& I, const SuiteOptions& opt,
                                nlohmann::json* detail) {
    if (m.rank() != 2) throw WeilError("property_suite: rank-two modules only");
    drinfeld::Report rep;
    const FModule psi = drinfeld::wedge(m);
    const TorsionSet T = torsion_kernel(m, ctx, I, opt.cap);
    const FieldPtr E = T.ext;
    const Evaluator ev(m, E), evp(psi, E);
    const SymPoly wo = weil_operator(ctx, I, 2);
    const Table tab = pair_table(wo, ev, T.points);
    const size_t n = tab.pts.size();
    const auto psiI = drinfeld::annihilator(psi, ctx, I);

    bool member = true;
    std::set<Word> values;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            values.insert(tab.w[i][j].value());
            member = member && evp.eval(psiI, tab.w[i][j]).is_zero();
        }
    rep.add("membership", member);

    bool lin = true;
    const DomainElem gx = DomainElem::x(ctx), gy = DomainElem::y(ctx);
    for (size_t i = 0; i < n && lin; ++i) {
        const size_t ix = tab.at(ev.phi_x(tab.pts[i])), iy = tab.at(ev.phi_y(tab.pts[i]));
        for (size_t j = 0; j < n && lin; ++j) {
            lin = lin && tab.w[ix][j] == evp.phi_x(tab.w[i][j]);
            lin = lin && tab.w[iy][j] == evp.phi_y(tab.w[i][j]);
        }
        for (const auto& b : T.basis) {
            const size_t ib = tab.at(b), is = tab.at(tab.pts[i] + b);
            for (size_t j = 0; j < n && lin; ++j) lin = lin && tab.w[is][j] == tab.w[i][j] + tab.w[ib][j];
        }
    }
    rep.add("multilinear", lin);

    bool alt = true;
    for (size_t i = 0; i < n; ++i) {
        alt = alt && tab.w[i][i].is_zero();
        for (size_t j = 0; j < n; ++j) alt = alt && tab.w[i][j] == -tab.w[j][i];
    }
    rep.add("alternating", alt);

    const auto kpsi = kernel_in(psiI, E);
    std::set<Word> kset;
    for (const auto& v : kpsi) kset.insert(v.value());
    const Word expect = ipow_w(static_cast<Word>(m.F.q()), psiI.degree());
    rep.add("surjective", kset == values && static_cast<Word>(kset.size()) == expect);

    bool gal = true;
    const int eK = m.F.z.field->e();
    auto fr = [&](const FieldElem& v) { return FieldElem(E, E->pth(v.value(), eK)); };
    for (size_t i = 0; i < n && gal; ++i) {
        const size_t fi = tab.at(fr(tab.pts[i]));
        for (size_t j = 0; j < n && gal; ++j) gal = tab.w[fi][tab.at(fr(tab.pts[j]))] == fr(tab.w[i][j]);
    }
    rep.add("galois", gal);

    // psi_P Weil_{I^2}(mu) = Weil_I(phi_P mu) on ker phi_{I^2}
    bool comp = true;
    size_t compat_checked = 0, compat_size = 0;
    try {
        const Principal P = principal_of(ctx, I);
        const DomainElem g = domain::generator(ctx, P);
        const IdealSpec I2 = IdealSpec::product({I, I});
        const TorsionSet T2 = torsion_kernel(m, ctx, I2, opt.cap);
        const Evaluator ev2(m, T2.ext), evp2(psi, T2.ext);
        const SymPoly wo2 = weil_operator(ctx, I2, 2);
        std::vector<MonoTable> tabs, tabsJ;
        for (const auto& p : T2.points) {
            tabs.emplace_back(ev2, p);
            tabsJ.emplace_back(ev2, ev2.phi(g, p));
        }
        compat_size = T2.points.size();
        std::vector<std::pair<size_t, size_t>> pairs;
        const size_t N2 = T2.points.size();
        if (opt.compat_pairs == 0 || opt.compat_pairs >= N2 * N2) {
            for (size_t i = 0; i < N2; ++i)
                for (size_t j = 0; j < N2; ++j) pairs.emplace_back(i, j);
        } else {
            std::mt19937_64 rng(opt.seed);
            for (size_t c = 0; c < opt.compat_pairs; ++c) pairs.emplace_back(rng() % N2, rng() % N2);
        }
        for (auto [i, j] : pairs) {
            const FieldElem lhs = evp2.phi(g, dm_with(wo2, ev2, {&tabs[i], &tabs[j]}));
            const FieldElem rhs = dm_with(wo, ev2, {&tabsJ[i], &tabsJ[j]});
            comp = comp && lhs == rhs;
            ++compat_checked;
            if (!comp) break;
        }
    } catch (const std::exception& e) {
        comp = false;
        if (detail) (*detail)["compatibility_error"] = e.what();
    }
    rep.add("compatible", comp);

    if (detail) {
        nlohmann::json table = nlohmann::json::array();
        if (n * n <= opt.table_limit)
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    table.push_back({ffield::word_json(*E, tab.pts[i].value()), ffield::word_json(*E, tab.pts[j].value()),
                                     ffield::word_json(*E, tab.w[i][j].value())});
        nlohmann::json props = rep.to_json();
        (*detail)["extension_degree"] = T.s;
        (*detail)["field_degree"] = E->e();
        (*detail)["kernel_size"] = n;
        (*detail)["kernel_psi_size"] = kpsi.size();
        (*detail)["value_count"] = values.size();
        (*detail)["compat_kernel_size"] = compat_size;
        (*detail)["compat_pairs_checked"] = compat_checked;
        (*detail)["weil_operator"] = jsonify(wo);
        if (n * n <= opt.table_limit) (*detail)["pairing_table"] = table;
        (*detail)["properties"] = props;
    }
    return rep;
}

drinfeld::Report compat_iinf(const FModule& m, const CtxPtr& ctx, const SuiteOptions& opt, nlohmann::json* detail) {
    drinfeld::Report rep;
    const FModule psi = drinfeld::wedge(m);
    const IdealSpec X = IdealSpec::make_principal({{1}, {0}, 0});
    const TorsionSet T = torsion_kernel(m, ctx, X, opt.cap);
    const Evaluator ev(m, T.ext), evp(psi, T.ext);
    const auto fI = drinfeld::annihilator(m, ctx, IdealSpec::iinf());
    const auto pI = drinfeld::annihilator(psi, ctx, IdealSpec::iinf());
    const Table tab = pair_table(weil_operator(ctx, X, 2), ev, T.points);
    const size_t n = tab.pts.size();
    std::vector<FieldElem> img;
    for (const auto& p : tab.pts) img.push_back(ev.eval(fI, p));
    std::optional<FieldElem> c;
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i)
        for (size_t j = 0; j < n && ok; ++j) {
            const FieldElem lhs = evp.eval(pI, tab.w[i][j]);
            const FieldElem rhs = moore({img[i], img[j]});
            if (rhs.is_zero()) {
                ok = lhs.is_zero();
            } else if (!c) {
                c = lhs * rhs.inverse();
                ok = !c->is_zero();
            } else {
                ok = lhs == *c * rhs;
            }
        }
    ok = ok && c.has_value();
    rep.add("compatible", ok);
    if (detail) {
        (*detail)["kernel_size"] = n;
        (*detail)["pairs_checked"] = n * n;
        (*detail)["constant"] = c ? ffield::jsonify(*c) : nlohmann::json(nullptr);
        (*detail)["constant_is_one"] = c && *c == c->one();
    }
    return rep;
}

// ------------------------------------------------------ finite modules

FiniteRank2 finite_rank2(int q, int ext, Word theta, Word J, int max_grow) {
    if (q < 2 || ext < 1) throw WeilError("finite_rank2: need q >= 2 and ext >= 1");
    uint32_t p = 0;
    int k = 0;
    for (uint32_t c = 2; c <= static_cast<uint32_t>(q); ++c)
        if (q % c == 0) {
            p = c;
            break;
        }
    for (long long v = q; v > 1; v /= p) {
        if (v % p) throw WeilError("finite_rank2: q is not a prime power");
        ++k;
    }
    const FieldPtr B = ffield::make_field(p, 2 * k * ext, ext_options(k));
    if (theta >= B->size() || J >= B->size()) throw WeilError("finite_rank2: theta or J outside F_{q^(2 ext)}");
    if (J == 0) throw WeilError("finite_rank2: J must be nonzero");
    for (int g = 1; g <= max_grow; ++g) {
        const FieldPtr K = ffield::make_field(p, 2 * k * ext * g, ext_options(k));
        const ffield::Embedding emb(B, K);
        const auto z = funcfield::zeta_data(K);
        const auto F = drinfeld::finite_afield(z, emb.apply(theta));
        const auto roots = ffield::nth_roots(-F.Tsq(), q + 1);
        if (roots.empty()) continue;
        FiniteRank2 out;
        out.ctx = domain::make_domain(K);
        out.nu = roots.front();
        out.phi = drinfeld::rank2_J(F, FieldElem(K, emb.apply(J)), out.nu);
        out.psi = drinfeld::wedge(out.phi);
        if (!drinfeld::validate(out.phi).ok()) throw WeilError("finite_rank2: module fails validation");
        out.spec = {{"kind", "finite"},
                    {"q", q},
                    {"ext", ext},
                    {"theta", ffield::word_json(*B, theta)},
                    {"J", ffield::word_json(*B, J)},
                    {"coefficient_degree", K->e()},
                    {"nu", ffield::jsonify(out.nu)}};
        return out;
    }
    throw WeilError("finite_rank2: no (q+1)-th root of -T^(sigma+q) within the growth bound");
}

}  // namespace dmw::weil
