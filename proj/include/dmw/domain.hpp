// The coordinate ring A = F_q[x,y]/(y^2 - Tr(zeta)xy + zeta^(q+1)x^2 - x),
// x = 1/pi, y = t/pi. Elements are kept reduced as A(x) + y B(x).
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "dmw/funcfield.hpp"

namespace dmw::domain {

using ffield::FieldPtr;
using ffield::Poly;
using ffield::Word;
using funcfield::RatFunc;

class DomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct DomainCtx {
    funcfield::ZetaData z;
    funcfield::StdElements s;
    Poly pi;  // t^2 - Tr(zeta) t + zeta^(q+1)
};
using CtxPtr = std::shared_ptr<const DomainCtx>;

CtxPtr make_domain(const FieldPtr& field);

class DomainElem {
  public:
    DomainElem() = default;
    // a + y b with a, b polynomials in x over F_q (checked).
    DomainElem(CtxPtr ctx, Poly a, Poly b);
    static DomainElem constant(const CtxPtr& ctx, Word c);
    static DomainElem x(const CtxPtr& ctx);
    static DomainElem y(const CtxPtr& ctx);
    // c + sum a_i x^i + sum b_i x^(i-1) y, lists starting at i = 1
    static DomainElem from_lists(const CtxPtr& ctx, Word c, const std::vector<Word>& a, const std::vector<Word>& b);

    const CtxPtr& ctx() const { return ctx_; }
    const Poly& a() const { return a_; }
    const Poly& b() const { return b_; }
    const FieldPtr& field() const { return ctx_->z.field; }

    DomainElem operator+(const DomainElem& o) const;
    DomainElem operator-(const DomainElem& o) const;
    DomainElem operator-() const;
    DomainElem operator*(const DomainElem& o) const;
    DomainElem scale(Word c) const;
    DomainElem pow(unsigned n) const;
    bool operator==(const DomainElem& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const DomainElem& o) const { return !(*this == o); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    RatFunc to_ratfunc() const;

  private:
    CtxPtr ctx_;
    Poly a_, b_;
};

nlohmann::json jsonify(const DomainElem& e);
DomainElem domain_from_json(const CtxPtr& ctx, const nlohmann::json& j);

// Throws DomainError naming the place when f has a pole away from P_pi.
DomainElem from_ratfunc(const CtxPtr& ctx, const RatFunc& f);
std::optional<DomainElem> try_from_ratfunc(const CtxPtr& ctx, const RatFunc& f);

unsigned deg(const DomainElem& e);
// valuation at P_pi computed from the rational function
int valuation_at_p(const DomainElem& e);

// {1, x, ..., x^k, y, xy, ..., x^(k-1) y}
std::vector<DomainElem> rr_basis(const CtxPtr& ctx, unsigned k);
// coordinates in rr_basis(k); throws if e is not in L(kP)
std::vector<Word> rr_coords(const DomainElem& e, unsigned k);
DomainElem from_rr_coords(const CtxPtr& ctx, const std::vector<Word>& c, unsigned k);

struct Principal {
    std::vector<Word> alpha, beta;  // alpha_0..alpha_{d-1}, beta_0..beta_{d-1}
    Word alpha_d = 0;
    unsigned d() const { return static_cast<unsigned>(alpha.size()); }
};

struct IdealSpec {
    enum class Kind { Principal, I0, Iinf, Product } kind = Kind::Principal;
    Principal principal;
    std::vector<IdealSpec> factors;

    static IdealSpec make_principal(Principal p);
    static IdealSpec i0() { return {Kind::I0, {}, {}}; }
    static IdealSpec iinf() { return {Kind::Iinf, {}, {}}; }
    static IdealSpec product(std::vector<IdealSpec> f) { return {Kind::Product, {}, std::move(f)}; }
};

nlohmann::json jsonify(const FieldPtr& f, const Principal& p);
// "alpha=a0,a1;beta=b0,b1;alphad=c" with integer-packed F_q elements
Principal parse_principal(const CtxPtr& ctx, const std::string& s);

// P(x,y) = alpha_d + sum (alpha_j x^(d-j) + beta_j y x^(d-j-1)).
DomainElem generator(const CtxPtr& ctx, const Principal& p);
std::vector<DomainElem> generators(const CtxPtr& ctx, const IdealSpec& I);

// a / g in A?
bool divides(const DomainElem& g, const DomainElem& a);
// g in the ideal generated by gens, searching multipliers in L(mP).
bool in_ideal(const DomainElem& g, const std::vector<DomainElem>& gens, unsigned m);
// The ideal generated by gens equals (g).
bool ideal_equals_principal(const std::vector<DomainElem>& gens, const DomainElem& g, unsigned m);

class QuotientBasis {
  public:
    // B1 when alpha_0 != 0 unless second is set, otherwise B2 (beta_0 != 0)
    QuotientBasis(const CtxPtr& ctx, const Principal& p, bool second = false);
    const std::vector<DomainElem>& basis() const { return basis_; }
    const DomainElem& modulus() const { return P_; }
    // true for B1 (alpha_0 != 0), false for B2
    bool first_kind() const { return first_; }
    // coordinates of e modulo P in basis()
    std::vector<Word> reduce(const DomainElem& e) const;
    DomainElem lift(const std::vector<Word>& c) const;

  private:
    CtxPtr ctx_;
    DomainElem P_;
    std::vector<DomainElem> basis_;
    bool first_ = true;
};

}  // namespace dmw::domain
