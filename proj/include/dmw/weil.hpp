// Residue pairing and dual bases of A/I, Moore determinants, the
// Drinfeld-Moore product, Weil operators, torsion kernels over finite
// A-fields and the Weil pairing with its property checks.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dmw/domain.hpp"
#include "dmw/drinfeld.hpp"
#include "dmw/linalg.hpp"

namespace dmw::weil {

using domain::CtxPtr;
using domain::DomainElem;
using domain::IdealSpec;
using domain::Principal;
using ffield::FieldElem;
using ffield::FieldPtr;
using ffield::Word;
using funcfield::RatFunc;

using FModule = drinfeld::DrinfeldModule<FieldElem>;
using FSkew = skew::SkewPoly<FieldElem>;

class WeilError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// det(xi_i^(q^j)), q taken from the elements' field.
FieldElem moore(const std::vector<FieldElem>& xi);

// Polynomial in X_1, Y_1, ..., X_r, Y_r over F_q modulo rho(X_i, Y_i), i.e.
// an element of the r-fold tensor power of A. Every monomial has Y_i-degree
// at most one.
class SymPoly {
  public:
    // (a_1, b_1, ..., a_r, b_r) for prod X_i^a_i Y_i^b_i
    using Key = std::vector<int>;

    SymPoly() = default;
    SymPoly(CtxPtr ctx, int r) : ctx_(std::move(ctx)), r_(r) {}
    // e_1 (x) ... (x) e_r
    static SymPoly tensor(const std::vector<DomainElem>& slots);
    static SymPoly constant(const CtxPtr& ctx, int r, Word c);
    static SymPoly X(const CtxPtr& ctx, int r, int i);  // i counts from 0
    static SymPoly Y(const CtxPtr& ctx, int r, int i);

    const CtxPtr& ctx() const { return ctx_; }
    int rank() const { return r_; }
    const std::map<Key, Word>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    SymPoly operator+(const SymPoly& o) const;
    SymPoly operator-(const SymPoly& o) const;
    SymPoly operator*(const SymPoly& o) const;
    SymPoly scale(Word c) const;
    bool operator==(const SymPoly& o) const { return r_ == o.r_ && terms_ == o.terms_; }
    bool operator!=(const SymPoly& o) const { return !(*this == o); }

    // Invariant under every swap (X_i, Y_i) <-> (X_j, Y_j).
    bool is_symmetric() const;
    // The slot-i factor x^a y^b of a key.
    static DomainElem slot_monomial(const CtxPtr& ctx, const Key& k, int i);

  private:
    void add_term(const Key& k, Word c);
    CtxPtr ctx_;
    int r_ = 0;
    std::map<Key, Word> terms_;
};

nlohmann::json jsonify(const SymPoly& s);

// Coordinates in basis()^(tensor r) after reducing every slot modulo P.
using ReducedTensor = std::map<std::vector<size_t>, Word>;
ReducedTensor reduce_mod(const SymPoly& s, const domain::QuotientBasis& B);

// Tr Res_zeta (f h omega_pi), omega_pi = dt/pi.
Word residue_pairing(const DomainElem& f, const RatFunc& h);
// 1/P: omega_* = omega_star(P) omega_pi.
RatFunc omega_star(const CtxPtr& ctx, const Principal& p);
// <e_i, h_j omega_*> over the quotient basis (B2 when second is set).
ffield::Matrix pairing_matrix(const CtxPtr& ctx, const Principal& p, const std::vector<DomainElem>& h,
                              bool second = false);

// Closed forms w(e) for e in B1 (alpha_0 != 0) and v(e) for e in B2
// (beta_0 != 0), in the order of QuotientBasis::basis().
std::vector<DomainElem> dual_w(const CtxPtr& ctx, const Principal& p);
std::vector<DomainElem> dual_v(const CtxPtr& ctx, const Principal& p);
// The dual basis from inverting the Gram matrix of the residue pairing.
std::vector<DomainElem> dual_by_pairing(const CtxPtr& ctx, const Principal& p, bool second = false);

// sum over E_1..E_{r-1} of E_1 (x) ... (x) E_{r-1} (x) prod w(E_i)
SymPoly construction(const CtxPtr& ctx, const std::vector<DomainElem>& basis, const std::vector<DomainElem>& duals,
                     int r);

// Rank-two closed forms O' (alpha_0 != 0) and O'' (beta_0 != 0).
SymPoly o_prime(const CtxPtr& ctx, const Principal& p);
SymPoly o_second(const CtxPtr& ctx, const Principal& p);
// sum over (r-1)-subsets of the Y-products
SymPoly wo_x(const CtxPtr& ctx, int r);
// sum_k (-1)^k zeta^(k(q+1)) e_k(X_1..X_r), k < r
SymPoly wo_y(const CtxPtr& ctx, int r);

// P with deg P = 2d read back from a domain element; nothing when the
// leading coefficients both vanish.
std::optional<Principal> principal_of(const DomainElem& g);
Principal principal_of(const CtxPtr& ctx, const IdealSpec& I);

// Weil operator of I for rank r with respect to omega_* = omega_pi / P.
SymPoly weil_operator(const CtxPtr& ctx, const IdealSpec& I, int r);

// Evaluation of a module over a finite A-field at points of an extension.
class Evaluator {
  public:
    Evaluator(const FModule& m, const FieldPtr& ext);
    const FieldPtr& ext() const { return emb_.dst(); }
    FieldElem embed(const FieldElem& c) const { return emb_.apply(c); }
    FieldElem eval(const FSkew& f, const FieldElem& mu) const;
    FieldElem phi_x(const FieldElem& mu) const { return apply(px_, mu); }
    FieldElem phi_y(const FieldElem& mu) const { return apply(py_, mu); }
    FieldElem phi(const DomainElem& a, const FieldElem& mu) const;

  private:
    FieldElem apply(const std::vector<FieldElem>& c, const FieldElem& mu) const;
    ffield::Embedding emb_;
    std::vector<FieldElem> px_, py_;
};

// sum over terms of c * M(phi_{m_1}(mu_1), ..., phi_{m_r}(mu_r)).
FieldElem dm_product(const SymPoly& tensor, const FModule& m, const std::vector<FieldElem>& mu);

// Kernel of phi_I in the smallest extension F_{Q^s}, s <= cap, where it is
// complete; Q = |coefficient field|.
struct TorsionSet {
    FieldPtr ext;
    int s = 0;
    FSkew annihilator;
    std::vector<FieldElem> points;  // sorted by packed value
    std::vector<FieldElem> basis;   // over F_q
};
TorsionSet torsion_kernel(const FModule& m, const CtxPtr& ctx, const IdealSpec& I, int cap = 12);
// Zeros of f (coefficients over m's field) inside a given extension.
std::vector<FieldElem> kernel_in(const FSkew& f, const FieldPtr& ext);
nlohmann::json jsonify(const TorsionSet& t);

FieldElem weil_pairing(const FModule& m, const CtxPtr& ctx, const IdealSpec& I, const std::vector<FieldElem>& mu);

struct SuiteOptions {
    int cap = 12;
    // pairs examined by the compatibility check (all when 0)
    size_t compat_pairs = 0;
    // bound on the pairing table written to the detail
    size_t table_limit = 256;
    uint64_t seed = 1;
};
// Rank-two property suite over ker phi_I: multilinear, alternating,
// surjective onto ker psi_I, Galois equivariant, compatible with J = I,
// and membership of every value in ker psi_I, psi = wedge(m).
drinfeld::Report property_suite(const FModule& m, const CtxPtr& ctx, const IdealSpec& I, const SuiteOptions& opt = {},
                                nlohmann::json* detail = nullptr);

// psi_{I_inf} Weil_{(x)}(mu) = c Weil_{I_inf}(phi_{I_inf} mu) on ker phi_(x), using
// I_inf^2 = (x). A/I_inf = F_q, so Weil_{I_inf} is a multiple of the Moore
// determinant; "compatible" holds when one nonzero c fits every pair (c is
// written to the detail, monic annihilators on both sides).
drinfeld::Report compat_iinf(const FModule& m, const CtxPtr& ctx, const SuiteOptions& opt = {},
                             nlohmann::json* detail = nullptr);

// A rank-two module Phi^J over a finite A-field. theta and J are packed
// elements of F_{q^(2 ext)}; the coefficient field grows until nu exists.
struct FiniteRank2 {
    CtxPtr ctx;
    FModule phi, psi;
    FieldElem nu;
    nlohmann::json spec;
};
FiniteRank2 finite_rank2(int q, int ext, Word theta, Word J, int max_grow = 6);

}  // namespace dmw::weil
