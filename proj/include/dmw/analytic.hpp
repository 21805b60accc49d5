// Brackets [k], the sequences D_j and L_j, truncated exponential and
// logarithm of the standard model, binomials [a/r], the polynomials E_k, the
// partial products alpha_d, beta_d and Laurent approximations of xi^(q-1).
#pragma once

#include <mutex>
#include <vector>

#include "dmw/domain.hpp"
#include "dmw/drinfeld.hpp"

namespace dmw::analytic {

using funcfield::LaurentSeries;
using funcfield::RatFunc;
// A linearized series sum c_j X^(q^j) is stored as the twisted polynomial
// sum c_j tau^j; composition is the twisted product.
using LinSeries = skew::SkewPoly<RatFunc>;

LinSeries truncate(const LinSeries& f, int N);

class Tower {
  public:
    explicit Tower(const ffield::FieldPtr& field);

    const drinfeld::AField<RatFunc>& afield() const { return F_; }
    const funcfield::ZetaData& zeta() const { return F_.z; }
    long long q() const { return F_.q(); }

    // [2k] = T^(q^2k) - T, [2k-1] = T^(q^(2k-1)) - T^sigma; [0] = 0
    RatFunc bracket(int k) const;
    RatFunc D(int j) const;
    RatFunc L(int j) const;
    // [1][2]...[j] T^((sigma-1)(q^j-1))
    RatFunc closed_form_L(int j) const;

    LinSeries exp_trunc(int N) const;
    LinSeries log_trunc(int N) const;
    // [a/r] = sum_{j<=r} (-1)^(r-j) a^(q^j) / (D_j L_{r-j}^(q^j))
    RatFunc binom(const RatFunc& a, int r) const;
    // E_k = -L_{2k+1} [z/(2k+1)], coefficient of X^(q^j) at index j
    std::vector<RatFunc> E(int k) const;

    RatFunc alpha(int d) const;  // product definition
    RatFunc beta(int d) const;
    RatFunc alpha_closed(int d) const;
    RatFunc beta_closed(int d) const;

    // -L_{2d+1} / L_{2d}^q
    RatFunc xi_exact(int d) const;
    // -[1]^(1-q) [2] T^((q-1)(sigma-1)) alpha_d^(q-1) beta_{d-1}^q beta_d^(-1)
    RatFunc xi_partial(int d) const;
    // the same prefactor times (alpha_d beta_d)^(q-1): the truncated limit
    RatFunc xi_limit_form(int d) const;

  private:
    drinfeld::AField<RatFunc> F_;
    mutable std::mutex mu_;
    mutable std::vector<RatFunc> D_, L_;
};

// Dense polynomial X prod_{0 != a in L(kP)} (1 - X/a), coefficients low degree first.
std::vector<RatFunc> brute_E(const domain::CtxPtr& ctx, int k, ffield::Word max_size = ffield::Word(1) << 12);

struct XiPow {
    int d = 0;
    LaurentSeries exact, limit_form;
    int agreement = 0;
    long long valuation = 0;
};
XiPow xi_pow(const Tower& tw, int d, int N);
nlohmann::json jsonify(const XiPow& x);

}  // namespace dmw::analytic
