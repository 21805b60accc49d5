// Named identity checks over all modules, grouped into the suites driven by
// the command line and the acceptance binary. Every check returns a Report
// whose item names identify the identity that was tested.
#pragma once

#include <cstdint>
#include <string>

#include "dmw/drinfeld.hpp"
#include "dmw/ffield.hpp"

namespace dmw::checks {

using drinfeld::Report;

// F_{q^2} with tau acting as the q-th power.
ffield::FieldPtr constant_field(int q);

// Appends r's items to into, each name prefixed by "prefix.".
void merge(Report& into, const std::string& prefix, const Report& r);

// validate() of the standard model and its conjugate, and their displays.
// tamper swaps two coefficients of Psi_x before validating.
Report standard_models(int q, bool tamper = false);
// psi_family(zeta, 1) coefficients in T-form against the t-form.
Report hayes_coefficients(int q);
// right_gcd(Psi_x, Psi_y) = tau + T and the Hayes annihilators of I_0, I_inf.
Report annihilators(int q);
// l (tau + T) intertwines Psi and Psi^sigma, l^(q-1) = T^(sigma-1).
Report standard_isogeny(int q);

Report l_closed_form(int q, int jmax);
// log o exp = id, functional equations for x and y, binomials vs phi_of.
Report exp_log(int q, int N, bool tamper = false);
Report e_k_brute(int q, int k);
// alpha_d, beta_d closed forms for d <= dmax; agreement of the xi^(q-1)
// approximations growing for d <= dgrow at N Laurent coefficients.
Report periods(int q, int dmax, int dgrow, int N);

// Phi^J with symbolic J over F(nu), the (lambda, nu) relation and wedges.
Report rank2_symbolic(int q, bool tamper = false);

// Kronecker matrices for w and v on random principal ideals of degree
// 2d, d <= dmax, at least `samples` per d; residue identities.
Report duality(int q, unsigned dmax, size_t samples, uint64_t seed);
// Closed forms against the construction, O' - O'' = kappa(P1 + P2).
// tamper adds 1 to the (x) operator.
Report operators(int q, unsigned dmax, size_t samples, uint64_t seed, bool tamper = false);
// Property suites for (x) and (y) over finite_rank2(q, ext/2, theta, J),
// plus the I_inf compatibility; compat_pairs = 0 means exhaustive.
Report weil_pairing(int q, int ext, ffield::Word theta, ffield::Word J, size_t compat_pairs, uint64_t seed,
                    nlohmann::json* detail = nullptr);

struct SuiteConfig {
    int q = 2;
    int N = 5;
    uint64_t seed = 1;
    bool tamper = false;
};
// rank1, rank2, analytic, weil or all; throws std::invalid_argument otherwise.
Report run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace dmw::checks
