// One line per acceptance criterion. Equalities are exact; the only
// tolerances are the wall-clock budgets below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dmw/checks.hpp"

using namespace dmw;
using checks::Report;

namespace {

constexpr uint64_t kSeed = 20261016;

struct Criterion {
    int id;
    const char* what;
    double budget_s;  // 0: no runtime bound
    std::function<Report()> run;
};

Report over_q(std::initializer_list<int> qs, const std::function<Report(int)>& f) {
    Report r;
    for (int q : qs) checks::merge(r, "q" + std::to_string(q), f(q));
    return r;
}

}  // namespace

int main() {
    const std::vector<Criterion> all = {
        {1, "rank-one standard models validate, q in {2,3,4,5}", 5.0,
         [] { return over_q({2, 3, 4, 5}, [](int q) { return checks::standard_models(q); }); }},
        {2, "Hayes coefficient identities, q in {2,3,4}", 0,
         [] { return over_q({2, 3, 4}, checks::hayes_coefficients); }},
        {3, "right_gcd(Psi_x, Psi_y) = tau + T and the I_0 annihilator, q in {2,3}", 0,
         [] { return over_q({2, 3}, checks::annihilators); }},
        {4, "L_j closed form, j <= 6 (q = 2), j <= 4 (q = 3)", 10.0,
         [] {
             Report r;
             checks::merge(r, "q2", checks::l_closed_form(2, 6));
             checks::merge(r, "q3", checks::l_closed_form(3, 4));
             return r;
         }},
        {5, "exp/log inverse, functional equations, binomials (N = 5 at q = 2, N = 4 at q = 3)", 0,
         [] {
             Report r;
             checks::merge(r, "q2", checks::exp_log(2, 5));
             checks::merge(r, "q3", checks::exp_log(3, 4));
             return r;
         }},
        {6, "E_k formula equals the brute-force product, (q,k) in {(2,1),(2,2),(3,1)}", 30.0,
         [] {
             Report r;
             checks::merge(r, "q2", checks::e_k_brute(2, 1));
             checks::merge(r, "q2", checks::e_k_brute(2, 2));
             checks::merge(r, "q3", checks::e_k_brute(3, 1));
             return r;
         }},
        {7, "alpha_d, beta_d closed forms; xi^(q-1) agreement grows, valuation -1", 0,
         [] {
             Report r;
             checks::merge(r, "q2", checks::periods(2, 4, 3, 200));
             checks::merge(r, "q3", checks::periods(3, 3, 2, 700));
             return r;
         }},
        {8, "l (tau + T) Psi_a = Psi^sigma_a l (tau + T), q in {2,3}", 0,
         [] { return over_q({2, 3}, checks::standard_isogeny); }},
        {9, "Phi^J with symbolic J validates; wedge display; rank-two relation, q in {2,3}", 60.0,
         [] { return over_q({2, 3}, [](int q) { return checks::rank2_symbolic(q); }); }},
        {10, "worked example at q = 2", 0, [] { return drinfeld::example_q2(); }},
        {11, "dual bases are Kronecker, d <= 3, q in {2,3}, 10 random ideals per d; residue identities", 0,
         [] { return over_q({2, 3}, [](int q) { return checks::duality(q, 3, 10, kSeed); }); }},
        {12, "Weil operators equal the construction; O' - O'' in the ideal, d <= 3", 0,
         [] { return over_q({2, 3}, [](int q) { return checks::operators(q, 3, 10, kSeed); }); }},
        {13, "Weil pairing at q = 2, m = 2, exhaustive for (x), (y), compatibility via I_inf^2 = (x)", 120.0,
         [] { return checks::weil_pairing(2, 2, 1, 1, 0, kSeed); }},
    };

    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Report r;
        std::string err;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            err = e.what();
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.budget_s == 0 || dt < c.budget_s;
        const bool ok = err.empty() && !r.items.empty() && r.ok() && in_time;
        failed += !ok;
        std::printf("criterion %2d: %s  %s  [%zu checks, %.2f s", c.id, ok ? "PASS" : "FAIL", c.what, r.items.size(), dt);
        if (c.budget_s > 0) std::printf(" < %.0f s", c.budget_s);
        std::printf("]\n");
        if (!err.empty()) std::printf("    error: %s\n", err.c_str());
        for (const auto& f : r.failures()) std::printf("    failed: %s\n", f.c_str());
        if (!in_time) std::printf("    over the time budget\n");
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
