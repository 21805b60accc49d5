#include "dmw/linalg.hpp"

namespace dmw::ffield {

std::vector<size_t> row_reduce(const Field& F, Matrix& A) {
    std::vector<size_t> piv;
    if (A.empty()) return piv;
    const size_t m = A.size(), n = A[0].size();
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        size_t k = r;
        while (k < m && A[k][c] == 0) ++k;
        if (k == m) continue;
        std::swap(A[k], A[r]);
        const Word inv = F.inv(A[r][c]);
        for (size_t j = c; j < n; ++j) A[r][j] = F.mul(A[r][j], inv);
        for (size_t i = 0; i < m; ++i) {
            if (i == r || A[i][c] == 0) continue;
            const Word f = A[i][c];
            for (size_t j = c; j < n; ++j)
                if (A[r][j]) A[i][j] = F.sub(A[i][j], F.mul(f, A[r][j]));
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

size_t rank(const Field& F, Matrix A) { return row_reduce(F, A).size(); }

std::optional<std::vector<Word>> solve(const Field& F, const Matrix& A, const std::vector<Word>& b) {
    const size_t m = A.size();
    const size_t n = m ? A[0].size() : 0;
    Matrix Ab = A;
    for (size_t i = 0; i < m; ++i) Ab[i].push_back(b[i]);
    auto piv = row_reduce(F, Ab);
    if (!piv.empty() && piv.back() == n) return std::nullopt;
    std::vector<Word> x(n, 0);
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = Ab[i][n];
    return x;
}

Matrix nullspace(const Field& F, Matrix A, size_t ncols) {
    auto piv = row_reduce(F, A);
    std::vector<bool> is_piv(ncols, false);
    for (size_t c : piv) is_piv[c] = true;
    Matrix basis;
    for (size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Word> v(ncols, 0);
        v[f] = 1;
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(A[i][f]);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace dmw::ffield
