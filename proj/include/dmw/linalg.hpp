// Dense linear algebra over a finite field in packed-word form.
#pragma once

#include <optional>
#include <vector>

#include "dmw/ffield.hpp"

namespace dmw::ffield {

using Matrix = std::vector<std::vector<Word>>;

// Row-reduces in place; returns pivot columns.
std::vector<size_t> row_reduce(const Field& F, Matrix& A);
size_t rank(const Field& F, Matrix A);
// Some solution of A x = b (free variables set to zero), or nothing.
std::optional<std::vector<Word>> solve(const Field& F, const Matrix& A, const std::vector<Word>& b);
// Basis of {x : A x = 0}.
Matrix nullspace(const Field& F, Matrix A, size_t ncols);

}  // namespace dmw::ffield
