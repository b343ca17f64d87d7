#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qhp/numbers.hpp"

namespace qhp {

// Dense integer matrix with exact arithmetic.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix transpose() const;
    IntMatrix mul(const IntMatrix& o) const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row i += c * row j
    void add_row(std::size_t i, std::size_t j, const Int& c);
    void add_col(std::size_t i, std::size_t j, const Int& c);
    void negate_row(std::size_t i);
    void negate_col(std::size_t i);

    // Exact determinant (Bareiss fraction-free elimination). Square only.
    Int det() const;

    // Rank over Q.
    std::size_t rank() const;

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

struct SmithResult {
    IntMatrix U; // unimodular, rows x rows
    IntMatrix S; // diagonal, rows x cols, d1 | d2 | ...
    IntMatrix V; // unimodular, cols x cols
};

// U * m * V = S with S diagonal, nonnegative, divisibility chain along the
// diagonal. Pivot selection always takes a minimal-|entry| candidate, so the
// reduction is deterministic.
SmithResult smith_normal_form(const IntMatrix& m);

// Basis of the saturated integer kernel: primitive vectors spanning
// ker(m) over Q intersected with Z^cols. Size = cols - rank.
std::vector<std::vector<Int>> kernel_basis(const IntMatrix& m);

// #coker(m) as a map Z^cols -> Z^rows: finite iff m has full row rank,
// in which case it is the product of the nonzero Smith invariants.
// nullopt encodes INFINITE.
std::optional<Int> cokernel_order(const IntMatrix& m);

} // namespace qhp
