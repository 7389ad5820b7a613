#pragma once

#include "chom/rational.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace chom {

// Which kernel implementation the heavy loops use.  Both produce
// bit-identical results; the serial one is kept as the reference the
// tests and the benchmark compare against.
enum class Exec { Serial, Parallel };

Exec& exec_mode(); // process-wide default, initially Parallel

// Sparse column: strictly increasing row indices, no explicit zeros.
struct SparseVec {
    std::vector<std::pair<int, Rat>> ents;

    bool empty() const { return ents.empty(); }
    int nnz() const { return static_cast<int>(ents.size()); }
    void set(int row, const Rat& value); // keeps order, drops zeros
    Rat get(int row) const;
    void clear() { ents.clear(); }

    SparseVec& axpy(const Rat& c, const SparseVec& other); // *this += c*other
    SparseVec scaled(const Rat& c) const;

    bool operator==(const SparseVec& o) const { return ents == o.ents; }
};

class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {}

    static SparseMatrix identity(int n);
    static SparseMatrix zero(int rows, int cols) { return SparseMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long long nnz() const;
    bool is_zero() const;

    void set(int row, int col, const Rat& value);
    Rat get(int row, int col) const;
    const SparseVec& col(int j) const { return col_[j]; }
    SparseVec& col_mut(int j) { return col_[j]; }

    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix operator*(const SparseMatrix& o) const; // uses exec_mode()
    SparseMatrix operator*(const Rat& c) const;
    bool operator==(const SparseMatrix& o) const;
    bool operator!=(const SparseMatrix& o) const { return !(*this == o); }

    SparseVec apply(const SparseVec& v) const; // matrix * column vector
    SparseMatrix transpose() const;

    // Columns of `b` appended to the right of *this.
    SparseMatrix hcat(const SparseMatrix& b) const;
    // Sub-block of rows [r0, r0+nr) and cols [c0, c0+nc).
    SparseMatrix block(int r0, int c0, int nr, int nc) const;
    // Writes `b` into *this with offset (r0, c0); shapes must fit.
    void insert_block(int r0, int c0, const SparseMatrix& b);

    bool is_identity() const;
    // true iff *this == c * identity
    bool is_scalar(const Rat& c) const;

private:
    int rows_, cols_;
    std::vector<SparseVec> col_;
};

SparseMatrix mul(const SparseMatrix& a, const SparseMatrix& b, Exec mode);

// Dense-row helpers for building matrices from coordinate lists.
SparseMatrix from_triplets(int rows, int cols,
                           const std::vector<std::tuple<int, int, Rat>>& trips);

} // namespace chom
