#include "chom/sparse.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chom {

Exec& exec_mode() {
    static Exec mode = Exec::Parallel;
    return mode;
}

void SparseVec::set(int row, const Rat& value) {
    auto it = std::lower_bound(ents.begin(), ents.end(), row,
                               [](const auto& e, int r) { return e.first < r; });
    if (it != ents.end() && it->first == row) {
        if (value == 0)
            ents.erase(it);
        else
            it->second = value;
    } else if (value != 0) {
        ents.insert(it, {row, value});
    }
}

Rat SparseVec::get(int row) const {
    auto it = std::lower_bound(ents.begin(), ents.end(), row,
                               [](const auto& e, int r) { return e.first < r; });
    if (it != ents.end() && it->first == row)
        return it->second;
    return Rat(0);
}

SparseVec& SparseVec::axpy(const Rat& c, const SparseVec& other) {
    if (c == 0 || other.empty())
        return *this;
    std::vector<std::pair<int, Rat>> out;
    out.reserve(ents.size() + other.ents.size());
    size_t i = 0, j = 0;
    while (i < ents.size() || j < other.ents.size()) {
        if (j == other.ents.size() ||
            (i < ents.size() && ents[i].first < other.ents[j].first)) {
            out.push_back(ents[i++]);
        } else if (i == ents.size() || other.ents[j].first < ents[i].first) {
            out.emplace_back(other.ents[j].first, c * other.ents[j].second);
            ++j;
        } else {
            Rat v = ents[i].second + c * other.ents[j].second;
            if (v != 0)
                out.emplace_back(ents[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    ents = std::move(out);
    return *this;
}

SparseVec SparseVec::scaled(const Rat& c) const {
    SparseVec out;
    if (c == 0)
        return out;
    out.ents.reserve(ents.size());
    for (const auto& [r, v] : ents)
        out.ents.emplace_back(r, c * v);
    return out;
}

SparseMatrix SparseMatrix::identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.col_[i].ents.emplace_back(i, Rat(1));
    return m;
}

long long SparseMatrix::nnz() const {
    long long n = 0;
    for (const auto& c : col_)
        n += c.nnz();
    return n;
}

bool SparseMatrix::is_zero() const {
    for (const auto& c : col_)
        if (!c.empty())
            return false;
    return true;
}

void SparseMatrix::set(int row, int col, const Rat& value) {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
        throw std::out_of_range("SparseMatrix::set out of range");
    col_[col].set(row, value);
}

Rat SparseMatrix::get(int row, int col) const {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
        throw std::out_of_range("SparseMatrix::get out of range");
    return col_[col].get(row);
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix sum: shape mismatch");
    SparseMatrix out(rows_, cols_);
    for (int j = 0; j < cols_; ++j) {
        out.col_[j] = col_[j];
        out.col_[j].axpy(Rat(1), o.col_[j]);
    }
    return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix difference: shape mismatch");
    SparseMatrix out(rows_, cols_);
    for (int j = 0; j < cols_; ++j) {
        out.col_[j] = col_[j];
        out.col_[j].axpy(Rat(-1), o.col_[j]);
    }
    return out;
}

SparseMatrix SparseMatrix::operator*(const Rat& c) const {
    SparseMatrix out(rows_, cols_);
    for (int j = 0; j < cols_; ++j)
        out.col_[j] = col_[j].scaled(c);
    return out;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        return false;
    for (int j = 0; j < cols_; ++j)
        if (!(col_[j] == o.col_[j]))
            return false;
    return true;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
    SparseVec acc;
    for (const auto& [k, c] : v.ents) {
        if (k < 0 || k >= cols_)
            throw std::out_of_range("apply: vector index out of range");
        acc.axpy(c, col_[k]);
    }
    return acc;
}

namespace {

SparseVec mul_column(const SparseMatrix& a, const SparseVec& bcol) {
    SparseVec acc;
    for (const auto& [k, c] : bcol.ents)
        acc.axpy(c, a.col(k));
    return acc;
}

} // namespace

SparseMatrix mul(const SparseMatrix& a, const SparseMatrix& b, Exec mode) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: shape mismatch");
    SparseMatrix out(a.rows(), b.cols());
    const int n = b.cols();
    if (mode == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (int j = 0; j < n; ++j)
            out.col_mut(j) = mul_column(a, b.col(j));
    } else {
        for (int j = 0; j < n; ++j)
            out.col_mut(j) = mul_column(a, b.col(j));
    }
    return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    return mul(*this, o, exec_mode());
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix out(cols_, rows_);
    for (int j = 0; j < cols_; ++j)
        for (const auto& [r, v] : col_[j].ents)
            out.col_[r].ents.emplace_back(j, v);
    return out;
}

SparseMatrix SparseMatrix::hcat(const SparseMatrix& b) const {
    if (rows_ != b.rows_)
        throw std::invalid_argument("hcat: row mismatch");
    SparseMatrix out(rows_, cols_ + b.cols_);
    for (int j = 0; j < cols_; ++j)
        out.col_[j] = col_[j];
    for (int j = 0; j < b.cols_; ++j)
        out.col_[cols_ + j] = b.col_[j];
    return out;
}

SparseMatrix SparseMatrix::block(int r0, int c0, int nr, int nc) const {
    SparseMatrix out(nr, nc);
    for (int j = 0; j < nc; ++j)
        for (const auto& [r, v] : col_[c0 + j].ents)
            if (r >= r0 && r < r0 + nr)
                out.col_[j].ents.emplace_back(r - r0, v);
    return out;
}

void SparseMatrix::insert_block(int r0, int c0, const SparseMatrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
        throw std::out_of_range("insert_block: does not fit");
    for (int j = 0; j < b.cols_; ++j)
        for (const auto& [r, v] : b.col_[j].ents)
            col_[c0 + j].set(r0 + r, v);
}

bool SparseMatrix::is_identity() const {
    if (rows_ != cols_)
        return false;
    for (int j = 0; j < cols_; ++j) {
        if (col_[j].nnz() != 1)
            return false;
        if (col_[j].ents[0].first != j || col_[j].ents[0].second != 1)
            return false;
    }
    return true;
}

bool SparseMatrix::is_scalar(const Rat& c) const {
    if (rows_ != cols_)
        return false;
    if (c == 0)
        return is_zero();
    for (int j = 0; j < cols_; ++j) {
        if (col_[j].nnz() != 1)
            return false;
        if (col_[j].ents[0].first != j || col_[j].ents[0].second != c)
            return false;
    }
    return true;
}

SparseMatrix from_triplets(int rows, int cols,
                           const std::vector<std::tuple<int, int, Rat>>& trips) {
    SparseMatrix m(rows, cols);
    for (const auto& [r, c, v] : trips) {
        if (v == 0)
            continue;
        Rat cur = m.get(r, c);
        m.set(r, c, cur + v);
    }
    return m;
}

} // namespace chom
