#ifndef SYMGRAPH_MATRIX_HPP
#define SYMGRAPH_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace symgraph {

// Dense matrix over the rationals. Everything here is exact; rank and
// solves use plain Gaussian elimination, which introduces no error over Q.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& aik = (*this)(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Rat& bkj = o(k, j);
                    if (bkj != 0) r(i, j) += aik * bkj;
                }
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix sum: shape mismatch");
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix difference: shape mismatch");
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    Matrix scaled(const Rat& c) const {
        Matrix r = *this;
        for (auto& x : r.a_) x *= c;
        return r;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Rat trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
        Rat t = 0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    // Row echelon reduction in place; returns the pivot column indices.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t p = row;
            while (p < rows_ && (*this)(p, col) == 0) ++p;
            if (p == rows_) continue;
            if (p != row)
                for (std::size_t j = 0; j < cols_; ++j)
                    std::swap((*this)(p, j), (*this)(row, j));
            Rat inv = Rat(1) / (*this)(row, col);
            for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row) continue;
                Rat f = (*this)(i, col);
                if (f == 0) continue;
                for (std::size_t j = col; j < cols_; ++j)
                    (*this)(i, j) -= f * (*this)(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    // Basis of the right null space, one column vector per basis element.
    std::vector<std::vector<Rat>> null_space() const {
        Matrix m = *this;
        auto pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<Rat>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<Rat> v(cols_, Rat(0));
            v[free] = 1;
            for (std::size_t k = 0; k < pivots.size(); ++k)
                v[pivots[k]] = -m(k, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Solves A x = b exactly; requires the system to be consistent.
    std::vector<Rat> solve(const std::vector<Rat>& b) const {
        if (b.size() != rows_) throw std::invalid_argument("solve: rhs length mismatch");
        Matrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_) = b[i];
        }
        auto pivots = aug.rref();
        std::vector<Rat> x(cols_, Rat(0));
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            if (pivots[k] == cols_) throw std::runtime_error("solve: inconsistent system");
            x[pivots[k]] = aug(k, cols_);
        }
        return x;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

}  // namespace symgraph

#endif
