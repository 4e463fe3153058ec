#pragma once

#include "quadlie/rational.hpp"

#include <initializer_list>
#include <vector>

namespace quadlie {

using VecQ = std::vector<Rat>;

// Dense rational matrix.  Sizes here are tiny (nothing above 14x14 on
// the algebra side, a few hundred rows in the invariance solver), so a
// flat vector with exact arithmetic is the right tool.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
    QMatrix(std::initializer_list<std::initializer_list<Rat>> init) {
        rows_ = int(init.size());
        cols_ = rows_ ? int(init.begin()->size()) : 0;
        a_.reserve(size_t(rows_) * cols_);
        for (const auto& row : init) {
            if (int(row.size()) != cols_)
                throw std::invalid_argument("ragged initializer");
            for (const auto& x : row) a_.push_back(x);
        }
    }

    static QMatrix identity(int n) {
        QMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static QMatrix from_columns(const std::vector<VecQ>& cols) {
        if (cols.empty()) return QMatrix(0, 0);
        QMatrix m(int(cols[0].size()), int(cols.size()));
        for (int j = 0; j < m.cols(); ++j) {
            if (int(cols[j].size()) != m.rows())
                throw std::invalid_argument("ragged column list");
            for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    static QMatrix from_rows(const std::vector<VecQ>& rows) {
        if (rows.empty()) return QMatrix(0, 0);
        QMatrix m(int(rows.size()), int(rows[0].size()));
        for (int i = 0; i < m.rows(); ++i) {
            if (int(rows[i].size()) != m.cols())
                throw std::invalid_argument("ragged row list");
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    VecQ row(int i) const {
        VecQ r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }
    VecQ col(int j) const {
        VecQ c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    QMatrix transpose() const {
        QMatrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    QMatrix operator*(const QMatrix& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        QMatrix m(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rat& x = at(i, k);
                if (x == 0) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const Rat& y = o.at(k, j);
                    if (y != 0) m.at(i, j) += x * y;
                }
            }
        return m;
    }

    VecQ operator*(const VecQ& v) const {
        if (int(v.size()) != cols_)
            throw std::invalid_argument("matrix-vector shape mismatch");
        VecQ r(rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
        return r;
    }

    QMatrix operator+(const QMatrix& o) const {
        check_same_shape(o);
        QMatrix m(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] + o.a_[k];
        return m;
    }
    QMatrix operator-(const QMatrix& o) const {
        check_same_shape(o);
        QMatrix m(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] - o.a_[k];
        return m;
    }
    QMatrix operator*(const Rat& c) const {
        QMatrix m(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] * c;
        return m;
    }

    bool operator==(const QMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const QMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }
    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    QMatrix submatrix(int r0, int c0, int nr, int nc) const {
        QMatrix m(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m.at(i, j) = at(r0 + i, c0 + j);
        return m;
    }

    void set_block(int r0, int c0, const QMatrix& b) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) at(r0 + i, c0 + j) = b.at(i, j);
    }

private:
    void check_same_shape(const QMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

inline QMatrix operator*(const Rat& c, const QMatrix& m) { return m * c; }

inline bool is_zero_vec(const VecQ& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline VecQ operator+(const VecQ& a, const VecQ& b) {
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline VecQ operator-(const VecQ& a, const VecQ& b) {
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
inline VecQ operator*(const Rat& c, const VecQ& v) {
    VecQ r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

} // namespace quadlie
