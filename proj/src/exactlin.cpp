#include "quadlie/exactlin.hpp"

namespace quadlie {

QMatrix rref(QMatrix m, std::vector<int>* pivots) {
    if (pivots) pivots->clear();
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        Rat inv = Rat(1) / m.at(r, c);
        for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return m;
}

int rank(const QMatrix& m) {
    std::vector<int> piv;
    rref(m, &piv);
    return int(piv.size());
}

std::vector<VecQ> nullspace(const QMatrix& m) {
    std::vector<int> piv;
    QMatrix r = rref(m, &piv);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : piv) is_pivot[c] = true;

    std::vector<VecQ> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        VecQ v(m.cols());
        v[c] = 1;
        for (size_t k = 0; k < piv.size(); ++k)
            v[piv[k]] = -r.at(int(k), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<VecQ> solve(const QMatrix& m, const VecQ& b) {
    if (int(b.size()) != m.rows())
        throw std::invalid_argument("solve: rhs size mismatch");
    QMatrix aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    std::vector<int> piv;
    QMatrix r = rref(aug, &piv);
    for (int c : piv)
        if (c == m.cols()) return std::nullopt;
    VecQ x(m.cols());
    for (size_t k = 0; k < piv.size(); ++k)
        x[piv[k]] = r.at(int(k), m.cols());
    return x;
}

QMatrix inverse(const QMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse: matrix not square");
    int n = m.rows();
    QMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<int> piv;
    QMatrix r = rref(aug, &piv);
    if (int(piv.size()) != n || piv.back() != n - 1)
        throw std::domain_error("inverse: singular matrix");
    return r.submatrix(0, n, n, n);
}

Rat determinant(const QMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: matrix not square");
    QMatrix a = m;
    int n = a.rows();
    Rat det = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (a.at(i, c) != 0) { p = i; break; }
        if (p < 0) return 0;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(c, j));
            det = -det;
        }
        det *= a.at(c, c);
        Rat inv = Rat(1) / a.at(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (a.at(i, c) == 0) continue;
            Rat f = a.at(i, c) * inv;
            for (int j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
        }
    }
    return det;
}

QMatrix cofactor_matrix(const QMatrix& p) {
    if (p.rows() != p.cols())
        throw std::invalid_argument("cofactor_matrix: matrix not square");
    int n = p.rows();
    QMatrix cof(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QMatrix minor(n - 1, n - 1);
            for (int r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(mr, mc++) = p.at(r, c);
                }
                ++mr;
            }
            Rat d = determinant(minor);
            cof.at(i, j) = ((i + j) % 2 == 0) ? d : -d;
        }
    return cof;
}

CongruenceResult congruence_diagonalize(const QMatrix& a) {
    if (!a.is_symmetric())
        throw std::invalid_argument("congruence_diagonalize: matrix not symmetric");
    int n = a.rows();
    QMatrix d = a;
    QMatrix p = QMatrix::identity(n);

    // Column operation col_j += f * col_i on both D (with the mirrored
    // row operation) and P.  Keeping D = P^t A P invariant throughout.
    auto add_col = [&](int j, int i, const Rat& f) {
        for (int r = 0; r < n; ++r) d.at(r, j) += f * d.at(r, i);
        for (int r = 0; r < n; ++r) d.at(j, r) += f * d.at(i, r);
        for (int r = 0; r < n; ++r) p.at(r, j) += f * p.at(r, i);
    };
    auto swap_cols = [&](int i, int j) {
        for (int r = 0; r < n; ++r) std::swap(d.at(r, i), d.at(r, j));
        for (int r = 0; r < n; ++r) std::swap(d.at(i, r), d.at(j, r));
        for (int r = 0; r < n; ++r) std::swap(p.at(r, i), p.at(r, j));
    };

    for (int k = 0; k < n; ++k) {
        if (d.at(k, k) == 0) {
            int diag = -1, off = -1;
            for (int l = k + 1; l < n; ++l)
                if (d.at(l, l) != 0) { diag = l; break; }
            if (diag >= 0) {
                swap_cols(k, diag);
            } else {
                for (int l = k + 1; l < n; ++l)
                    if (d.at(k, l) != 0) { off = l; break; }
                if (off < 0) continue; // row k already clean
                // 2*d.at(k,off) lands on the diagonal; nonzero in char 0
                add_col(k, off, 1);
            }
        }
        Rat inv = Rat(1) / d.at(k, k);
        for (int l = k + 1; l < n; ++l) {
            if (d.at(k, l) == 0) continue;
            add_col(l, k, -d.at(k, l) * inv);
        }
    }
    return {p, d};
}

Signature signature(const QMatrix& a) {
    CongruenceResult cd = congruence_diagonalize(a);
    Signature s;
    for (int i = 0; i < cd.D.rows(); ++i) {
        if (cd.D.at(i, i) > 0)
            ++s.plus;
        else if (cd.D.at(i, i) < 0)
            ++s.minus;
        else
            ++s.zero;
    }
    return s;
}

bool in_span(const std::vector<VecQ>& basis, const VecQ& v) {
    if (basis.empty()) return is_zero_vec(v);
    QMatrix m = QMatrix::from_rows(basis);
    QMatrix ext = m;
    QMatrix with_v(m.rows() + 1, m.cols());
    with_v.set_block(0, 0, m);
    for (int j = 0; j < m.cols(); ++j) with_v.at(m.rows(), j) = v[j];
    return rank(ext) == rank(with_v);
}

std::vector<VecQ> span_canonical_basis(const std::vector<VecQ>& vectors) {
    if (vectors.empty()) return {};
    std::vector<int> piv;
    QMatrix r = rref(QMatrix::from_rows(vectors), &piv);
    std::vector<VecQ> basis;
    for (size_t k = 0; k < piv.size(); ++k) basis.push_back(r.row(int(k)));
    return basis;
}

bool span_equal(const std::vector<VecQ>& a, const std::vector<VecQ>& b) {
    return span_canonical_basis(a) == span_canonical_basis(b);
}

std::vector<VecQ> span_intersection(const std::vector<VecQ>& a,
                                    const std::vector<VecQ>& b) {
    if (a.empty() || b.empty()) return {};
    // Zassenhaus: row reduce [A|A; B|0]; rows of the second block that
    // become zero in the first block span the intersection.
    int n = int(a[0].size());
    QMatrix m(int(a.size() + b.size()), 2 * n);
    for (size_t i = 0; i < a.size(); ++i)
        for (int j = 0; j < n; ++j) {
            m.at(int(i), j) = a[i][j];
            m.at(int(i), n + j) = a[i][j];
        }
    for (size_t i = 0; i < b.size(); ++i)
        for (int j = 0; j < n; ++j) m.at(int(a.size() + i), j) = b[i][j];
    QMatrix r = rref(m);
    std::vector<VecQ> out;
    for (int i = 0; i < r.rows(); ++i) {
        bool left_zero = true, right_zero = true;
        for (int j = 0; j < n; ++j) {
            if (r.at(i, j) != 0) left_zero = false;
            if (r.at(i, n + j) != 0) right_zero = false;
        }
        if (left_zero && !right_zero) {
            VecQ v(n);
            for (int j = 0; j < n; ++j) v[j] = r.at(i, n + j);
            out.push_back(std::move(v));
        }
    }
    return span_canonical_basis(out);
}

} // namespace quadlie
