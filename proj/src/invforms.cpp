#include "quadlie/invforms.hpp"

#include <set>

namespace quadlie {

int sym_index(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    // row-major over the upper triangle: row i contributes n-i slots
    return i * n - i * (i - 1) / 2 + (j - i);
}

int sym_dim(int n) { return n * (n + 1) / 2; }

VecQ sym_vectorize(const QMatrix& a) {
    int n = a.rows();
    VecQ v(sym_dim(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) v[sym_index(i, j, n)] = a.at(i, j);
    return v;
}

QMatrix sym_unvectorize(const VecQ& v, int n) {
    QMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            a.at(i, j) = v[sym_index(i, j, n)];
            a.at(j, i) = a.at(i, j);
        }
    return a;
}

bool is_invariant(const FreeNilpotent& alg, const QMatrix& b) {
    int n = alg.dim();
    if (b.rows() != n || b.cols() != n || !b.is_symmetric()) return false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            LieElement pij = alg.product(j, i); // [e_j, e_i], sign folded below
            for (int k = 0; k < n; ++k) {
                // B([e_i,e_j],e_k) - B(e_i,[e_j,e_k]) = 0
                Rat lhs = 0;
                for (const auto& [l, c] : pij) lhs -= c * b.at(l, k);
                for (const auto& [l, c] : alg.product(j, k)) lhs -= c * b.at(i, l);
                if (lhs != 0) return false;
            }
        }
    return true;
}

std::vector<QMatrix> invariant_form_space(const FreeNilpotent& alg) {
    int n = alg.dim();
    int m = sym_dim(n);
    std::set<VecQ> rows;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                VecQ row(m);
                for (const auto& [l, c] : alg.product(i, j))
                    row[sym_index(l, k, n)] += c;
                for (const auto& [l, c] : alg.product(j, k))
                    row[sym_index(i, l, n)] -= c;
                if (!is_zero_vec(row)) rows.insert(std::move(row));
            }
    std::vector<VecQ> sols =
        rows.empty() ? [&] {
            std::vector<VecQ> full;
            for (int c = 0; c < m; ++c) {
                VecQ v(m);
                v[c] = 1;
                full.push_back(std::move(v));
            }
            return full;
        }()
                     : nullspace(QMatrix::from_rows({rows.begin(), rows.end()}));

    std::vector<QMatrix> basis;
    for (const auto& v : span_canonical_basis(sols)) basis.push_back(sym_unvectorize(v, n));
    return basis;
}

std::vector<QMatrix> invariant_form_space_full(const FreeNilpotent& alg) {
    int n = alg.dim();
    // unknowns: all n^2 entries, row-major
    auto idx = [n](int i, int j) { return i * n + j; };
    std::vector<VecQ> rows;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            VecQ row(n * n);
            row[idx(i, j)] = 1;
            row[idx(j, i)] = -1;
            rows.push_back(std::move(row));
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                VecQ row(n * n);
                for (const auto& [l, c] : alg.product(i, j)) row[idx(l, k)] += c;
                for (const auto& [l, c] : alg.product(j, k)) row[idx(i, l)] -= c;
                if (!is_zero_vec(row)) rows.push_back(std::move(row));
            }
    std::vector<QMatrix> basis;
    std::vector<VecQ> sym_vecs;
    for (const auto& v : nullspace(QMatrix::from_rows(rows))) {
        QMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = v[idx(i, j)];
        sym_vecs.push_back(sym_vectorize(a));
    }
    for (const auto& v : span_canonical_basis(sym_vecs)) basis.push_back(sym_unvectorize(v, n));
    return basis;
}

std::vector<FormComponent> bk_components(const FreeNilpotent& alg, const QMatrix& b) {
    int n = alg.dim(), t = alg.t();
    std::vector<FormComponent> out;
    for (int k = 1; k <= t; ++k) {
        QMatrix part(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (alg.grade(i) + alg.grade(j) == t + 2 - k) part.at(i, j) = b.at(i, j);
        out.push_back({k, std::move(part)});
    }
    return out;
}

std::vector<VecQ> kernel(const FreeNilpotent& alg, const QMatrix& b) {
    int n = alg.dim();
    if (b.rows() != n || b.cols() != n)
        throw std::invalid_argument("kernel: form has wrong shape");
    auto basis = span_canonical_basis(nullspace(b));
    // invariance makes the kernel an ideal; verify rather than assume
    for (const auto& v : basis)
        for (int j = 0; j < n; ++j) {
            VecQ e(n);
            e[j] = 1;
            VecQ w = alg.bracket_vec(v, e);
            if (!in_span(basis, w))
                throw std::logic_error("kernel: not an ideal (form is not invariant)");
        }
    return basis;
}

MembershipResult sym0_membership(const FreeNilpotent& alg, const QMatrix& b) {
    MembershipResult res;
    auto ker = kernel(alg, b);

    res.kernel_in_derived = true;
    for (const auto& v : ker) {
        for (int i = 0; i < alg.dim() && res.kernel_in_derived; ++i)
            if (alg.grade(i) == 1 && v[i] != 0) {
                res.kernel_in_derived = false;
                res.witness = v;
            }
        if (!res.kernel_in_derived) break;
    }

    res.top_not_contained = false;
    for (int i = alg.grade_begin(alg.t()); i < alg.dim(); ++i) {
        bool col_zero = true;
        for (int r = 0; r < alg.dim(); ++r)
            if (b.at(r, i) != 0) { col_zero = false; break; }
        if (!col_zero) {
            res.top_not_contained = true;
            if (res.kernel_in_derived) {
                res.witness = VecQ(alg.dim());
                res.witness[i] = 1;
            }
            break;
        }
    }

    res.member = res.kernel_in_derived && res.top_not_contained;
    if (res.member)
        res.reason = "kernel lies in the derived ideal and the top graded piece survives";
    else if (!res.kernel_in_derived)
        res.reason = "kernel contains a vector with a generator component";
    else
        res.reason = "top graded piece is contained in the kernel";
    return res;
}

} // namespace quadlie
