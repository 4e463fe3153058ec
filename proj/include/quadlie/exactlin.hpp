#pragma once

#include "quadlie/qmatrix.hpp"

#include <optional>

namespace quadlie {

// Reduced row echelon form; pivot columns reported through *pivots when
// requested.  All arithmetic is exact, so there is no pivot tolerance.
QMatrix rref(QMatrix m, std::vector<int>* pivots = nullptr);

int rank(const QMatrix& m);

// Basis of {v : Mv = 0}, one vector per free column, canonical in the
// sense that vector j has 1 at its free column and the pivot columns
// carry the negated RREF entries.
std::vector<VecQ> nullspace(const QMatrix& m);

// One solution of Mx = b, or nullopt when inconsistent.
std::optional<VecQ> solve(const QMatrix& m, const VecQ& b);

// Inverse of a square regular matrix; throws on singular input.
QMatrix inverse(const QMatrix& m);

Rat determinant(const QMatrix& m);

// Cofactor (classical adjugate) matrix: Cof(P) = det(P) * (P^-1)^t.
// Computed from minors so it also works when P is singular.
QMatrix cofactor_matrix(const QMatrix& p);

// Congruence diagonalization of a symmetric matrix: returns (P, D) with
// P^t A P = D diagonal.  Symmetric Gaussian elimination; when a zero
// diagonal entry faces a nonzero off-diagonal one in its row, the
// hyperbolic pair is broken first by adding the partner row and column
// (characteristic zero makes the resulting diagonal entry nonzero).
struct CongruenceResult {
    QMatrix P;
    QMatrix D;
};
CongruenceResult congruence_diagonalize(const QMatrix& a);

struct Signature {
    int plus = 0;
    int minus = 0;
    int zero = 0;
};
Signature signature(const QMatrix& a);

// Span utilities over Q, all RREF based.
bool in_span(const std::vector<VecQ>& basis, const VecQ& v);
bool span_equal(const std::vector<VecQ>& a, const std::vector<VecQ>& b);

// Canonical basis of the span: RREF rows of the stacked vectors.
std::vector<VecQ> span_canonical_basis(const std::vector<VecQ>& vectors);

// Basis of the intersection of two spans.
std::vector<VecQ> span_intersection(const std::vector<VecQ>& a,
                                    const std::vector<VecQ>& b);

} // namespace quadlie
