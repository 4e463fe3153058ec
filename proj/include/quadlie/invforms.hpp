#pragma once

#include "quadlie/exactlin.hpp"
#include "quadlie/free_nilpotent.hpp"

namespace quadlie {

// Symmetric matrices live in upper-triangle coordinates (i <= j,
// row-major) whenever a solver needs them as vectors.
int sym_index(int i, int j, int n);
int sym_dim(int n);
VecQ sym_vectorize(const QMatrix& a);
QMatrix sym_unvectorize(const VecQ& v, int n);

// B is invariant when B([x,y],z) = B(x,[y,z]) for all basis triples.
bool is_invariant(const FreeNilpotent& alg, const QMatrix& b);

// Basis of the space of invariant symmetric bilinear forms, solved from
// the invariance equations on basis triples and canonicalized by RREF
// over the upper-triangle coordinates.
std::vector<QMatrix> invariant_form_space(const FreeNilpotent& alg);

// Independent route to the same space: unknowns are all n^2 entries,
// with the symmetry equations appended to the invariance equations and
// no row deduplication.  Slower; exists to cross-check the solver.
std::vector<QMatrix> invariant_form_space_full(const FreeNilpotent& alg);

// Split of an invariant form into its graded slices: component k keeps
// the blocks with grade(i) + grade(j) = t + 2 - k and k runs 1..t.
// Their sum recovers any form supported on grade sums <= t + 1, in
// particular every invariant form.
struct FormComponent {
    int k;
    QMatrix part;
};
std::vector<FormComponent> bk_components(const FreeNilpotent& alg, const QMatrix& b);

// Kernel of the form, canonical basis; the result is checked to be an
// ideal, which must hold whenever b is invariant.
std::vector<VecQ> kernel(const FreeNilpotent& alg, const QMatrix& b);

// Membership in Sym_0(d,t): the kernel must sit inside the derived
// ideal and must not swallow the top graded piece n^t.
struct MembershipResult {
    bool member = false;
    bool kernel_in_derived = false;
    bool top_not_contained = false;
    std::string reason;
    VecQ witness; // offending kernel vector, or surviving top vector
};
MembershipResult sym0_membership(const FreeNilpotent& alg, const QMatrix& b);

} // namespace quadlie
