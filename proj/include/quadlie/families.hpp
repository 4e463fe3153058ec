#pragma once

#include "quadlie/qmatrix.hpp"

#include <string>

namespace quadlie {

// The named one-, two- and three-parameter families of invariant
// symmetric forms on the small free nilpotent algebras, plus the two
// fixed nondegenerate forms phi_{2,3} and phi_{3,2}.
enum class FamilyId { B21, B22, B23, B24, B25, B31, B32, B33, PHI23, PHI32 };

FamilyId family_from_string(const std::string& s);
std::string family_to_string(FamilyId id);
std::vector<FamilyId> all_families();

struct FamilyParams {
    QMatrix A1;  // symmetric, d x d where used
    Rat gamma;   // scalar slot (written lambda in the type 3 families)
    QMatrix A2;  // symmetric second block where used
};

struct FamilyShape {
    int d, t;
    int matrix_dim;
    bool uses_a1, uses_gamma, uses_a2;
    int a1_size, a2_size;
};
FamilyShape family_shape(FamilyId id);

// The form matrix in the Hall basis of n_{d,t}.
QMatrix family_form(FamilyId id, const FamilyParams& p);

// gamma * C with the fixed flip C = [[0,0,1],[0,-1,0],[1,0,0]]
QMatrix c_flip();
QMatrix w_matrix(const Rat& gamma);

// The 3x8 block determined by a symmetric 3x3 matrix A2 that couples
// the generator slice to the grade 3 slice of n_{3,3}.
QMatrix a2prime(const QMatrix& a2);

inline QMatrix phi23() { return family_form(FamilyId::PHI23, {}); }
inline QMatrix phi32() { return family_form(FamilyId::PHI32, {}); }

} // namespace quadlie
