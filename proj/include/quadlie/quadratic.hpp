#pragma once

#include "quadlie/free_nilpotent.hpp"
#include "quadlie/invforms.hpp"
#include "quadlie/json_io.hpp"

namespace quadlie {

// A finite-dimensional Lie algebra with a chosen basis, full bracket
// table and a bilinear form on it.  Instances come either from a
// quotient of a free nilpotent algebra by a form kernel or straight
// from a printed product list.
struct QuadraticAlgebra {
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<VecQ>> table; // table[i][j] = [e_i, e_j]
    QMatrix form;

    // quotient provenance; complement holds the 0-based source indices
    // whose classes form the basis (empty when not a quotient)
    int src_d = 0, src_t = 0;
    std::vector<int> complement;
    QMatrix to_quotient; // dim x src_dim coordinate map
    QMatrix lift;        // src_dim x dim section along the complement

    VecQ bracket(const VecQ& a, const VecQ& b) const;
    Rat form_value(const VecQ& a, const VecQ& b) const;

    std::vector<std::vector<VecQ>> lower_central_series() const;
    std::vector<std::vector<VecQ>> upper_central_series() const;
    std::vector<VecQ> center() const;

    // build from 1-based product rows (i > j) and a form matrix
    static QuadraticAlgebra from_products(int dim, const std::vector<StructureRow>& products,
                                          const QMatrix& form);
    // nonzero products back out, sorted by (i, j, k), 1-based
    std::vector<StructureRow> products() const;
};

ojson quadratic_to_json(const QuadraticAlgebra& q);
QuadraticAlgebra quadratic_from_json(const json& j);

// Quotient of (n_{d,t}, B) by the kernel of B.  Requires B to be an
// invariant member of Sym_0; throws std::invalid_argument naming the
// failed condition otherwise.  The basis consists of the classes of
// the lexicographically earliest Hall words that complement the
// kernel.
QuadraticAlgebra quotient_quadratic(const FreeNilpotent& alg, const QMatrix& b);

struct PropertyReport {
    struct Item {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Item> items;
    bool all_pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
};

// Per-property check that (q, form) really is a quadratic Lie algebra:
// antisymmetry, Jacobi, symmetry, nondegeneracy, invariance,
// nilpotency.
PropertyReport verify_quadratic(const QuadraticAlgebra& q);

// For a nondegenerate invariant form the orthogonal of each lower
// central term is the matching upper central term, with the
// complementary dimension count; checked literally here.
PropertyReport orthogonality_check(const QuadraticAlgebra& q);

struct TypeNil {
    int type;     // dim g - dim g^2
    int nilindex; // last nonzero lower central term
};
TypeNil type_and_nilindex(const QuadraticAlgebra& q);

// Looks for a decomposition g = Kv + v^perp with v central and
// B(v,v) != 0.  Such a line exists precisely when the form does not
// vanish on the center, and the certificate spells out which side of
// that criterion applied.
struct SplitResult {
    bool split_found = false;
    VecQ central_vector;
    QuadraticAlgebra rest;
    std::string certificate;
};
SplitResult split_1dim(const QuadraticAlgebra& q);

// theta (columns = images) is a metric isomorphism from src to dst:
// invertible, bracket-compatible, and src.form = theta^t dst.form theta.
bool verify_metric_map(const QMatrix& theta, const QuadraticAlgebra& src,
                       const QuadraticAlgebra& dst);

// Orthogonal direct sum, a's basis first.
QuadraticAlgebra orthogonal_direct_sum(const QuadraticAlgebra& a, const QuadraticAlgebra& b);

} // namespace quadlie
