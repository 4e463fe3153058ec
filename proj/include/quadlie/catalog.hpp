#pragma once

#include "quadlie/families.hpp"
#include "quadlie/quadratic.hpp"

namespace quadlie {

// One classified quadratic nilpotent algebra: the printed product list
// and form, together with the invariant form on n_{d,t} it is the
// quotient of.  Labels run Thm6.1(i)..Thm6.1(vii) and Thm6.2(ii)..(iv).
struct CatalogEntry {
    std::string label;
    int dim = 0;
    std::vector<StructureRow> products; // printed order, 1-based
    QMatrix form;
    bool real_sign_twin = false; // over R the negated form is non-isometric

    bool from_line = false; // the one-dimensional abelian entry
    int src_d = 0, src_t = 0;
    QMatrix source_form;

    QuadraticAlgebra algebra() const;
};

const std::vector<CatalogEntry>& catalog();

// Lookup by label.  A "-neg" suffix selects the sign twin (form negated)
// and is only accepted on entries where the twin is a distinct real
// isometry class.  Throws std::invalid_argument on unknown labels.
CatalogEntry classified_algebra(const std::string& label);

// Metric isomorphism from the catalog presentation onto the quotient of
// the source form, as a matrix of column images: generators map to the
// quotient classes of the source generators, the rest extends along the
// defining products.
QMatrix catalog_isomorphism(const CatalogEntry& e, const QuadraticAlgebra& q);

} // namespace quadlie
