#include "quadlie/catalog.hpp"

#include <stdexcept>

namespace quadlie {

namespace {

struct SymEntry {
    int i, j; // 1-based
    int v;
};

QMatrix sym_matrix(int n, std::initializer_list<SymEntry> entries) {
    QMatrix m(n, n);
    for (const auto& e : entries) {
        m.at(e.i - 1, e.j - 1) = e.v;
        m.at(e.j - 1, e.i - 1) = e.v;
    }
    return m;
}

QMatrix diag3(int a, int b, int c) {
    QMatrix m(3, 3);
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    m.at(2, 2) = c;
    return m;
}

QMatrix diag2(int a, int b) {
    QMatrix m(2, 2);
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    return m;
}

CatalogEntry quotient_entry(std::string label, int dim, bool twin,
                            std::vector<StructureRow> products, QMatrix form, FamilyId src,
                            FamilyParams params) {
    CatalogEntry e;
    e.label = std::move(label);
    e.dim = dim;
    e.real_sign_twin = twin;
    e.products = std::move(products);
    e.form = std::move(form);
    auto shape = family_shape(src);
    e.src_d = shape.d;
    e.src_t = shape.t;
    e.source_form = family_form(src, params);
    return e;
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> out;

    {
        CatalogEntry e;
        e.label = "Thm6.1(i)";
        e.dim = 1;
        e.real_sign_twin = true;
        e.form = QMatrix{{1}};
        e.from_line = true;
        e.src_d = 1;
        e.src_t = 1;
        e.source_form = QMatrix{{1}};
        out.push_back(std::move(e));
    }

    FamilyParams p23;
    p23.gamma = 1;
    out.push_back(quotient_entry("Thm6.1(ii)", 5, true,
                                 {{2, 1, 3, 1}, {3, 1, 4, 1}, {3, 2, 5, 1}},
                                 sym_matrix(5, {{1, 5, 1}, {2, 4, -1}, {3, 3, 1}}), FamilyId::B23,
                                 p23));

    FamilyParams p25a;
    p25a.A2 = diag2(1, 0);
    out.push_back(quotient_entry(
        "Thm6.1(iii)", 7, true,
        {{2, 1, 3, 1}, {3, 1, 4, 1}, {4, 1, 5, 1}, {5, 1, 6, 1}, {5, 2, 7, 1}, {4, 3, 7, -1}},
        sym_matrix(7, {{1, 7, -1}, {2, 6, 1}, {3, 5, -1}, {4, 4, 1}}), FamilyId::B25, p25a));

    FamilyParams p25b;
    p25b.A2 = diag2(1, 1);
    out.push_back(quotient_entry("Thm6.1(iv)", 8, true,
                                 {{2, 1, 3, 1},
                                  {3, 1, 4, 1},
                                  {3, 2, 5, 1},
                                  {4, 1, 6, 1},
                                  {6, 1, 7, 1},
                                  {6, 2, 8, 1},
                                  {5, 2, 6, 1},
                                  {4, 3, 8, -1},
                                  {5, 3, 7, 1}},
                                 sym_matrix(8, {{1, 8, -1}, {2, 7, 1}, {3, 6, -1}, {4, 4, 1}, {5, 5, 1}}),
                                 FamilyId::B25, p25b));

    FamilyParams p32;
    p32.gamma = 1;
    out.push_back(quotient_entry("Thm6.1(v)", 6, false,
                                 {{2, 1, 4, 1}, {3, 1, 5, 1}, {3, 2, 6, 1}},
                                 sym_matrix(6, {{1, 6, 1}, {2, 5, -1}, {3, 4, 1}}), FamilyId::B32,
                                 p32));

    FamilyParams p33a;
    p33a.A2 = diag3(1, 1, 0);
    out.push_back(quotient_entry(
        "Thm6.1(vi)", 8, true,
        {{2, 1, 4, 1}, {3, 1, 5, 1}, {4, 1, 6, 1}, {4, 2, 7, 1}, {5, 1, 8, 1}, {5, 3, 7, 1}},
        sym_matrix(8, {{4, 4, 1}, {5, 5, 1}, {1, 7, 1}, {2, 6, -1}, {3, 8, -1}}), FamilyId::B33,
        p33a));

    FamilyParams p33b;
    p33b.A2 = diag3(1, 1, 1);
    out.push_back(quotient_entry("Thm6.1(vii)", 9, true,
                                 {{2, 1, 4, 1},
                                  {3, 1, 5, 1},
                                  {3, 2, 6, 1},
                                  {4, 1, 7, 1},
                                  {4, 2, 8, 1},
                                  {5, 1, 9, 1},
                                  {5, 3, 8, 1},
                                  {6, 3, 7, -1},
                                  {6, 2, 9, 1}},
                                 sym_matrix(9, {{4, 4, 1},
                                                {5, 5, 1},
                                                {6, 6, 1},
                                                {1, 8, 1},
                                                {2, 7, -1},
                                                {3, 9, -1}}),
                                 FamilyId::B33, p33b));

    FamilyParams p25c;
    p25c.A2 = diag2(1, -1);
    out.push_back(quotient_entry("Thm6.2(ii)", 8, false,
                                 {{2, 1, 3, 1},
                                  {3, 1, 4, 1},
                                  {4, 1, 6, 1},
                                  {6, 1, 7, 1},
                                  {3, 2, 5, 1},
                                  {5, 2, 6, -1},
                                  {6, 2, 8, 1},
                                  {4, 3, 8, -1},
                                  {5, 3, 7, -1}},
                                 sym_matrix(8, {{1, 8, -1}, {2, 7, 1}, {3, 6, -1}, {4, 4, 1}, {5, 5, -1}}),
                                 FamilyId::B25, p25c));

    FamilyParams p33c;
    p33c.A2 = diag3(1, -1, 0);
    out.push_back(quotient_entry(
        "Thm6.2(iii)", 8, false,
        {{2, 1, 4, 1}, {3, 1, 5, 1}, {4, 1, 6, 1}, {5, 1, 8, 1}, {4, 2, 7, 1}, {5, 3, 7, -1}},
        sym_matrix(8, {{4, 4, 1}, {5, 5, -1}, {1, 7, 1}, {2, 6, -1}, {3, 8, 1}}), FamilyId::B33,
        p33c));

    FamilyParams p33d;
    p33d.A2 = diag3(1, 1, -1);
    out.push_back(quotient_entry("Thm6.2(iv)", 9, true,
                                 {{2, 1, 4, 1},
                                  {3, 1, 5, 1},
                                  {4, 1, 7, 1},
                                  {5, 1, 9, 1},
                                  {3, 2, 6, 1},
                                  {4, 2, 8, 1},
                                  {6, 2, 9, -1},
                                  {5, 3, 8, 1},
                                  {6, 3, 7, 1}},
                                 sym_matrix(9, {{4, 4, 1},
                                                {5, 5, 1},
                                                {6, 6, -1},
                                                {1, 8, 1},
                                                {2, 7, -1},
                                                {3, 9, -1}}),
                                 FamilyId::B33, p33d));

    return out;
}

} // namespace

QuadraticAlgebra CatalogEntry::algebra() const {
    return QuadraticAlgebra::from_products(dim, products, form);
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

CatalogEntry classified_algebra(const std::string& label) {
    std::string base = label;
    bool neg = false;
    const std::string suffix = "-neg";
    if (base.size() > suffix.size() &&
        base.compare(base.size() - suffix.size(), suffix.size(), suffix) == 0) {
        neg = true;
        base.resize(base.size() - suffix.size());
    }
    for (const auto& e : catalog()) {
        if (e.label != base) continue;
        if (!neg) return e;
        if (!e.real_sign_twin)
            throw std::invalid_argument("classified_algebra: " + base +
                                        " has no distinct sign twin");
        CatalogEntry twin = e;
        twin.label = label;
        twin.form = twin.form * Rat(-1);
        twin.source_form = twin.source_form * Rat(-1);
        return twin;
    }
    throw std::invalid_argument("classified_algebra: unknown label " + label);
}

QMatrix catalog_isomorphism(const CatalogEntry& e, const QuadraticAlgebra& q) {
    if (q.dim != e.dim)
        throw std::invalid_argument("catalog_isomorphism: dimension mismatch");
    std::vector<VecQ> theta(e.dim);
    std::vector<bool> set(e.dim, false);
    int d = e.from_line ? 1 : e.src_d;
    for (int i = 0; i < d; ++i) {
        theta[i] = q.to_quotient.rows() ? q.to_quotient.col(i) : VecQ(e.dim);
        if (!q.to_quotient.rows()) theta[i][i] = 1;
        set[i] = true;
    }
    for (const auto& row : e.products) {
        if (set[row.k - 1]) continue;
        if (!set[row.i - 1] || !set[row.j - 1])
            throw std::logic_error("catalog_isomorphism: product row out of order");
        VecQ img = q.bracket(theta[row.i - 1], theta[row.j - 1]);
        theta[row.k - 1] = (Rat(1) / row.c) * img;
        set[row.k - 1] = true;
    }
    for (int i = 0; i < e.dim; ++i)
        if (!set[i]) throw std::logic_error("catalog_isomorphism: basis vector never defined");
    return QMatrix::from_columns(theta);
}

} // namespace quadlie
