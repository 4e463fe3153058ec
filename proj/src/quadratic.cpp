#include "quadlie/quadratic.hpp"

#include <functional>
#include <sstream>

namespace quadlie {

namespace {

using BracketFn = std::function<VecQ(const VecQ&, const VecQ&)>;

std::vector<std::vector<VecQ>> lower_series(int n, const BracketFn& br) {
    std::vector<std::vector<VecQ>> out;
    std::vector<VecQ> current;
    for (int i = 0; i < n; ++i) {
        VecQ v(n);
        v[i] = 1;
        current.push_back(std::move(v));
    }
    out.push_back(current);
    while (true) {
        std::vector<VecQ> next_raw;
        for (const auto& v : out.back())
            for (int j = 0; j < n; ++j) {
                VecQ e(n);
                e[j] = 1;
                VecQ w = br(v, e);
                if (!is_zero_vec(w)) next_raw.push_back(std::move(w));
            }
        if (next_raw.empty()) break;
        out.push_back(span_canonical_basis(next_raw));
    }
    return out;
}

std::vector<std::vector<VecQ>> upper_series(int n, const BracketFn& br) {
    std::vector<QMatrix> ads;
    for (int j = 0; j < n; ++j) {
        QMatrix a(n, n);
        VecQ ej(n);
        ej[j] = 1;
        for (int i = 0; i < n; ++i) {
            VecQ ei(n);
            ei[i] = 1;
            VecQ w = br(ei, ej);
            for (int k = 0; k < n; ++k) a.at(k, i) = w[k];
        }
        ads.push_back(std::move(a));
    }
    std::vector<std::vector<VecQ>> out;
    out.push_back({});
    while (true) {
        const auto& z = out.back();
        if (int(z.size()) == n) break;
        QMatrix e = QMatrix::identity(n);
        {
            QMatrix zr = z.empty() ? QMatrix(0, n) : QMatrix::from_rows(z);
            std::vector<int> piv;
            QMatrix r = rref(zr, &piv);
            for (size_t k = 0; k < piv.size(); ++k)
                for (int i = 0; i < n; ++i) e.at(i, piv[k]) -= r.at(int(k), i);
        }
        QMatrix stacked(n * n, n);
        for (int j = 0; j < n; ++j) stacked.set_block(j * n, 0, e * ads[j]);
        auto next = span_canonical_basis(nullspace(stacked));
        if (next.size() == z.size()) break;
        out.push_back(std::move(next));
    }
    return out;
}

} // namespace

VecQ QuadraticAlgebra::bracket(const VecQ& a, const VecQ& b) const {
    VecQ r(dim);
    for (int i = 0; i < dim; ++i) {
        if (a[i] == 0 && b[i] == 0) continue;
        for (int j = 0; j < i; ++j) {
            Rat c = a[i] * b[j] - a[j] * b[i];
            if (c == 0) continue;
            const VecQ& w = table[i][j];
            for (int k = 0; k < dim; ++k)
                if (w[k] != 0) r[k] += c * w[k];
        }
    }
    return r;
}

Rat QuadraticAlgebra::form_value(const VecQ& a, const VecQ& b) const {
    Rat s = 0;
    for (int i = 0; i < dim; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < dim; ++j)
            if (b[j] != 0 && form.at(i, j) != 0) s += a[i] * form.at(i, j) * b[j];
    }
    return s;
}

std::vector<std::vector<VecQ>> QuadraticAlgebra::lower_central_series() const {
    return lower_series(dim, [this](const VecQ& a, const VecQ& b) { return bracket(a, b); });
}

std::vector<std::vector<VecQ>> QuadraticAlgebra::upper_central_series() const {
    return upper_series(dim, [this](const VecQ& a, const VecQ& b) { return bracket(a, b); });
}

std::vector<VecQ> QuadraticAlgebra::center() const {
    auto u = upper_central_series();
    return u.size() > 1 ? u[1] : std::vector<VecQ>{};
}

QuadraticAlgebra QuadraticAlgebra::from_products(int dim,
                                                 const std::vector<StructureRow>& products,
                                                 const QMatrix& form) {
    QuadraticAlgebra q;
    q.dim = dim;
    q.form = form;
    if (form.rows() != dim || form.cols() != dim)
        throw std::invalid_argument("from_products: form shape mismatch");
    q.table.assign(dim, std::vector<VecQ>(dim, VecQ(dim)));
    for (const auto& row : products) {
        if (row.i <= row.j || row.i > dim || row.j < 1 || row.k < 1 || row.k > dim)
            throw std::invalid_argument("from_products: bad product row");
        q.table[row.i - 1][row.j - 1][row.k - 1] += row.c;
        q.table[row.j - 1][row.i - 1][row.k - 1] -= row.c;
    }
    for (int i = 1; i <= dim; ++i) q.labels.push_back("a" + std::to_string(i));
    return q;
}

std::vector<StructureRow> QuadraticAlgebra::products() const {
    std::vector<StructureRow> rows;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < i; ++j)
            for (int k = 0; k < dim; ++k)
                if (table[i][j][k] != 0) rows.push_back({i + 1, j + 1, k + 1, table[i][j][k]});
    return rows;
}

ojson quadratic_to_json(const QuadraticAlgebra& q) {
    ojson j;
    j["dim"] = q.dim;
    j["labels"] = q.labels;
    ojson prods = ojson::array();
    for (const auto& row : q.products())
        prods.push_back(ojson::array({row.i, row.j, row.k, format_rational(row.c)}));
    j["products"] = std::move(prods);
    j["form"] = mat_to_json(q.form);
    if (!q.complement.empty()) {
        ojson comp = ojson::array();
        for (int c : q.complement) comp.push_back(c + 1);
        j["source"] = ojson{{"d", q.src_d}, {"t", q.src_t}, {"complement", std::move(comp)}};
    }
    return j;
}

QuadraticAlgebra quadratic_from_json(const json& j) {
    int dim = j.at("dim").get<int>();
    std::vector<StructureRow> prods;
    for (const auto& row : j.at("products"))
        prods.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>(),
                         parse_rational(row[3].get<std::string>())});
    auto q = QuadraticAlgebra::from_products(dim, prods, mat_from_json(j.at("form")));
    if (j.contains("labels")) q.labels = j["labels"].get<std::vector<std::string>>();
    return q;
}

QuadraticAlgebra quotient_quadratic(const FreeNilpotent& alg, const QMatrix& b) {
    auto membership = sym0_membership(alg, b);
    if (!membership.member)
        throw std::invalid_argument("quotient_quadratic: " + membership.reason);

    int n = alg.dim();
    auto ker = kernel(alg, b);
    int k = int(ker.size());
    int m = n - k;

    // lexicographically earliest coordinate complement of the kernel
    std::vector<int> comp;
    std::vector<VecQ> chosen = ker;
    for (int i = 0; i < n && int(comp.size()) < m; ++i) {
        VecQ e(n);
        e[i] = 1;
        if (!in_span(chosen, e)) {
            chosen.push_back(e);
            comp.push_back(i);
        }
    }

    // change of basis [kernel | complement units]; the bottom rows of
    // its inverse read off quotient coordinates
    QMatrix a(n, n);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) a.at(i, j) = ker[j][i];
    for (int j = 0; j < m; ++j) a.at(comp[j], k + j) = 1;
    QMatrix ainv = inverse(a);

    QuadraticAlgebra q;
    q.dim = m;
    q.src_d = alg.d();
    q.src_t = alg.t();
    q.complement = comp;
    q.to_quotient = ainv.submatrix(k, 0, m, n);
    q.lift = QMatrix(n, m);
    for (int j = 0; j < m; ++j) q.lift.at(comp[j], j) = 1;
    for (int j = 0; j < m; ++j) q.labels.push_back(alg.word_name(comp[j]));

    q.form = QMatrix(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) q.form.at(i, j) = b.at(comp[i], comp[j]);

    q.table.assign(m, std::vector<VecQ>(m, VecQ(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < i; ++j) {
            VecQ ei(n), ej(n);
            ei[comp[i]] = 1;
            ej[comp[j]] = 1;
            VecQ w = q.to_quotient * alg.bracket_vec(ei, ej);
            q.table[i][j] = w;
            for (int l = 0; l < m; ++l) q.table[j][i][l] = -w[l];
        }
    return q;
}

PropertyReport verify_quadratic(const QuadraticAlgebra& q) {
    PropertyReport rep;
    auto add = [&rep](const std::string& name, bool pass, const std::string& detail = "") {
        rep.items.push_back({name, pass, detail});
    };
    int n = q.dim;

    bool anti = true;
    std::string anti_detail;
    for (int i = 0; i < n && anti; ++i)
        for (int j = 0; j < n && anti; ++j)
            for (int l = 0; l < n; ++l)
                if (q.table[i][j][l] + q.table[j][i][l] != 0) {
                    anti = false;
                    anti_detail = "at pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
                    break;
                }
    add("bracket antisymmetric", anti, anti_detail);

    bool jac = true;
    std::string jac_detail;
    for (int i = 0; i < n && jac; ++i)
        for (int j = i + 1; j < n && jac; ++j)
            for (int l = j + 1; l < n; ++l) {
                VecQ ei(n), ej(n), el(n);
                ei[i] = 1;
                ej[j] = 1;
                el[l] = 1;
                VecQ s = q.bracket(q.bracket(ei, ej), el) + q.bracket(q.bracket(ej, el), ei) +
                         q.bracket(q.bracket(el, ei), ej);
                if (!is_zero_vec(s)) {
                    jac = false;
                    jac_detail = "at triple (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + "," + std::to_string(l + 1) + ")";
                    break;
                }
            }
    add("Jacobi identity", jac, jac_detail);

    add("form symmetric", q.form.is_symmetric());
    add("form nondegenerate", rank(q.form) == n,
        "rank " + std::to_string(rank(q.form)) + " of " + std::to_string(n));

    bool inv = true;
    std::string inv_detail;
    for (int i = 0; i < n && inv; ++i)
        for (int j = 0; j < n && inv; ++j)
            for (int l = 0; l < n; ++l) {
                VecQ ei(n), ej(n), el(n);
                ei[i] = 1;
                ej[j] = 1;
                el[l] = 1;
                if (q.form_value(q.bracket(ei, ej), el) != q.form_value(ei, q.bracket(ej, el))) {
                    inv = false;
                    inv_detail = "at triple (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + "," + std::to_string(l + 1) + ")";
                    break;
                }
            }
    add("form invariant", inv, inv_detail);

    auto lower = q.lower_central_series();
    bool nilp = true;
    {
        // series returned up to its last nonzero term; nilpotent iff one
        // more bracketing step vanishes
        std::vector<VecQ> next;
        for (const auto& v : lower.back())
            for (int j = 0; j < n; ++j) {
                VecQ e(n);
                e[j] = 1;
                VecQ w = q.bracket(v, e);
                if (!is_zero_vec(w)) next.push_back(w);
            }
        nilp = next.empty();
    }
    add("nilpotent", nilp, "lower central series has " + std::to_string(lower.size()) + " nonzero terms");
    return rep;
}

PropertyReport orthogonality_check(const QuadraticAlgebra& q) {
    PropertyReport rep;
    int n = q.dim;
    auto lower = q.lower_central_series();
    auto upper = q.upper_central_series();
    int s = int(lower.size());

    for (int i = 1; i <= s + 1; ++i) {
        std::vector<VecQ> gi =
            i <= s ? lower[i - 1] : std::vector<VecQ>{}; // g^(s+1) = 0
        std::vector<VecQ> zi =
            i <= int(upper.size()) ? upper[i - 1] : upper.back();

        std::vector<VecQ> perp;
        if (gi.empty()) {
            for (int c = 0; c < n; ++c) {
                VecQ v(n);
                v[c] = 1;
                perp.push_back(std::move(v));
            }
            perp = span_canonical_basis(perp);
        } else {
            QMatrix w = QMatrix::from_rows(gi);
            perp = span_canonical_basis(nullspace(w * q.form));
        }

        bool eq = span_equal(perp, zi);
        rep.items.push_back({"orthogonal of lower term " + std::to_string(i) +
                                 " equals upper term " + std::to_string(i),
                             eq, ""});
        bool dims = int(gi.size() + zi.size()) == n;
        rep.items.push_back({"dim g^" + std::to_string(i) + " + dim Z_" + std::to_string(i) +
                                 " = dim g",
                             dims,
                             std::to_string(gi.size()) + " + " + std::to_string(zi.size()) +
                                 " vs " + std::to_string(n)});
    }
    return rep;
}

TypeNil type_and_nilindex(const QuadraticAlgebra& q) {
    auto lower = q.lower_central_series();
    int derived = lower.size() > 1 ? int(lower[1].size()) : 0;
    return {q.dim - derived, int(lower.size())};
}

SplitResult split_1dim(const QuadraticAlgebra& q) {
    SplitResult res;
    auto z = q.center();
    int zc = int(z.size());
    if (zc == 0) {
        res.certificate = "center is zero, no central line exists";
        return res;
    }

    QMatrix bz(zc, zc);
    for (int i = 0; i < zc; ++i)
        for (int j = 0; j < zc; ++j) bz.at(i, j) = q.form_value(z[i], z[j]);
    if (bz.is_zero()) {
        res.certificate = "form vanishes identically on the center, "
                          "so no nondegenerate central line exists";
        return res;
    }

    auto cd = congruence_diagonalize(bz);
    int pick = -1;
    for (int i = 0; i < zc; ++i)
        if (cd.D.at(i, i) != 0) { pick = i; break; }
    VecQ v(q.dim);
    for (int i = 0; i < zc; ++i)
        if (cd.P.at(i, pick) != 0) v = v + cd.P.at(i, pick) * z[i];

    if (q.dim == 1) {
        res.certificate = "the algebra is itself a nondegenerate central line; "
                          "no proper splitting remains";
        return res;
    }

    res.split_found = true;
    res.central_vector = v;
    res.certificate = "central vector with nonzero self-pairing found; "
                      "the algebra splits off the line it spans";

    // complement algebra on v^perp
    QMatrix vb(1, q.dim);
    {
        VecQ bv = q.form * v; // B(v,.) as a row functional (B symmetric)
        for (int j = 0; j < q.dim; ++j) vb.at(0, j) = bv[j];
    }
    auto w = span_canonical_basis(nullspace(vb));
    int m = int(w.size());
    QMatrix wcols = QMatrix::from_columns(w);

    QuadraticAlgebra rest;
    rest.dim = m;
    for (int i = 1; i <= m; ++i) rest.labels.push_back("b" + std::to_string(i));
    rest.form = QMatrix(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) rest.form.at(i, j) = q.form_value(w[i], w[j]);
    rest.table.assign(m, std::vector<VecQ>(m, VecQ(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < i; ++j) {
            VecQ br = q.bracket(w[i], w[j]);
            auto coords = solve(wcols, br);
            if (!coords)
                throw std::logic_error("split_1dim: orthogonal complement not closed");
            rest.table[i][j] = *coords;
            for (int l = 0; l < m; ++l) rest.table[j][i][l] = -(*coords)[l];
        }
    res.rest = std::move(rest);
    return res;
}

bool verify_metric_map(const QMatrix& theta, const QuadraticAlgebra& src,
                       const QuadraticAlgebra& dst) {
    int n = src.dim;
    if (dst.dim != n || theta.rows() != n || theta.cols() != n) return false;
    if (rank(theta) != n) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            VecQ img = dst.bracket(theta.col(i), theta.col(j));
            VecQ want = theta * src.table[i][j];
            if (img != want) return false;
        }
    return theta.transpose() * dst.form * theta == src.form;
}

QuadraticAlgebra orthogonal_direct_sum(const QuadraticAlgebra& a, const QuadraticAlgebra& b) {
    QuadraticAlgebra s;
    s.dim = a.dim + b.dim;
    s.labels = a.labels;
    s.labels.insert(s.labels.end(), b.labels.begin(), b.labels.end());
    s.form = QMatrix(s.dim, s.dim);
    s.form.set_block(0, 0, a.form);
    s.form.set_block(a.dim, a.dim, b.form);
    s.table.assign(s.dim, std::vector<VecQ>(s.dim, VecQ(s.dim)));
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            for (int k = 0; k < a.dim; ++k) s.table[i][j][k] = a.table[i][j][k];
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            for (int k = 0; k < b.dim; ++k)
                s.table[a.dim + i][a.dim + j][a.dim + k] = b.table[i][j][k];
    return s;
}

} // namespace quadlie
