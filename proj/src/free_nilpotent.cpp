#include "quadlie/free_nilpotent.hpp"

#include "quadlie/exactlin.hpp"

#include <stdexcept>

namespace quadlie {

void elem_add(LieElement& dst, int k, const Rat& c) {
    if (c == 0) return;
    auto it = dst.find(k);
    if (it == dst.end()) {
        dst.emplace(k, c);
    } else {
        it->second += c;
        if (it->second == 0) dst.erase(it);
    }
}

void elem_add_scaled(LieElement& dst, const LieElement& src, const Rat& c) {
    if (c == 0) return;
    for (const auto& [k, v] : src) elem_add(dst, k, c * v);
}

VecQ elem_to_vec(const LieElement& e, int dim) {
    VecQ v(dim);
    for (const auto& [k, c] : e) v[k] = c;
    return v;
}

LieElement vec_to_elem(const VecQ& v) {
    LieElement e;
    for (size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0) e.emplace(int(k), v[k]);
    return e;
}

FreeNilpotent::FreeNilpotent(int d, int t) : d_(d), t_(t) {
    basis_ = hall_basis(d, t);
    int n = dim();

    offsets_.assign(t_, n);
    {
        int k = 0;
        for (int i = 0; i < n; ++i)
            while (k < basis_[i]->length) offsets_[k++] = i;
    }

    for (int i = 0; i < n; ++i) index_[word_str(*basis_[i])] = i;

    left_.assign(n, -1);
    right_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (basis_[i]->is_generator()) continue;
        int li = index_.at(word_str(*basis_[i]->left));
        int ri = index_.at(word_str(*basis_[i]->right));
        left_[i] = li;
        right_[i] = ri;
        pair_index_[{li, ri}] = i;
    }
}

int FreeNilpotent::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

// The basis is sorted by the word order, so index comparison doubles as
// word comparison here.
LieElement FreeNilpotent::normalize(int i, int j) const {
    if (i == j) return {};
    if (i < j) {
        LieElement r;
        elem_add_scaled(r, normalize(j, i), Rat(-1));
        return r;
    }
    if (grade(i) + grade(j) > t_) return {};

    auto key = std::make_pair(i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    LieElement result;
    if (auto it = pair_index_.find(key); it != pair_index_.end()) {
        result.emplace(it->second, Rat(1));
    } else {
        // h_i = [c,e] with j < e, so rewrite
        // [[c,e],j] = [[c,j],e] + [c,[e,j]]
        int c = left_[i], e = right_[i];
        for (const auto& [k, v] : normalize(c, j))
            elem_add_scaled(result, normalize(k, e), v);
        for (const auto& [k, v] : normalize(e, j))
            elem_add_scaled(result, normalize(c, k), v);
    }
    memo_.emplace(key, result);
    return result;
}

LieElement FreeNilpotent::product(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim() || j >= dim())
        throw std::out_of_range("product: basis index out of range");
    return normalize(i, j);
}

LieElement FreeNilpotent::bracket(const LieElement& a, const LieElement& b) const {
    LieElement r;
    for (const auto& [i, ai] : a)
        for (const auto& [j, bj] : b)
            elem_add_scaled(r, normalize(i, j), ai * bj);
    return r;
}

VecQ FreeNilpotent::bracket_vec(const VecQ& a, const VecQ& b) const {
    int n = dim();
    if (int(a.size()) != n || int(b.size()) != n)
        throw std::invalid_argument("bracket_vec: wrong vector dimension");
    VecQ r(n);
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0 && b[i] == 0) continue;
        for (int j = 0; j < i; ++j) {
            Rat c = a[i] * b[j] - a[j] * b[i];
            if (c == 0) continue;
            for (const auto& [k, v] : normalize(i, j)) r[k] += c * v;
        }
    }
    return r;
}

std::vector<StructureRow> FreeNilpotent::structure_constants() const {
    std::vector<StructureRow> rows;
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < i; ++j)
            for (const auto& [k, c] : normalize(i, j))
                rows.push_back({i + 1, j + 1, k + 1, c});
    return rows;
}

std::vector<std::vector<VecQ>> FreeNilpotent::lower_central_series() const {
    int n = dim();
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
                VecQ w = bracket_vec(v, e);
                if (!is_zero_vec(w)) next_raw.push_back(std::move(w));
            }
        if (next_raw.empty()) break;
        out.push_back(span_canonical_basis(next_raw));
    }
    return out;
}

std::vector<std::vector<VecQ>> FreeNilpotent::upper_central_series() const {
    int n = dim();
    // ad matrices: column i of A_j is [h_i, h_j]
    std::vector<QMatrix> ads;
    for (int j = 0; j < n; ++j) {
        QMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (const auto& [k, c] : normalize(i, j)) a.at(k, i) = c;
        ads.push_back(std::move(a));
    }

    std::vector<std::vector<VecQ>> out;
    out.push_back({}); // Z_1 = 0
    while (true) {
        const auto& z = out.back();
        if (int(z.size()) == n) break;
        // E kills exactly the current span: E w = 0 iff w in span(z)
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
        if (next.size() == z.size()) break; // stabilized short of g: not nilpotent input
        out.push_back(std::move(next));
    }
    return out;
}

std::vector<VecQ> FreeNilpotent::graded_ideal_basis(int from_grade) const {
    std::vector<VecQ> out;
    if (from_grade > t_) return out;
    for (int i = grade_begin(std::max(from_grade, 1)); i < dim(); ++i) {
        VecQ v(dim());
        v[i] = 1;
        out.push_back(std::move(v));
    }
    return out;
}

QMatrix FreeNilpotent::extend_matrix(const std::vector<VecQ>& generator_images) const {
    if (int(generator_images.size()) != d_)
        throw std::invalid_argument("extend_matrix: need one image per generator");
    int n = dim();
    std::vector<VecQ> val(n);
    for (int i = 0; i < n; ++i) {
        if (basis_[i]->is_generator()) {
            const VecQ& img = generator_images[basis_[i]->gen - 1];
            if (int(img.size()) != n)
                throw std::invalid_argument("extend_matrix: image has wrong dimension");
            val[i] = img;
        } else {
            val[i] = bracket_vec(val[left_[i]], val[right_[i]]);
        }
    }
    return QMatrix::from_columns(val);
}

} // namespace quadlie
