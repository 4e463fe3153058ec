#include "quadlie/autgroup.hpp"

#include <array>

namespace quadlie {

Endo extend(const FreeNilpotent& alg, const std::vector<VecQ>& generator_images) {
    Endo e;
    e.alg = &alg;
    e.generator_images = generator_images;
    e.matrix = alg.extend_matrix(generator_images);
    return e;
}

Endo identity_endo(const FreeNilpotent& alg) {
    std::vector<VecQ> images;
    for (int i = 0; i < alg.d(); ++i) {
        VecQ v(alg.dim());
        v[i] = 1;
        images.push_back(std::move(v));
    }
    return extend(alg, images);
}

Endo compose(const Endo& f, const Endo& g) {
    if (f.alg != g.alg) throw std::invalid_argument("compose: different algebras");
    Endo e;
    e.alg = f.alg;
    for (const auto& img : g.generator_images) e.generator_images.push_back(f.matrix * img);
    // morphisms compose linearly once extended
    e.matrix = f.matrix * g.matrix;
    return e;
}

QMatrix generator_block(const Endo& e) {
    int d = e.alg->d();
    return e.matrix.submatrix(0, 0, d, d);
}

bool is_automorphism(const Endo& e) { return determinant(generator_block(e)) != 0; }

bool is_graded(const Endo& e) {
    int d = e.alg->d();
    for (const auto& img : e.generator_images)
        for (int k = d; k < e.alg->dim(); ++k)
            if (img[k] != 0) return false;
    return true;
}

bool is_unipotent_part(const Endo& e) {
    return generator_block(e) == QMatrix::identity(e.alg->d());
}

AutFactorization hn_factorize(const Endo& e) {
    if (!is_automorphism(e))
        throw std::invalid_argument("hn_factorize: not an automorphism");
    const FreeNilpotent& alg = *e.alg;
    int d = alg.d(), n = alg.dim();

    QMatrix p = generator_block(e);
    std::vector<VecQ> h_images;
    for (int j = 0; j < d; ++j) {
        VecQ v(n);
        for (int i = 0; i < d; ++i) v[i] = p.at(i, j);
        h_images.push_back(std::move(v));
    }
    AutFactorization fac;
    fac.h = extend(alg, h_images);

    QMatrix nm = inverse(fac.h.matrix) * e.matrix;
    std::vector<VecQ> n_images;
    for (int j = 0; j < d; ++j) n_images.push_back(nm.col(j));
    fac.n = extend(alg, n_images);

    if (fac.n.matrix != nm || fac.h.matrix * fac.n.matrix != e.matrix)
        throw std::logic_error("hn_factorize: factorization failed to recompose");
    if (!is_unipotent_part(fac.n))
        throw std::logic_error("hn_factorize: residual part is not unipotent");
    return fac;
}

QMatrix act_on_form(const QMatrix& b, const Endo& e) {
    return e.matrix.transpose() * b * e.matrix;
}

OrbitRecord orbit_invariants(const FreeNilpotent& alg, const QMatrix& b) {
    OrbitRecord rec;
    int n = alg.dim(), t = alg.t();
    rec.rank = rank(b);
    rec.kernel_dim = n - rec.rank;

    for (int gi = 1; gi <= t; ++gi) {
        int gj = t + 1 - gi;
        if (gj < gi || gj > t) continue;
        QMatrix block = b.submatrix(alg.grade_begin(gi), alg.grade_begin(gj),
                                    alg.grade_end(gi) - alg.grade_begin(gi),
                                    alg.grade_end(gj) - alg.grade_begin(gj));
        rec.pair_block_ranks.push_back({gi, gj, rank(block)});
    }

    auto ker = span_canonical_basis(nullspace(b));
    for (int k = 1; k <= t; ++k) {
        auto meet = span_intersection(ker, alg.graded_ideal_basis(k));
        rec.kernel_grade_profile.push_back(int(meet.size()));
    }

    // The grade-2 diagonal block is congruence-stable only when it carries the
    // top pairing (2 + 2 == t + 1).  For other t a unipotent pullback can shift
    // weight into that block, so recording its rank would break orbit constancy.
    if (t == 3) {
        int b2 = alg.grade_begin(2), e2 = alg.grade_end(2);
        rec.s2_block_rank = rank(b.submatrix(b2, b2, e2 - b2, e2 - b2));
    }
    return rec;
}

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return int(std::uniform_int_distribution<int>(lo, hi)(rng));
}

} // namespace

Endo random_graded_automorphism(const FreeNilpotent& alg, std::mt19937_64& rng) {
    int d = alg.d(), n = alg.dim();
    while (true) {
        QMatrix p(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) p.at(i, j) = uniform_int(rng, -3, 3);
        Rat det = determinant(p);
        if (det == 0 || abs(numerator(det)) > 5) continue;
        std::vector<VecQ> images;
        for (int j = 0; j < d; ++j) {
            VecQ v(n);
            for (int i = 0; i < d; ++i) v[i] = p.at(i, j);
            images.push_back(std::move(v));
        }
        return extend(alg, images);
    }
}

Endo random_unipotent_automorphism(const FreeNilpotent& alg, std::mt19937_64& rng) {
    int d = alg.d(), n = alg.dim();
    std::vector<VecQ> images;
    for (int j = 0; j < d; ++j) {
        VecQ v(n);
        v[j] = 1;
        // sparse tail into the derived ideal
        for (int k = d; k < n; ++k)
            if (uniform_int(rng, 0, 3) == 0) v[k] = uniform_int(rng, -3, 3);
        images.push_back(std::move(v));
    }
    return extend(alg, images);
}

Endo random_automorphism(const FreeNilpotent& alg, std::mt19937_64& rng) {
    return compose(random_graded_automorphism(alg, rng),
                   random_unipotent_automorphism(alg, rng));
}

} // namespace quadlie
