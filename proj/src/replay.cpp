#include "quadlie/replay.hpp"

#include "quadlie/autgroup.hpp"
#include "quadlie/invforms.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace quadlie {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
    return int(std::uniform_int_distribution<long>(lo, hi)(rng));
}

Rat rand_rat(std::mt19937_64& rng) {
    return Rat(pick(rng, -6, 6), pick(rng, 1, 3));
}

Rat rand_nonzero(std::mt19937_64& rng) {
    for (;;) {
        Rat r = rand_rat(rng);
        if (r != 0) return r;
    }
}

QMatrix rand_sym(std::mt19937_64& rng, int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Rat r = rand_rat(rng);
            m.at(i, j) = r;
            m.at(j, i) = r;
        }
    return m;
}

QMatrix rand_invertible(std::mt19937_64& rng, int n) {
    for (;;) {
        QMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = pick(rng, -3, 3);
        if (determinant(m) != 0) return m;
    }
}

const FreeNilpotent& cached_alg(int d, int t) {
    static std::map<std::pair<int, int>, FreeNilpotent> cache;
    auto key = std::make_pair(d, t);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, FreeNilpotent(d, t)).first;
    return it->second;
}

QMatrix b23(const QMatrix& a1, const Rat& g) {
    FamilyParams p;
    p.A1 = a1;
    p.gamma = g;
    return family_form(FamilyId::B23, p);
}

QMatrix b25(const QMatrix& a1, const Rat& g, const QMatrix& a2) {
    FamilyParams p;
    p.A1 = a1;
    p.gamma = g;
    p.A2 = a2;
    return family_form(FamilyId::B25, p);
}

QMatrix b32(const QMatrix& a1, const Rat& g) {
    FamilyParams p;
    p.A1 = a1;
    p.gamma = g;
    return family_form(FamilyId::B32, p);
}

QMatrix b33(const QMatrix& a1, const Rat& g, const QMatrix& a2) {
    FamilyParams p;
    p.A1 = a1;
    p.gamma = g;
    p.A2 = a2;
    return family_form(FamilyId::B33, p);
}

std::vector<VecQ> grade1_image_vectors(const FreeNilpotent& alg, const QMatrix& p) {
    std::vector<VecQ> imgs(alg.d(), VecQ(alg.dim()));
    for (int j = 0; j < alg.d(); ++j)
        for (int i = 0; i < alg.d(); ++i) imgs[j][i] = p.at(i, j);
    return imgs;
}

// x_j -> x_j + sum_i U(i,j) h_{d+1+i}: grade-2 perturbation only
std::vector<VecQ> grade2_tail_images(const FreeNilpotent& alg, const QMatrix& u) {
    int d = alg.d();
    std::vector<VecQ> imgs(d, VecQ(alg.dim()));
    int off = alg.grade_begin(2);
    for (int j = 0; j < d; ++j) {
        imgs[j][j] = 1;
        for (int i = 0; i < u.rows(); ++i) imgs[j][off + i] = u.at(i, j);
    }
    return imgs;
}

VecQ sparse_to_vec(int n, const std::map<int, int>& entries) {
    VecQ v(n);
    for (auto [idx, c] : entries) v[idx - 1] = c;
    return v;
}

const QMatrix kZero2(2, 2), kZero3(3, 3);

// ----- tag T5.2: the two-generator normalizations and scalings -----

ReplayItem top_grade_killed(int t) {
    const auto& alg = cached_alg(2, t);
    auto basis = invariant_form_space(alg);
    bool ok = true;
    for (const auto& b : basis)
        for (int i = alg.grade_begin(t); i < alg.grade_end(t) && ok; ++i)
            for (int j = 0; j < alg.dim(); ++j)
                if (b.at(i, j) != 0) {
                    ok = false;
                    break;
                }
    std::ostringstream w;
    w << "all " << basis.size() << " basis forms on n_{2," << t
      << "} kill the top grade, so no member has n^t outside its kernel";
    return {"sym0-empty-n2" + std::to_string(t), ok, w.str()};
}

void items_t52(std::vector<ReplayItem>& out, std::mt19937_64& rng) {
    out.push_back(top_grade_killed(2));
    out.push_back(top_grade_killed(4));

    const auto& alg = cached_alg(2, 3);
    bool ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        Rat u = rand_rat(rng), v = rand_rat(rng), w = rand_rat(rng);
        Rat g = rand_nonzero(rng);
        QMatrix p = QMatrix::identity(5);
        p.at(3, 0) = -v / g;
        p.at(3, 1) = -w / (2 * g);
        p.at(4, 0) = u / (2 * g);
        ok = ok && p.transpose() * b23(kZero2, g) * p == b23(QMatrix{{u, v}, {v, w}}, g);
        std::vector<VecQ> imgs(2, VecQ(5));
        imgs[0][0] = 1;
        imgs[0][3] = -v / g;
        imgs[0][4] = u / (2 * g);
        imgs[1][1] = 1;
        imgs[1][3] = -w / (2 * g);
        ok = ok && extend(alg, imgs).matrix == p;
    }
    out.push_back({"p-fills-a1-n23", ok,
                   "P^t B^{0;g} P = B^{A1;g} with the unipotent P, and P is the "
                   "extension of its generator images"});

    ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        Rat ep = rand_nonzero(rng), g = rand_nonzero(rng);
        QMatrix q(5, 5);
        q.at(0, 0) = ep;
        q.at(1, 1) = 1;
        q.at(2, 2) = ep;
        q.at(3, 3) = ep * ep;
        q.at(4, 4) = ep;
        ok = ok && q.transpose() * b23(kZero2, g) * q == b23(kZero2, ep * ep * g);
        ok = ok && extend(alg, grade1_image_vectors(alg, QMatrix{{ep, 0}, {0, 1}})).matrix == q;
    }
    out.push_back({"q-scales-gamma-n23", ok,
                   "diag(e,1,e,e^2,e) rescales B^{0;g} to B^{0;e^2 g}"});

    ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        QMatrix g2 = rand_invertible(rng, 2);
        Rat g = rand_nonzero(rng);
        std::vector<VecQ> imgs(2, VecQ(5));
        for (int j = 0; j < 2; ++j) {
            imgs[j][0] = g2.at(0, j);
            imgs[j][1] = g2.at(1, j);
            for (int i = 2; i < 5; ++i) imgs[j][i] = rand_rat(rng);
        }
        Endo th = extend(alg, imgs);
        QMatrix res = act_on_form(b23(kZero2, g), th);
        QMatrix y{{res.at(0, 0), res.at(0, 1)}, {res.at(0, 1), res.at(1, 1)}};
        Rat det = determinant(g2);
        ok = ok && res == b23(y, res.at(2, 2));
        ok = ok && res.at(2, 2) == g * det * det;
    }
    out.push_back({"graded-gamma-square-n23", ok,
                   "a general automorphism keeps the family and multiplies g by det^2"});

    const auto& alg25 = cached_alg(2, 5);
    ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        QMatrix p2 = rand_invertible(rng, 2);
        QMatrix a1 = rand_sym(rng, 2), a2 = rand_sym(rng, 2);
        Rat g = rand_rat(rng);
        Endo th = extend(alg25, grade1_image_vectors(alg25, p2));
        QMatrix res = act_on_form(b25(a1, g, a2), th);
        Rat det = determinant(p2);
        QMatrix a2n = (p2.transpose() * a2 * p2) * (det * det);
        ok = ok && res == b25(p2.transpose() * a1 * p2, g * det * det, a2n);
        ok = ok && det_twisted_congruence_check(a2, a2n, p2);
    }
    out.push_back({"det-twist-a2-n25", ok,
                   "graded action: A1 -> P^t A1 P, gamma -> gamma det^2, "
                   "A2 -> (det P)^2 P^t A2 P"});
}

// ----- tag C5.3: square classes and the cube-root witness -----

void items_c53(std::vector<ReplayItem>& out, std::mt19937_64& rng) {
    bool ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        Rat g = rand_nonzero(rng), de = rand_nonzero(rng);
        ok = ok && same_square_class(g, g * de * de);
        ok = ok && !same_square_class(g, 2 * g * de * de);
    }
    out.push_back({"gamma-square-class", ok,
                   "g and g de^2 share a square class; g and 2 g de^2 never do"});

    ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        QMatrix a = rand_sym(rng, 2);
        QMatrix p0 = rand_invertible(rng, 2);
        Rat c = determinant(p0);
        QMatrix p = p0 * c; // det p = c^3, cube root c
        QMatrix b = p.transpose() * a * p;
        QMatrix r = p * (1 / c); // the rescaled witness
        Rat dr = determinant(r);
        ok = ok && r.transpose() * a * r * (dr * dr) == b;
        ok = ok && det_twisted_congruence_check(a, b, r);
    }
    out.push_back({"cube-root-witness", ok,
                   "congruent pairs with cube determinant admit the rescaled witness "
                   "R = P / cbrt(det P)"});

    ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        QMatrix a = rand_sym(rng, 2);
        QMatrix p = rand_invertible(rng, 2);
        Rat det = determinant(p);
        QMatrix b = p.transpose() * a * p * (det * det);
        ok = ok && det_twisted_congruence_check(a, b, p);
        QMatrix bad = b;
        bad.at(0, 0) += 1;
        ok = ok && !det_twisted_congruence_check(a, bad, p);
    }
    out.push_back({"det-twist-construct-verify", ok,
                   "B = (det P)^2 P^t A P verifies and any perturbation fails"});
}

// ----- tag T5.5: three-generator class-2 congruence and the A2' system -----

QMatrix a2prime_system(const QMatrix& a2p) {
    // unknowns V (8x3) flattened row-major; rows follow pairs (i <= j)
    QMatrix m(6, 24);
    int row = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j, ++row)
            for (int k = 0; k < 8; ++k) {
                m.at(row, k * 3 + j) += a2p.at(i, k);
                m.at(row, k * 3 + i) += a2p.at(j, k);
            }
    return m;
}

void items_t55(std::vector<ReplayItem>& out, std::mt19937_64& rng) {
    const auto& alg = cached_alg(3, 2);
    bool ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        Rat p = rand_rat(rng), q = rand_rat(rng), r = rand_rat(rng);
        Rat t = rand_rat(rng), u = rand_rat(rng), v = rand_rat(rng);
        Rat g = rand_nonzero(rng);
        QMatrix a1{{p, q, r}, {q, t, u}, {r, u, v}};
        QMatrix p6(6, 6);
        p6.at(0, 0) = g;
        p6.at(1, 1) = 1;
        p6.at(2, 2) = 1;
        p6.at(3, 2) = v / 2;
        p6.at(3, 3) = g;
        p6.at(4, 1) = -t / 2;
        p6.at(4, 2) = -u;
        p6.at(4, 4) = g;
        p6.at(5, 0) = p / (2 * g);
        p6.at(5, 1) = q / g;
        p6.at(5, 2) = r / g;
        p6.at(5, 5) = 1;
        ok = ok && p6.transpose() * b32(kZero3, 1) * p6 == b32(a1, g);
        std::vector<VecQ> imgs(3, VecQ(6));
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 6; ++i) imgs[j][i] = p6.at(i, j);
        ok = ok && extend(alg, imgs).matrix == p6;
    }
    out.push_back({"p6-fills-a1-n32", ok,
                   "P^t B^{0;1} P = B^{A1;g} for the printed 6x6 P, which extends "
                   "its own generator images"});

    ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        QMatrix p = rand_invertible(rng, 3);
        QMatrix a1 = rand_sym(rng, 3);
        Rat lam = rand_rat(rng);
        Endo th = extend(alg, grade1_image_vectors(alg, p));
        QMatrix res = act_on_form(b32(a1, lam), th);
        ok = ok && res == b32(p.transpose() * a1 * p, lam * determinant(p));
        QMatrix blk = th.matrix.submatrix(3, 3, 3, 3);
        QMatrix cc = c_flip();
        ok = ok && blk == cc * cofactor_matrix(p) * cc;
        for (int rr = 0; rr < 3 && ok; ++rr)
            for (int ccol = 0; ccol < 3; ++ccol) {
                // unsigned minor of p at (2-rr, 2-ccol)
                std::vector<Rat> ent;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        if (i != 2 - rr && j != 2 - ccol) ent.push_back(p.at(i, j));
                Rat minor = ent[0] * ent[3] - ent[1] * ent[2];
                if (blk.at(rr, ccol) != minor) {
                    ok = false;
                    break;
                }
            }
    }
    out.push_back({"graded-family-n32", ok,
                   "graded action: A1 -> P^t A1 P, lambda -> lambda det P; the "
                   "grade-2 block is the flipped minor matrix C Cof(P) C"});

    ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        QMatrix a2 = rand_sym(rng, 3);
        while (rank(a2) < 2) a2 = rand_sym(rng, 3);
        ok = ok && rank(a2prime_system(a2prime(a2))) == 6;
    }
    out.push_back({"a1-reduction-solvable-rank2", ok,
                   "A2'V + (A2'V)^t = S is solvable for every symmetric S once "
                   "rank A2 >= 2 (the 6x24 system has full rank)"});

    {
        QMatrix e11(3, 3);
        e11.at(0, 0) = 1;
        QMatrix sys = a2prime_system(a2prime(e11));
        QMatrix aug(6, 25);
        aug.set_block(0, 0, sys);
        aug.at(5, 24) = 1; // target S = E33, pair list position (3,3)
        bool pass = rank(a2prime(e11)) == 2 && rank(aug) > rank(sys);
        out.push_back({"e33-unreachable-rank1", pass,
                       "at rank A2 = 1 the system misses the target S = E33, the "
                       "obstruction behind the rank-1 pair"});
    }
}

// ----- tag T5.6: class-5 normalizations and the class-3 graded action -----

struct XCase {
    const char* name;
    // builds (C 2x2, E 6x2, A2 2x2, C' 3-vector) from sampled scalars
    std::function<void(std::mt19937_64&, QMatrix&, QMatrix&, QMatrix&, VecQ&, QMatrix&, Rat&)>
        sample;
};

void x_case_matrices(std::mt19937_64& rng, int variant, QMatrix& cm, QMatrix& em, QMatrix& a2,
                     VecQ& cp, QMatrix& a1, Rat& g) {
    Rat p = rand_rat(rng), q = rand_rat(rng), s = rand_rat(rng);
    g = rand_nonzero(rng);
    a1 = QMatrix{{p, q}, {q, s}};
    cm = QMatrix(2, 2);
    em = QMatrix(6, 2);
    cp = VecQ(3);
    if (variant == 0) { // f != 0
        Rat d = rand_rat(rng), e = rand_rat(rng), f = rand_nonzero(rng);
        a2 = QMatrix{{d, e}, {e, f}};
        cm.at(1, 0) = g / (2 * f);
        em.at(4, 1) = s / (2 * f);
        em.at(5, 0) = (g * g - 4 * p * f) / (8 * f * f);
        em.at(5, 1) = (e * s - 2 * q * f) / (2 * f * f);
        cp[2] = -g / (2 * f);
    } else if (variant == 1) { // f = 0, d != 0
        Rat d = rand_nonzero(rng), e = rand_rat(rng);
        a2 = QMatrix{{d, e}, {e, 0}};
        cm.at(0, 1) = -g / (2 * d);
        em.at(0, 0) = q / d;
        em.at(0, 1) = (4 * d * s - g * g) / (8 * d * d);
        em.at(1, 0) = -p / (2 * d);
        cp[0] = -g / (2 * d);
    } else { // f = d = 0, e != 0
        Rat e = rand_nonzero(rng);
        a2 = QMatrix{{0, e}, {e, 0}};
        cm.at(0, 0) = g / (2 * e);
        em.at(2, 0) = q / e;
        em.at(2, 1) = s / (2 * e);
        em.at(4, 0) = p / (2 * e);
        cp[1] = -g / (2 * e);
    }
}

void items_t56(std::vector<ReplayItem>& out, std::mt19937_64& rng) {
    const auto& alg25 = cached_alg(2, 5);
    const char* names[3] = {"x-case-f-nonzero", "x-case-d-nonzero", "x-case-e-nonzero"};
    for (int variant = 0; variant < 3; ++variant) {
        bool ok = true;
        for (int s = 0; s < kReplaySamples; ++s) {
            QMatrix cm, em, a2, a1;
            VecQ cp;
            Rat g;
            x_case_matrices(rng, variant, cm, em, a2, cp, a1, g);
            std::vector<VecQ> imgs(2, VecQ(14));
            for (int j = 0; j < 2; ++j) {
                imgs[j][j] = 1;
                for (int i = 0; i < 2; ++i) imgs[j][3 + i] = cm.at(i, j);
                for (int i = 0; i < 6; ++i) imgs[j][8 + i] = em.at(i, j);
            }
            QMatrix x = extend(alg25, imgs).matrix;
            ok = ok && x.transpose() * b25(kZero2, 0, a2) * x == b25(a1, g, a2);
            // the blocks the argument leaves implicit stay zero
            ok = ok && x.submatrix(3, 2, 2, 1).is_zero();  // grade-3 image of h3
            ok = ok && x.submatrix(5, 3, 3, 2).is_zero();  // grade-4 images of h4, h5
            ok = ok && x.submatrix(8, 5, 6, 3).is_zero();  // grade-5 images of h6..h8
            ok = ok && x.submatrix(8, 2, 6, 1).is_zero();
            QMatrix cpcol = x.submatrix(5, 2, 3, 1);
            for (int i = 0; i < 3; ++i) ok = ok && cpcol.at(i, 0) == cp[i];
        }
        out.push_back({names[variant], ok,
                       "X^t B^{0;0;A2} X = B^{A1;g;A2} with the printed C, C', E "
                       "blocks; implicit blocks vanish"});
    }

    const auto& alg33 = cached_alg(3, 3);
    bool ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        QMatrix u = rand_sym(rng, 3); // any 3x3 works; keep entries small
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) u.at(i, j) = rand_rat(rng);
        QMatrix m = extend(alg33, grade2_tail_images(alg33, u)).matrix;
        QMatrix uprime = m.submatrix(6, 3, 8, 3);
        const Rat &x1 = u.at(0, 0), &x2 = u.at(0, 1), &x3 = u.at(0, 2);
        const Rat &x4 = u.at(1, 0), &x5 = u.at(1, 1), &x6 = u.at(1, 2);
        const Rat &x7 = u.at(2, 0), &x8 = u.at(2, 1), &x9 = u.at(2, 2);
        QMatrix uptr{{x2, -x1, -x8, x5, x8 - x4, 0, -x7, 0},
                     {x3, 0, -x9 - x1, x6, x9, -x4, 0, -x7},
                     {0, x3, -x2, 0, x6, -x5, x9, -x8}};
        ok = ok && uprime == uptr.transpose();
    }
    out.push_back({"uprime-printed-formula", ok,
                   "the printed U' formula equals the grade-3 x grade-2 block of "
                   "the extension of id + U"});

    ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        QMatrix p = rand_invertible(rng, 3);
        QMatrix a1 = rand_sym(rng, 3), a2 = rand_sym(rng, 3);
        Rat g = rand_rat(rng);
        Endo th = extend(alg33, grade1_image_vectors(alg33, p));
        QMatrix res = act_on_form(b33(a1, g, a2), th);
        QMatrix cc = c_flip();
        QMatrix qg = cc * cofactor_matrix(p) * cc;
        ok = ok && res == b33(p.transpose() * a1 * p, g * determinant(p),
                              qg.transpose() * a2 * qg);
    }
    out.push_back({"graded-action-n33", ok,
                   "graded action: A1 -> P^t A1 P, gamma -> gamma det P, "
                   "A2 -> (C Cof P C)^t A2 (C Cof P C)"});

    {
        QMatrix e11(3, 3), e33(3, 3);
        e11.at(0, 0) = 1;
        e33.at(2, 2) = 1;
        OrbitRecord ra = orbit_invariants(alg33, b33(e33, 0, e11));
        OrbitRecord rb = orbit_invariants(alg33, b33(kZero3, 0, e11));
        bool pass = ra != rb && ra.rank == 6 && rb.rank == 5;
        std::ostringstream w;
        w << "B^{E33;0;E11} and B^{0;0;E11} have distinct orbit records (rank "
          << ra.rank << " vs " << rb.rank << "), so rank-1 A2 does not absorb A1";
        out.push_back({"rank1-pair-distinct", pass, w.str()});
    }
}

// ----- tag T5.6-relation: the nine-entry reduction -----

void items_t56_relation(std::vector<ReplayItem>& out, std::mt19937_64& rng) {
    const auto& alg33 = cached_alg(3, 3);
    bool collapse_ok = true, action_ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        QMatrix a2 = rand_sym(rng, 3);
        Rat g = rand_rat(rng);
        QMatrix u(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) u.at(i, j) = rand_rat(rng);
        Endo th = extend(alg33, grade2_tail_images(alg33, u));
        QMatrix uprime = th.matrix.submatrix(6, 3, 8, 3);
        QMatrix red = w_matrix(g) + u.transpose() * a2 + a2prime(a2) * uprime;
        const Rat &a = a2.at(0, 0), &b = a2.at(0, 1), &c = a2.at(0, 2);
        const Rat &d = a2.at(1, 1), &e = a2.at(1, 2), &f = a2.at(2, 2);
        Rat l = g + c * u.at(0, 0) - b * u.at(0, 1) + a * u.at(0, 2) + e * u.at(1, 0) -
                d * u.at(1, 1) + b * u.at(1, 2) + f * u.at(2, 0) - e * u.at(2, 1) +
                c * u.at(2, 2);
        collapse_ok = collapse_ok && red == c_flip() * l;
        QMatrix res = act_on_form(b33(kZero3, g, a2), th);
        action_ok = action_ok && res.submatrix(0, 3, 3, 3) == red;
    }
    out.push_back({"nine-entry-collapse", collapse_ok,
                   "W_g + U^t A2 + A2' U' = L C entrywise: three entries carry the "
                   "single linear form L = g + c x1 - b x2 + a x3 + e x4 - d x5 + "
                   "b x6 + f x7 - e x8 + c x9, six vanish identically"});
    out.push_back({"block-formula-action", action_ok,
                   "the generator x grade-2 block of the acted form equals "
                   "W_g + U^t A2 + A2' U'"});
}

// ----- tag C5.7: adjugate congruence -----

void items_c57(std::vector<ReplayItem>& out, std::mt19937_64& rng) {
    bool ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        QMatrix d = rand_invertible(rng, 3);
        ok = ok && cofactor_matrix(d) == inverse(d).transpose() * determinant(d);
    }
    out.push_back({"adjugate-det-inverse", ok, "Adj D = det(D) (D^-1)^t on invertible samples"});

    ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        QMatrix r0 = rand_invertible(rng, 3);
        Rat d0 = determinant(r0);
        QMatrix scale(3, 3);
        scale.at(0, 0) = d0;
        scale.at(1, 1) = 1;
        scale.at(2, 2) = 1;
        QMatrix r = r0 * scale; // det r = d0^2, a perfect square
        Rat sq;
        ok = ok && rational_sqrt(determinant(r), sq);
        QMatrix cc = c_flip();
        QMatrix p = cc * inverse(r).transpose() * cc * sq;
        ok = ok && cofactor_matrix(p) == cc * r * cc;
    }
    out.push_back({"sqrt-det-witness", ok,
                   "P = sqrt(det R) C (R^-1)^t C realizes Adj P = C R C whenever "
                   "det R is a square"});

    ok = true;
    bool flip_ok = true;
    for (int s = 0; s < kReplaySamples; ++s) {
        QMatrix a = rand_sym(rng, 3);
        QMatrix p = rand_invertible(rng, 3);
        QMatrix cc = c_flip();
        QMatrix adj = cofactor_matrix(p);
        QMatrix b = cc * (adj.transpose() * cc * a * cc * adj) * cc;
        ok = ok && adjugate_congruence_check(a, b, p);
        QMatrix bad = b;
        bad.at(0, 0) += 1;
        ok = ok && !adjugate_congruence_check(a, bad, p);
        flip_ok = flip_ok && adjugate_congruence_check(a, b, p * Rat(-1));
        flip_ok = flip_ok && cofactor_matrix(p * Rat(-1)) == adj;
    }
    out.push_back({"adjugate-congruence-construct-verify", ok,
                   "CBC = (Adj P)^t CAC (Adj P) verifies on constructed pairs and "
                   "any perturbation fails"});
    out.push_back({"minus-flip", flip_ok,
                   "Adj(-P) = Adj P in dimension 3, so the witness sign is free"});
}

// ----- tags T6.1 / T6.2: quotients against the printed catalog -----

void items_catalog_isos(std::vector<ReplayItem>& out, const std::string& prefix) {
    for (const auto& entry : catalog()) {
        if (entry.label.compare(0, prefix.size(), prefix) != 0) continue;
        const auto& alg = cached_alg(entry.src_d, entry.src_t);
        QuadraticAlgebra q = quotient_quadratic(alg, entry.source_form);
        bool ok = q.dim == entry.dim;
        std::string note;
        if (ok) {
            QMatrix theta = catalog_isomorphism(entry, q);
            ok = verify_metric_map(theta, entry.algebra(), q);
            std::ostringstream w;
            w << "quotient of n_{" << entry.src_d << "," << entry.src_t << "} has dim "
              << q.dim << "; the generator-extension map is a verified metric isomorphism";
            note = w.str();
        } else {
            note = "quotient dimension mismatch";
        }
        out.push_back({entry.label, ok, note});
    }
}

struct PrintedKernel {
    const char* name;
    int d, t;
    QMatrix a2;
    std::vector<std::map<int, int>> span; // 1-based sparse rows
    int dim;
};

std::vector<PrintedKernel> printed_kernels_61() {
    return {
        {"kernel-B25-diag10", 2, 5, QMatrix{{1, 0}, {0, 0}},
         {{{5, 1}}, {{7, 1}}, {{8, 1}}, {{10, 1}, {11, 1}}, {{12, 1}}, {{13, 1}}, {{14, 1}}},
         7},
        {"kernel-B25-id", 2, 5, QMatrix{{1, 0}, {0, 1}},
         {{{7, 1}}, {{6, -1}, {8, 1}}, {{10, 1}, {11, 1}}, {{12, 1}}, {{9, -1}, {13, 1}},
          {{10, -1}, {14, 1}}},
         6},
        {"kernel-B33-diag110", 3, 3, QMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}},
         {{{6, 1}}, {{9, 1}}, {{11, 1}}, {{8, -1}, {12, 1}}, {{13, 1}}, {{14, 1}}}, 6},
    };
}

std::vector<PrintedKernel> printed_kernels_62() {
    return {
        {"kernel-B25-diag1m1", 2, 5, QMatrix{{1, 0}, {0, -1}},
         {{{7, 1}}, {{6, 1}, {8, 1}}, {{10, 1}, {11, 1}}, {{12, 1}}, {{9, 1}, {13, 1}},
          {{10, 1}, {14, 1}}},
         6},
        {"kernel-B33-diag1m10", 3, 3, QMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}},
         {{{6, 1}}, {{9, 1}}, {{11, 1}}, {{8, 1}, {12, 1}}, {{13, 1}}, {{14, 1}}}, 6},
        {"kernel-B33-diag11m1", 3, 3, QMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}},
         {{{9, 1}}, {{11, 1}}, {{8, -1}, {12, 1}}, {{10, 1}, {13, 1}}, {{7, -1}, {14, 1}}}, 5},
    };
}

ReplayItem kernel_item(const PrintedKernel& pk) {
    const auto& alg = cached_alg(pk.d, pk.t);
    QMatrix b = pk.d == 2 ? b25(kZero2, 0, pk.a2) : b33(kZero3, 0, pk.a2);
    auto ker = kernel(alg, b);
    std::vector<VecQ> printed;
    for (const auto& row : pk.span) printed.push_back(sparse_to_vec(alg.dim(), row));
    bool ok = int(ker.size()) == pk.dim && span_equal(ker, printed);
    ok = ok && rank(b) == alg.dim() - pk.dim;
    std::ostringstream w;
    w << "kernel dim " << ker.size() << ", rank " << alg.dim() - int(ker.size())
      << ", printed span matches as a subspace";
    return {pk.name, ok, w.str()};
}

ReplayItem kernel_item_b33_id() {
    // the printed span has one garbled generator; decide its sign by
    // comparing both readings against the computed kernel
    const auto& alg = cached_alg(3, 3);
    QMatrix b = b33(kZero3, 0, QMatrix::identity(3));
    auto ker = kernel(alg, b);
    std::vector<std::map<int, int>> common = {
        {{9, 1}}, {{11, 1}}, {{8, -1}, {12, 1}}, {{10, -1}, {13, 1}}};
    auto build = [&](int sign) {
        std::vector<VecQ> rows;
        for (const auto& e : common) rows.push_back(sparse_to_vec(alg.dim(), e));
        rows.push_back(sparse_to_vec(alg.dim(), {{7, sign}, {14, 1}}));
        return rows;
    };
    bool plus = span_equal(ker, build(1));
    bool minus = span_equal(ker, build(-1));
    bool ok = int(ker.size()) == 5 && rank(b) == 9 && plus != minus;
    std::ostringstream w;
    if (plus != minus)
        w << "kernel dim 5, rank 9; the garbled fifth generator reads "
          << alg.word_name(13) << (plus ? " + " : " - ") << alg.word_name(6);
    else
        w << "neither reading of the garbled generator matches";
    return {"kernel-B33-id", ok, w.str()};
}

void items_t61_kernels(std::vector<ReplayItem>& out) {
    auto cases = printed_kernels_61();
    out.push_back(kernel_item(cases[0]));
    out.push_back(kernel_item(cases[1]));
    out.push_back(kernel_item(cases[2]));
    out.push_back(kernel_item_b33_id());
}

void items_t62_kernels(std::vector<ReplayItem>& out) {
    for (const auto& pk : printed_kernels_62()) out.push_back(kernel_item(pk));
}

using TagFn = std::function<void(std::vector<ReplayItem>&, std::mt19937_64&)>;

const std::vector<std::pair<std::string, TagFn>>& tag_table() {
    static const std::vector<std::pair<std::string, TagFn>> table = {
        {"T5.2", items_t52},
        {"C5.3", items_c53},
        {"T5.5", items_t55},
        {"T5.6", items_t56},
        {"T5.6-relation", items_t56_relation},
        {"C5.7", items_c57},
        {"T6.1", [](std::vector<ReplayItem>& out,
                    std::mt19937_64&) { items_catalog_isos(out, "Thm6.1"); }},
        {"T6.1-kernels",
         [](std::vector<ReplayItem>& out, std::mt19937_64&) { items_t61_kernels(out); }},
        {"T6.2", [](std::vector<ReplayItem>& out,
                    std::mt19937_64&) { items_catalog_isos(out, "Thm6.2"); }},
        {"T6.2-kernels",
         [](std::vector<ReplayItem>& out, std::mt19937_64&) { items_t62_kernels(out); }},
    };
    return table;
}

std::mt19937_64 tag_rng(std::uint64_t seed, std::size_t tag_index) {
    // decorrelate tags so they can run in any order or concurrently
    return std::mt19937_64(seed ^ (0x9e3779b97f4a7c15ULL * (tag_index + 1)));
}

} // namespace

const std::vector<std::string>& replay_tags() {
    static const std::vector<std::string> tags = [] {
        std::vector<std::string> t;
        for (const auto& [name, fn] : tag_table()) t.push_back(name);
        return t;
    }();
    return tags;
}

ReplayReport replay_theorem(const std::string& tag, std::uint64_t seed) {
    if (tag == "all") {
        ReplayReport merged;
        merged.tag = "all";
        for (auto& rep : replay_all(seed))
            for (auto& it : rep.items) merged.items.push_back(std::move(it));
        return merged;
    }
    const auto& table = tag_table();
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].first != tag) continue;
        ReplayReport rep;
        rep.tag = tag;
        auto rng = tag_rng(seed, i);
        table[i].second(rep.items, rng);
        return rep;
    }
    throw std::invalid_argument("replay_theorem: unknown tag " + tag);
}

std::vector<ReplayReport> replay_all(std::uint64_t seed) {
    std::vector<ReplayReport> out;
    for (const auto& tag : replay_tags()) out.push_back(replay_theorem(tag, seed));
    return out;
}

ojson replay_to_json(const ReplayReport& r) {
    ojson j;
    j["tag"] = r.tag;
    j["all_pass"] = r.all_pass();
    j["items"] = ojson::array();
    for (const auto& it : r.items) {
        ojson e;
        e["name"] = it.name;
        e["pass"] = it.pass;
        e["witness"] = it.witness;
        j["items"].push_back(std::move(e));
    }
    return j;
}

bool adjugate_congruence_check(const QMatrix& a, const QMatrix& b, const QMatrix& p) {
    if (a.rows() != 3 || a.cols() != 3 || b.rows() != 3 || b.cols() != 3 || p.rows() != 3 ||
        p.cols() != 3)
        throw std::invalid_argument("adjugate_congruence_check: need 3x3 matrices");
    if (determinant(p) == 0)
        throw std::invalid_argument("adjugate_congruence_check: singular P");
    QMatrix cc = c_flip();
    QMatrix adj = cofactor_matrix(p);
    return cc * b * cc == adj.transpose() * cc * a * cc * adj;
}

bool det_twisted_congruence_check(const QMatrix& a, const QMatrix& b, const QMatrix& p) {
    if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2 || p.rows() != 2 ||
        p.cols() != 2)
        throw std::invalid_argument("det_twisted_congruence_check: need 2x2 matrices");
    Rat det = determinant(p);
    if (det == 0) throw std::invalid_argument("det_twisted_congruence_check: singular P");
    return b == p.transpose() * a * p * (det * det);
}

} // namespace quadlie
