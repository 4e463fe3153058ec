#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quadlie/autgroup.hpp"
#include "quadlie/exactlin.hpp"
#include "quadlie/families.hpp"
#include "quadlie/free_nilpotent.hpp"
#include "quadlie/invforms.hpp"
#include "quadlie/json_io.hpp"

#include <map>
#include <random>

using namespace quadlie;

namespace {

json fixture(const char* name) { return load_json_file(std::string(TEST_DATA_DIR "/") + name); }

const FreeNilpotent& alg_for(int d, int t) {
    static std::map<std::pair<int, int>, FreeNilpotent> cache;
    auto it = cache.find({d, t});
    if (it == cache.end()) it = cache.emplace(std::pair{d, t}, FreeNilpotent(d, t)).first;
    return it->second;
}

// generator images of the graded map induced by p on the generator slice
std::vector<VecQ> graded_images(const FreeNilpotent& alg, const QMatrix& p) {
    std::vector<VecQ> imgs;
    for (int j = 0; j < alg.d(); ++j) {
        VecQ v(alg.dim());
        for (int i = 0; i < alg.d(); ++i) v[i] = p.at(i, j);
        imgs.push_back(v);
    }
    return imgs;
}

QMatrix random_sym(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> d(-4, 4);
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            m.at(i, j) = d(rng);
            m.at(j, i) = m.at(i, j);
        }
    return m;
}

OrbitRecord record_from_json(const json& rec) {
    OrbitRecord r;
    r.rank = rec.at("rank").get<int>();
    r.kernel_dim = rec.at("kernel_dim").get<int>();
    r.s2_block_rank = rec.at("s2_block_rank").get<int>();
    r.kernel_grade_profile = rec.at("kernel_grade_profile").get<std::vector<int>>();
    for (const auto& row : rec.at("pair_block_ranks"))
        r.pair_block_ranks.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>()});
    return r;
}

} // namespace

TEST_CASE("graded extension goldens") {
    json j = fixture("extend_goldens.json");
    for (auto [key, d, t] : {std::tuple{"graded_2_3", 2, 3}, {"graded_2_5", 2, 5},
                             {"graded_3_2", 3, 2}, {"graded_3_3", 3, 3}}) {
        CAPTURE(key);
        const json& rec = j.at(key);
        const auto& alg = alg_for(d, t);
        QMatrix p = mat_from_json(rec.at("P"));
        Endo e = extend(alg, graded_images(alg, p));
        CHECK(e.matrix == mat_from_json(rec.at("matrix")));
        CHECK(is_graded(e));
        CHECK(is_automorphism(e));
        CHECK(generator_block(e) == p);
    }
    // the two-generator level-3 case in closed form: blocks P, det P, det P * P
    {
        const auto& alg = alg_for(2, 3);
        QMatrix p = mat_from_json(j.at("graded_2_3").at("P"));
        Endo e = extend(alg, graded_images(alg, p));
        Rat det = determinant(p);
        QMatrix want(5, 5);
        want.set_block(0, 0, p);
        want.at(2, 2) = det;
        want.set_block(3, 3, det * p);
        CHECK(e.matrix == want);
    }
}

TEST_CASE("unipotent extension goldens") {
    json j = fixture("extend_goldens.json");
    {
        const auto& alg = alg_for(2, 3);
        VecQ i1(5), i2(5);
        i1[0] = 1; i1[2] = 2; i1[3] = -1; i1[4] = 3;
        i2[1] = 1; i2[2] = 1; i2[3] = 2; i2[4] = -2;
        Endo e = extend(alg, {i1, i2});
        CHECK(e.matrix == mat_from_json(j.at("unipotent_2_3").at("matrix")));
        CHECK(is_unipotent_part(e));
        CHECK(is_automorphism(e));
    }
    {
        const auto& alg = alg_for(3, 3);
        const json& rec = j.at("unipotent_3_3");
        QMatrix u = mat_from_json(rec.at("U"));
        QMatrix v = mat_from_json(rec.at("V"));
        std::vector<VecQ> imgs;
        for (int jj = 0; jj < 3; ++jj) {
            VecQ img(alg.dim());
            img[jj] = 1;
            for (int i = 0; i < 3; ++i) img[3 + i] = u.at(i, jj);
            for (int i = 0; i < 8; ++i) img[6 + i] = v.at(i, jj);
            imgs.push_back(img);
        }
        Endo e = extend(alg, imgs);
        CHECK(e.matrix == mat_from_json(rec.at("matrix")));
        CHECK(is_unipotent_part(e));
    }
}

TEST_CASE("group laws hold on random automorphisms") {
    std::mt19937_64 rng(41);
    for (auto [d, t] : {std::pair{2, 3}, {2, 5}, {3, 2}, {3, 3}}) {
        const auto& alg = alg_for(d, t);
        Endo id = identity_endo(alg);
        CHECK(id.matrix == QMatrix::identity(alg.dim()));
        for (int s = 0; s < 25; ++s) {
            Endo f = random_automorphism(alg, rng);
            Endo g = random_automorphism(alg, rng);
            CHECK(is_automorphism(f));
            CHECK(rank(generator_block(f)) == d);
            CHECK(compose(f, g).matrix == f.matrix * g.matrix);
            CHECK(compose(f, id).matrix == f.matrix);
        }
    }
}

TEST_CASE("samplers produce what they claim") {
    std::mt19937_64 rng(43);
    const auto& alg = alg_for(3, 3);
    for (int s = 0; s < 20; ++s) {
        Endo h = random_graded_automorphism(alg, rng);
        CHECK(is_graded(h));
        CHECK(is_automorphism(h));
        Rat det = determinant(generator_block(h));
        CHECK(det != 0);
        Endo n = random_unipotent_automorphism(alg, rng);
        CHECK(is_unipotent_part(n));
        CHECK(is_automorphism(n));
        CHECK(generator_block(n) == QMatrix::identity(3));
        // graded maps invert through the generator block
        std::vector<VecQ> inv_imgs;
        QMatrix pinv = inverse(generator_block(h));
        for (int jc = 0; jc < 3; ++jc) {
            VecQ v(alg.dim());
            for (int i = 0; i < 3; ++i) v[i] = pinv.at(i, jc);
            inv_imgs.push_back(v);
        }
        CHECK(compose(h, extend(alg, inv_imgs)).matrix == QMatrix::identity(alg.dim()));
    }
}

TEST_CASE("every automorphism factors into graded times unipotent") {
    std::mt19937_64 rng(47);
    for (auto [d, t] : {std::pair{2, 3}, {2, 5}, {3, 2}, {3, 3}}) {
        const auto& alg = alg_for(d, t);
        for (int s = 0; s < 25; ++s) {
            Endo e = random_automorphism(alg, rng);
            AutFactorization fac = hn_factorize(e);
            CHECK(is_graded(fac.h));
            CHECK(is_unipotent_part(fac.n));
            CHECK(compose(fac.h, fac.n).matrix == e.matrix);
            CHECK(generator_block(fac.h) == generator_block(e));
        }
    }
    // degenerate generator images do not extend to an automorphism
    const auto& alg = alg_for(2, 3);
    VecQ a(5), b(5);
    a[0] = 1;
    b[0] = 1;
    Endo sq = extend(alg, {a, b});
    CHECK(!is_automorphism(sq));
    CHECK_THROWS_AS(hn_factorize(sq), std::invalid_argument);
}

TEST_CASE("form action composes contravariantly and transports kernels") {
    std::mt19937_64 rng(53);
    for (auto [d, t] : {std::pair{2, 3}, {3, 3}}) {
        const auto& alg = alg_for(d, t);
        for (int s = 0; s < 10; ++s) {
            QMatrix b = random_sym(rng, alg.dim());
            Endo th = random_automorphism(alg, rng);
            Endo sg = random_automorphism(alg, rng);
            CHECK(act_on_form(b, th) == th.matrix.transpose() * b * th.matrix);
            CHECK(act_on_form(act_on_form(b, th), sg) == act_on_form(b, compose(th, sg)));
        }
    }
    // kernel of the pulled-back form is the preimage of the kernel
    const auto& alg = alg_for(3, 3);
    FamilyParams p;
    p.A2 = QMatrix::identity(3);
    QMatrix b = family_form(FamilyId::B33, p);
    auto ker = kernel(alg, b);
    for (int s = 0; s < 5; ++s) {
        Endo phi = random_automorphism(alg, rng);
        QMatrix bphi = act_on_form(b, phi);
        QMatrix phinv = inverse(phi.matrix);
        std::vector<VecQ> moved;
        for (const auto& v : ker) moved.push_back(phinv * v);
        CHECK(span_equal(kernel(alg, bphi), moved));
    }
}

TEST_CASE("orbit invariants stay constant along the action") {
    std::mt19937_64 rng(59);
    struct Seed {
        int d, t;
        QMatrix b;
    };
    std::vector<Seed> seeds;
    {
        FamilyParams p;
        p.gamma = 1;
        seeds.push_back({2, 3, family_form(FamilyId::B23, p)});
    }
    {
        FamilyParams p;
        p.A2 = QMatrix{{1, 0}, {0, 0}};
        seeds.push_back({2, 5, family_form(FamilyId::B25, p)});
    }
    {
        FamilyParams p;
        p.A2 = QMatrix::identity(3);
        seeds.push_back({3, 3, family_form(FamilyId::B33, p)});
    }
    for (const auto& seed : seeds) {
        const auto& alg = alg_for(seed.d, seed.t);
        OrbitRecord base = orbit_invariants(alg, seed.b);
        for (int s = 0; s < 30; ++s) {
            Endo phi = random_automorphism(alg, rng);
            CHECK(orbit_invariants(alg, act_on_form(seed.b, phi)) == base);
        }
    }
}

TEST_CASE("rank-one second blocks with and without a generator block differ") {
    json j = fixture("rank1_pair.json");
    const auto& alg = alg_for(3, 3);
    FamilyParams pa;
    pa.A1 = QMatrix(3, 3);
    pa.A1.at(2, 2) = 1;
    pa.A2 = QMatrix(3, 3);
    pa.A2.at(0, 0) = 1;
    FamilyParams pb;
    pb.A2 = pa.A2;
    OrbitRecord ra = orbit_invariants(alg, family_form(FamilyId::B33, pa));
    OrbitRecord rb = orbit_invariants(alg, family_form(FamilyId::B33, pb));
    CHECK(ra == record_from_json(j.at("with_A1_E33")));
    CHECK(rb == record_from_json(j.at("without_A1")));
    CHECK(!(ra == rb));
    // same coarse data, separated only by the full rank
    CHECK(ra.pair_block_ranks == rb.pair_block_ranks);
    CHECK(ra.s2_block_rank == rb.s2_block_rank);
    CHECK(ra.rank != rb.rank);
}

TEST_CASE("graded maps respect membership, unipotent maps fix the top component") {
    std::mt19937_64 rng(61);
    const auto& alg = alg_for(3, 3);
    std::vector<QMatrix> cases;
    {
        FamilyParams p;
        p.A2 = QMatrix::identity(3);
        cases.push_back(family_form(FamilyId::B33, p)); // member
        p.gamma = 2;
        cases.push_back(family_form(FamilyId::B33, p)); // member
    }
    {
        FamilyParams p;
        p.A2 = QMatrix(3, 3);
        p.A2.at(0, 0) = 1;
        cases.push_back(family_form(FamilyId::B33, p)); // not a member
    }
    for (const auto& b : cases) {
        bool base = sym0_membership(alg, b).member;
        for (int s = 0; s < 15; ++s) {
            Endo h = random_graded_automorphism(alg, rng);
            CHECK(sym0_membership(alg, act_on_form(b, h)).member == base);
            Endo n = random_unipotent_automorphism(alg, rng);
            QMatrix moved = act_on_form(b, n);
            CHECK(bk_components(alg, moved)[0].part == bk_components(alg, b)[0].part);
            CHECK(sym0_membership(alg, moved).member == base);
        }
    }
}
