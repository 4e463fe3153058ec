#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

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

FamilyParams params_from_json(const json& p) {
    FamilyParams out;
    if (p.contains("A1")) out.A1 = mat_from_json(p.at("A1"));
    if (p.contains("A2")) out.A2 = mat_from_json(p.at("A2"));
    // the scalar slot is written gamma on two generators, lambda on three
    for (const char* key : {"gamma", "lambda"})
        if (p.contains(key)) out.gamma = parse_rational(p.at(key).get<std::string>());
    return out;
}

QMatrix sym_unit(int n, int i, int j) {
    QMatrix m(n, n);
    m.at(i, j) = 1;
    m.at(j, i) = 1;
    return m;
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

} // namespace

TEST_CASE("name round trip") {
    auto fams = all_families();
    CHECK(fams.size() == 10);
    for (FamilyId id : fams) CHECK(family_from_string(family_to_string(id)) == id);
    CHECK(family_to_string(FamilyId::B23) == "B23");
    CHECK(family_to_string(FamilyId::PHI32) == "PHI32");
    CHECK_THROWS_AS(family_from_string("B99"), std::invalid_argument);
}

TEST_CASE("shapes are consistent with the algebras") {
    for (FamilyId id : all_families()) {
        FamilyShape s = family_shape(id);
        CHECK(s.matrix_dim == alg_for(s.d, s.t).dim());
        CHECK(s.uses_a1 == (s.a1_size > 0));
        CHECK(s.uses_a2 == (s.a2_size > 0));
    }
    CHECK(family_shape(FamilyId::B25).a2_size == 2);
    CHECK(family_shape(FamilyId::B33).a2_size == 3);
    CHECK(!family_shape(FamilyId::PHI23).uses_gamma);
}

TEST_CASE("fixture instances reproduce the printed matrices") {
    json j = fixture("family_instances.json");
    REQUIRE(j.size() == 10);
    for (const auto& [name, rec] : j.items()) {
        FamilyId id = family_from_string(name);
        QMatrix want = mat_from_json(rec.at("matrix"));
        QMatrix got = family_form(id, params_from_json(rec.at("params")));
        CHECK(got == want);
        CHECK(got.is_symmetric());
        FamilyShape s = family_shape(id);
        CHECK(is_invariant(alg_for(s.d, s.t), got));
    }
}

TEST_CASE("every family lands in the invariant space, with random parameters") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> scal(-5, 5);
    for (FamilyId id : all_families()) {
        FamilyShape s = family_shape(id);
        const auto& alg = alg_for(s.d, s.t);
        for (int it = 0; it < 8; ++it) {
            FamilyParams p;
            if (s.uses_a1) p.A1 = random_sym(rng, s.a1_size);
            if (s.uses_gamma) p.gamma = Rat(scal(rng), 2);
            if (s.uses_a2) p.A2 = random_sym(rng, s.a2_size);
            QMatrix b = family_form(id, p);
            CHECK(b.is_symmetric());
            CHECK(is_invariant(alg, b));
        }
    }
}

TEST_CASE("unit parameters give a basis of the whole invariant space") {
    for (FamilyId id : {FamilyId::B21, FamilyId::B22, FamilyId::B23, FamilyId::B24, FamilyId::B25,
                        FamilyId::B31, FamilyId::B32, FamilyId::B33}) {
        FamilyShape s = family_shape(id);
        const auto& alg = alg_for(s.d, s.t);
        std::vector<VecQ> fam;
        if (s.uses_a1)
            for (int i = 0; i < s.a1_size; ++i)
                for (int j = i; j < s.a1_size; ++j) {
                    FamilyParams p;
                    p.A1 = sym_unit(s.a1_size, i, j);
                    fam.push_back(sym_vectorize(family_form(id, p)));
                }
        if (s.uses_gamma) {
            FamilyParams p;
            p.gamma = 1;
            fam.push_back(sym_vectorize(family_form(id, p)));
        }
        if (s.uses_a2)
            for (int i = 0; i < s.a2_size; ++i)
                for (int j = i; j < s.a2_size; ++j) {
                    FamilyParams p;
                    p.A2 = sym_unit(s.a2_size, i, j);
                    fam.push_back(sym_vectorize(family_form(id, p)));
                }
        auto space = invariant_form_space(alg);
        std::vector<VecQ> sp;
        for (const auto& m : space) sp.push_back(sym_vectorize(m));
        REQUIRE(fam.size() == sp.size()); // parameter count equals the dimension
        CHECK(span_equal(fam, sp));
        CHECK(int(span_canonical_basis(fam).size()) == int(fam.size()));
    }
}

TEST_CASE("defaulted parameters mean zero blocks") {
    CHECK(family_form(FamilyId::B23, {}).is_zero());
    CHECK(family_form(FamilyId::B33, {}).is_zero());
    FamilyParams g1;
    g1.gamma = 1;
    CHECK(family_form(FamilyId::B23, g1) == phi23());
    CHECK(family_form(FamilyId::B32, g1) == phi32());
}

TEST_CASE("fixed nondegenerate forms") {
    CHECK(rank(phi23()) == 5);
    CHECK(rank(phi32()) == 6);
    CHECK(sym0_membership(alg_for(2, 3), phi23()).member);
    CHECK(sym0_membership(alg_for(3, 2), phi32()).member);
    auto sig23 = signature(phi23());
    CHECK(sig23.zero == 0);
    auto sig32 = signature(phi32());
    CHECK(sig32.zero == 0);
}

TEST_CASE("flip block and its gamma multiple") {
    QMatrix c = c_flip();
    CHECK(c == QMatrix{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}});
    CHECK(c * c == QMatrix::identity(3));
    CHECK(w_matrix(Rat(-7, 2)) == Rat(-7, 2) * c);
    CHECK(w_matrix(0).is_zero());
}

TEST_CASE("second coupling block") {
    CHECK(a2prime(QMatrix(3, 3)).is_zero());
    QMatrix u = a2prime(QMatrix::identity(3));
    REQUIRE(u.rows() == 3);
    REQUIRE(u.cols() == 8);
    CHECK(u == QMatrix{{0, 1, 0, 0, 0, 1, 0, 0},
                       {-1, 0, 0, 0, 0, 0, 0, 1},
                       {0, 0, 0, -1, 0, 0, -1, 0}});
    CHECK(rank(u) == 3);
    // entry pattern for a generic symmetric matrix
    QMatrix a2{{1, 2, 3}, {2, 4, 5}, {3, 5, 6}};
    CHECK(a2prime(a2) == QMatrix{{0, 1, 2, 0, 2, 4, 3, 5},
                                 {-1, 0, 3, -2, 0, 5, 0, 6},
                                 {-2, -3, 0, -4, -5, 0, -6, 0}});
    QMatrix skew(3, 3);
    skew.at(0, 1) = 1;
    CHECK_THROWS_AS(a2prime(skew), std::invalid_argument);
    CHECK_THROWS_AS(a2prime(QMatrix(2, 2)), std::invalid_argument);
}
