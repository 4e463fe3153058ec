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

std::pair<int, int> parse_dt(const std::string& key) {
    auto comma = key.find(',');
    return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
}

QMatrix diag2(const Rat& a, const Rat& b) { return QMatrix{{a, 0}, {0, b}}; }

QMatrix diag3(const Rat& a, const Rat& b, const Rat& c) {
    return QMatrix{{a, 0, 0}, {0, b, 0}, {0, 0, c}};
}

// the seven kernel fixtures and the ten membership fixtures are keyed by
// short case names; rebuild each form from its family parameters
QMatrix form_for_case(const std::string& name) {
    FamilyParams p;
    if (name == "B25_diag_1_0") { p.A2 = diag2(1, 0); return family_form(FamilyId::B25, p); }
    if (name == "B25_diag_1_m1") { p.A2 = diag2(1, -1); return family_form(FamilyId::B25, p); }
    if (name == "B25_id") { p.A2 = QMatrix::identity(2); return family_form(FamilyId::B25, p); }
    if (name == "B33_diag_1_1_0") { p.A2 = diag3(1, 1, 0); return family_form(FamilyId::B33, p); }
    if (name == "B33_diag_1_1_m1") { p.A2 = diag3(1, 1, -1); return family_form(FamilyId::B33, p); }
    if (name == "B33_diag_1_m1_0") { p.A2 = diag3(1, -1, 0); return family_form(FamilyId::B33, p); }
    if (name == "B33_id") { p.A2 = QMatrix::identity(3); return family_form(FamilyId::B33, p); }
    if (name == "B23_I_g1") { p.A1 = QMatrix::identity(2); p.gamma = 1; return family_form(FamilyId::B23, p); }
    if (name == "B23_I_g0") { p.A1 = QMatrix::identity(2); return family_form(FamilyId::B23, p); }
    if (name == "B25_g1_A2zero") { p.gamma = 1; return family_form(FamilyId::B25, p); }
    if (name == "B25_A2_diag10") { p.A2 = diag2(1, 0); return family_form(FamilyId::B25, p); }
    if (name == "B25_zero") { return family_form(FamilyId::B25, p); }
    if (name == "B32_g1") { p.gamma = 1; return family_form(FamilyId::B32, p); }
    if (name == "B32_A1_only") { p.A1 = QMatrix::identity(3); return family_form(FamilyId::B32, p); }
    if (name == "B33_g1_A2id") { p.gamma = 1; p.A2 = QMatrix::identity(3); return family_form(FamilyId::B33, p); }
    if (name == "B33_E11") { p.A2 = diag3(1, 0, 0); return family_form(FamilyId::B33, p); }
    if (name == "B33_E33_E11") { p.A1 = diag3(0, 0, 1); p.A2 = diag3(1, 0, 0); return family_form(FamilyId::B33, p); }
    throw std::runtime_error("unknown fixture case " + name);
}

const FreeNilpotent& alg_for_case(const std::string& name) {
    if (name.rfind("B23", 0) == 0) return alg_for(2, 3);
    if (name.rfind("B25", 0) == 0) return alg_for(2, 5);
    if (name.rfind("B32", 0) == 0) return alg_for(3, 2);
    return alg_for(3, 3);
}

bool supported_on_grade_sum(const FreeNilpotent& alg, const QMatrix& m, int s) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0 && alg.grade(i) + alg.grade(j) != s) return false;
    return true;
}

} // namespace

TEST_CASE("symmetric coordinate maps") {
    CHECK(sym_dim(3) == 6);
    CHECK(sym_dim(14) == 105);
    CHECK(sym_index(0, 0, 3) == 0);
    CHECK(sym_index(0, 2, 3) == 2);
    CHECK(sym_index(1, 1, 3) == 3);
    CHECK(sym_index(2, 2, 3) == 5);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-5, 5);
    QMatrix m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            m.at(i, j) = Rat(d(rng), 3);
            m.at(j, i) = m.at(i, j);
        }
    VecQ v = sym_vectorize(m);
    REQUIRE(int(v.size()) == sym_dim(4));
    CHECK(sym_unvectorize(v, 4) == m);
}

TEST_CASE("invariant form spaces match the printed bases exactly") {
    json j = fixture("invariant_spaces.json");
    for (const auto& [key, rec] : j.items()) {
        auto [d, t] = parse_dt(key);
        const auto& alg = alg_for(d, t);
        auto space = invariant_form_space(alg);
        REQUIRE(int(space.size()) == rec.at("dim").get<int>());
        const auto& rows = rec.at("rref_basis");
        REQUIRE(rows.size() == space.size());
        for (size_t i = 0; i < space.size(); ++i) {
            CHECK(space[i].is_symmetric());
            CHECK(is_invariant(alg, space[i]));
            CHECK(sym_vectorize(space[i]) == vec_from_json(rows[i]));
        }
    }
}

TEST_CASE("full-unknowns solver agrees with the triangular one") {
    for (auto [d, t] : {std::pair{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {4, 2}}) {
        const auto& alg = alg_for(d, t);
        auto fast = invariant_form_space(alg);
        auto full = invariant_form_space_full(alg);
        std::vector<VecQ> va, vb;
        for (const auto& m : fast) va.push_back(sym_vectorize(m));
        for (const auto& m : full) vb.push_back(sym_vectorize(m));
        CHECK(span_equal(va, vb));
    }
}

TEST_CASE("even truncation levels leave the top grade unpaired") {
    for (auto [d, t] : {std::pair{2, 2}, {2, 4}}) {
        const auto& alg = alg_for(d, t);
        auto space = invariant_form_space(alg);
        REQUIRE(!space.empty());
        QMatrix total(alg.dim(), alg.dim());
        for (const auto& m : space) {
            for (int i = alg.grade_begin(t); i < alg.dim(); ++i)
                for (int j = 0; j < alg.dim(); ++j)
                    CHECK(m.at(i, j) == 0);
            total = total + m;
        }
        // hence no invariant form at all can define a quadratic quotient
        auto res = sym0_membership(alg, total);
        CHECK(!res.member);
        CHECK(!res.top_not_contained);
    }
    // odd-level control: the standard pairing on n_{2,3} is a member
    auto res = sym0_membership(alg_for(2, 3), phi23());
    CHECK(res.member);
    CHECK(res.kernel_in_derived);
    CHECK(res.top_not_contained);
}

TEST_CASE("graded components of a form") {
    {
        const auto& alg = alg_for(2, 3);
        FamilyParams p;
        p.A1 = QMatrix{{1, 2}, {2, -1}};
        p.gamma = 3;
        QMatrix b = family_form(FamilyId::B23, p);
        auto comps = bk_components(alg, b);
        REQUIRE(comps.size() == 3);
        QMatrix total(alg.dim(), alg.dim());
        for (const auto& c : comps) {
            CHECK(supported_on_grade_sum(alg, c.part, alg.t() + 2 - c.k));
            CHECK(is_invariant(alg, c.part));
            total = total + c.part;
        }
        CHECK(total == b);
        // the gamma slice pairs grades summing to t + 1, the A1 slice to 2
        CHECK(comps[0].k == 1);
        CHECK(comps[0].part == family_form(FamilyId::B23, {QMatrix(2, 2), 3, {}}));
        CHECK(comps[2].part == family_form(FamilyId::B23, {p.A1, 0, {}}));
        CHECK(comps[1].part.is_zero());
    }
    {
        const auto& alg = alg_for(3, 3);
        FamilyParams p;
        p.A1 = diag3(1, 0, 2);
        p.gamma = -2;
        p.A2 = QMatrix{{1, 1, 0}, {1, 0, 3}, {0, 3, 2}};
        QMatrix b = family_form(FamilyId::B33, p);
        auto comps = bk_components(alg, b);
        REQUIRE(comps.size() == 3);
        QMatrix total(alg.dim(), alg.dim());
        for (const auto& c : comps) {
            CHECK(supported_on_grade_sum(alg, c.part, alg.t() + 2 - c.k));
            CHECK(is_invariant(alg, c.part));
            total = total + c.part;
        }
        CHECK(total == b);
    }
}

TEST_CASE("printed kernels match exactly") {
    json j = fixture("kernels.json");
    for (const auto& [name, rec] : j.items()) {
        const auto& alg = alg_for_case(name);
        QMatrix b = form_for_case(name);
        REQUIRE(is_invariant(alg, b));
        auto ker = kernel(alg, b);
        REQUIRE(int(ker.size()) == rec.at("dim").get<int>());
        CHECK(rank(b) == rec.at("rank").get<int>());
        CHECK(rank(b) + int(ker.size()) == alg.dim());
        const auto& rows = rec.at("rref_basis");
        REQUIRE(rows.size() == ker.size());
        for (size_t i = 0; i < ker.size(); ++i) CHECK(ker[i] == vec_from_json(rows[i]));
    }
}

TEST_CASE("ambiguous kernel generator comes out with the plus sign") {
    const auto& alg = alg_for(3, 3);
    FamilyParams p;
    p.A2 = QMatrix::identity(3);
    auto ker = kernel(alg, family_form(FamilyId::B33, p));
    int ia = alg.index_of("[[x3,x2],x3]");
    int ib = alg.index_of("[[x2,x1],x1]");
    REQUIRE(ia >= 0);
    REQUIRE(ib >= 0);
    VecQ plus(alg.dim()), minus(alg.dim());
    plus[ia] = 1; plus[ib] = 1;
    minus[ia] = 1; minus[ib] = -1;
    CHECK(in_span(ker, plus));
    CHECK(!in_span(ker, minus));
    json j = fixture("kernels.json");
    std::string resolved = alg.word_name(ia) + " + " + alg.word_name(ib);
    CHECK(j.at("B33_id").at("resolved_fifth_generator").get<std::string>() == resolved);
}

TEST_CASE("membership in the quadratizable cone") {
    json j = fixture("membership.json");
    REQUIRE(j.size() == 10);
    for (const auto& [name, rec] : j.items()) {
        const auto& alg = alg_for_case(name);
        QMatrix b = form_for_case(name);
        REQUIRE(is_invariant(alg, b));
        auto res = sym0_membership(alg, b);
        CHECK(res.member == rec.at("member").get<bool>());
        CHECK(res.member == (res.kernel_in_derived && res.top_not_contained));
        if (!res.member) CHECK(!res.reason.empty());
        CHECK(int(kernel(alg, b).size()) == rec.at("kernel_dim").get<int>());
    }
}

TEST_CASE("kernel insists on an ideal") {
    const auto& alg = alg_for(2, 2);
    QMatrix b(3, 3);
    b.at(0, 2) = 1;
    b.at(2, 0) = 1; // pairs x1 with [x2,x1]; its kernel is not an ideal
    CHECK(!is_invariant(alg, b));
    CHECK_THROWS_AS(kernel(alg, b), std::logic_error);
}
