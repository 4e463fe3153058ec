#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quadlie/exactlin.hpp"
#include "quadlie/json_io.hpp"
#include "quadlie/replay.hpp"

#include <random>

using namespace quadlie;

namespace {

QMatrix random_sym(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> d(-5, 5);
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            m.at(i, j) = Rat(d(rng), 2);
            m.at(j, i) = m.at(i, j);
        }
    return m;
}

} // namespace

TEST_CASE("tag inventory") {
    const std::vector<std::string> want{"T5.2", "C5.3",          "T5.5",  "T5.6",
                                        "T5.6-relation", "C5.7", "T6.1",  "T6.1-kernels",
                                        "T6.2", "T6.2-kernels"};
    CHECK(replay_tags() == want);
    CHECK(kReplaySamples == 10);
    CHECK_THROWS_AS(replay_theorem("T9.9", 1), std::invalid_argument);
    CHECK_THROWS_AS(replay_theorem("", 1), std::invalid_argument);
}

TEST_CASE("every identity replays clean") {
    for (std::uint64_t seed : {17ull, 20260822ull}) {
        auto reports = replay_all(seed);
        REQUIRE(reports.size() == replay_tags().size());
        for (size_t i = 0; i < reports.size(); ++i) {
            CHECK(reports[i].tag == replay_tags()[i]);
            REQUIRE(!reports[i].items.empty());
            for (const auto& item : reports[i].items) {
                CAPTURE(reports[i].tag);
                CAPTURE(item.name);
                CAPTURE(item.witness);
                CHECK(item.pass);
            }
            CHECK(reports[i].all_pass());
        }
    }
}

TEST_CASE("the merged tag concatenates the individual runs") {
    std::uint64_t seed = 4242;
    ReplayReport merged = replay_theorem("all", seed);
    CHECK(merged.tag == "all");
    std::vector<std::pair<std::string, bool>> separate;
    for (const auto& tag : replay_tags())
        for (const auto& item : replay_theorem(tag, seed).items)
            separate.emplace_back(item.name, item.pass);
    REQUIRE(merged.items.size() == separate.size());
    for (size_t i = 0; i < separate.size(); ++i) {
        CHECK(merged.items[i].name == separate[i].first);
        CHECK(merged.items[i].pass == separate[i].second);
    }
}

TEST_CASE("replays are deterministic in the seed") {
    for (const auto& tag : {std::string("T5.2"), std::string("C5.7"), std::string("all")}) {
        std::string a = replay_to_json(replay_theorem(tag, 99)).dump();
        std::string b = replay_to_json(replay_theorem(tag, 99)).dump();
        CHECK(a == b);
    }
}

TEST_CASE("witnesses carry the resolved kernel generator") {
    ReplayReport r = replay_theorem("T6.1-kernels", 7);
    json fx = load_json_file(std::string(TEST_DATA_DIR "/kernels.json"));
    std::string resolved = fx.at("B33_id").at("resolved_fifth_generator").get<std::string>();
    bool found = false;
    for (const auto& item : r.items)
        if (item.name == "kernel-B33-id") {
            found = true;
            CHECK(item.pass);
            CHECK(item.witness.find(resolved) != std::string::npos);
        }
    CHECK(found);
}

TEST_CASE("adjugate congruence check") {
    std::mt19937_64 rng(71);
    QMatrix a = random_sym(rng, 3);
    // P = identity compares the two sides directly
    CHECK(adjugate_congruence_check(a, a, QMatrix::identity(3)));
    QMatrix shifted = a;
    shifted.at(0, 0) += 1;
    CHECK(!adjugate_congruence_check(a, shifted, QMatrix::identity(3)));
    // construct the matching right-hand side for a generic P
    QMatrix p{{1, 2, 0}, {0, 1, -1}, {3, 0, 2}};
    REQUIRE(determinant(p) != 0);
    QMatrix cc{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}};
    QMatrix adj = cofactor_matrix(p);
    QMatrix b = cc * (adj.transpose() * (cc * a * cc) * adj) * cc;
    CHECK(adjugate_congruence_check(a, b, p));
    QMatrix off = b;
    off.at(1, 2) += Rat(1, 3);
    off.at(2, 1) += Rat(1, 3);
    CHECK(!adjugate_congruence_check(a, off, p));
    // the adjugate forgets the sign of P
    CHECK(adjugate_congruence_check(a, b, Rat(-1) * p));

    QMatrix sing(3, 3);
    CHECK_THROWS_AS(adjugate_congruence_check(a, b, sing), std::invalid_argument);
    CHECK_THROWS_AS(adjugate_congruence_check(QMatrix(2, 2), QMatrix(2, 2), QMatrix::identity(2)),
                    std::invalid_argument);
}

TEST_CASE("determinant-twisted congruence check") {
    QMatrix i2 = QMatrix::identity(2);
    // P = 2I: det^2 = 16 and P^t P = 4I, so B must be 64 I
    CHECK(det_twisted_congruence_check(i2, Rat(64) * i2, Rat(2) * i2));
    CHECK(!det_twisted_congruence_check(i2, i2, Rat(2) * i2));
    // a cube root of det P turns the twisted relation into a plain one
    std::mt19937_64 rng(73);
    QMatrix a = random_sym(rng, 2);
    QMatrix p{{2, 0}, {0, 4}}; // det 8, so r = p/2 carries det 2
    QMatrix r = Rat(1, 2) * p;
    QMatrix b = determinant(r) * determinant(r) * (r.transpose() * a * r);
    CHECK(det_twisted_congruence_check(a, b, r));
    CHECK_THROWS_AS(det_twisted_congruence_check(a, b, QMatrix(2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(det_twisted_congruence_check(QMatrix(3, 3), QMatrix(3, 3), QMatrix::identity(3)),
                    std::invalid_argument);
}
