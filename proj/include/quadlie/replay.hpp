#pragma once

#include "quadlie/catalog.hpp"
#include "quadlie/json_io.hpp"

#include <cstdint>

namespace quadlie {

// Mechanical re-verification of the classification identities, grouped
// under stable string tags.  Every identity that the source argues with
// symbolic entries is instead checked at kReplaySamples independent
// random rational points drawn from the given seed.
struct ReplayItem {
    std::string name;
    bool pass = false;
    std::string witness;
};

struct ReplayReport {
    std::string tag;
    std::vector<ReplayItem> items;
    bool all_pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
};

inline constexpr int kReplaySamples = 10;

// Known tags in canonical order; "all" is accepted by replay_theorem as
// shorthand for the concatenation but is not listed here.
const std::vector<std::string>& replay_tags();

ReplayReport replay_theorem(const std::string& tag, std::uint64_t seed);
std::vector<ReplayReport> replay_all(std::uint64_t seed);

ojson replay_to_json(const ReplayReport& r);

// CBC = (Adj P)^t CAC (Adj P) with C the fixed flip and Adj the cofactor
// matrix det(P) (P^{-1})^t.  A, B symmetric 3x3; throws on singular P.
bool adjugate_congruence_check(const QMatrix& a, const QMatrix& b, const QMatrix& p);

// B = (det P)^2 P^t A P.  A, B symmetric 2x2; throws on singular P.
bool det_twisted_congruence_check(const QMatrix& a, const QMatrix& b, const QMatrix& p);

} // namespace quadlie
