#pragma once

#include "quadlie/exactlin.hpp"
#include "quadlie/free_nilpotent.hpp"

#include <random>

namespace quadlie {

// Endomorphism of a free nilpotent algebra, recorded by the generator
// images that induce it.  matrix columns are the images of the Hall
// basis words under the unique extension.
struct Endo {
    const FreeNilpotent* alg = nullptr;
    std::vector<VecQ> generator_images;
    QMatrix matrix;
};

Endo extend(const FreeNilpotent& alg, const std::vector<VecQ>& generator_images);

Endo compose(const Endo& f, const Endo& g); // f after g
Endo identity_endo(const FreeNilpotent& alg);

// An extension is invertible exactly when its generator-slice block
// (the projection of the generator images back to the generators) is.
bool is_automorphism(const Endo& e);
QMatrix generator_block(const Endo& e);

// Every automorphism factors as a graded part (induced by an invertible
// map of the generator slice) followed by a unipotent part that fixes
// generators modulo the derived ideal.
struct AutFactorization {
    Endo h; // graded
    Endo n; // unipotent
};
AutFactorization hn_factorize(const Endo& e);

bool is_graded(const Endo& e);
bool is_unipotent_part(const Endo& e);

// Pullback action on forms: (B_theta)(x,y) = B(theta x, theta y).
QMatrix act_on_form(const QMatrix& b, const Endo& e);

// Isomorphism invariants of a form under the automorphism action.
struct OrbitRecord {
    int rank = 0;
    int kernel_dim = 0;
    // one triple (g_i, g_j, rank) per grade pair with g_i+g_j = t+1
    std::vector<std::array<int, 3>> pair_block_ranks;
    // dim of kernel intersected with each graded ideal n^k, k = 1..t
    std::vector<int> kernel_grade_profile;
    int s2_block_rank = 0;

    bool operator==(const OrbitRecord&) const = default;
};
OrbitRecord orbit_invariants(const FreeNilpotent& alg, const QMatrix& b);

// Samplers for property tests.  Graded parts get a random integer
// generator matrix with determinant in +-1..+-5; unipotent parts get
// sparse integer entries in [-3,3] below the generator slice.
Endo random_graded_automorphism(const FreeNilpotent& alg, std::mt19937_64& rng);
Endo random_unipotent_automorphism(const FreeNilpotent& alg, std::mt19937_64& rng);
Endo random_automorphism(const FreeNilpotent& alg, std::mt19937_64& rng);

} // namespace quadlie
