#pragma once

#include "quadlie/hall.hpp"
#include "quadlie/qmatrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace quadlie {

// Sparse Lie algebra element in the Hall basis: index -> coefficient,
// zeros never stored.
using LieElement = std::map<int, Rat>;

void elem_add(LieElement& dst, int k, const Rat& c);
void elem_add_scaled(LieElement& dst, const LieElement& src, const Rat& c);
VecQ elem_to_vec(const LieElement& e, int dim);
LieElement vec_to_elem(const VecQ& v);

struct StructureRow {
    int i, j, k; // 1-based, i > j
    Rat c;
};

// The free t-nilpotent Lie algebra on d generators in its Hall basis.
// Products of basis words are rewritten to basis coordinates with the
// Jacobi-driven rule [[c,e],b] = [[c,b],e] + [c,[e,b]] and memoized;
// all structure constants come out integral.
class FreeNilpotent {
public:
    FreeNilpotent(int d, int t);

    int d() const { return d_; }
    int t() const { return t_; }
    int dim() const { return int(basis_.size()); }

    const std::vector<WordPtr>& basis() const { return basis_; }
    const WordPtr& word(int i) const { return basis_[i]; }
    std::string word_name(int i) const { return word_str(*basis_[i]); }
    int index_of(const std::string& name) const; // -1 when absent

    int grade(int i) const { return basis_[i]->length; }
    // 0-based index range of the grade-k slice s_k
    int grade_begin(int k) const { return offsets_[k - 1]; }
    int grade_end(int k) const { return k == t_ ? dim() : offsets_[k]; }
    std::vector<int> graded_offsets() const { return offsets_; }

    // [h_i, h_j] for any pair of basis indices (0-based)
    LieElement product(int i, int j) const;

    LieElement bracket(const LieElement& a, const LieElement& b) const;
    VecQ bracket_vec(const VecQ& a, const VecQ& b) const;

    // all nonzero (i, j, k, c) with i > j, 1-based, sorted by (i, j, k)
    std::vector<StructureRow> structure_constants() const;

    // lower[k] spans g^(k+1); last entry is the last nonzero term
    std::vector<std::vector<VecQ>> lower_central_series() const;
    // upper[k] spans Z_(k+1) with Z_1 = 0; last entry spans everything
    std::vector<std::vector<VecQ>> upper_central_series() const;

    // coordinate basis of the graded ideal s_k + s_(k+1) + ... + s_t
    std::vector<VecQ> graded_ideal_basis(int from_grade) const;

    // unique morphism extension: column i is the image of h_i under the
    // endomorphism sending the generators to the given columns
    QMatrix extend_matrix(const std::vector<VecQ>& generator_images) const;

private:
    LieElement normalize(int i, int j) const;

    int d_, t_;
    std::vector<WordPtr> basis_;
    std::vector<int> offsets_;               // offsets_[k-1] = start of s_k
    std::vector<int> left_, right_;          // child indices, -1 on leaves
    std::map<std::string, int> index_;
    std::map<std::pair<int, int>, int> pair_index_; // Hall pair -> basis index
    mutable std::map<std::pair<int, int>, LieElement> memo_;
};

} // namespace quadlie
