#pragma once

#include "quadlie/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace quadlie {

// A Hall word is a binary bracketing of generators, kept as an
// immutable shared tree.  gen is nonzero exactly on leaves.
struct HallWord {
    int gen = 0;
    std::shared_ptr<const HallWord> left, right;
    int length = 1;
    bool is_generator() const { return gen != 0; }
};

using WordPtr = std::shared_ptr<const HallWord>;

WordPtr generator_word(int g);
WordPtr bracket_word(const WordPtr& a, const WordPtr& b);

// Total order on Hall words: shorter first, then lexicographic on the
// leaf sequence (foliage), ties broken by comparing left then right
// subwords recursively.  This is the order the basis lists use.
int compare_words(const HallWord& a, const HallWord& b);

inline bool word_lt(const HallWord& a, const HallWord& b) { return compare_words(a, b) < 0; }

// Standard Hall set condition: [a,b] is a basis word iff a and b are
// basis words with a > b, and when a = [c,e] additionally b >= e.
bool is_hall_pair(const HallWord& a, const HallWord& b);

std::vector<int> foliage(const HallWord& w);

// "x2", "[x2,x1]", "[[x2,x1],x1]", ...
std::string word_str(const HallWord& w);

// Hall basis of the free t-nilpotent Lie algebra on d generators,
// sorted ascending; grades are the word lengths.
std::vector<WordPtr> hall_basis(int d, int t);

// Number of Hall words of length l on d generators:
// (1/l) * sum_{a | l} mu(a) d^(l/a).
long long witt_dimension(int d, int l);

} // namespace quadlie
