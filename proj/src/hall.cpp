#include "quadlie/hall.hpp"

#include <algorithm>
#include <stdexcept>

namespace quadlie {

WordPtr generator_word(int g) {
    if (g < 1) throw std::invalid_argument("generator index must be >= 1");
    auto w = std::make_shared<HallWord>();
    w->gen = g;
    w->length = 1;
    return w;
}

WordPtr bracket_word(const WordPtr& a, const WordPtr& b) {
    auto w = std::make_shared<HallWord>();
    w->left = a;
    w->right = b;
    w->length = a->length + b->length;
    return w;
}

std::vector<int> foliage(const HallWord& w) {
    std::vector<int> out;
    out.reserve(w.length);
    // iterative in-order leaf walk
    std::vector<const HallWord*> stack{&w};
    while (!stack.empty()) {
        const HallWord* cur = stack.back();
        stack.pop_back();
        if (cur->is_generator()) {
            out.push_back(cur->gen);
        } else {
            stack.push_back(cur->right.get());
            stack.push_back(cur->left.get());
        }
    }
    return out;
}

int compare_words(const HallWord& a, const HallWord& b) {
    if (a.length != b.length) return a.length < b.length ? -1 : 1;
    std::vector<int> fa = foliage(a), fb = foliage(b);
    if (fa != fb) return fa < fb ? -1 : 1;
    if (a.is_generator()) return 0;
    if (int c = compare_words(*a.left, *b.left)) return c;
    return compare_words(*a.right, *b.right);
}

bool is_hall_pair(const HallWord& a, const HallWord& b) {
    if (compare_words(a, b) <= 0) return false;
    if (!a.is_generator() && compare_words(*a.right, b) > 0) return false;
    return true;
}

std::string word_str(const HallWord& w) {
    if (w.is_generator()) return "x" + std::to_string(w.gen);
    return "[" + word_str(*w.left) + "," + word_str(*w.right) + "]";
}

std::vector<WordPtr> hall_basis(int d, int t) {
    if (d < 1 || t < 1) throw std::invalid_argument("hall_basis: need d >= 1, t >= 1");
    std::vector<std::vector<WordPtr>> by_len(t + 1);
    for (int g = 1; g <= d; ++g) by_len[1].push_back(generator_word(g));

    for (int n = 2; n <= t; ++n) {
        auto& cur = by_len[n];
        for (int la = 1; la < n; ++la) {
            int lb = n - la;
            for (const auto& a : by_len[la])
                for (const auto& b : by_len[lb])
                    if (is_hall_pair(*a, *b)) cur.push_back(bracket_word(a, b));
        }
        std::sort(cur.begin(), cur.end(),
                  [](const WordPtr& x, const WordPtr& y) { return word_lt(*x, *y); });
    }

    std::vector<WordPtr> basis;
    for (int n = 1; n <= t; ++n)
        basis.insert(basis.end(), by_len[n].begin(), by_len[n].end());
    return basis;
}

namespace {

int mobius(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace

long long witt_dimension(int d, int l) {
    if (d < 1 || l < 1) throw std::invalid_argument("witt_dimension: need d >= 1, l >= 1");
    long long sum = 0;
    for (int a = 1; a <= l; ++a)
        if (l % a == 0) sum += mobius(a) * ipow(d, l / a);
    return sum / l;
}

} // namespace quadlie
