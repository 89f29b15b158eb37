#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "legorbit/orbits.hpp"

namespace legorbit {

// A word over the alphabet {u, l}.  'u' steps the profile up, 'l' down.
class Word {
public:
    Word() = default;
    explicit Word(std::string letters) : s_(std::move(letters)) {
        if (s_.empty()) throw std::domain_error("word: must be non-empty");
        for (char c : s_)
            if (c != 'u' && c != 'l')
                throw std::domain_error("word: letters must be 'u' or 'l'");
    }

    const std::string& str() const { return s_; }
    std::size_t size() const { return s_.size(); }
    char operator[](std::size_t j) const { return s_[j]; }

    Word complement() const {
        std::string t = s_;
        for (char& c : t) c = (c == 'u') ? 'l' : 'u';
        return Word(std::move(t));
    }

    Word rotated_left(std::size_t n) const {
        n %= s_.size();
        return Word(s_.substr(n) + s_.substr(0, n));
    }

    // Concatenation of copies reaching the given length (which must be a
    // multiple of size()).
    Word repeated_to(std::size_t length) const {
        if (length == 0 || length % s_.size() != 0)
            throw std::domain_error("word: repetition length not a multiple");
        std::string t;
        t.reserve(length);
        while (t.size() < length) t += s_;
        return Word(std::move(t));
    }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::string s_;
};

// Run-length encoding u^{e1} l^{e2} ... l^{e2k} of a word that starts with
// u and ends with l.
struct ExponentialForm {
    std::vector<int> exponents;  // e_1, ..., e_{2k}
    int k() const { return static_cast<int>(exponents.size()) / 2; }

    // Exponents e_1..e_{2k-1}, the shape fed to the bidiagonal machinery.
    std::vector<int> drop_last() const {
        return {exponents.begin(), exponents.end() - 1};
    }
    // First half e_1..e_k.
    std::vector<int> half() const {
        return {exponents.begin(), exponents.begin() + k()};
    }
};

// The +/-1 walk a_0=0, a_j = a_{j-1} +/- 1 along the word, and its maximum.
struct HeightProfile {
    std::vector<int> a;  // a_0..a_n
    int height = 0;

    bool stays_nonnegative() const {
        return std::all_of(a.begin(), a.end(), [](int v) { return v >= 0; });
    }
    bool returns_to_zero() const { return a.back() == 0; }
    i64 partial_sum() const {  // a_1 + ... + a_n
        i64 s = 0;
        for (std::size_t j = 1; j < a.size(); ++j) s += a[j];
        return s;
    }
};

inline HeightProfile height_profile(const Word& w) {
    HeightProfile hp;
    hp.a.reserve(w.size() + 1);
    hp.a.push_back(0);
    int cur = 0, maxv = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        cur += (w[j] == 'u') ? 1 : -1;
        hp.a.push_back(cur);
        maxv = std::max(maxv, cur);
    }
    hp.height = maxv;
    return hp;
}

// Word of the orbit read from the given base point: letter j classifies
// -p^{j-1} * i, with 'u' on the upper side and 'l' on the lower.
inline Word word_at(const Orbit& o, i64 i) {
    if (!o.contains(i)) throw std::domain_error("word_at: base point not in orbit");
    const i64 d = o.context().d;
    const i64 pm = o.context().p_mod_d();
    std::string s;
    s.reserve(static_cast<std::size_t>(o.size()));
    i64 x = i;
    for (i64 j = 0; j < o.size(); ++j) {
        switch (halfplane_class(d - x, d)) {
            case HalfPlane::Lower: s += 'l'; break;
            case HalfPlane::Upper: s += 'u'; break;
            case HalfPlane::Boundary:
                throw std::domain_error("word_at: orbit meets a fixed residue");
        }
        x = mul_mod(x, pm, d);
    }
    return Word(std::move(s));
}

// Base points whose profile never dips below zero, ascending.
inline std::vector<i64> good_base_points(const Orbit& o) {
    std::vector<i64> good;
    for (i64 i : o.elements())
        if (height_profile(word_at(o, i)).stays_nonnegative()) good.push_back(i);
    return good;
}

// The good base point with the smallest least positive residue.
inline i64 standard_base_point(const Orbit& o) {
    auto good = good_base_points(o);
    if (good.empty())
        throw std::domain_error("standard_base_point: orbit has no good base point");
    return good.front();
}

inline Word word_at_standard(const Orbit& o) {
    return word_at(o, standard_base_point(o));
}

inline ExponentialForm exponential_form(const Word& w) {
    if (w[0] != 'u' || w[w.size() - 1] != 'l')
        throw std::domain_error("exponential_form: word must start with u and end with l");
    ExponentialForm ef;
    std::size_t j = 0;
    while (j < w.size()) {
        char c = w[j];
        int run = 0;
        while (j < w.size() && w[j] == c) { ++run; ++j; }
        ef.exponents.push_back(run);
    }
    return ef;
}

// Second half is the letterwise complement of the first half.
inline bool is_complementary(const Word& w) {
    if (w.size() % 2 != 0)
        throw std::domain_error("is_complementary: word has odd length");
    const std::size_t h = w.size() / 2;
    for (std::size_t j = 0; j < h; ++j)
        if (w[j] == w[j + h]) return false;
    return true;
}

// Length-f diagram over {X, O}: position j compares letters j and j+1
// (cyclically at the seam).  Identical on a word and its complement.
inline std::string string_diagram(const Word& w) {
    if (!is_complementary(w))
        throw std::domain_error("string_diagram: word is not complementary");
    const std::size_t f = w.size() / 2;
    std::string s;
    s.reserve(f);
    for (std::size_t j = 0; j < f; ++j)
        s += (w[j] == w[(j + 1) % w.size()]) ? 'O' : 'X';
    return s;
}

// Smallest period of the word viewed cyclically.
inline std::size_t primitive_period(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (std::size_t j = 0; ok && j + p < n; ++j) ok = (w[j] == w[j + p]);
        if (ok) return p;
    }
    return n;
}

// Number of rotations fixing the word.
inline std::size_t rotation_automorphisms(const Word& w) {
    return w.size() / primitive_period(w);
}

// Lexicographic comparison in alphabet order u < l.
inline bool ul_less(const Word& a, const Word& b) {
    auto rank = [](char c) { return c == 'u' ? 0 : 1; };
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t j = 0; j < n; ++j)
        if (a[j] != b[j]) return rank(a[j]) < rank(b[j]);
    return a.size() < b.size();
}

// Base-point-free key: least good rotation (profile nonnegative throughout)
// in u-before-l order, falling back to the least rotation overall.
inline Word canonical_rotation(const Word& w) {
    std::optional<Word> best_good, best_any;
    for (std::size_t n = 0; n < w.size(); ++n) {
        Word r = w.rotated_left(n);
        if (!best_any || ul_less(r, *best_any)) best_any = r;
        if (height_profile(r).stays_nonnegative() && (!best_good || ul_less(r, *best_good)))
            best_good = r;
    }
    return best_good ? *best_good : *best_any;
}

}  // namespace legorbit
