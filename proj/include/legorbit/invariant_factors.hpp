#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "legorbit/errors.hpp"
#include "legorbit/numeric.hpp"

namespace legorbit {

using bigint = boost::multiprecision::cpp_int;

// Exponent list (e_1, ..., e_{2k-1}) of the k x k upper bidiagonal matrix
// with diagonal p^{e_1}, p^{e_3}, ... and superdiagonal -p^{e_2}, -p^{e_4}, ...
class BidiagonalSpec {
public:
    explicit BidiagonalSpec(std::vector<int> exponents) : e_(std::move(exponents)) {
        if (e_.empty() || e_.size() % 2 == 0)
            throw std::domain_error("bidiagonal spec: exponent list must have odd length");
        for (int v : e_)
            if (v < 1) throw std::domain_error("bidiagonal spec: exponents must be >= 1");
    }

    const std::vector<int>& exponents() const { return e_; }
    int k() const { return static_cast<int>(e_.size() + 1) / 2; }

    friend bool operator==(const BidiagonalSpec&, const BidiagonalSpec&) = default;
    friend auto operator<=>(const BidiagonalSpec&, const BidiagonalSpec&) = default;

private:
    std::vector<int> e_;
};

// Exponents d_1 <= ... <= d_k of the invariant factors.
struct InvariantFactors {
    std::vector<int> d;

    i64 sum() const {
        i64 s = 0;
        for (int v : d) s += v;
        return s;
    }
    friend bool operator==(const InvariantFactors&, const InvariantFactors&) = default;
};

// e_i - e_{i+1} + e_{i+2} - ... +/- e_j  (1-based, i <= j).
inline int alternating_sum(const BidiagonalSpec& spec, int i, int j) {
    const auto& e = spec.exponents();
    if (i < 1 || j < i || j > static_cast<int>(e.size()))
        throw std::domain_error("alternating_sum: index out of range");
    int s = 0, sign = 1;
    for (int t = i; t <= j; ++t, sign = -sign) s += sign * e[t - 1];
    return s;
}

namespace detail {

inline int alt_sum(const std::vector<int>& e, int i, int j) {  // 0-based, inclusive
    int s = 0, sign = 1;
    for (int t = i; t <= j; ++t, sign = -sign) s += sign * e[t];
    return s;
}

}  // namespace detail

// Repeatedly split off the smallest exponent.  At the smallest entry e_i the
// matrix decomposes as (p^{e_i}) plus a one-step-shorter bidiagonal block
// whose middle entry becomes e_{i-1} - e_i + e_{i+1} when i is interior.
inline InvariantFactors invariants_by_min_pivot(const BidiagonalSpec& spec) {
    std::vector<int> factors;
    std::vector<std::vector<int>> work{spec.exponents()};
    while (!work.empty()) {
        std::vector<int> e = std::move(work.back());
        work.pop_back();
        while (e.size() > 1) {
            const int n = static_cast<int>(e.size());
            int i = static_cast<int>(std::min_element(e.begin(), e.end()) - e.begin());
            factors.push_back(e[i]);
            if (i == 0) {
                e.erase(e.begin(), e.begin() + 2);
            } else if (i == n - 1) {
                e.erase(e.end() - 2, e.end());
            } else {
                int merged = e[i - 1] - e[i] + e[i + 1];
                e[i - 1] = merged;
                e.erase(e.begin() + i, e.begin() + i + 2);
            }
        }
        factors.push_back(e[0]);
    }
    std::sort(factors.begin(), factors.end());
    return InvariantFactors{std::move(factors)};
}

// Repeatedly split off the largest alternating sum e_{ij} over odd i <= j.
// The matrix decomposes into (p^{e_ij}) and up to three smaller bidiagonal
// blocks; the middle block arrives transposed, which leaves invariant
// factors unchanged, so we recurse on its exponent list directly.
inline InvariantFactors invariants_by_max_pivot(const BidiagonalSpec& spec) {
    std::vector<int> factors;
    std::vector<std::vector<int>> work{spec.exponents()};
    while (!work.empty()) {
        std::vector<int> e = std::move(work.back());
        work.pop_back();
        const int n = static_cast<int>(e.size());
        if (n == 1) {
            factors.push_back(e[0]);
            continue;
        }
        int best = 0, bi = -1, bj = -1;
        for (int i = 0; i < n; i += 2) {
            int s = 0, sign = 1;
            for (int j = i; j < n; ++j, sign = -sign) {
                s += sign * e[j];
                if (j % 2 == 0 && (bi < 0 || s > best)) {
                    best = s;
                    bi = i;
                    bj = j;
                }
            }
        }
        factors.push_back(best);
        if (bi > 0) work.push_back({e.begin(), e.begin() + (bi - 1)});
        if (bi < bj) work.push_back({e.begin() + bi + 1, e.begin() + bj});
        if (bj < n - 1) work.push_back({e.begin() + bj + 2, e.end()});
    }
    std::sort(factors.begin(), factors.end());
    return InvariantFactors{std::move(factors)};
}

namespace detail {

// Exact fraction-free (Bareiss) elimination with row swaps.  Every working
// entry is a minor of the input, but the cross products formed before the
// exact division need twice the bits, hence the Wide parameter.
template <typename T, typename Wide>
T bareiss_det(std::vector<std::vector<T>> m) {
    const std::size_t n = m.size();
    T prev(1);
    int sign = 1;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m[pivot][c] == 0) ++pivot;
        if (pivot == n) return T(0);
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            sign = -sign;
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            for (std::size_t j = c + 1; j < n; ++j) {
                Wide num = Wide(m[r][j]) * Wide(m[c][c]) - Wide(m[r][c]) * Wide(m[c][j]);
                m[r][j] = static_cast<T>(num / Wide(prev));
            }
            m[r][c] = T(0);
        }
        prev = m[c][c];
    }
    T det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

// Unique system of distinct representatives for a bidiagonal submatrix:
// row r can only cover column r or r+1, and a shifted row forces every
// later row of its run to shift too.  Returns false when the minor is
// structurally zero.
inline bool has_nonzero_minor(const std::vector<int>& rows, const std::vector<int>& cols,
                              int k) {
    std::size_t ci = 0;
    for (int r : rows) {
        if (ci >= cols.size()) return false;
        int c = cols[ci];
        if (c == r || (c == r + 1 && r + 1 < k)) {
            ++ci;
        } else {
            return false;
        }
    }
    return ci == cols.size();
}

template <typename T, typename Wide>
T minor_det(const std::vector<int>& e, const std::vector<int>& rows,
            const std::vector<int>& cols) {
    const std::size_t m = rows.size();
    std::vector<std::vector<T>> sub(m, std::vector<T>(m, T(0)));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            std::size_t r = static_cast<std::size_t>(rows[a]);
            std::size_t c = static_cast<std::size_t>(cols[b]);
            if (c == r) sub[a][b] = T(1) << e[2 * r];
            else if (c == r + 1 && 2 * r + 1 < e.size())
                sub[a][b] = -(T(1) << e[2 * r + 1]);
        }
    return bareiss_det<T, Wide>(std::move(sub));
}

// Allocation-free variant of the 64-bit path.
inline i64 minor_det_i64(const std::vector<int>& e, const std::vector<int>& rows,
                         const std::vector<int>& cols) {
    constexpr std::size_t cap = 10;
    const std::size_t m = rows.size();
    i64 sub[cap][cap] = {};
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            std::size_t r = static_cast<std::size_t>(rows[a]);
            std::size_t c = static_cast<std::size_t>(cols[b]);
            if (c == r) sub[a][b] = i64{1} << e[2 * r];
            else if (c == r + 1 && 2 * r + 1 < e.size())
                sub[a][b] = -(i64{1} << e[2 * r + 1]);
            else
                sub[a][b] = 0;
        }
    i64 prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c + 1 < m; ++c) {
        std::size_t pivot = c;
        while (pivot < m && sub[pivot][c] == 0) ++pivot;
        if (pivot == m) return 0;
        if (pivot != c) {
            for (std::size_t j = 0; j < m; ++j) std::swap(sub[pivot][j], sub[c][j]);
            sign = -sign;
        }
        for (std::size_t r = c + 1; r < m; ++r) {
            for (std::size_t j = c + 1; j < m; ++j) {
                __int128 num = static_cast<__int128>(sub[r][j]) * sub[c][c] -
                               static_cast<__int128>(sub[r][c]) * sub[c][j];
                sub[r][j] = static_cast<i64>(num / prev);
            }
            sub[r][c] = 0;
        }
        prev = sub[c][c];
    }
    return sign < 0 ? -sub[m - 1][m - 1] : sub[m - 1][m - 1];
}

inline int valuation2(const bigint& v) {
    return static_cast<int>(boost::multiprecision::lsb(boost::multiprecision::abs(v)));
}

inline int valuation2(i64 v) { return __builtin_ctzll(static_cast<unsigned long long>(v < 0 ? -v : v)); }

inline void subsets_of_size(int k, int m, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) idx[static_cast<std::size_t>(t)] = t;
    while (true) {
        fn(idx);
        int t = m - 1;
        while (t >= 0 && idx[static_cast<std::size_t>(t)] == k - m + t) --t;
        if (t < 0) break;
        ++idx[static_cast<std::size_t>(t)];
        for (int s = t + 1; s < m; ++s)
            idx[static_cast<std::size_t>(s)] = idx[static_cast<std::size_t>(s - 1)] + 1;
    }
}

}  // namespace detail

// Reference computation, independent of the two elimination algorithms:
// d_1 + ... + d_i is the least 2-adic valuation over all i x i minors of the
// matrix instantiated at the reference prime 2, computed as exact integers.
inline InvariantFactors minors_oracle(const BidiagonalSpec& spec) {
    const int k = spec.k();
    if (k > 10) throw capacity_error("minors_oracle: k > 10");
    const auto& e = spec.exponents();

    // Every Bareiss working entry is a minor, and every minor here is a
    // single signed power of 2, so when this bound fits in 62 bits the
    // 64-bit path (with 128-bit cross products) is exact.
    i64 bound = 0;
    for (int r = 0; r < k; ++r) {
        int m = e[2 * r];
        if (2 * r + 1 < static_cast<int>(e.size())) m = std::max(m, e[2 * r + 1]);
        bound += m;
    }
    const bool fits64 = bound <= 62;

    std::vector<int> cum;
    for (int m = 1; m <= k; ++m) {
        int best = -1;
        detail::subsets_of_size(k, m, [&](const std::vector<int>& rows) {
            detail::subsets_of_size(k, m, [&](const std::vector<int>& cols) {
                if (!detail::has_nonzero_minor(rows, cols, k)) return;
                int v;
                if (fits64) {
                    i64 det = detail::minor_det_i64(e, rows, cols);
                    if (det == 0) return;
                    v = detail::valuation2(det);
                } else {
                    bigint det = detail::minor_det<bigint, bigint>(e, rows, cols);
                    if (det == 0) return;
                    v = detail::valuation2(det);
                }
                if (best < 0 || v < best) best = v;
            });
        });
        if (best < 0) throw std::logic_error("minors_oracle: no nonzero minor found");
        cum.push_back(best);
    }
    std::vector<int> d(static_cast<std::size_t>(k));
    for (int m = 0; m < k; ++m) d[static_cast<std::size_t>(m)] = cum[static_cast<std::size_t>(m)] - (m ? cum[static_cast<std::size_t>(m - 1)] : 0);
    std::sort(d.begin(), d.end());
    return InvariantFactors{std::move(d)};
}

// Shortcut for a complementary word whose half exponents are (e_1..e_k),
// k odd: the full list is (e_1..e_k, e_1..e_{k-1}).  Checks the structural
// facts that come with this case: the top factor is the alternating sum
// e_1 - e_2 + ... + e_k, the rest pair up, and the second-largest pair is
// the largest even-position alternating sum.
inline InvariantFactors invariants_complementary(const std::vector<int>& half_exponents) {
    const int k = static_cast<int>(half_exponents.size());
    if (k % 2 == 0 || k == 0)
        throw std::domain_error("invariants_complementary: k must be odd");
    for (int v : half_exponents)
        if (v < 1) throw std::domain_error("invariants_complementary: exponents must be >= 1");

    std::vector<int> full = half_exponents;
    full.insert(full.end(), half_exponents.begin(), half_exponents.end() - 1);
    InvariantFactors inv = invariants_by_max_pivot(BidiagonalSpec(full));

    const int top = detail::alt_sum(half_exponents, 0, k - 1);
    if (inv.d.back() != top)
        throw std::logic_error("invariants_complementary: top factor != e_{1k}");
    for (int j = 0; j + 1 < k - 1; j += 2)
        if (inv.d[static_cast<std::size_t>(j)] != inv.d[static_cast<std::size_t>(j + 1)])
            throw std::logic_error("invariants_complementary: lower factors do not pair");
    if (k >= 3) {
        int best = 0;
        bool found = false;
        for (int i = 1; i <= k - 2; i += 2)
            for (int j = i; j <= k - 2; j += 2) {
                int s = detail::alt_sum(half_exponents, i, j);
                if (!found || s > best) { best = s; found = true; }
            }
        if (inv.d[static_cast<std::size_t>(k - 2)] != best)
            throw std::logic_error("invariants_complementary: second pair mismatch");
    }
    return inv;
}

// The four exponent windows of Remark-style rotation equivalence.  Input is
// the full list (e_1..e_{2k}) of a word at a good base point (all prefix
// alternating sums nonnegative); every returned spec has equal invariant
// factors.
inline std::vector<BidiagonalSpec> rotation_equivalents(const std::vector<int>& full) {
    const int n = static_cast<int>(full.size());
    if (n == 0 || n % 2 != 0)
        throw std::domain_error("rotation_equivalents: need exponents e_1..e_{2k}");
    for (int v : full)
        if (v < 1) throw std::domain_error("rotation_equivalents: exponents must be >= 1");
    int prefix = 0, sign = 1, best = -1, best_pos = -1;  // best over odd positions
    for (int t = 0; t < n; ++t, sign = -sign) {
        prefix += sign * full[static_cast<std::size_t>(t)];
        if (prefix < 0)
            throw std::domain_error("rotation_equivalents: prefix sums must stay >= 0");
        if (t % 2 == 0 && prefix > best) { best = prefix; best_pos = t; }
    }
    const int split = best_pos;  // 0-based odd position 2j+1 has index 2j
    auto window = [&](int from, int count) {
        std::vector<int> e;
        e.reserve(static_cast<std::size_t>(count));
        for (int t = 0; t < count; ++t) e.push_back(full[static_cast<std::size_t>((from + t) % n)]);
        return BidiagonalSpec(std::move(e));
    };
    std::vector<BidiagonalSpec> out;
    auto push_unique = [&](BidiagonalSpec s) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
    };
    push_unique(window(0, n - 1));          // e_1..e_{2k-1}
    push_unique(window(1, n - 1));          // e_2..e_{2k}
    push_unique(window(split + 1, n - 1));  // e_{2j+2}..e_{2k}, e_1..e_{2j}
    push_unique(window(split + 2, n - 1));  // e_{2j+3}..e_{2k}, e_1..e_{2j+1}
    return out;
}

}  // namespace legorbit
