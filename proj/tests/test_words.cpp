#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "legorbit/words.hpp"

using namespace legorbit;

namespace {

// Brute-force word builder kept deliberately naive: classify each negated
// multiple via string comparison of 2*(d - x) against d.
std::string naive_word(i64 d, i64 p, i64 base, i64 length) {
    std::string s;
    i64 x = base;
    for (i64 j = 0; j < length; ++j) {
        i64 neg = (d - x) % d;
        s += (2 * neg > d) ? 'u' : 'l';
        x = (x * (p % d)) % d;
    }
    return s;
}

std::vector<i64> naive_good_base_points(const Orbit& o) {
    std::vector<i64> good;
    for (i64 base : o.elements()) {
        std::string w = naive_word(o.context().d, o.context().p, base, o.size());
        int acc = 0;
        bool ok = true;
        for (char c : w) {
            acc += (c == 'u') ? 1 : -1;
            if (acc < 0) { ok = false; break; }
        }
        if (ok) good.push_back(base);
    }
    return good;
}

}  // namespace

TEST(WordTest, ValidationAndHelpers) {
    EXPECT_THROW(Word(""), std::domain_error);
    EXPECT_THROW(Word("uxl"), std::domain_error);
    Word w("uullul");
    EXPECT_EQ(w.complement().str(), "lluulu");
    EXPECT_EQ(w.rotated_left(2).str(), "lluluu");
    EXPECT_EQ(w.repeated_to(12).str(), "uulluluullul");
    EXPECT_THROW(w.repeated_to(9), std::domain_error);
}

TEST(WordAtTest, GoldenVectors) {
    OrbitContext c28(28, 3);
    EXPECT_EQ(word_at(orbit_through(c28, 6), 6).str(), "ullluu");

    OrbitContext c364(364, 3);
    Orbit o7 = orbit_through(c364, 7);
    EXPECT_EQ(word_at(o7, 7).str(), "uuulll");
    Orbit o37 = orbit_through(c364, 37);
    EXPECT_EQ(word_at(o37, 37).str(), "uullul");
    EXPECT_EQ(word_at(o37, 85).str(), "uluull");

    EXPECT_THROW(word_at(o7, 5), std::domain_error);
}

TEST(WordAtTest, RotationCovariance) {
    std::mt19937_64 rng(7);
    std::vector<std::pair<i64, i64>> cases;
    for (i64 p : {3, 5})
        for (i64 d = 3; d <= 160; ++d)
            if (std::gcd(p, d) == 1) cases.emplace_back(d, p);
    for (int t = 0; t < 20; ++t) {
        i64 d = std::uniform_int_distribution<i64>(161, 2000)(rng);
        for (i64 p : {3, 5})
            if (std::gcd(p, d) == 1) cases.emplace_back(d, p);
    }
    for (auto [d0, p0] : cases) {
        const i64 d = d0, p = p0;
        OrbitContext ctx(d, p);
        for_each_orbit(ctx, OrbitFilter::O, [&](const Orbit& o) {
            for (i64 i : o.elements()) {
                i64 next = (i * (p % d)) % d;
                ASSERT_EQ(word_at(o, next), word_at(o, i).rotated_left(1))
                    << "d=" << d << " p=" << p << " i=" << i;
            }
        });
    }
}

TEST(WordAtTest, BalancedIffEqualLettersIffProfileCloses) {
    for (i64 p : {2, 3, 5}) {
        for (i64 d = 3; d <= 250; ++d) {
            if (std::gcd(p, d) != 1) continue;
            for_each_orbit(OrbitContext(d, p), OrbitFilter::O, [&](const Orbit& o) {
                Word w = word_at(o, o.min_element());
                i64 ups = std::count(w.str().begin(), w.str().end(), 'u');
                HeightProfile hp = height_profile(w);
                bool balanced = is_balanced_orbit(o);
                ASSERT_EQ(balanced, 2 * ups == o.size());
                ASSERT_EQ(balanced, hp.returns_to_zero());
            });
        }
    }
}

TEST(GoodBasePointsTest, GoldenVectors) {
    OrbitContext c364(364, 3);
    EXPECT_EQ(good_base_points(orbit_through(c364, 7)), (std::vector<i64>{7}));
    EXPECT_EQ(good_base_points(orbit_through(c364, 37)), (std::vector<i64>{37, 85}));

    Orbit o2 = orbit_through(OrbitContext(28, 3), 2);
    EXPECT_EQ(good_base_points(o2), naive_good_base_points(o2));
}

TEST(GoodBasePointsTest, MatchesBruteForceEverywhere) {
    for (i64 p : {3, 5}) {
        for (i64 d = 3; d <= 200; ++d) {
            if (std::gcd(p, d) != 1) continue;
            for_each_orbit(OrbitContext(d, p), OrbitFilter::O, [&](const Orbit& o) {
                ASSERT_EQ(good_base_points(o), naive_good_base_points(o));
            });
        }
    }
}

TEST(GoodBasePointsTest, BalancedOrbitsHaveOne) {
    for (i64 p : {2, 3, 5, 7}) {
        for (i64 d = 3; d <= 200; ++d) {
            if (std::gcd(p, d) != 1) continue;
            for_each_orbit(OrbitContext(d, p), OrbitFilter::O, [&](const Orbit& o) {
                if (!is_balanced_orbit(o)) return;
                auto good = good_base_points(o);
                ASSERT_FALSE(good.empty());
                for (i64 b : good) {
                    Word w = word_at(o, b);
                    ASSERT_EQ(w[0], 'u');
                    ASSERT_EQ(w[w.size() - 1], 'l');
                }
            });
        }
    }
}

TEST(StandardBasePointTest, GoldenVectors) {
    OrbitContext c364(364, 3);
    EXPECT_EQ(standard_base_point(orbit_through(c364, 37)), 37);
    EXPECT_EQ(standard_base_point(orbit_through(c364, 7)), 7);

    Orbit o1 = orbit_through(OrbitContext(10, 3), 1);
    EXPECT_EQ(standard_base_point(o1), naive_good_base_points(o1).front());
}

TEST(StandardBasePointTest, UnbalancedWithoutGoodPointThrows) {
    // d = 7, p = 2: the orbit {3, 5, 6} has words llu, lul, ull; none stays
    // nonnegative.
    Orbit o = orbit_through(OrbitContext(7, 2), 3);
    EXPECT_TRUE(good_base_points(o).empty());
    EXPECT_THROW(standard_base_point(o), std::domain_error);
}

TEST(ExponentialFormTest, GoldenVectors) {
    EXPECT_EQ(exponential_form(Word("uuulll")).exponents, (std::vector<int>{3, 3}));
    EXPECT_EQ(exponential_form(Word("uuulll")).k(), 1);
    EXPECT_EQ(exponential_form(Word("uullul")).exponents, (std::vector<int>{2, 2, 1, 1}));
    EXPECT_EQ(exponential_form(Word("uullul")).k(), 2);
    EXPECT_EQ(exponential_form(Word("ul")).exponents, (std::vector<int>{1, 1}));
    EXPECT_THROW(exponential_form(Word("luul")), std::domain_error);
    EXPECT_THROW(exponential_form(Word("ulu")), std::domain_error);
}

TEST(ExponentialFormTest, SumsToLength) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        int n = std::uniform_int_distribution<int>(2, 30)(rng);
        std::string s = "u";
        for (int j = 1; j + 1 < n; ++j) s += (rng() & 1) ? 'u' : 'l';
        s += 'l';
        auto ef = exponential_form(Word(s));
        EXPECT_EQ(std::accumulate(ef.exponents.begin(), ef.exponents.end(), 0),
                  static_cast<int>(s.size()));
        EXPECT_EQ(ef.exponents.size() % 2, 0u);
    }
}

TEST(HeightProfileTest, GoldenVectors) {
    auto hp = height_profile(Word("uuulll"));
    EXPECT_EQ(hp.a, (std::vector<int>{0, 1, 2, 3, 2, 1, 0}));
    EXPECT_EQ(hp.height, 3);

    hp = height_profile(Word("uullul"));
    EXPECT_EQ(hp.a, (std::vector<int>{0, 1, 2, 1, 0, 1, 0}));
    EXPECT_EQ(hp.height, 2);

    hp = height_profile(Word("ul"));
    EXPECT_EQ(hp.a, (std::vector<int>{0, 1, 0}));
    EXPECT_EQ(hp.height, 1);
}

// The profile sum a_1 + ... + a_n has a closed form in the run lengths:
// each run j contributes e_j * (e_1 - e_2 + ... +- e_{j-1})
// plus-or-minus binom(e_j + 1, 2) according to its direction.
TEST(HeightProfileTest, PartialSumClosedForm) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
        int n = std::uniform_int_distribution<int>(2, 40)(rng);
        std::string s = "u";
        for (int j = 1; j + 1 < n; ++j) s += (rng() & 1) ? 'u' : 'l';
        s += 'l';
        Word w(s);
        auto ef = exponential_form(w);
        i64 expected = 0, prefix = 0;
        for (std::size_t j = 0; j < ef.exponents.size(); ++j) {
            i64 e = ef.exponents[j];
            i64 tri = e * (e + 1) / 2;
            expected += (j % 2 == 0) ? e * prefix + tri : e * prefix - tri;
            prefix += (j % 2 == 0) ? e : -e;
        }
        ASSERT_EQ(height_profile(w).partial_sum(), expected) << s;
    }
}

TEST(HeightProfileTest, AcceptsArbitraryWords) {
    auto hp = height_profile(Word("llluu"));
    EXPECT_EQ(hp.a, (std::vector<int>{0, -1, -2, -3, -2, -1}));
    EXPECT_EQ(hp.height, 0);
    EXPECT_FALSE(hp.stays_nonnegative());
}

TEST(ComplementaryTest, GoldenVectors) {
    EXPECT_TRUE(is_complementary(Word("uuulll")));
    Word half("uullul");
    EXPECT_TRUE(is_complementary(Word(half.str() + half.complement().str())));
    // The two-letter alternation fails at the antipode.
    EXPECT_FALSE(is_complementary(Word("ulul")));
    EXPECT_FALSE(is_complementary(Word("uullll")));
    EXPECT_THROW(is_complementary(Word("ulu")), std::domain_error);
}

TEST(ComplementaryTest, PowerPlusOneFamilies) {
    for (i64 p : {2, 3, 5, 7}) {
        for (int f = 1; f <= 6; ++f) {
            i64 d = *checked_pow(p, f) + 1;
            if (d <= 2) continue;
            for_each_orbit(OrbitContext(d, p), OrbitFilter::O, [&](const Orbit& o) {
                ASSERT_TRUE(is_complementary(word_at(o, o.min_element())))
                    << "p=" << p << " f=" << f << " orbit " << o.min_element();
            });
        }
    }
}

TEST(ComplementaryTest, TwicePowerMinusOneFamilies) {
    for (i64 p : {3, 5}) {
        for (int f = 1; f <= 5; ++f) {
            i64 d = 2 * (*checked_pow(p, f) - 1);
            if (d <= 2 || std::gcd(d, p) != 1) continue;
            for_each_orbit(OrbitContext(d, p), OrbitFilter::O, [&](const Orbit& o) {
                if (o.gcd_class() % 2 == 1) {
                    ASSERT_TRUE(is_complementary(word_at(o, o.min_element())))
                        << "p=" << p << " f=" << f << " orbit " << o.min_element();
                }
            });
        }
    }
}

TEST(ComplementaryTest, HeightFromHalfExponents) {
    for (i64 p : {3, 5, 7}) {
        for (int f = 1; f <= 4; ++f) {
            i64 d = *checked_pow(p, f) + 1;
            for_each_orbit(OrbitContext(d, p), OrbitFilter::O, [&](const Orbit& o) {
                Word w = word_at_standard(o);
                auto ef = exponential_form(w);
                int alt = 0, sign = 1;
                for (int j = 0; j < ef.k(); ++j, sign = -sign)
                    alt += sign * ef.exponents[static_cast<std::size_t>(j)];
                ASSERT_EQ(alt, height_profile(w).height);
            });
        }
    }
}

TEST(StringDiagramTest, GoldenVectors) {
    EXPECT_EQ(string_diagram(Word("uuulll")), "OOX");
    EXPECT_EQ(string_diagram(Word("ul")), "X");
    EXPECT_EQ(string_diagram(Word("ululul")), "XXX");
    EXPECT_EQ(string_diagram(Word("uull")), "OX");
    EXPECT_THROW(string_diagram(Word("ulul")), std::domain_error);
}

TEST(StringDiagramTest, TwoToOne) {
    for (int f = 1; f <= 6; ++f) {
        std::map<std::string, std::set<std::string>> preimages;
        for (unsigned mask = 0; mask < (1u << f); ++mask) {
            std::string half;
            for (int j = 0; j < f; ++j) half += (mask & (1u << j)) ? 'u' : 'l';
            Word w(half + Word(half).complement().str());
            preimages[string_diagram(w)].insert(w.str());
        }
        for (const auto& [diag, words] : preimages) {
            ASSERT_EQ(words.size(), 2u) << diag;
            Word a(*words.begin());
            EXPECT_EQ(a.complement().str(), *std::next(words.begin()));
        }
    }
}

TEST(CanonicalRotationTest, DeduplicatesBasePoints) {
    Orbit o = orbit_through(OrbitContext(364, 3), 37);
    std::set<std::string> keys;
    for (i64 i : o.elements()) keys.insert(canonical_rotation(word_at(o, i)).str());
    ASSERT_EQ(keys.size(), 1u);
    // Lexicographic minimum of the two good words uullul and uluull.
    EXPECT_EQ(*keys.begin(), "uullul");
}

TEST(PeriodTest, PrimitivePeriodAndAutomorphisms) {
    EXPECT_EQ(primitive_period(Word("ululul")), 2u);
    EXPECT_EQ(rotation_automorphisms(Word("ululul")), 3u);
    EXPECT_EQ(primitive_period(Word("uullul")), 6u);
    EXPECT_EQ(rotation_automorphisms(Word("uullul")), 1u);
    EXPECT_EQ(primitive_period(Word("uuuu")), 1u);
}
