#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "legorbit/numeric.hpp"

namespace legorbit {

using Rational = boost::multiprecision::cpp_rational;

// Dense univariate polynomial with exact rational coefficients, ascending
// degree.  The zero polynomial has an empty coefficient list and degree -1.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static RationalPoly constant(Rational v) { return RationalPoly({std::move(v)}); }

    const std::vector<Rational>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Rational coefficient(std::size_t j) const {
        return j < c_.size() ? c_[j] : Rational(0);
    }

    Rational evaluate(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    RationalPoly& operator+=(const RationalPoly& other) {
        if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), Rational(0));
        for (std::size_t j = 0; j < other.c_.size(); ++j) c_[j] += other.c_[j];
        trim();
        return *this;
    }

    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return RationalPoly(std::move(out));
    }

    friend RationalPoly operator*(const Rational& s, const RationalPoly& p) {
        if (s == 0) return {};
        std::vector<Rational> out = p.c_;
        for (auto& v : out) v *= s;
        return RationalPoly(std::move(out));
    }

    RationalPoly pow(int n) const {
        RationalPoly acc = constant(Rational(1));
        for (int t = 0; t < n; ++t) acc = acc * *this;
        return acc;
    }

    // "num/den" per coefficient, ascending degree.
    std::vector<std::string> to_strings() const {
        std::vector<std::string> out;
        out.reserve(c_.size());
        for (const auto& v : c_)
            out.push_back(boost::multiprecision::numerator(v).str() + "/" +
                          boost::multiprecision::denominator(v).str());
        return out;
    }

    friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline bool is_power_of_two(const boost::multiprecision::cpp_int& v) {
    if (v <= 0) return false;
    return boost::multiprecision::lsb(v) == boost::multiprecision::msb(v);
}

}  // namespace legorbit
