#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "legorbit/errors.hpp"
#include "legorbit/numeric.hpp"

namespace legorbit {

// Which half of (0, d) a residue falls in.  Boundary covers the two fixed
// residues 0 and d/2 that sit on no side.
enum class HalfPlane { Lower, Upper, Boundary };

inline HalfPlane halfplane_class(i64 i, i64 d) {
    if (d < 1 || i < 0 || i >= d)
        throw std::domain_error("halfplane_class: residue out of range");
    if (i == 0 || 2 * i == d) return HalfPlane::Boundary;
    return 2 * i < d ? HalfPlane::Lower : HalfPlane::Upper;
}

// The pair (d, p) defining the multiplication-by-p action on Z/dZ.
struct OrbitContext {
    i64 d = 1;
    i64 p = 2;

    OrbitContext() = default;
    OrbitContext(i64 d_, i64 p_) : d(d_), p(p_) { validate(); }

    void validate() const {
        if (d < 1) throw std::domain_error("orbit context: d must be >= 1");
        if (d > (i64{1} << 31))
            throw capacity_error("orbit context: d exceeds 2^31");
        if (!is_prime(p)) throw std::domain_error("orbit context: p must be prime");
        if (gcd_i64(p, d) != 1)
            throw std::domain_error("orbit context: p must not divide d");
    }

    i64 p_mod_d() const { return mod_nonneg(p, d); }

    friend bool operator==(const OrbitContext&, const OrbitContext&) = default;
};

// One orbit of <p> acting on Z/dZ.  Elements are stored ascending; the
// multiplicative cycle order is recovered on demand via cycle_from.
class Orbit {
public:
    Orbit(OrbitContext ctx, std::vector<i64> elements)
        : ctx_(ctx), elements_(std::move(elements)) {
        if (elements_.empty()) throw std::domain_error("orbit: empty element set");
        std::sort(elements_.begin(), elements_.end());
        gcd_class_ = gcd_i64(elements_.front(), ctx_.d);
        if (gcd_class_ == 0) gcd_class_ = ctx_.d;  // the zero orbit
    }

    const OrbitContext& context() const { return ctx_; }
    const std::vector<i64>& elements() const { return elements_; }
    i64 size() const { return static_cast<i64>(elements_.size()); }
    i64 min_element() const { return elements_.front(); }
    i64 gcd_class() const { return gcd_class_; }

    bool contains(i64 i) const {
        return std::binary_search(elements_.begin(), elements_.end(), i);
    }

    // (base, p*base, p^2*base, ...) of length size().
    std::vector<i64> cycle_from(i64 base) const {
        if (!contains(base)) throw std::domain_error("orbit: base point not in orbit");
        std::vector<i64> cycle;
        cycle.reserve(elements_.size());
        i64 pm = ctx_.p_mod_d();
        i64 x = base;
        for (i64 n = 0; n < size(); ++n) {
            cycle.push_back(x);
            x = mul_mod(x, pm, ctx_.d);
        }
        return cycle;
    }

    friend bool operator==(const Orbit& a, const Orbit& b) {
        return a.ctx_ == b.ctx_ && a.elements_ == b.elements_;
    }

private:
    OrbitContext ctx_;
    std::vector<i64> elements_;
    i64 gcd_class_;
};

inline Orbit orbit_through(const OrbitContext& ctx, i64 i) {
    ctx.validate();
    if (i < 0 || i >= ctx.d) throw std::domain_error("orbit_through: residue out of range");
    std::vector<i64> elems;
    i64 pm = ctx.p_mod_d();
    i64 x = i;
    do {
        elems.push_back(x);
        x = mul_mod(x, pm, ctx.d);
    } while (x != i);
    return Orbit(ctx, std::move(elems));
}

enum class OrbitFilter { All, O, OPrime };

// Visit every orbit selected by the filter, least elements ascending.
// Single pass over Z/dZ with a visited bitmap.
inline void for_each_orbit(const OrbitContext& ctx, OrbitFilter filter,
                           const std::function<void(const Orbit&)>& visit) {
    ctx.validate();
    const i64 d = ctx.d;
    const i64 pm = ctx.p_mod_d();
    std::vector<bool> seen(static_cast<std::size_t>(d), false);
    for (i64 start = 0; start < d; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<i64> elems;
        i64 x = start;
        do {
            seen[static_cast<std::size_t>(x)] = true;
            elems.push_back(x);
            x = mul_mod(x, pm, d);
        } while (x != start);
        if (filter != OrbitFilter::All) {
            if (start == 0 || 2 * start == d) continue;  // the fixed points
            if (filter == OrbitFilter::OPrime && gcd_i64(start, d) != 1) continue;
        }
        visit(Orbit(ctx, std::move(elems)));
    }
}

inline std::vector<Orbit> decompose(const OrbitContext& ctx, OrbitFilter filter) {
    std::vector<Orbit> out;
    for_each_orbit(ctx, filter, [&](const Orbit& o) { out.push_back(o); });
    return out;
}

inline bool is_balanced_orbit(const Orbit& o) {
    i64 lower = 0, upper = 0;
    for (i64 i : o.elements()) {
        switch (halfplane_class(i, o.context().d)) {
            case HalfPlane::Lower: ++lower; break;
            case HalfPlane::Upper: ++upper; break;
            case HalfPlane::Boundary:
                throw std::domain_error("is_balanced_orbit: orbit meets a fixed residue");
        }
    }
    return lower == upper;
}

// True when every orbit of units is balanced.  Quick path: if some power of
// p is -1 mod d, negation lies in <p> and every orbit is symmetric about the
// halfway line, hence balanced.
inline bool is_balanced_modulus(const OrbitContext& ctx) {
    ctx.validate();
    if (ctx.d <= 2) throw std::domain_error("is_balanced_modulus: requires d > 2");
    if (least_negation_exponent(ctx.p, ctx.d).has_value()) return true;
    bool balanced = true;
    for_each_orbit(ctx, OrbitFilter::OPrime, [&](const Orbit& o) {
        if (balanced && !is_balanced_orbit(o)) balanced = false;
    });
    return balanced;
}

// Least f with p^f = -1 (mod d), capped by the subgroup size.
inline std::optional<int> infer_f(const OrbitContext& ctx) {
    auto f = least_negation_exponent(ctx.p, ctx.d);
    if (!f) return std::nullopt;
    return static_cast<int>(*f);
}

}  // namespace legorbit
