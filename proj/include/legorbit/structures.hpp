#pragma once

#include <future>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "legorbit/counting.hpp"
#include "legorbit/invariant_factors.hpp"
#include "legorbit/words.hpp"

namespace legorbit {

// A finite abelian p-group as exponent -> multiplicity: the group
// prod (Z/p^m)^{mult(m)}.
struct AbelianPGroup {
    i64 p = 0;
    std::map<int, i64> content;  // exponent m >= 1 -> multiplicity >= 1

    void add(int exponent, i64 multiplicity) {
        if (exponent < 0 || multiplicity < 0)
            throw std::domain_error("abelian p-group: negative exponent or multiplicity");
        if (exponent == 0 || multiplicity == 0) return;
        content[exponent] += multiplicity;
    }

    bool trivial() const { return content.empty(); }

    i64 order_exponent() const {  // log_p of the order
        i64 s = 0;
        for (auto [m, mult] : content) s += static_cast<i64>(m) * mult;
        return s;
    }

    int group_exponent() const {  // largest m present
        return content.empty() ? 0 : content.rbegin()->first;
    }

    i64 p_torsion_rank() const {
        i64 s = 0;
        for (auto [m, mult] : content) s += mult;
        return s;
    }

    friend bool operator==(const AbelianPGroup&, const AbelianPGroup&) = default;
};

// A module label: either the full rank-|o| lattice attached to the orbit or
// its quotient by p^m, with a multiplicity.  Torsion exponent 0 (or
// multiplicity 0) is the zero module.
struct GammaQuotient {
    enum class Kind { Free, Torsion };

    Orbit orbit;
    Kind kind = Kind::Torsion;
    int torsion_exponent = 0;
    i64 multiplicity = 0;

    static GammaQuotient free_part(Orbit o) {
        return {std::move(o), Kind::Free, 0, 1};
    }
    static GammaQuotient torsion(Orbit o, int m, i64 mult = 1) {
        return {std::move(o), Kind::Torsion, m, mult};
    }
    static GammaQuotient zero(Orbit o) { return {std::move(o), Kind::Torsion, 0, 0}; }

    bool is_zero() const {
        return multiplicity == 0 || (kind == Kind::Torsion && torsion_exponent == 0);
    }

    i64 rank() const {  // free part only
        return kind == Kind::Free ? orbit.size() * multiplicity : 0;
    }

    AbelianPGroup underlying_group() const {
        if (kind == Kind::Free)
            throw std::domain_error("underlying_group: free module is not finite");
        AbelianPGroup g{orbit.context().p, {}};
        if (!is_zero()) g.add(torsion_exponent, orbit.size() * multiplicity);
        return g;
    }
};

namespace detail {

inline bool balanced_for_quotient(const OrbitContext& ctx, i64 gcd_class) {
    const i64 q = ctx.d / gcd_class;
    if (q <= 2) return false;
    return is_balanced_modulus(OrbitContext(q, ctx.p));
}

}  // namespace detail

// New-part Mordell-Weil label: the free lattice when the orbit's reduced
// modulus is balanced, zero otherwise.
inline GammaQuotient mw_new_part(const Orbit& o) {
    const auto& ctx = o.context();
    const i64 g = o.gcd_class();
    if (2 * g < ctx.d && detail::balanced_for_quotient(ctx, g))
        return GammaQuotient::free_part(o);
    return GammaQuotient::zero(o);
}

// Valuation of the discriminant of the height pairing on the new part:
// 2 (a_1 + ... + a_{|o|}) for the word at the standard base point.  In the
// complementary case this must agree with |o| * ht(o).
inline i64 disc_exponent(const Orbit& o) {
    if (mw_new_part(o).is_zero())
        throw std::domain_error("disc_exponent: new part is zero");
    const Word w = word_at_standard(o);
    const HeightProfile hp = height_profile(w);
    const i64 a = 2 * hp.partial_sum();
    if (w.size() % 2 == 0 && is_complementary(w) && a != o.size() * hp.height)
        throw std::logic_error("disc_exponent: complementary shortcut violated");
    return a;
}

namespace detail {

enum class IndexFamily { PowerPlusOne, TwicePowerMinusOne };

inline IndexFamily index_family(const OrbitContext& ctx, const Orbit& o, int f) {
    auto pf = checked_pow(ctx.p, f);
    if (pf && *pf + 1 == ctx.d) return IndexFamily::PowerPlusOne;
    if (pf && 2 * (*pf - 1) == ctx.d) {
        if (o.gcd_class() % 2 == 1) return IndexFamily::TwicePowerMinusOne;
        throw unsupported_configuration(
            "index_quotient: d = 2(p^f - 1) requires odd gcd class");
    }
    throw unsupported_configuration(
        "index_quotient: requires d = p^f + 1 or d = 2(p^f - 1)");
}

}  // namespace detail

// The quotient of the full Mordell-Weil group by the explicit-point subgroup,
// on the orbit's isotypic piece: the lattice mod p^e with e = (f - ht(o))/2.
inline GammaQuotient index_quotient(const Orbit& o, int f) {
    if (f < 1) throw std::domain_error("index_quotient: f must be >= 1");
    detail::index_family(o.context(), o, f);

    const Word w = word_at_standard(o);
    const HeightProfile hp = height_profile(w);
    if (!is_complementary(w))
        throw std::logic_error("index_quotient: word unexpectedly not complementary");
    if ((f - hp.height) % 2 != 0)
        throw std::logic_error("index_quotient: f - ht(o) is odd");
    const int e = (f - hp.height) / 2;

    if (o.gcd_class() == 1) {
        const ExponentialForm ef = exponential_form(w);
        int even_sum = 0;
        for (int j = 2; j <= ef.k() - 1; j += 2)
            even_sum += ef.exponents[static_cast<std::size_t>(j - 1)];
        if (e != even_sum)
            throw std::logic_error("index_quotient: e != sum of even-position exponents");
    }
    return e == 0 ? GammaQuotient::zero(o) : GammaQuotient::torsion(o, e);
}

// Invariant-factor exponents of the orbit's word at the standard base point.
inline InvariantFactors orbit_d_list(const Orbit& o) {
    const Word w = word_at_standard(o);
    return invariants_by_min_pivot(BidiagonalSpec(exponential_form(w).drop_last()));
}

// Tate-Shafarevich structure over the base field of the d-th roots: the list
// (d_1, ..., d_{k-1}) of quotient labels.  Requires a new orbit over a
// balanced modulus.
inline std::vector<GammaQuotient> sha_structure_Kd(const Orbit& o) {
    const auto& ctx = o.context();
    if (ctx.d <= 2) throw unsupported_configuration("sha_structure_Kd: requires d > 2");
    if (o.gcd_class() != 1)
        throw unsupported_configuration("sha_structure_Kd: requires gcd(o, d) = 1");
    if (!is_balanced_modulus(ctx))
        throw unsupported_configuration("sha_structure_Kd: modulus is not balanced");
    const InvariantFactors inv = orbit_d_list(o);
    std::vector<GammaQuotient> out;
    for (std::size_t j = 0; j + 1 < inv.d.size(); ++j)
        out.push_back(GammaQuotient::torsion(o, inv.d[j]));
    return out;
}

// Tate-Shafarevich structure over the field with p^m elements:
//   sum_{j<k} (Z/p^{d_j})^m  +  (Z/p^{d_k})^{m-|o|}.
inline AbelianPGroup sha_structure_Fq(const Orbit& o, i64 m) {
    const auto& ctx = o.context();
    if (m <= 0 || m % o.size() != 0)
        throw std::domain_error("sha_structure_Fq: |o| must divide m");
    if (!(2 * o.gcd_class() < ctx.d) || !detail::balanced_for_quotient(ctx, o.gcd_class()))
        throw unsupported_configuration("sha_structure_Fq: orbit has no new part");
    const InvariantFactors inv = orbit_d_list(o);
    AbelianPGroup g{ctx.p, {}};
    for (std::size_t j = 0; j + 1 < inv.d.size(); ++j) g.add(inv.d[j], m);
    g.add(inv.d.back(), m - o.size());
    return g;
}

// ---------------------------------------------------------------------------
// Whole-modulus report for d = p^f + 1.
// ---------------------------------------------------------------------------

struct OrbitRecord {
    i64 min_element = 0;
    i64 size = 0;
    i64 gcd_class = 0;
    Word word;  // at the standard base point
    int height = 0;
    std::vector<int> d_list;
    bool mw_nonzero = false;
    i64 disc_exp = 0;   // meaningful iff mw_nonzero
    int index_exp = 0;  // e = (f - ht)/2
    AbelianPGroup sha;  // over the field of d-th roots of unity
    i64 sha_mult = 0;   // mod-p composition multiplicity in sha
    i64 inv = 0;        // |o| (f - ht)
};

struct AggregateChecks {
    bool trivial_iff_f_le_2 = false;
    bool index_exponent_max = false;
    bool sha_exponent_max = false;
    bool class_number = false;
    bool multiplicity_doubling = false;
    bool parity = false;

    bool all() const {
        return trivial_iff_f_le_2 && index_exponent_max && sha_exponent_max &&
               class_number && multiplicity_doubling && parity;
    }
};

struct StructureReport {
    OrbitContext ctx;
    int f = 0;
    std::vector<OrbitRecord> orbits;
    i64 sha_order_exp = 0;
    i64 ev_order_exp = 0;
    int sha_group_exp = 0;
    int ev_group_exp = 0;
    AggregateChecks checks;
    std::vector<std::string> diagnostics;
};

namespace detail {

inline OrbitRecord make_orbit_record(const Orbit& o, int f, i64 full_order) {
    OrbitRecord rec;
    rec.min_element = o.min_element();
    rec.size = o.size();
    rec.gcd_class = o.gcd_class();
    rec.word = word_at_standard(o);
    const HeightProfile hp = height_profile(rec.word);
    rec.height = hp.height;

    const ExponentialForm ef = exponential_form(rec.word);
    rec.d_list = invariants_complementary(ef.half()).d;

    rec.mw_nonzero = !mw_new_part(o).is_zero();
    if (rec.mw_nonzero) rec.disc_exp = disc_exponent(o);

    const GammaQuotient q = index_quotient(o, f);
    rec.index_exp = q.is_zero() ? 0 : q.torsion_exponent;

    rec.sha = sha_structure_Fq(o, full_order);
    rec.inv = o.size() * (f - rec.height);

    i64 d_sum = 0;
    for (int v : rec.d_list) d_sum += v;
    rec.sha_mult = d_sum * (full_order / o.size()) - rec.d_list.back();
    return rec;
}

}  // namespace detail

// Evaluate every orbit of Z/(p^f+1) and check the aggregate identities:
// group exponents, the square relation between the two orders, and the
// doubling of mod-p composition multiplicities.
inline StructureReport full_report(const OrbitContext& ctx, std::optional<int> f_opt,
                                   int parallelism = 0) {
    ctx.validate();
    StructureReport rep;
    rep.ctx = ctx;

    std::optional<int> f = f_opt ? f_opt : infer_f(ctx);
    if (!f) throw unsupported_configuration("full_report: no f with p^f = -1 (mod d)");
    if (*f < 1) throw std::domain_error("full_report: f must be >= 1");
    auto pf = checked_pow(ctx.p, *f);
    if (!pf || *pf + 1 != ctx.d)
        throw unsupported_configuration("full_report: requires d = p^f + 1");
    rep.f = *f;

    const i64 full_order = 2 * static_cast<i64>(*f);  // degree of F_p(mu_d) over F_p
    std::vector<Orbit> orbits = decompose(ctx, OrbitFilter::O);

    rep.orbits.resize(orbits.size());
    int workers = parallelism > 0 ? parallelism
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min<int>(workers, static_cast<int>(orbits.size()) == 0
                                         ? 1
                                         : static_cast<int>(orbits.size()));
    if (workers <= 1 || orbits.size() < 2) {
        for (std::size_t t = 0; t < orbits.size(); ++t)
            rep.orbits[t] = detail::make_orbit_record(orbits[t], rep.f, full_order);
    } else {
        std::vector<std::future<void>> jobs;
        std::size_t chunk = (orbits.size() + static_cast<std::size_t>(workers) - 1) /
                            static_cast<std::size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            std::size_t lo = static_cast<std::size_t>(w) * chunk;
            std::size_t hi = std::min(orbits.size(), lo + chunk);
            if (lo >= hi) break;
            jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
                for (std::size_t t = lo; t < hi; ++t)
                    rep.orbits[t] = detail::make_orbit_record(orbits[t], rep.f, full_order);
            }));
        }
        for (auto& j : jobs) j.get();
    }

    const int f_val = rep.f;
    bool doubling = true, parity = true;
    for (const OrbitRecord& rec : rep.orbits) {
        rep.sha_order_exp += rec.sha.order_exponent();
        rep.ev_order_exp += rec.size * rec.index_exp;
        rep.sha_group_exp = std::max(rep.sha_group_exp, rec.sha.group_exponent());
        rep.ev_group_exp = std::max(rep.ev_group_exp, rec.index_exp);

        if ((f_val - rec.height) % 2 != 0) parity = false;
        const i64 expected_mult = f_val - rec.height;
        bool ok = rec.sha_mult == expected_mult && 2 * rec.index_exp == expected_mult &&
                  rec.sha.order_exponent() == rec.inv;
        if (rec.gcd_class == 1) {
            i64 d_sum = 0;
            for (std::size_t j = 0; j + 1 < rec.d_list.size(); ++j) d_sum += rec.d_list[j];
            ok = ok && d_sum == expected_mult && d_sum + rec.d_list.back() == f_val &&
                 rec.d_list.back() == rec.height;
        }
        if (!ok) {
            doubling = false;
            std::ostringstream msg;
            msg << "multiplicity doubling fails on orbit of " << rec.min_element;
            rep.diagnostics.push_back(msg.str());
        }
    }

    rep.checks.parity = parity;
    rep.checks.multiplicity_doubling = doubling;
    rep.checks.trivial_iff_f_le_2 =
        ((rep.sha_order_exp == 0 && rep.ev_order_exp == 0) == (f_val <= 2));
    rep.checks.index_exponent_max = rep.ev_group_exp == (f_val - 1) / 2;
    rep.checks.sha_exponent_max = rep.sha_group_exp == f_val / 3;
    rep.checks.class_number = rep.sha_order_exp == 2 * rep.ev_order_exp;

    if (!rep.checks.index_exponent_max)
        rep.diagnostics.push_back("index exponent maximum mismatch");
    if (!rep.checks.sha_exponent_max)
        rep.diagnostics.push_back("sha exponent maximum mismatch");
    if (!rep.checks.class_number)
        rep.diagnostics.push_back("order of sha is not the square of the index");
    return rep;
}

}  // namespace legorbit
