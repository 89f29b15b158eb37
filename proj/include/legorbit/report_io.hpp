#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "legorbit/rational.hpp"
#include "legorbit/structures.hpp"

namespace legorbit {

using ordered_json = nlohmann::ordered_json;

inline ordered_json group_to_json(const AbelianPGroup& g) {
    ordered_json arr = ordered_json::array();
    for (auto [m, mult] : g.content) arr.push_back({m, mult});
    return arr;
}

inline ordered_json orbit_record_to_json(const OrbitRecord& rec) {
    ordered_json j;
    j["min"] = rec.min_element;
    j["size"] = rec.size;
    j["gcd_class"] = rec.gcd_class;
    j["word"] = rec.word.str();
    j["height"] = rec.height;
    j["d_list"] = rec.d_list;
    j["mw_rank"] = rec.mw_nonzero ? rec.size : 0;
    if (rec.mw_nonzero)
        j["disc_exp"] = rec.disc_exp;
    else
        j["disc_exp"] = nullptr;
    j["index_exp"] = rec.index_exp;
    j["sha"] = group_to_json(rec.sha);
    j["sha_order_exp"] = rec.sha.order_exponent();
    j["inv"] = rec.inv;
    return j;
}

inline ordered_json report_to_json(const StructureReport& rep) {
    ordered_json j;
    j["context"] = {{"p", rep.ctx.p}, {"d", rep.ctx.d}, {"f", rep.f}};
    ordered_json orbits = ordered_json::array();
    for (const auto& rec : rep.orbits) orbits.push_back(orbit_record_to_json(rec));
    j["orbits"] = std::move(orbits);
    ordered_json checks;
    checks["trivial_iff_f_le_2"] = rep.checks.trivial_iff_f_le_2;
    checks["index_exponent_max"] = rep.checks.index_exponent_max;
    checks["sha_exponent_max"] = rep.checks.sha_exponent_max;
    checks["class_number"] = rep.checks.class_number;
    checks["multiplicity_doubling"] = rep.checks.multiplicity_doubling;
    checks["parity"] = rep.checks.parity;
    checks["all"] = rep.checks.all();
    j["aggregates"] = {{"sha_order_exp", rep.sha_order_exp},
                       {"ev_order_exp", rep.ev_order_exp},
                       {"sha_group_exp", rep.sha_group_exp},
                       {"ev_group_exp", rep.ev_group_exp},
                       {"checks", std::move(checks)},
                       {"diagnostics", rep.diagnostics}};
    return j;
}

namespace detail {

inline std::string join_ints(const std::vector<int>& v, char sep) {
    std::ostringstream os;
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (t) os << sep;
        os << v[t];
    }
    return os.str();
}

inline std::string group_cell(const AbelianPGroup& g) {
    std::ostringstream os;
    bool first = true;
    for (auto [m, mult] : g.content) {
        if (!first) os << ';';
        os << m << ':' << mult;
        first = false;
    }
    return os.str();
}

}  // namespace detail

// One row per orbit; list cells are ';'-joined.
inline std::string report_to_csv(const StructureReport& rep) {
    std::ostringstream os;
    os << "d,p,f,orbit_min,orbit_size,gcd_class,word,height,d_list,disc_exp,"
          "index_exp,sha_exps,inv\n";
    for (const auto& rec : rep.orbits) {
        os << rep.ctx.d << ',' << rep.ctx.p << ',' << rep.f << ',' << rec.min_element
           << ',' << rec.size << ',' << rec.gcd_class << ',' << rec.word.str() << ','
           << rec.height << ',' << detail::join_ints(rec.d_list, ';') << ',';
        if (rec.mw_nonzero) os << rec.disc_exp;
        os << ',' << rec.index_exp << ',' << detail::group_cell(rec.sha) << ','
           << rec.inv << '\n';
    }
    return os.str();
}

inline std::string report_to_text(const StructureReport& rep) {
    std::ostringstream os;
    os << "d = " << rep.ctx.d << "  p = " << rep.ctx.p << "  f = " << rep.f << "\n";
    os << "orbit_min size gcd word height d_list index_exp sha inv\n";
    for (const auto& rec : rep.orbits) {
        os << rec.min_element << ' ' << rec.size << ' ' << rec.gcd_class << ' '
           << rec.word.str() << ' ' << rec.height << " ("
           << detail::join_ints(rec.d_list, ',') << ") " << rec.index_exp << " ["
           << detail::group_cell(rec.sha) << "] " << rec.inv << '\n';
    }
    os << "order exponents: sha = " << rep.sha_order_exp
       << ", index = " << rep.ev_order_exp << "\n";
    os << "group exponents: sha = " << rep.sha_group_exp
       << ", index = " << rep.ev_group_exp << "\n";
    os << "checks: " << (rep.checks.all() ? "pass" : "FAIL") << "\n";
    for (const auto& m : rep.diagnostics) os << "  " << m << "\n";
    return os.str();
}

inline ordered_json poly_to_json(const RationalPoly& poly) {
    ordered_json j;
    j["degree"] = poly.degree();
    j["coefficients"] = poly.to_strings();
    return j;
}

// Plain rendering like (-1/2) + (3/2) T + ... for humans.
inline std::string poly_to_text(const RationalPoly& poly) {
    if (poly.is_zero()) return "0";
    std::ostringstream os;
    const auto strs = poly.to_strings();
    bool first = true;
    for (std::size_t t = 0; t < strs.size(); ++t) {
        if (poly.coefficient(t) == 0) continue;
        if (!first) os << " + ";
        os << "(" << strs[t] << ")";
        if (t == 1) os << " T";
        if (t > 1) os << " T^" << t;
        first = false;
    }
    return os.str();
}

}  // namespace legorbit
