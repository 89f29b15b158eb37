#pragma once

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "legorbit/rays.hpp"
#include "legorbit/report_io.hpp"

namespace legorbit::cli {

// Exit codes of the command line tool.
enum ExitCode : int { Ok = 0, Usage = 1, Domain = 2, CheckFailed = 3 };

namespace detail {

constexpr i64 size_guard = 1'000'000'000;

inline void guard_size(i64 d, bool force) {
    if (d > size_guard && !force)
        throw capacity_error("modulus exceeds 10^9; pass --force to proceed");
}

inline std::string class_name(HalfPlane h) {
    switch (h) {
        case HalfPlane::Lower: return "lower";
        case HalfPlane::Upper: return "upper";
        default: return "boundary";
    }
}

struct OrbitsCmd {
    i64 p = 0, d = 0;
    std::string format = "text";
    bool force = false;
};

inline int cmd_orbits(const OrbitsCmd& a, std::ostream& out) {
    guard_size(a.d, a.force);
    OrbitContext ctx(a.d, a.p);
    ordered_json j;
    j["context"] = {{"p", ctx.p}, {"d", ctx.d}};
    if (ctx.d > 2)
        j["context"]["balanced_modulus"] = is_balanced_modulus(ctx);
    else
        j["context"]["balanced_modulus"] = nullptr;
    ordered_json arr = ordered_json::array();
    for_each_orbit(ctx, OrbitFilter::O, [&](const Orbit& o) {
        ordered_json rec;
        rec["min"] = o.min_element();
        rec["size"] = o.size();
        rec["gcd_class"] = o.gcd_class();
        const bool balanced = is_balanced_orbit(o);
        rec["balanced"] = balanced;
        if (balanced) {
            const Word w = word_at_standard(o);
            rec["standard_base_point"] = standard_base_point(o);
            rec["word"] = w.str();
            rec["height"] = height_profile(w).height;
        } else {
            rec["standard_base_point"] = nullptr;
            rec["word"] = nullptr;
            rec["height"] = nullptr;
        }
        arr.push_back(std::move(rec));
    });
    j["orbits"] = std::move(arr);

    if (a.format == "json") {
        out << j.dump(2) << "\n";
    } else if (a.format == "csv") {
        out << "d,p,orbit_min,orbit_size,gcd_class,balanced,word,height\n";
        for (const auto& rec : j["orbits"]) {
            out << ctx.d << ',' << ctx.p << ',' << rec["min"] << ',' << rec["size"] << ','
                << rec["gcd_class"] << ',' << (rec["balanced"].get<bool>() ? 1 : 0) << ',';
            if (!rec["word"].is_null()) out << rec["word"].get<std::string>();
            out << ',';
            if (!rec["height"].is_null()) out << rec["height"];
            out << '\n';
        }
    } else {
        out << "d = " << ctx.d << "  p = " << ctx.p;
        if (!j["context"]["balanced_modulus"].is_null())
            out << "  balanced = " << (j["context"]["balanced_modulus"].get<bool>() ? "yes" : "no");
        out << "\n";
        for (const auto& rec : j["orbits"]) {
            out << "orbit of " << rec["min"] << ": size " << rec["size"] << ", gcd "
                << rec["gcd_class"];
            if (!rec["word"].is_null())
                out << ", word " << rec["word"].get<std::string>() << ", height "
                    << rec["height"];
            else
                out << ", unbalanced";
            out << "\n";
        }
    }
    return Ok;
}

struct WordCmd {
    i64 p = 0, d = 0, i = 0;
    std::string format = "text";
    bool force = false;
};

inline int cmd_word(const WordCmd& a, std::ostream& out) {
    guard_size(a.d, a.force);
    OrbitContext ctx(a.d, a.p);
    Orbit o = orbit_through(ctx, a.i);
    if (o.min_element() == 0 || 2 * o.min_element() == ctx.d)
        throw std::domain_error("word: orbit through a fixed residue has no word");

    ordered_json j;
    j["context"] = {{"p", ctx.p}, {"d", ctx.d}};
    j["i"] = a.i;
    j["orbit"] = {{"min", o.min_element()},
                  {"size", o.size()},
                  {"gcd_class", o.gcd_class()},
                  {"elements", o.elements()}};
    const Word wi = word_at(o, a.i);
    j["word_at_i"] = wi.str();
    j["balanced"] = is_balanced_orbit(o);
    j["good_base_points"] = good_base_points(o);

    if (!j["good_base_points"].empty()) {
        const i64 sbp = standard_base_point(o);
        const Word w = word_at(o, sbp);
        const HeightProfile hp = height_profile(w);
        j["standard_base_point"] = sbp;
        j["word"] = w.str();
        j["profile"] = hp.a;
        j["height"] = hp.height;
        if (w[0] == 'u' && w[w.size() - 1] == 'l') {
            const ExponentialForm ef = exponential_form(w);
            j["exponential_form"] = ef.exponents;
            j["d_list"] =
                invariants_by_min_pivot(BidiagonalSpec(ef.drop_last())).d;
        }
        const bool comp = w.size() % 2 == 0 && is_complementary(w);
        j["complementary"] = comp;
        if (comp) j["string_diagram"] = string_diagram(w);
    }

    if (a.format == "json") {
        out << j.dump(2) << "\n";
    } else {
        out << "orbit of " << a.i << " mod " << ctx.d << " (p = " << ctx.p
            << "): size " << o.size() << ", gcd " << o.gcd_class() << "\n";
        out << "word at " << a.i << ": " << wi.str() << "\n";
        if (j.contains("standard_base_point") && !j["good_base_points"].empty()) {
            out << "good base points:";
            for (const auto& b : j["good_base_points"]) out << ' ' << b;
            out << "\nstandard base point: " << j["standard_base_point"] << ", word "
                << j["word"].get<std::string>() << ", height " << j["height"] << "\n";
            if (j.contains("d_list")) {
                out << "invariant factor exponents:";
                for (const auto& v : j["d_list"]) out << ' ' << v;
                out << "\n";
            }
            if (j["complementary"].get<bool>())
                out << "string diagram: " << j["string_diagram"].get<std::string>() << "\n";
        } else {
            out << "no good base point (unbalanced orbit)\n";
        }
    }
    return Ok;
}

struct SnfCmd {
    std::vector<int> exponents;
    std::string format = "text";
};

inline int cmd_snf(const SnfCmd& a, std::ostream& out) {
    BidiagonalSpec spec(a.exponents);
    const InvariantFactors lo = invariants_by_min_pivot(spec);
    const InvariantFactors hi = invariants_by_max_pivot(spec);
    std::optional<InvariantFactors> oracle;
    if (spec.k() <= 10) oracle = minors_oracle(spec);
    const bool agree = lo == hi && (!oracle || *oracle == lo);

    if (a.format == "json") {
        ordered_json j;
        j["exponents"] = a.exponents;
        j["min_pivot"] = lo.d;
        j["max_pivot"] = hi.d;
        if (oracle)
            j["oracle"] = oracle->d;
        else
            j["oracle"] = nullptr;
        j["agree"] = agree;
        out << j.dump(2) << "\n";
    } else {
        auto line = [&](const char* name, const InvariantFactors& v) {
            out << name << ":";
            for (int x : v.d) out << ' ' << x;
            out << "\n";
        };
        line("min-pivot", lo);
        line("max-pivot", hi);
        if (oracle) line("oracle", *oracle);
        out << (agree ? "algorithms agree" : "ALGORITHMS DISAGREE") << "\n";
    }
    return agree ? Ok : CheckFailed;
}

struct ReportCmd {
    i64 p = 0;
    int f = 0;
    std::string format = "text";
    int parallel = 0;
    bool force = false;
};

inline int cmd_report(const ReportCmd& a, std::ostream& out) {
    auto pf = checked_pow(a.p, a.f);
    if (!pf) throw capacity_error("p^f does not fit in 64 bits");
    guard_size(*pf + 1, a.force);
    const StructureReport rep =
        full_report(OrbitContext(*pf + 1, a.p), a.f, a.parallel);
    if (a.format == "json")
        out << report_to_json(rep).dump(2) << "\n";
    else if (a.format == "csv")
        out << report_to_csv(rep);
    else
        out << report_to_text(rep);
    return rep.checks.all() ? Ok : CheckFailed;
}

struct ShaCmd {
    i64 p = 0, d = 0;
    std::string format = "text";
    bool force = false;
};

inline int cmd_sha(const ShaCmd& a, std::ostream& out) {
    guard_size(a.d, a.force);
    OrbitContext ctx(a.d, a.p);
    if (ctx.d <= 2) throw std::domain_error("sha: requires d > 2");
    const i64 m = multiplicative_order(ctx.p, ctx.d);

    ordered_json j;
    j["context"] = {{"p", ctx.p},
                    {"d", ctx.d},
                    {"field_degree", m},
                    {"balanced_modulus", is_balanced_modulus(ctx)}};
    ordered_json arr = ordered_json::array();
    for_each_orbit(ctx, OrbitFilter::O, [&](const Orbit& o) {
        ordered_json rec;
        rec["min"] = o.min_element();
        rec["size"] = o.size();
        rec["gcd_class"] = o.gcd_class();
        const bool has_new_part = !mw_new_part(o).is_zero();
        if (has_new_part) {
            const Word w = word_at_standard(o);
            rec["word"] = w.str();
            rec["d_list"] = orbit_d_list(o).d;
            rec["sha_group"] = group_to_json(sha_structure_Fq(o, m));
            if (o.gcd_class() == 1) {
                ordered_json kd = ordered_json::array();
                for (const auto& q : sha_structure_Kd(o)) kd.push_back(q.torsion_exponent);
                rec["sha_Kd"] = std::move(kd);
            }
        } else {
            rec["word"] = nullptr;
            rec["d_list"] = nullptr;
            rec["sha_group"] = nullptr;
        }
        arr.push_back(std::move(rec));
    });
    j["orbits"] = std::move(arr);

    if (a.format == "json") {
        out << j.dump(2) << "\n";
    } else {
        out << "d = " << ctx.d << "  p = " << ctx.p << "  field degree " << m << "\n";
        for (const auto& rec : j["orbits"]) {
            out << "orbit of " << rec["min"] << ": ";
            if (rec["sha_group"].is_null()) {
                out << "no new part\n";
                continue;
            }
            out << "word " << rec["word"].get<std::string>() << ", sha";
            for (const auto& pair : rec["sha_group"])
                out << " (Z/p^" << pair[0] << ")^" << pair[1];
            if (rec["sha_group"].empty()) out << " trivial";
            out << "\n";
        }
    }
    return Ok;
}

struct InterpolateCmd {
    int f = 0;
    std::vector<i64> verify;
    std::string format = "text";
};

inline int cmd_interpolate(const InterpolateCmd& a, std::ostream& out) {
    const RationalPoly F = interpolation_poly(a.f);
    bool all_ok = true;
    ordered_json rows = ordered_json::array();
    for (i64 p : a.verify) {
        if (p == 2 || !is_prime(p))
            throw std::domain_error("interpolate: verification primes must be odd");
        const i64 d = pattern_modulus(p, a.f);
        const i64 rhs = sha_order_exponent(OrbitContext(d, p), a.f);
        const Rational lhs = F.evaluate(Rational(p));
        const bool ok = lhs == Rational(rhs);
        all_ok = all_ok && ok;
        ordered_json row;
        row["p"] = p;
        row["polynomial_value"] = lhs.str();
        row["order_exponent"] = rhs;
        row["ok"] = ok;
        rows.push_back(std::move(row));
    }

    if (a.format == "json") {
        ordered_json j = poly_to_json(F);
        j["f"] = a.f;
        j["verify"] = std::move(rows);
        j["all_ok"] = all_ok;
        out << j.dump(2) << "\n";
    } else {
        out << "F_" << a.f << "(T) = " << poly_to_text(F) << "\n";
        for (const auto& row : rows)
            out << "p = " << row["p"] << ": F(p) = " << row["polynomial_value"].get<std::string>()
                << ", exponent = " << row["order_exponent"] << (row["ok"].get<bool>() ? " ok" : " MISMATCH")
                << "\n";
    }
    return all_ok ? Ok : CheckFailed;
}

struct RaysCmd {
    i64 p = 0, d = 0, r = 0;
    std::string convention = "lt1";
    std::string format = "text";
    bool force = false;
};

inline int cmd_rays(const RaysCmd& a, std::ostream& out) {
    guard_size(checked_mul(a.d, a.r), a.force);
    const RayConvention conv = a.convention == "gt1" ? RayConvention::SumGreaterIsUpper
                                                     : RayConvention::SumLessIsUpper;
    RayContext ctx(a.d, a.r, a.p, conv);

    ordered_json j;
    j["context"] = {{"p", ctx.p},
                    {"d", ctx.d},
                    {"r", ctx.r},
                    {"convention", a.convention == "gt1" ? "gt1" : "lt1"}};
    ordered_json arr = ordered_json::array();
    for (const auto& orbit : ray_decompose(ctx)) {
        ordered_json rec;
        ordered_json rays = ordered_json::array();
        for (const Ray& x : orbit) rays.push_back({x.i, x.j});
        rec["base"] = {orbit.front().i, orbit.front().j};
        rec["size"] = orbit.size();
        rec["rays"] = std::move(rays);
        const bool balanced = is_balanced_ray(ctx, orbit.front());
        rec["balanced"] = balanced;
        const Word w = ray_word(ctx, orbit, orbit.front());
        rec["word"] = w.str();
        // Experimental: feed balanced ray words through the same invariant
        // machinery as residue words.
        const Word canon = canonical_rotation(w);
        if (balanced && height_profile(canon).stays_nonnegative() &&
            canon[0] == 'u' && canon[canon.size() - 1] == 'l') {
            rec["height"] = height_profile(canon).height;
            rec["d_list"] =
                invariants_by_min_pivot(BidiagonalSpec(exponential_form(canon).drop_last())).d;
        } else {
            rec["height"] = nullptr;
            rec["d_list"] = nullptr;
        }
        arr.push_back(std::move(rec));
    }
    j["orbits"] = std::move(arr);

    if (a.format == "json") {
        out << j.dump(2) << "\n";
    } else {
        out << "d = " << ctx.d << "  r = " << ctx.r << "  p = " << ctx.p << "\n";
        for (const auto& rec : j["orbits"]) {
            out << "ray orbit of (" << rec["base"][0] << "," << rec["base"][1]
                << "): size " << rec["size"] << ", word " << rec["word"].get<std::string>()
                << (rec["balanced"].get<bool>() ? ", balanced" : ", unbalanced") << "\n";
        }
    }
    return Ok;
}

struct VerifyAllCmd {
    std::optional<i64> p;
    std::optional<int> f;
    bool force = false;
};

inline int cmd_verify_all(const VerifyAllCmd& a, std::ostream& out) {
    std::vector<std::pair<i64, int>> cases;
    if (a.p && a.f) {
        cases.emplace_back(*a.p, *a.f);
    } else {
        for (i64 p : {3, 5, 7})
            for (int f = 1; f <= (p == 3 ? 4 : 3); ++f) cases.emplace_back(p, f);
    }

    bool all_ok = true;
    {
        BidiagonalSpec spec(std::vector<int>{4, 1, 3, 5, 4, 3, 5, 4, 2, 1, 2});
        const InvariantFactors want{{1, 1, 3, 3, 5, 7}};
        const bool ok = invariants_by_min_pivot(spec) == want &&
                        invariants_by_max_pivot(spec) == want && minors_oracle(spec) == want;
        all_ok = all_ok && ok;
        out << "snf worked example: " << (ok ? "ok" : "FAIL") << "\n";
    }
    for (auto [p, f] : cases) {
        auto pf = checked_pow(p, f);
        if (!pf) throw capacity_error("p^f does not fit in 64 bits");
        guard_size(*pf + 1, a.force);
        const StructureReport rep = full_report(OrbitContext(*pf + 1, p), f);
        const bool interp_ok = verify_interpolation(f, {p});
        const bool ok = rep.checks.all() && interp_ok;
        all_ok = all_ok && ok;
        out << "p = " << p << " f = " << f << ": report "
            << (rep.checks.all() ? "ok" : "FAIL") << ", interpolation "
            << (interp_ok ? "ok" : "FAIL") << "\n";
    }
    out << (all_ok ? "all checks passed" : "CHECKS FAILED") << "\n";
    return all_ok ? Ok : CheckFailed;
}

}  // namespace detail

// Parse and run.  Returns the process exit code; output goes to `out`,
// errors to `err`.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact combinatorics of multiplicative orbits, words, and"
                 " p-power module structures for the Legendre curve"};
    app.require_subcommand(1);

    detail::OrbitsCmd orbits_args;
    auto* orbits = app.add_subcommand("orbits", "decompose Z/dZ into orbits of <p>");
    orbits->add_option("-p", orbits_args.p, "prime p")->required();
    orbits->add_option("-d", orbits_args.d, "modulus d")->required();
    orbits->add_option("--format", orbits_args.format, "text, json, or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    orbits->add_flag("--force", orbits_args.force, "allow very large moduli");

    detail::WordCmd word_args;
    auto* word = app.add_subcommand("word", "word and base-point data for one orbit");
    word->add_option("-p", word_args.p, "prime p")->required();
    word->add_option("-d", word_args.d, "modulus d")->required();
    word->add_option("i", word_args.i, "residue whose orbit to inspect")->required();
    word->add_option("--format", word_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    word->add_flag("--force", word_args.force, "allow very large moduli");

    detail::SnfCmd snf_args;
    auto* snf = app.add_subcommand("snf", "invariant factors of a bidiagonal exponent list");
    snf->add_option("exponents", snf_args.exponents, "odd-length exponent list")
        ->required()
        ->expected(-1);
    snf->add_option("--format", snf_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    detail::ReportCmd report_args;
    auto* report = app.add_subcommand("report", "full structure report for d = p^f + 1");
    report->add_option("-p", report_args.p, "prime p")->required();
    report->add_option("-f", report_args.f, "exponent f")->required();
    report->add_option("--format", report_args.format, "text, json, or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    report->add_option("--parallel", report_args.parallel, "worker count (0 = auto)");
    report->add_flag("--force", report_args.force, "allow very large moduli");

    detail::ShaCmd sha_args;
    auto* sha = app.add_subcommand("sha", "sha structure per orbit over F_p(mu_d)");
    sha->add_option("-p", sha_args.p, "prime p")->required();
    sha->add_option("-d", sha_args.d, "modulus d")->required();
    sha->add_option("--format", sha_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sha->add_flag("--force", sha_args.force, "allow very large moduli");

    detail::InterpolateCmd interp_args;
    auto* interp = app.add_subcommand("interpolate", "p-independent order polynomial");
    interp->add_option("-f", interp_args.f, "exponent f")->required();
    interp->add_option("--verify", interp_args.verify, "odd primes to check against")
        ->delimiter(',');
    interp->add_option("--format", interp_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    detail::RaysCmd rays_args;
    auto* rays = app.add_subcommand("rays", "diagonal orbits of character pairs");
    rays->add_option("-p", rays_args.p, "prime p")->required();
    rays->add_option("-d", rays_args.d, "first modulus")->required();
    rays->add_option("-r", rays_args.r, "second modulus")->required();
    rays->add_option("--ray-convention", rays_args.convention,
                     "which side of the wall is upper: lt1 or gt1")
        ->check(CLI::IsMember({"lt1", "gt1"}));
    rays->add_option("--format", rays_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    rays->add_flag("--force", rays_args.force, "allow very large moduli");

    detail::VerifyAllCmd verify_args;
    i64 verify_p = 0;
    int verify_f = 0;
    auto* verify = app.add_subcommand("verify-all", "run the identity checks");
    auto* vp = verify->add_option("-p", verify_p, "prime p (with -f)");
    auto* vf = verify->add_option("-f", verify_f, "exponent f (with -p)");
    verify->add_flag("--force", verify_args.force, "allow very large moduli");
    vp->needs(vf);
    vf->needs(vp);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return Usage;
    }

    try {
        if (*orbits) return detail::cmd_orbits(orbits_args, out);
        if (*word) return detail::cmd_word(word_args, out);
        if (*snf) return detail::cmd_snf(snf_args, out);
        if (*report) return detail::cmd_report(report_args, out);
        if (*sha) return detail::cmd_sha(sha_args, out);
        if (*interp) return detail::cmd_interpolate(interp_args, out);
        if (*rays) return detail::cmd_rays(rays_args, out);
        if (*verify) {
            if (vp->count()) verify_args.p = verify_p;
            if (vf->count()) verify_args.f = verify_f;
            return detail::cmd_verify_all(verify_args, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return Domain;
    }
    return Usage;
}

}  // namespace legorbit::cli
