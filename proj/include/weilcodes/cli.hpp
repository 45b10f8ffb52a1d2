// Command-line surface. Everything is driven through run_cli() so tests can
// exercise commands in-process; the binary wraps it in main().
//
// Exit codes: 0 success / verified match, 1 verification mismatch,
// 2 invalid input, 3 degenerate code family.

#ifndef WEILCODES_CLI_HPP
#define WEILCODES_CLI_HPP

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weilcodes/theory.hpp"

namespace weilcodes {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitDegenerate = 3;

/// Parsed command-line state shared by all subcommands.
struct RunConfig {
    std::string command;                 // construct | verify | sums
    u32 p = 0, m = 0, u = 0;
    std::string family;                  // d1 | d2 (empty for --set runs)
    std::string set_path;                // custom defining-set file
    std::vector<u32> modulus;            // optional override
    std::string format = "text";         // text | json
    u64 size_limit = kDefaultSizeLimit;
    unsigned threads = 1;
    bool puncture = false;
    bool sweep = false;
    u32 m_max = 4, u_max = 4;
    std::string sums_kind;               // gauss | weil | quad
    std::string a_digits = "1", b_digits = "0";
};

namespace cli_detail {

inline Field make_field(const RunConfig& cfg) {
    if (!cfg.modulus.empty()) return Field(cfg.p, cfg.m, cfg.modulus, cfg.size_limit);
    return Field::with_smallest_modulus(cfg.p, cfg.m, cfg.size_limit);
}

inline FieldElement parse_element(const Field& f, const std::string& digits) {
    std::vector<u32> coords;
    std::stringstream ss(digits);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            coords.push_back(static_cast<u32>(std::stoul(tok)));
        } catch (const std::exception&) {
            throw InvalidParameter("bad element digit '" + tok + "'");
        }
    }
    if (coords.size() > f.m()) throw InvalidParameter("too many digits for this field");
    coords.resize(f.m(), 0);  // missing high-degree digits are zero
    return FieldElement(f, std::move(coords));
}

inline Json dist_json(const WeightDistribution& wd) {
    Json dist = Json::array();
    for (const auto& [w, a] : wd.counts) dist.push_back(Json{{"w", w}, {"A", a}});
    return Json{{"n", wd.n}, {"k", wd.k}, {"d", wd.min_distance()}, {"dist", std::move(dist)}};
}

inline Json optimality_json(const OptimalityReport& r) {
    return Json{{"verdict", verdict_name(r.verdict)}, {"max_d", r.max_d_at_n}};
}

inline Json params_json(const RunConfig& cfg, const std::string& family) {
    Json j{{"p", cfg.p}, {"m", cfg.m}};
    if (family == "custom")
        j["u"] = nullptr;
    else
        j["u"] = cfg.u;
    j["family"] = family;
    return j;
}

inline std::string bracket(const WeightDistribution& wd) {
    return "[" + std::to_string(wd.n) + "," + std::to_string(wd.k) + "," +
           std::to_string(wd.min_distance()) + "]";
}

inline std::string optimality_line(const OptimalityReport& r) {
    return "griesmer: " + verdict_name(r.verdict) + " (best d for [" + std::to_string(r.n) + "," +
           std::to_string(r.k) + "] is " + std::to_string(r.max_d_at_n) + ")";
}

inline int cmd_construct(const RunConfig& cfg, std::ostream& out) {
    const Field field = make_field(cfg);
    std::unique_ptr<DefiningSet> set;
    std::string family = "custom";
    if (!cfg.set_path.empty()) {
        std::ifstream in(cfg.set_path);
        if (!in) throw InvalidParameter("cannot open defining-set file: " + cfg.set_path);
        set = std::make_unique<DefiningSet>(parse_defining_set(field, in));
        if (set->size() == 0) throw InvalidParameter("custom defining set is empty");
    } else if (cfg.family == "d1") {
        set = std::make_unique<DefiningSet>(build_d1(field, cfg.u));
        family = "d1";
    } else {
        set = std::make_unique<DefiningSet>(build_d2(field, cfg.u));
        family = "d2";
    }

    const WeightDistribution wd = family == "custom"
                                      ? weight_distribution_brute(*set, cfg.threads)
                                      : weight_distribution_charsum(*set, cfg.threads);
    const OptimalityReport opt = classify_optimality(wd.n, wd.k, wd.min_distance(), field.p());

    std::optional<WeightDistribution> pd;
    std::optional<OptimalityReport> popt;
    if (cfg.puncture) {
        const DefiningSet reduced = puncture_by_scaling(*set);
        pd = weight_distribution_brute(reduced, cfg.threads);
        popt = classify_optimality(pd->n, pd->k, pd->min_distance(), field.p());
    }

    if (cfg.format == "json") {
        Json j{{"schema_version", 1},
               {"params", params_json(cfg, family)},
               {"code", dist_json(wd)},
               {"punctured", pd ? dist_json(*pd) : Json(nullptr)},
               {"optimality", optimality_json(opt)},
               {"verification", nullptr}};
        out << j.dump() << "\n";
    } else {
        out << bracket(wd) << " " << wd.enumerator() << "\n" << optimality_line(opt) << "\n";
        if (pd) {
            out << "punctured " << bracket(*pd) << " " << pd->enumerator() << "\n"
                << "punctured " << optimality_line(*popt) << "\n";
        }
    }
    return kExitOk;
}

inline Json verification_json(const RunConfig& cfg, const VerificationReport& r) {
    Json j{{"schema_version", 1}, {"params", params_json(cfg, family_name(r.family))}};
    j["params"]["u"] = r.u;
    j["case"] = case_name(r.tag.c);
    if (r.degenerate) {
        j["degenerate"] = true;
        j["code"] = nullptr;
        j["punctured"] = nullptr;
        j["optimality"] = nullptr;
        j["verification"] = nullptr;
        return j;
    }
    j["degenerate"] = false;
    j["code"] = dist_json(*r.brute);
    j["punctured"] = r.punctured ? dist_json(r.punctured->dist) : Json(nullptr);
    j["optimality"] = optimality_json(*r.optimality);
    j["verification"] =
        Json{{"match", r.match}, {"pless", Json::array({r.pless.first, r.pless.second})}};
    if (!r.match) {
        j["diff"] = Json{{"predicted", dist_json(*r.predicted)},
                         {"brute", dist_json(*r.brute)},
                         {"charsum", dist_json(*r.charsum)}};
    }
    return j;
}

inline void verify_text_line(const VerificationReport& r, std::ostream& out) {
    out << (r.degenerate ? "DEGENERATE" : r.match ? "MATCH" : "MISMATCH") << " "
        << family_name(r.family) << " p=" << r.p << " m=" << r.m << " u=" << r.u
        << " case=" << case_name(r.tag.c);
    if (r.degenerate) {
        out << " (empty defining set)\n";
        return;
    }
    out << " " << bracket(*r.brute) << " " << r.brute->enumerator();
    if (!r.pless.first || !r.pless.second) out << " PLESS-VIOLATION";
    out << " | " << optimality_line(*r.optimality);
    if (r.punctured)
        out << " | punctured " << bracket(r.punctured->dist) << " "
            << r.punctured->dist.enumerator() << " | punctured "
            << optimality_line(r.punctured->optimality);
    if (!r.match) {
        out << "\n  predicted: " << r.predicted->enumerator()
            << "\n  brute:     " << r.brute->enumerator()
            << "\n  charsum:   " << r.charsum->enumerator();
    }
    out << "\n";
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.sweep) {
        const Field field = make_field(cfg);
        const SetFamily fam = cfg.family == "d1" ? SetFamily::d1 : SetFamily::d2;
        const VerificationReport r = verify_instance(fam, field, cfg.u, cfg.threads);
        if (cfg.format == "json")
            out << verification_json(cfg, r).dump() << "\n";
        else
            verify_text_line(r, out);
        if (r.degenerate) return kExitDegenerate;
        return r.match && r.pless.first && r.pless.second ? kExitOk : kExitMismatch;
    }

    // sweep: every family/m/u combination up to the bounds; degenerate and
    // guard-excluded tuples are reported but do not fail the sweep
    bool all_ok = true;
    Json results = Json::array();
    for (SetFamily fam : {SetFamily::d1, SetFamily::d2}) {
        for (u32 m = 1; m <= cfg.m_max; ++m) {
            RunConfig sub = cfg;
            sub.m = m;
            std::optional<Field> field;
            try {
                field.emplace(make_field(sub));
            } catch (const SizeGuardExceeded&) {
                if (cfg.format != "json")
                    out << "SKIP " << family_name(fam) << " p=" << cfg.p << " m=" << m
                        << " (size guard)\n";
                continue;
            }
            for (u32 u = 1; u <= cfg.u_max; ++u) {
                sub.u = u;
                const VerificationReport r = verify_instance(fam, *field, u, cfg.threads);
                if (!r.degenerate && !(r.match && r.pless.first && r.pless.second))
                    all_ok = false;
                if (cfg.format == "json")
                    results.push_back(verification_json(sub, r));
                else
                    verify_text_line(r, out);
            }
        }
    }
    if (cfg.format == "json")
        out << Json{{"schema_version", 1}, {"sweep", std::move(results)}}.dump() << "\n";
    return all_ok ? kExitOk : kExitMismatch;
}

inline int cmd_sums(const RunConfig& cfg, std::ostream& out) {
    const Field field = make_field(cfg);
    const auto approx_json = [](const CycInt& v) {
        const auto z = v.approx();
        return Json{{"re", z.real()}, {"im", z.imag()}};
    };
    const auto print_pair = [&](const std::string& kind, const CycInt& brute,
                                const CycInt& closed, Json extra) {
        if (cfg.format == "json") {
            Json j{{"schema_version", 1},
                   {"sum",
                    Json{{"kind", kind},
                         {"p", cfg.p},
                         {"m", cfg.m},
                         {"brute", brute.to_string()},
                         {"closed", closed.to_string()},
                         {"approx", approx_json(closed)}}}};
            for (auto& [key, val] : extra.items()) j["sum"][key] = val;
            out << j.dump() << "\n";
        } else {
            const auto z = closed.approx();
            out << "brute  = " << brute.to_string() << "\n"
                << "closed = " << closed.to_string() << "\n"
                << "approx = " << z.real() << (z.imag() < 0 ? " - " : " + ")
                << std::abs(z.imag()) << "i\n";
        }
    };

    if (cfg.sums_kind == "gauss") {
        print_pair("gauss", gauss_sum_brute(field), gauss_sum_closed(field), Json::object());
        return kExitOk;
    }

    const FieldElement a = parse_element(field, cfg.a_digits);
    const FieldElement b = parse_element(field, cfg.b_digits);
    Json extra{{"a", cfg.a_digits}, {"b", cfg.b_digits}};
    if (cfg.sums_kind == "weil") {
        const WeilParams params(field, cfg.u);
        extra["u"] = cfg.u;
        print_pair("weil", weil_sum_brute(a, b, params), weil_sum_closed(a, b, params), extra);
        return kExitOk;
    }
    // quad: direct enumeration next to the closed form
    std::vector<i64> counts(field.p(), 0);
    const u64 ai = a.index(), bi = b.index();
    for (u64 x = 0; x < field.q(); ++x)
        ++counts[field.trace_idx(
            field.add_idx(field.mul_idx(ai, field.mul_idx(x, x)), field.mul_idx(bi, x)))];
    print_pair("quad", CycInt::from_zeta_counts(field.p(), counts), quad_sum_closed(a, b), extra);
    return kExitOk;
}

}  // namespace cli_detail

/// Parses and runs one CLI invocation; returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"two- and three-weight trace codes from character sums"};
    app.require_subcommand(1);

    const auto add_field_opts = [&](CLI::App* cmd, bool need_m) {
        cmd->add_option("-p,--characteristic", cfg.p, "odd prime p")->required();
        auto* mopt = cmd->add_option("-m,--degree", cfg.m, "extension degree m");
        if (need_m) mopt->required();
        cmd->add_option("--modulus", cfg.modulus,
                        "modulus coefficients c0,c1,...,cm (low degree first)")
            ->delimiter(',');
        cmd->add_option("--size-limit", cfg.size_limit, "bound on p^(2m)")
            ->envname("WEILCODES_SIZE_LIMIT");
        cmd->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--threads", cfg.threads, "worker threads for distribution sweeps")
            ->check(CLI::Range(1u, 256u));
    };

    auto* construct = app.add_subcommand("construct", "build a code and report its distribution");
    add_field_opts(construct, true);
    auto* fam_opt = construct->add_option("--family", cfg.family, "defining-set family")
                        ->check(CLI::IsMember({"d1", "d2"}));
    auto* set_opt = construct->add_option("--set", cfg.set_path, "custom defining-set file");
    fam_opt->excludes(set_opt);
    construct->add_option("-u,--exponent", cfg.u, "exponent parameter u");
    construct->add_flag("--puncture", cfg.puncture, "also report the scaling-punctured code");

    auto* verify = app.add_subcommand("verify", "check computed distributions against predictions");
    add_field_opts(verify, false);
    verify->add_option("--family", cfg.family, "defining-set family")
        ->check(CLI::IsMember({"d1", "d2"}));
    verify->add_option("-u,--exponent", cfg.u, "exponent parameter u");
    verify->add_flag("--sweep", cfg.sweep, "verify a whole parameter grid");
    verify->add_option("--m-max", cfg.m_max, "sweep bound on m");
    verify->add_option("--u-max", cfg.u_max, "sweep bound on u");

    auto* sums = app.add_subcommand("sums", "evaluate individual character sums");
    sums->add_option("kind", cfg.sums_kind, "gauss | weil | quad")
        ->required()
        ->check(CLI::IsMember({"gauss", "weil", "quad"}));
    add_field_opts(sums, true);
    sums->add_option("-u,--exponent", cfg.u, "exponent parameter u (weil)");
    sums->add_option("--a", cfg.a_digits, "element a as comma-separated digits");
    sums->add_option("--b", cfg.b_digits, "element b as comma-separated digits");

    std::vector<const char*> argv{"weilcodes"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (construct->parsed()) {
            cfg.command = "construct";
            if (cfg.set_path.empty()) {
                if (cfg.family.empty())
                    throw InvalidParameter("construct needs --family or --set");
                if (cfg.u == 0) throw InvalidParameter("family construction needs -u >= 1");
            }
            return cli_detail::cmd_construct(cfg, out);
        }
        if (verify->parsed()) {
            cfg.command = "verify";
            if (!cfg.sweep) {
                if (cfg.family.empty() || cfg.m == 0 || cfg.u == 0)
                    throw InvalidParameter("verify needs --family, -m and -u (or --sweep)");
            } else if (cfg.m == 0) {
                cfg.m = 1;  // sweep chooses m itself
            }
            return cli_detail::cmd_verify(cfg, out);
        }
        cfg.command = "sums";
        if (cfg.sums_kind == "weil" && cfg.u == 0)
            throw InvalidParameter("weil sums need -u >= 1");
        return cli_detail::cmd_sums(cfg, out);
    } catch (const DegenerateCode& e) {
        err << "degenerate: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInvalid;
    }
}

}  // namespace weilcodes

#endif  // WEILCODES_CLI_HPP
