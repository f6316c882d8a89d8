#pragma once

#include <json.hpp>

#include <sstream>
#include <string>

#include "random.hpp"
#include "singular.hpp"
#include "slodowy.hpp"

namespace voa {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Run configuration shared by the CLI subcommands. Reports embed the seed so
// that any randomized suite can be replayed; byte-identical output for a
// fixed (config, seed) is part of the contract.
// ---------------------------------------------------------------------------

struct RunConfig {
    std::string algebra = "A1";
    Rational level = Rational(0);
    long delta_max = 0;  // 0 = per-rank default
    std::string nilpotent = "regular";
    std::uint64_t seed = 1;
};

inline Json level_json(const Rational& k) {
    return Json{{"num", to_int64(k.get_num())}, {"den", to_int64(k.get_den())}};
}

inline Json va_terms_json(const VAVector& v) {
    Json terms = Json::array();
    for (const auto& [m, c] : v.terms) terms.push_back(Json{{"monomial", m.to_string()}, {"coeff", rat_string(c)}});
    return terms;
}

inline Json singular_report_json(const SingularReport& rep) {
    Json j;
    j["algebra"] = rep.spec.to_string();
    j["level"] = level_json(rep.k);
    j["delta"] = rep.delta;
    j["kernel_dim"] = rep.kernel_dim;
    Json vectors = Json::array();
    for (const auto& info : rep.vectors) {
        Json v;
        v["terms"] = va_terms_json(info.v);
        v["min_depth"] = info.min_depth;
        v["zhu_image"] = gstar_string(info.zhu_image);
        v["zhu_nonzero"] = info.zhu_nonzero;
        vectors.push_back(std::move(v));
    }
    j["vectors"] = std::move(vectors);
    return j;
}

inline std::string elem_string(const LieAlgebraData& g, const Element& x) {
    if (x.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : x) {
        const Rational mag = abs(c);
        if (first)
            out += sgn(c) < 0 ? "-" : "";
        else
            out += sgn(c) < 0 ? " - " : " + ";
        first = false;
        if (mag != Rational(1)) out += rat_string(mag) + " * ";
        out += g.basis_name(i);
    }
    return out;
}

inline Json config_json(const RunConfig& cfg, bool with_level = true) {
    Json j;
    j["algebra"] = cfg.algebra;
    if (with_level) j["level"] = level_json(cfg.level);
    if (cfg.delta_max > 0) j["delta_max"] = cfg.delta_max;
    j["seed"] = cfg.seed;
    return j;
}

// ---------------------------------------------------------------------------
// Subcommand drivers. Each returns the full report object; "pass" at the top
// level drives the process exit code.
// ---------------------------------------------------------------------------

inline Json cmd_find_singular(const RunConfig& cfg) {
    LieAlgebraData g = build(AlgebraSpec::parse(cfg.algebra));
    const long dmax = cfg.delta_max > 0 ? cfg.delta_max : default_delta_max(g);
    Json j;
    j["command"] = "find-singular";
    j["config"] = config_json(cfg);
    j["config"]["delta_max"] = dmax;
    Json reports = Json::array();
    for (const auto& rep : find_singular(g, cfg.level, dmax)) reports.push_back(singular_report_json(rep));
    j["results"] = Json{{"reports", std::move(reports)}};
    j["pass"] = true;
    return j;
}

inline Json cmd_simple_check(const RunConfig& cfg) {
    LieAlgebraData g = build(AlgebraSpec::parse(cfg.algebra));
    const long dmax = cfg.delta_max > 0 ? cfg.delta_max : default_delta_max(g);
    Json j;
    j["command"] = "simple-check";
    j["config"] = config_json(cfg);
    j["config"]["delta_max"] = dmax;

    const bool not_simple = gorelik_kac_not_simple(g, cfg.level);
    const bool critical = cfg.level == critical_level(g);
    Json res;
    res["gorelik_kac_not_simple"] = not_simple;
    res["simple"] = !not_simple;
    res["admissible"] = is_admissible(g, cfg.level);
    res["critical"] = critical;
    bool pass = true;
    if (critical) {
        res["note"] = "critical level: run the critical subcommand for the depth counterexample";
    } else if (not_simple) {
        ZhuImageVerdict verdict = verify_zhu_nonvanishing(g, cfg.level, dmax);
        Json reports = Json::array();
        for (const auto& rep : verdict.reports)
            if (rep.kernel_dim > 0) reports.push_back(singular_report_json(rep));
        res["zhu_image_check"] = Json{{"verdict", verdict.pass ? "PASS" : "FAIL"}, {"reports", std::move(reports)}};
        pass = verdict.pass;
    } else {
        Json reports = Json::array();
        bool none = true;
        for (const auto& rep : find_singular(g, cfg.level, dmax)) {
            if (rep.kernel_dim > 0) {
                none = false;
                reports.push_back(singular_report_json(rep));
            }
        }
        res["no_singular_vectors_up_to_delta_max"] = none;
        if (!none) res["unexpected"] = std::move(reports);
        pass = none;
    }
    j["results"] = std::move(res);
    j["pass"] = pass;
    return j;
}

inline Json cmd_critical(const RunConfig& cfg) {
    LieAlgebraData g = build(AlgebraSpec::parse(cfg.algebra));
    const long jmax = cfg.delta_max > 0 ? cfg.delta_max : 4;
    CriticalReport rep = critical_counterexample(g, jmax);
    Json j;
    j["command"] = "critical";
    j["config"] = config_json(cfg, false);
    j["config"]["level"] = level_json(rep.k);

    auto side = [&](const VAVector& v, bool singular, long depth, const PolyElement& zhu) {
        Json s;
        s["terms"] = va_terms_json(v);
        s["singular"] = singular;
        s["min_depth"] = depth;
        s["zhu_image"] = zhu.is_zero() ? "0" : gstar_string(zhu);
        s["zhu_nonzero"] = !zhu.is_zero();
        return s;
    };
    Json res;
    res["sugawara_vector"] = side(rep.S, rep.S_singular, rep.S_depth, rep.S_zhu);
    res["translated_vector"] = side(rep.TS, rep.TS_singular, rep.TS_depth, rep.TS_zhu);
    Json graded = Json::array();
    for (const auto& w : rep.graded)
        graded.push_back(Json{{"j", w.j}, {"depth", w.depth}, {"gt_singular", w.gt_singular}, {"zhu_zero", w.zhu_zero}});
    res["graded_witnesses"] = std::move(graded);
    j["results"] = std::move(res);

    bool pass = rep.S_singular && rep.S_depth == 0 && !rep.S_zhu.is_zero() && rep.TS_singular && rep.TS_depth >= 1 &&
                rep.TS_zhu.is_zero();
    for (const auto& w : rep.graded) pass = pass && w.depth == w.j && w.gt_singular && (w.zhu_zero == (w.j > 0));
    j["pass"] = pass;
    return j;
}

inline Json cmd_slodowy(const RunConfig& cfg) {
    LieAlgebraData g = build(AlgebraSpec::parse(cfg.algebra));
    const Element f = nilpotent_from_spec(cfg.nilpotent, g);
    const Sl2Triple triple = complete_triple(f, g);
    const SliceData sl = slice(triple, g);
    const SubmersionCert cert = submersion_certificate(triple, g);

    Json j;
    j["command"] = "slodowy";
    j["config"] = config_json(cfg, false);
    j["config"]["nilpotent"] = cfg.nilpotent;

    Json res;
    res["triple"] = Json{{"e", elem_string(g, triple.e)}, {"h", elem_string(g, triple.h)}, {"f", elem_string(g, triple.f)}};
    Json cent = Json::array();
    bool exponents_positive = true;
    for (const auto& [x, jw] : sl.centralizer) {
        cent.push_back(Json{{"element", elem_string(g, x)}, {"ad_h_eigenvalue", jw}, {"contraction_exponent", 2 + jw}});
        exponents_positive = exponents_positive && (2 + jw > 0);
    }
    res["centralizer"] = std::move(cent);
    res["centralizer_dim"] = static_cast<long>(sl.centralizer.size());
    res["submersion"] = Json{{"pass", cert.pass}, {"rank", cert.rank}, {"dim", cert.dim}};
    const bool fixes_f = rho_tilde(rat(7, 3), triple.f, triple, g) == triple.f;
    res["rho_tilde_fixes_f"] = fixes_f;
    j["results"] = std::move(res);
    j["pass"] = cert.pass && fixes_f && exponents_positive;
    return j;
}

// ---------------------------------------------------------------------------
// Deterministic selftest battery. Kernel dimensions are embedded in the
// report; wall-clock timings go to stderr so the report bytes depend only on
// (config, seed).
// ---------------------------------------------------------------------------

inline Json cmd_selftest(const RunConfig& cfg) {
    Json checks = Json::array();
    bool all_pass = true;
    auto record = [&](const std::string& name, bool pass, Json details = Json::object()) {
        Json c;
        c["name"] = name;
        c["pass"] = pass;
        if (!details.empty()) c["details"] = std::move(details);
        checks.push_back(std::move(c));
        all_pass = all_pass && pass;
    };

    // exact Lie-algebra soundness
    for (const std::string name : {"A1", "A2", "C2", "G2"}) {
        LieAlgebraData g = build(name);
        long jac = 0, inv = 0;
        for (int x = 0; x < g.dim; ++x)
            for (int y = 0; y < g.dim; ++y)
                for (int z = 0; z < g.dim; ++z) {
                    Element s = elem_sum(elem_sum(g.bracket(elem_basis(x), g.bracket_basis(y, z)),
                                                  g.bracket(elem_basis(y), g.bracket_basis(z, x))),
                                         g.bracket(elem_basis(z), g.bracket_basis(x, y)));
                    if (!s.empty()) ++jac;
                    if (!is_zero(g.form(g.bracket_basis(x, y), elem_basis(z)) +
                                 g.form(elem_basis(y), g.bracket_basis(x, z))))
                        ++inv;
                }
        record("lie-soundness-" + name, jac == 0 && inv == 0,
               Json{{"jacobi_failures", jac}, {"invariance_failures", inv}, {"dim", g.dim}});
    }

    // affine commutation relations on seeded random instances
    for (const std::string name : {"A1", "A2"}) {
        LieAlgebraData g = build(name);
        Rng rng(cfg.seed);
        const Rational k = rat(1, 3);
        Straightener s(g, k);
        long failures = 0;
        const long instances = 60;
        for (long i = 0; i < instances; ++i) {
            const int x = static_cast<int>(rng.uniform(0, g.dim - 1));
            const int y = static_cast<int>(rng.uniform(0, g.dim - 1));
            const int m = static_cast<int>(rng.uniform(-2, 2));
            const int n = static_cast<int>(rng.uniform(-2, m > 0 ? -m : 2));
            VAVector v = random_vector(g, rng, k, 3);
            VAVector lhs = s.act(x, m, s.act(y, n, v)) - s.act(y, n, s.act(x, m, v));
            VAVector rhs = s.act(g.bracket_basis(x, y), m + n, v);
            if (m + n == 0) {
                VAVector cv = v;
                cv *= Rational(m) * g.form_basis(x, y) * k;
                rhs += cv;
            }
            if (!(lhs == rhs)) ++failures;
        }
        record("affine-commutation-" + name, failures == 0,
               Json{{"instances", instances}, {"failures", failures}});
    }

    // Sugawara identities
    {
        LieAlgebraData g = build("A1");
        const Rational k(1);
        SugawaraContext ctx(g, k);
        Rng rng(cfg.seed + 1);
        Straightener s(g, k);
        long failures = 0;
        for (long i = 0; i < 20; ++i) {
            VAVector v = random_vector(g, rng, k, 3);
            if (!(ctx.L(-1, v) == translate(v))) ++failures;
            const int x = static_cast<int>(rng.uniform(0, g.dim - 1));
            const int m = static_cast<int>(rng.uniform(-2, 2));
            const long n = rng.uniform(-2, 2);
            VAVector lhs = ctx.L(n, s.act(x, m, v)) - s.act(x, m, ctx.L(n, v));
            if (!(lhs == Rational(-m) * s.act(x, m + static_cast<int>(n), v))) ++failures;
        }
        record("sugawara-identities-A1", failures == 0, Json{{"failures", failures}});
    }

    // singular kernels
    {
        LieAlgebraData g = build("A1");
        Json dims;
        bool ok = true;
        for (const auto& [label, level] :
             std::vector<std::pair<std::string, Rational>>{{"0", rat(0)}, {"1", rat(1)}, {"-1/2", rat(-1, 2)}}) {
            Json arr = Json::array();
            for (const auto& rep : find_singular(g, level, 4)) arr.push_back(rep.kernel_dim);
            dims["k=" + label] = arr;
        }
        ok = dims["k=0"] == Json::array({1, 0, 0, 0}) && dims["k=1"] == Json::array({0, 1, 0, 0}) &&
             dims["k=-1/2"] == Json::array({0, 0, 0, 1});
        record("singular-kernel-dims-A1", ok, std::move(dims));
    }

    // critical counterexample
    {
        LieAlgebraData g = build("A1");
        CriticalReport rep = critical_counterexample(g, 3);
        bool ok = rep.S_singular && rep.S_depth == 0 && !rep.S_zhu.is_zero() && rep.TS_singular &&
                  rep.TS_depth >= 1 && rep.TS_zhu.is_zero();
        for (const auto& w : rep.graded) ok = ok && w.depth == w.j && w.gt_singular;
        record("critical-counterexample-A1", ok);
    }

    // Slodowy certificates
    for (const std::string name : {"A1", "A2", "C2"}) {
        LieAlgebraData g = build(name);
        bool ok = true;
        Json details;
        for (const std::string nil : {"regular", "minimal"}) {
            Sl2Triple t = complete_triple(nilpotent_from_spec(nil, g), g);
            SubmersionCert cert = submersion_certificate(t, g);
            ok = ok && cert.pass && rho_tilde(rat(2), t.f, t, g) == t.f;
            details[nil] = Json{{"rank", cert.rank}, {"dim", cert.dim}};
        }
        record("slodowy-" + name, ok, std::move(details));
    }

    // shape classification of Ltilde_{-1} images on random monomials
    {
        LieAlgebraData g = build("A1");
        SugawaraContext ctx(g, rat(1));
        Rng rng(cfg.seed + 2);
        long failures = 0;
        for (long i = 0; i < 40; ++i) {
            PBWMonomial z = random_monomial(g, rng, rng.uniform(1, 4));
            if (!ltilde_shape_check(ctx, z)) ++failures;
        }
        record("ltilde-shape-classification-A1", failures == 0, Json{{"failures", failures}});
    }

    Json j;
    j["command"] = "selftest";
    j["config"] = Json{{"seed", cfg.seed}};
    j["results"] = Json{{"checks", std::move(checks)}};
    j["pass"] = all_pass;
    return j;
}

// ---------------------------------------------------------------------------
// Rendering: canonical JSON bytes, CSV, or a text summary.
// ---------------------------------------------------------------------------

inline std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

inline std::string csv_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

inline std::string render_csv(const Json& j) {
    std::ostringstream out;
    const std::string cmd = j.at("command").get<std::string>();
    if (cmd == "find-singular" || cmd == "simple-check") {
        out << "command,algebra,delta,kernel_dim,vector_index,min_depth,zhu_nonzero,zhu_image,vector\n";
        Json reports = Json::array();
        if (cmd == "find-singular") reports = j.at("results").at("reports");
        else if (j.at("results").contains("zhu_image_check")) reports = j.at("results").at("zhu_image_check").at("reports");
        for (const auto& rep : reports) {
            if (rep.at("vectors").empty()) {
                out << cmd << ',' << rep.at("algebra").get<std::string>() << ',' << rep.at("delta") << ','
                    << rep.at("kernel_dim") << ",,,,,\n";
                continue;
            }
            long vi = 0;
            for (const auto& v : rep.at("vectors")) {
                std::string vs;
                for (const auto& t : v.at("terms")) {
                    if (!vs.empty()) vs += " + ";
                    vs += t.at("coeff").get<std::string>() + " * " + t.at("monomial").get<std::string>();
                }
                out << cmd << ',' << rep.at("algebra").get<std::string>() << ',' << rep.at("delta") << ','
                    << rep.at("kernel_dim") << ',' << vi++ << ',' << v.at("min_depth") << ','
                    << (v.at("zhu_nonzero").get<bool>() ? 1 : 0) << ',' << csv_escape(v.at("zhu_image")) << ','
                    << csv_escape(vs) << "\n";
            }
        }
    } else if (cmd == "selftest") {
        out << "command,check,pass\n";
        for (const auto& c : j.at("results").at("checks"))
            out << "selftest," << c.at("name").get<std::string>() << ',' << (c.at("pass").get<bool>() ? 1 : 0) << "\n";
    } else {
        out << "command,pass\n" << cmd << ',' << (j.at("pass").get<bool>() ? 1 : 0) << "\n";
    }
    return out.str();
}

inline std::string render_text(const Json& j) {
    std::ostringstream out;
    const std::string cmd = j.at("command").get<std::string>();
    out << "== " << cmd << " ==\n";
    if (j.contains("config")) {
        const auto& cfg = j.at("config");
        if (cfg.contains("algebra")) out << "algebra: " << cfg.at("algebra").get<std::string>() << "\n";
        if (cfg.contains("level"))
            out << "level: " << cfg.at("level").at("num") << "/" << cfg.at("level").at("den") << "\n";
        if (cfg.contains("delta_max")) out << "delta_max: " << cfg.at("delta_max") << "\n";
    }
    if (cmd == "simple-check") {
        const auto& r = j.at("results");
        out << "simple: " << (r.at("simple").get<bool>() ? "yes" : "no") << "\n";
        out << "admissible: " << (r.at("admissible").get<bool>() ? "yes" : "no") << "\n";
        out << "critical: " << (r.at("critical").get<bool>() ? "yes" : "no") << "\n";
        if (r.contains("zhu_image_check"))
            out << "nonzero Zhu image for all singular vectors: " << r.at("zhu_image_check").at("verdict").get<std::string>()
                << "\n";
        if (r.contains("note")) out << r.at("note").get<std::string>() << "\n";
    } else if (cmd == "find-singular") {
        for (const auto& rep : j.at("results").at("reports")) {
            out << "delta " << rep.at("delta") << ": kernel dim " << rep.at("kernel_dim") << "\n";
            for (const auto& v : rep.at("vectors")) {
                out << "  depth " << v.at("min_depth") << ", Zhu image " << v.at("zhu_image").get<std::string>()
                    << "\n";
                for (const auto& t : v.at("terms"))
                    out << "    " << t.at("coeff").get<std::string>() << " * " << t.at("monomial").get<std::string>()
                        << "\n";
            }
        }
    } else if (cmd == "selftest") {
        for (const auto& c : j.at("results").at("checks"))
            out << (c.at("pass").get<bool>() ? "[PASS] " : "[FAIL] ") << c.at("name").get<std::string>() << "\n";
    } else if (cmd == "critical") {
        const auto& r = j.at("results");
        out << "S: singular=" << r.at("sugawara_vector").at("singular") << " depth="
            << r.at("sugawara_vector").at("min_depth") << " zhu=" << r.at("sugawara_vector").at("zhu_image").get<std::string>()
            << "\n";
        out << "T S: singular=" << r.at("translated_vector").at("singular") << " depth="
            << r.at("translated_vector").at("min_depth") << " zhu="
            << r.at("translated_vector").at("zhu_image").get<std::string>() << "\n";
        for (const auto& w : r.at("graded_witnesses"))
            out << "graded j=" << w.at("j") << ": depth=" << w.at("depth") << " singular=" << w.at("gt_singular")
                << "\n";
    } else if (cmd == "slodowy") {
        const auto& r = j.at("results");
        out << "triple e: " << r.at("triple").at("e").get<std::string>() << "\n";
        out << "triple h: " << r.at("triple").at("h").get<std::string>() << "\n";
        out << "triple f: " << r.at("triple").at("f").get<std::string>() << "\n";
        out << "dim g^e: " << r.at("centralizer_dim") << "\n";
        out << "submersion rank: " << r.at("submersion").at("rank") << "/" << r.at("submersion").at("dim") << " -> "
            << (r.at("submersion").at("pass").get<bool>() ? "PASS" : "FAIL") << "\n";
    }
    out << "overall: " << (j.at("pass").get<bool>() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

inline std::string render(const Json& j, const std::string& format) {
    if (format == "json") return render_json(j);
    if (format == "csv") return render_csv(j);
    if (format == "text") return render_text(j);
    throw std::invalid_argument("unknown format: " + format);
}

}  // namespace voa
