// Batch driver: run the verification suites and emit deterministic reports.
//
// Exit codes: 0 = all checks passed, 1 = a verification failed, 2 = bad
// configuration or usage.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include <voa/voa.hpp>

namespace {

struct CliOptions {
    voa::RunConfig cfg;
    std::string level_string = "0";
    std::string format = "text";
    std::string out_path;
};

void add_common(CLI::App* cmd, CliOptions& opt, bool with_level = true) {
    cmd->add_option("-a,--algebra", opt.cfg.algebra, "algebra spec, e.g. A1, A2, C2, G2");
    if (with_level) cmd->add_option("-l,--level", opt.level_string, "exact level k, an integer or p/q");
    cmd->add_option("-d,--delta-max", opt.cfg.delta_max, "maximal conformal degree searched");
    cmd->add_option("-s,--seed", opt.cfg.seed, "seed for randomized property suites");
    cmd->add_option("-o,--out", opt.out_path, "write the report to this path instead of stdout");
    cmd->add_option("--format", opt.format, "report format: json, csv, or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
}

int emit(const voa::Json& report, const CliOptions& opt) {
    const std::string body = voa::render(report, opt.format);
    if (opt.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(opt.out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open output file " << opt.out_path << "\n";
            return 2;
        }
        f << body;
    }
    return report.at("pass").get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations in universal affine vertex algebras"};
    app.require_subcommand(1);
    app.set_config("--config");

    CliOptions opt;
    std::string command;

    auto* simple = app.add_subcommand("simple-check", "Gorelik-Kac and admissibility verdicts plus the Zhu-image check");
    add_common(simple, opt);
    simple->callback([&] { command = "simple-check"; });

    auto* find = app.add_subcommand("find-singular", "singular vectors by exact kernel computation, degree by degree");
    add_common(find, opt);
    find->callback([&] { command = "find-singular"; });

    auto* critical = app.add_subcommand("critical", "critical-level counterexample: S, T S, and the graded witnesses");
    add_common(critical, opt, false);
    critical->callback([&] { command = "critical"; });

    auto* slodowy = app.add_subcommand("slodowy", "sl2-triple, centralizer, contraction, and submersion certificate");
    add_common(slodowy, opt, false);
    slodowy->add_option("-n,--nilpotent", opt.cfg.nilpotent,
                        "nilpotent: regular, minimal, or an element string of mode -1 factors");
    slodowy->callback([&] { command = "slodowy"; });

    auto* selftest = app.add_subcommand("selftest", "deterministic verification battery over the whole kernel");
    add_common(selftest, opt);
    selftest->callback([&] { command = "selftest"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        opt.cfg.level = voa::parse_rational(opt.level_string);
        const auto start = std::chrono::steady_clock::now();
        voa::Json report;
        if (command == "simple-check") report = voa::cmd_simple_check(opt.cfg);
        else if (command == "find-singular") report = voa::cmd_find_singular(opt.cfg);
        else if (command == "critical") report = voa::cmd_critical(opt.cfg);
        else if (command == "slodowy") report = voa::cmd_slodowy(opt.cfg);
        else report = voa::cmd_selftest(opt.cfg);
        const auto elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        // timings stay out of the report so bytes depend only on (config, seed)
        std::cerr << command << " completed in " << elapsed.count() << " ms\n";
        return emit(report, opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const voa::critical_level_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
