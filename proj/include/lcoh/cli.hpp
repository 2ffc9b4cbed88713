#ifndef LCOH_CLI_HPP
#define LCOH_CLI_HPP

// Command-line front end, kept in a header so tests can drive it in-process.
//
//   lcoh compute --input ideal.spec [--window 3] [--coh 0..2] [--format csv|json]
//                [--output path] [--jobs N | --serial]
//   lcoh verify  --input ideal.spec [--window 3] [--format csv|json] [--output path]
//
// Exit codes: 0 success, 1 verification failure or engine error, 2 usage or
// input error. LCOH_WINDOW and LCOH_FORMAT override the defaults.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <lcoh/blocks.hpp>
#include <lcoh/ideal.hpp>
#include <lcoh/report.hpp>

namespace lcoh::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    std::string input;
    long window = 3;
    std::string coh;
    std::string format = "csv";
    std::string output;
    bool verify = false;
    unsigned jobs = 0;
    bool serial = false;
};

// "a..b" or a single degree "a".
inline DegreeRange parse_degree_range(const std::string &text)
{
    auto to_long = [&](const std::string &s) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (s.empty() || used != s.size()) {
            throw std::invalid_argument("--coh: expected 'a..b', got '" + text + "'");
        }
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const long v = to_long(text);
        return {v, v};
    }
    return {to_long(text.substr(0, dots)), to_long(text.substr(dots + 2))};
}

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_output(const std::string &path, const std::string &text, std::ostream &out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
}

inline int execute(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    std::optional<IdealSpec> ideal;
    ReportFormat format;
    DegreeRange degrees;
    try {
        ideal = parse_ideal(read_file(cfg.input));
        format = parse_format(cfg.format);
        if (ideal->num_generators() > kMaxGenerators || ideal->n() > kMaxVariables) {
            throw std::invalid_argument("at most " + std::to_string(kMaxGenerators) + " generators and "
                                        + std::to_string(kMaxVariables) + " variables are supported");
        }
        if (cfg.window < 1) {
            throw std::invalid_argument("--window must be >= 1");
        }
        const long top = static_cast<long>(ideal->num_generators());
        degrees = cfg.coh.empty() ? DegreeRange{0, top} : parse_degree_range(cfg.coh);
        if (cfg.verify && !cfg.coh.empty()) {
            throw std::invalid_argument("verify always covers every degree; drop --coh");
        }
        if (!degrees.empty() && (degrees.first < 0 || degrees.last > top)) {
            throw std::invalid_argument("--coh must lie within [0, " + std::to_string(top) + "]");
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const unsigned jobs = cfg.serial ? 1U : cfg.jobs;
        const auto reports = sweep(*ideal, cfg.window, degrees, jobs);
        if (!cfg.verify) {
            write_output(cfg.output, emit_report(reports, std::nullopt, format), out);
            return kExitOk;
        }
        const auto verdict = verify(*ideal, reports);
        if (!cfg.output.empty()) {
            write_output(cfg.output, emit_report(reports, verdict, format), out);
        }
        out << summarize(verdict);
        return verdict.passed() ? kExitOk : kExitVerificationFailed;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
}

inline int run(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    CLI::App app{"Graded components of local cohomology of C-monomial ideals over Z_(p)", "lcoh"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&cfg](CLI::App *sub) {
        sub->add_option("--input", cfg.input, "ideal-spec file (text or JSON)")->required();
        sub->add_option("--window", cfg.window, "sweep u over [-W, W]^n")->envname("LCOH_WINDOW");
        sub->add_option("--format", cfg.format, "csv or json")->envname("LCOH_FORMAT");
        sub->add_option("--output", cfg.output, "output path (default stdout)");
        sub->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");
        sub->add_flag("--serial", cfg.serial, "single-threaded sweep");
    };
    auto *compute = app.add_subcommand("compute", "sweep a window and emit the report");
    add_common(compute);
    compute->add_option("--coh", cfg.coh, "cohomological degrees, 'a..b' (default all)");
    auto *verify_cmd = app.add_subcommand("verify", "sweep every degree and check block constancy and identities");
    add_common(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    cfg.verify = verify_cmd->parsed();
    return execute(cfg, out, err);
}

} // namespace lcoh::cli

#endif
