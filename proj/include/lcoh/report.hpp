#ifndef LCOH_REPORT_HPP
#define LCOH_REPORT_HPP

// CSV and JSON serialization of sweeps.
//
// CSV columns, in order:
//   i,u,a,b,l,alpha,t,mu0,mu1,dimQ,dimFp,block
// u and alpha are bracketed lists and block is a set of 1-based variable
// indices; those three fields are quoted. A verdict, when present, follows the
// table as '#'-prefixed lines.

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <lcoh/blocks.hpp>

namespace lcoh
{

enum class ReportFormat { Csv, Json };

inline ReportFormat parse_format(const std::string &name)
{
    if (name == "csv") {
        return ReportFormat::Csv;
    }
    if (name == "json") {
        return ReportFormat::Json;
    }
    throw std::invalid_argument("unknown format '" + name + "' (supported: csv, json)");
}

namespace detail
{

template <typename T>
std::string bracket_list(const std::vector<T> &xs)
{
    std::string s = "[";
    for (std::size_t k = 0; k < xs.size(); ++k) {
        s += (k ? "," : "") + std::to_string(xs[k]);
    }
    return s + "]";
}

inline nlohmann::json verdict_json(const VerificationVerdict &v)
{
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto &b : v.blocks) {
        nlohmann::json jb = {{"i", b.i},
                             {"block", b.block.to_string()},
                             {"corner", b.block.corner.u},
                             {"cells", b.cells},
                             {"constant", b.constant},
                             {"bass_constant", b.bass_constant},
                             {"shape", b.witness.to_string()}};
        jb["counterexample"] = b.counterexample ? nlohmann::json(b.counterexample->u) : nlohmann::json(nullptr);
        jb["bass_counterexample"]
            = b.bass_counterexample ? nlohmann::json(b.bass_counterexample->u) : nlohmann::json(nullptr);
        blocks.push_back(std::move(jb));
    }
    nlohmann::json failures = nlohmann::json::array();
    for (const auto &f : v.failures) {
        failures.push_back({{"identity", f.identity}, {"i", f.i}, {"u", f.u.u}, {"lhs", f.lhs}, {"rhs", f.rhs}});
    }
    return {{"passed", v.passed()},
            {"blocks", blocks},
            {"torsion_bound", {{"m", v.torsion.m}, {"s", v.torsion.s}, {"bound_ok", v.torsion.bound_ok}}},
            {"identity_checks", v.identity_checks},
            {"failures", failures}};
}

} // namespace detail

// Plain-text verdict summary, one fact per line.
inline std::string summarize(const VerificationVerdict &v)
{
    std::ostringstream os;
    std::size_t constant = 0;
    for (const auto &b : v.blocks) {
        constant += (b.constant && b.bass_constant) ? 1 : 0;
    }
    os << "block constancy: " << constant << "/" << v.blocks.size() << " (i, U) pairs constant\n";
    for (const auto &b : v.blocks) {
        if (!b.constant) {
            os << "  i=" << b.i << " block " << b.block.to_string() << ": shape at " << b.counterexample->to_string()
               << " differs from corner shape " << b.witness.to_string() << "\n";
        }
        if (!b.bass_constant) {
            os << "  i=" << b.i << " block " << b.block.to_string() << ": Bass numbers at "
               << b.bass_counterexample->to_string() << " differ from the corner\n";
        }
    }
    os << "torsion bound: m=" << v.torsion.m << " s=" << v.torsion.s << " " << (v.torsion.bound_ok ? "ok" : "FAILED")
       << "\n";
    for (const auto &[name, count] : v.identity_checks) {
        std::size_t failed = 0;
        for (const auto &f : v.failures) {
            failed += f.identity.rfind(name, 0) == 0 ? 1 : 0;
        }
        os << "identity " << name << ": " << (count - failed) << "/" << count << " cells\n";
    }
    for (const auto &f : v.failures) {
        os << "  " << f.identity << " fails at i=" << f.i << " u=" << f.u.to_string() << ": " << f.lhs
           << " != " << f.rhs << "\n";
    }
    os << (v.passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

inline std::string emit_report(const std::vector<ComponentReport> &reports,
                               const std::optional<VerificationVerdict> &verdict, ReportFormat format)
{
    if (format == ReportFormat::Csv) {
        std::ostringstream os;
        os << "i,u,a,b,l,alpha,t,mu0,mu1,dimQ,dimFp,block\n";
        for (const auto &r : reports) {
            os << r.i << ",\"" << detail::bracket_list(r.u.u) << "\"," << r.shape.a << ',' << r.shape.b << ','
               << r.shape.l << ",\"" << detail::bracket_list(r.shape.alpha) << "\"," << r.shape.t() << ',' << r.mu0
               << ',' << r.mu1 << ',' << r.dimQ.value << ',' << r.dimFp.value << ",\""
               << block_of(r.u).to_string() << "\"\n";
        }
        if (verdict) {
            std::istringstream summary(summarize(*verdict));
            std::string line;
            while (std::getline(summary, line)) {
                os << "# " << line << "\n";
            }
        }
        return os.str();
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : reports) {
        rows.push_back({{"i", r.i},
                        {"u", r.u.u},
                        {"a", r.shape.a},
                        {"b", r.shape.b},
                        {"l", r.shape.l},
                        {"alpha", r.shape.alpha},
                        {"t", r.shape.t()},
                        {"mu0", r.mu0},
                        {"mu1", r.mu1},
                        {"dimQ", r.dimQ.value},
                        {"dimFp", r.dimFp.value},
                        {"block", block_of(r.u).to_string()}});
    }
    nlohmann::json doc = {{"reports", rows}};
    doc["verdict"] = verdict ? detail::verdict_json(*verdict) : nlohmann::json(nullptr);
    return doc.dump(2) + "\n";
}

} // namespace lcoh

#endif
