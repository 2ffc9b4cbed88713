#ifndef LCOH_IDEAL_HPP
#define LCOH_IDEAL_HPP

// C-monomial ideals of A[X_1..X_n] and their document formats.
//
// Text form (one item per line, '#' starts a comment):
//
//     p = 5
//     n = 2
//     generator = 5 : 1 0      # 5 * X1
//     generator = 1 : 1 1      # X1 * X2
//
// Structured form (JSON):
//
//     {"p": 5, "n": 2, "generators": [{"coeff": 5, "exponent": [1, 0]},
//                                     {"coeff": 1, "exponent": [1, 1]}]}
//
// Coefficients are nonzero integers (JSON: number or decimal string).

#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <lcoh/error.hpp>
#include <lcoh/scalar.hpp>

namespace lcoh
{

struct CMonomialGenerator {
    Scalar coeff;
    std::vector<long> exponent;

    friend bool operator==(const CMonomialGenerator &, const CMonomialGenerator &) = default;
};

class IdealSpec
{
public:
    IdealSpec(PrimeParam p, std::size_t n, std::vector<CMonomialGenerator> generators)
        : m_p(std::move(p)), m_n(n), m_gens(std::move(generators))
    {
        if (m_n < 1) {
            throw std::invalid_argument("n must be >= 1");
        }
        if (m_gens.empty()) {
            throw std::invalid_argument("ideal needs >= 1 generator");
        }
        for (std::size_t g = 0; g < m_gens.size(); ++g) {
            const auto &gen = m_gens[g];
            const std::string where = "generator " + std::to_string(g + 1) + ": ";
            if (gen.coeff.is_zero()) {
                throw std::invalid_argument(where + "coefficient must be nonzero");
            }
            if (!gen.coeff.is_integral(m_p)) {
                throw std::invalid_argument(where + "coefficient must lie in A");
            }
            if (gen.exponent.size() != m_n) {
                throw std::invalid_argument(where + "exponent needs " + std::to_string(m_n) + " entries");
            }
            for (long e : gen.exponent) {
                if (e < 0) {
                    throw std::invalid_argument(where + "negative exponent");
                }
            }
        }
    }

    const PrimeParam &p() const noexcept { return m_p; }
    std::size_t n() const noexcept { return m_n; }
    std::size_t num_generators() const noexcept { return m_gens.size(); }
    const std::vector<CMonomialGenerator> &generators() const noexcept { return m_gens; }
    const CMonomialGenerator &generator(std::size_t i) const { return m_gens.at(i); }

    // The same ideal with one more generator appended.
    IdealSpec with_generator(CMonomialGenerator g) const
    {
        auto gens = m_gens;
        gens.push_back(std::move(g));
        return IdealSpec(m_p, m_n, std::move(gens));
    }

    friend bool operator==(const IdealSpec &a, const IdealSpec &b)
    {
        return a.m_p == b.m_p && a.m_n == b.m_n && a.m_gens == b.m_gens;
    }

private:
    PrimeParam m_p;
    std::size_t m_n;
    std::vector<CMonomialGenerator> m_gens;
};

struct GradedDegree {
    std::vector<long> u;

    std::size_t size() const noexcept { return u.size(); }
    long operator[](std::size_t i) const { return u[i]; }

    // supp_+(u) = {i : u_i > 0}, 0-based.
    std::vector<std::size_t> supp_plus() const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i] > 0) {
                out.push_back(i);
            }
        }
        return out;
    }

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < u.size(); ++i) {
            s += (i ? "," : "") + std::to_string(u[i]);
        }
        return s + ")";
    }

    friend bool operator==(const GradedDegree &, const GradedDegree &) = default;
    friend auto operator<=>(const GradedDegree &, const GradedDegree &) = default;
};

namespace detail
{

inline std::string trim(const std::string &s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

inline long parse_long(const std::string &tok, std::size_t line, const std::string &field)
{
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(tok, &used);
    } catch (const std::exception &) {
        throw ParseError(line, field + ": expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) {
        throw ParseError(line, field + ": expected an integer, got '" + tok + "'");
    }
    return v;
}

inline mpz_class parse_integer(const std::string &tok, std::size_t line, const std::string &field)
{
    mpz_class z;
    std::string t = tok;
    if (!t.empty() && t[0] == '+') {
        t.erase(0, 1);
    }
    if (t.empty() || z.set_str(t, 10) != 0) {
        throw ParseError(line, field + ": expected an integer, got '" + tok + "'");
    }
    return z;
}

inline IdealSpec make_ideal(long p, long n, std::vector<CMonomialGenerator> gens, std::size_t line)
{
    if (!PrimeParam::is_prime(p)) {
        throw ParseError(line, "p must be prime (got " + std::to_string(p) + ")");
    }
    if (n < 1) {
        throw ParseError(line, "n must be >= 1");
    }
    if (gens.empty()) {
        throw ParseError(line, "ideal needs >= 1 generator");
    }
    try {
        return IdealSpec(PrimeParam(p), static_cast<std::size_t>(n), std::move(gens));
    } catch (const std::invalid_argument &e) {
        throw ParseError(line, e.what());
    }
}

inline IdealSpec parse_ideal_text(const std::string &text)
{
    std::optional<long> p, n;
    std::vector<CMonomialGenerator> gens;
    std::vector<std::size_t> gen_lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(lineno, "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "p" || key == "n") {
            auto &slot = key == "p" ? p : n;
            if (slot) {
                throw ParseError(lineno, "duplicate field '" + key + "'");
            }
            slot = parse_long(value, lineno, key);
        } else if (key == "generator") {
            const auto colon = value.find(':');
            if (colon == std::string::npos) {
                throw ParseError(lineno, "generator: expected '<coeff> : <e1> ... <en>'");
            }
            CMonomialGenerator g;
            g.coeff = Scalar(parse_integer(trim(value.substr(0, colon)), lineno, "generator coeff"));
            if (g.coeff.is_zero()) {
                throw ParseError(lineno, "generator coeff must be nonzero");
            }
            std::istringstream es(value.substr(colon + 1));
            std::string tok;
            while (es >> tok) {
                const long e = parse_long(tok, lineno, "generator exponent");
                if (e < 0) {
                    throw ParseError(lineno, "generator exponent must be >= 0");
                }
                g.exponent.push_back(e);
            }
            gens.push_back(std::move(g));
            gen_lines.push_back(lineno);
        } else {
            throw ParseError(lineno, "unknown field '" + key + "'");
        }
    }
    if (!p) {
        throw ParseError(0, "missing field 'p'");
    }
    if (!n) {
        throw ParseError(0, "missing field 'n'");
    }
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (gens[g].exponent.size() != static_cast<std::size_t>(*n)) {
            throw ParseError(gen_lines[g], "generator exponent needs " + std::to_string(*n) + " entries, got "
                                               + std::to_string(gens[g].exponent.size()));
        }
    }
    return make_ideal(*p, *n, std::move(gens), 0);
}

inline IdealSpec parse_ideal_json(const std::string &text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    auto field = [&](const char *name) -> const nlohmann::json & {
        if (!doc.is_object() || !doc.contains(name)) {
            throw ParseError(0, std::string("missing field '") + name + "'");
        }
        return doc.at(name);
    };
    const auto &pj = field("p");
    const auto &nj = field("n");
    const auto &gj = field("generators");
    if (!pj.is_number_integer()) {
        throw ParseError(0, "p: expected an integer");
    }
    if (!nj.is_number_integer()) {
        throw ParseError(0, "n: expected an integer");
    }
    if (!gj.is_array()) {
        throw ParseError(0, "generators: expected a list");
    }
    std::vector<CMonomialGenerator> gens;
    for (std::size_t g = 0; g < gj.size(); ++g) {
        const auto &item = gj[g];
        const std::string where = "generators[" + std::to_string(g) + "]";
        if (!item.is_object() || !item.contains("coeff") || !item.contains("exponent")) {
            throw ParseError(0, where + ": expected {coeff, exponent}");
        }
        CMonomialGenerator gen;
        const auto &c = item.at("coeff");
        if (c.is_number_integer()) {
            gen.coeff = Scalar(c.get<long>());
        } else if (c.is_string()) {
            gen.coeff = Scalar(parse_integer(c.get<std::string>(), 0, where + ".coeff"));
        } else {
            throw ParseError(0, where + ".coeff: expected an integer");
        }
        if (gen.coeff.is_zero()) {
            throw ParseError(0, where + ".coeff must be nonzero");
        }
        const auto &e = item.at("exponent");
        if (!e.is_array()) {
            throw ParseError(0, where + ".exponent: expected a list");
        }
        for (const auto &x : e) {
            if (!x.is_number_integer()) {
                throw ParseError(0, where + ".exponent: expected integers");
            }
            if (x.get<long>() < 0) {
                throw ParseError(0, where + ".exponent must be >= 0");
            }
            gen.exponent.push_back(x.get<long>());
        }
        gens.push_back(std::move(gen));
    }
    return make_ideal(pj.get<long>(), nj.get<long>(), std::move(gens), 0);
}

} // namespace detail

// Parses either document form; JSON is recognized by a leading '{'.
inline IdealSpec parse_ideal(const std::string &text)
{
    const std::string t = detail::trim(text);
    if (!t.empty() && t.front() == '{') {
        return detail::parse_ideal_json(t);
    }
    return detail::parse_ideal_text(text);
}

inline std::string to_text(const IdealSpec &ideal)
{
    std::ostringstream os;
    os << "p = " << ideal.p().value() << "\n";
    os << "n = " << ideal.n() << "\n";
    for (const auto &g : ideal.generators()) {
        os << "generator = " << g.coeff << " :";
        for (long e : g.exponent) {
            os << ' ' << e;
        }
        os << "\n";
    }
    return os.str();
}

inline nlohmann::json to_json(const IdealSpec &ideal)
{
    nlohmann::json gens = nlohmann::json::array();
    for (const auto &g : ideal.generators()) {
        nlohmann::json coeff;
        if (g.coeff.value().get_num().fits_slong_p()) {
            coeff = g.coeff.value().get_num().get_si();
        } else {
            coeff = g.coeff.to_string();
        }
        gens.push_back({{"coeff", coeff}, {"exponent", g.exponent}});
    }
    return {{"p", ideal.p().value()}, {"n", ideal.n()}, {"generators", gens}};
}

} // namespace lcoh

#endif
