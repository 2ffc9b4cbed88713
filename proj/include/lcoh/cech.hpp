#ifndef LCOH_CECH_HPP
#define LCOH_CECH_HPP

// Degree-u slices of the Cech complex of a C-monomial ideal.
//
// For a subset S of generators put c_S = prod coeff_i and w_S = sum exponent_i.
// The localization R_{c_S X^w_S} is A[1/c_S][X_i^{+-1} : i in supp w_S][X_j : j
// not in supp w_S], so its degree-u component is
//   0       if u_j < 0 for some j outside supp w_S,
//   A       if c_S is a p-unit,
//   K       otherwise.
// Under the common embedding into K every localization map is the identity
// on that coordinate, so the differentials only carry signs.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <lcoh/dvr_module.hpp>
#include <lcoh/ideal.hpp>

namespace lcoh
{

enum class LocalizationKind { Zero, FreeA, FullK };

using SubsetMask = std::uint32_t;

inline constexpr std::size_t kMaxGenerators = 20;
inline constexpr std::size_t kMaxVariables = 64;

namespace detail
{

// Per-ideal data needed to classify localizations quickly.
struct GeneratorTable {
    std::vector<std::uint64_t> support;
    SubsetMask non_units = 0;

    explicit GeneratorTable(const IdealSpec &ideal)
    {
        if (ideal.num_generators() > kMaxGenerators) {
            throw std::invalid_argument("at most " + std::to_string(kMaxGenerators) + " generators are supported");
        }
        if (ideal.n() > kMaxVariables) {
            throw std::invalid_argument("at most " + std::to_string(kMaxVariables) + " variables are supported");
        }
        for (std::size_t g = 0; g < ideal.num_generators(); ++g) {
            const auto &gen = ideal.generator(g);
            std::uint64_t s = 0;
            for (std::size_t j = 0; j < ideal.n(); ++j) {
                if (gen.exponent[j] > 0) {
                    s |= std::uint64_t{1} << j;
                }
            }
            support.push_back(s);
            if (valuation(gen.coeff, ideal.p()) > 0) {
                non_units |= SubsetMask{1} << g;
            }
        }
    }

    LocalizationKind classify(SubsetMask s, std::uint64_t negative) const
    {
        std::uint64_t supp = 0;
        for (SubsetMask rest = s; rest; rest &= rest - 1) {
            supp |= support[static_cast<std::size_t>(std::countr_zero(rest))];
        }
        if ((negative & ~supp) != 0) {
            return LocalizationKind::Zero;
        }
        return (s & non_units) ? LocalizationKind::FullK : LocalizationKind::FreeA;
    }
};

inline std::uint64_t negative_support(const IdealSpec &ideal, const GradedDegree &u)
{
    if (u.size() != ideal.n()) {
        throw std::invalid_argument("degree " + u.to_string() + " has the wrong length for n = "
                                    + std::to_string(ideal.n()));
    }
    std::uint64_t neg = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (u[j] < 0) {
            neg |= std::uint64_t{1} << j;
        }
    }
    return neg;
}

// Lexicographic order on the sorted index lists of two equal-size subsets.
inline bool lex_less(SubsetMask a, SubsetMask b)
{
    while (a && b) {
        const int x = std::countr_zero(a);
        const int y = std::countr_zero(b);
        if (x != y) {
            return x < y;
        }
        a &= a - 1;
        b &= b - 1;
    }
    return b != 0;
}

} // namespace detail

// Subsets of {0..r-1} of size t, in lexicographic order.
inline std::vector<SubsetMask> subsets_of_size(std::size_t r, std::size_t t)
{
    std::vector<SubsetMask> out;
    for (SubsetMask s = 0; s < (SubsetMask{1} << r); ++s) {
        if (static_cast<std::size_t>(std::popcount(s)) == t) {
            out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end(), detail::lex_less);
    return out;
}

// Sign of the localization map from S to S + {k}: (-1)^(position of k in the
// sorted S + {k}).
inline long cech_sign(SubsetMask s, std::size_t k)
{
    const SubsetMask below = s & ((SubsetMask{1} << k) - 1);
    return (std::popcount(below) % 2) ? -1 : 1;
}

// Degree-u component of the localization at the product of the generators in
// S (0-based generator indices). S must be nonempty.
inline LocalizationKind localization_component(const IdealSpec &ideal, const std::vector<std::size_t> &subset,
                                               const GradedDegree &u)
{
    if (subset.empty()) {
        throw std::invalid_argument("localization_component: S must be nonempty");
    }
    SubsetMask s = 0;
    for (auto g : subset) {
        if (g >= ideal.num_generators()) {
            throw std::out_of_range("localization_component: no generator " + std::to_string(g));
        }
        s |= SubsetMask{1} << g;
    }
    return detail::GeneratorTable(ideal).classify(s, detail::negative_support(ideal, u));
}

struct CechSlot {
    SubsetMask subset;
    LocalizationKind kind;
};

// The nonzero slots of the degree-u Cech complex, by position |S| = 0..r.
// Position 0 is the ring itself.
struct CechSkeleton {
    std::size_t num_generators = 0;
    std::vector<std::vector<CechSlot>> positions;

    std::size_t count(std::size_t t, bool free_only) const
    {
        std::size_t c = 0;
        for (const auto &slot : positions.at(t)) {
            if (!free_only || slot.kind == LocalizationKind::FreeA) {
                ++c;
            }
        }
        return c;
    }
};

inline CechSkeleton cech_skeleton(const IdealSpec &ideal, const GradedDegree &u)
{
    const detail::GeneratorTable table(ideal);
    const std::uint64_t neg = detail::negative_support(ideal, u);
    const std::size_t r = ideal.num_generators();
    CechSkeleton sk;
    sk.num_generators = r;
    sk.positions.resize(r + 1);
    for (std::size_t t = 0; t <= r; ++t) {
        for (SubsetMask s : subsets_of_size(r, t)) {
            const auto kind = table.classify(s, neg);
            if (kind != LocalizationKind::Zero) {
                sk.positions[t].push_back({s, kind});
            }
        }
    }
    return sk;
}

// Builds the sign matrix of d^t restricted to the slots accepted by keep,
// calling set(row, col, sign) for each nonzero entry.
template <typename Keep, typename Set>
void for_each_differential_entry(const CechSkeleton &sk, std::size_t t, Keep keep, Set set)
{
    std::vector<long> col_of(std::size_t{1} << sk.num_generators, -1);
    std::vector<long> row_of(std::size_t{1} << sk.num_generators, -1);
    long c = 0;
    for (const auto &slot : sk.positions[t]) {
        if (keep(slot)) {
            col_of[slot.subset] = c++;
        }
    }
    long r = 0;
    for (const auto &slot : sk.positions[t + 1]) {
        if (keep(slot)) {
            row_of[slot.subset] = r++;
        }
    }
    for (const auto &slot : sk.positions[t]) {
        if (col_of[slot.subset] < 0) {
            continue;
        }
        for (std::size_t k = 0; k < sk.num_generators; ++k) {
            const SubsetMask bit = SubsetMask{1} << k;
            if (slot.subset & bit) {
                continue;
            }
            const long row = row_of[slot.subset | bit];
            if (row >= 0) {
                set(static_cast<std::size_t>(row), static_cast<std::size_t>(col_of[slot.subset]),
                    cech_sign(slot.subset, k));
            }
        }
    }
}

struct DegreeComplex {
    std::vector<ElementaryModule> terms;
    std::vector<ChainMap> maps;
    // subsets[t][k] is the generator subset behind summand k of terms[t].
    std::vector<std::vector<SubsetMask>> subsets;
};

inline DegreeComplex build_degree_complex(const IdealSpec &ideal, const GradedDegree &u)
{
    const auto sk = cech_skeleton(ideal, u);
    const auto &p = ideal.p();
    DegreeComplex cx;
    for (const auto &slots : sk.positions) {
        std::vector<SummandTag> tags;
        std::vector<SubsetMask> subs;
        for (const auto &slot : slots) {
            tags.push_back(slot.kind == LocalizationKind::FreeA ? SummandTag::FreeA : SummandTag::FullK);
            subs.push_back(slot.subset);
        }
        cx.terms.emplace_back(std::move(tags));
        cx.subsets.push_back(std::move(subs));
    }
    const auto keep_all = [](const CechSlot &) { return true; };
    // Entries are signs, so d o d = 0 is checked in machine integers.
    std::vector<Matrix<long>> signs;
    for (std::size_t t = 0; t + 1 < sk.positions.size(); ++t) {
        Matrix<long> s(cx.terms[t + 1].ambient_dim(), cx.terms[t].ambient_dim(), 0);
        for_each_differential_entry(sk, t, keep_all, [&](std::size_t r, std::size_t c, long sign) { s(r, c) = sign; });
        ScalarMatrix m(s.rows(), s.cols());
        for (std::size_t r = 0; r < s.rows(); ++r) {
            for (std::size_t c = 0; c < s.cols(); ++c) {
                m(r, c) = Scalar(s(r, c));
            }
        }
        cx.maps.emplace_back(cx.terms[t], cx.terms[t + 1], std::move(m), p);
        signs.push_back(std::move(s));
    }
    for (std::size_t t = 1; t < signs.size(); ++t) {
        const auto prod = signs[t] * signs[t - 1];
        for (std::size_t r = 0; r < prod.rows(); ++r) {
            for (std::size_t c = 0; c < prod.cols(); ++c) {
                if (prod(r, c) != 0) {
                    throw NotAComplex(t);
                }
            }
        }
    }
    return cx;
}

// Shape of H^i_I(R)_u; zero for i outside [0, #generators].
inline ModuleShape local_cohomology_component(const IdealSpec &ideal, long i, const GradedDegree &u)
{
    if (i < 0 || static_cast<std::size_t>(i) > ideal.num_generators()) {
        return {};
    }
    const auto cx = build_degree_complex(ideal, u);
    return cohomology_at(cx.terms, cx.maps, i, ideal.p());
}

// Shapes of H^i_I(R)_u for i = 0..#generators.
inline std::vector<ModuleShape> local_cohomology_all(const IdealSpec &ideal, const GradedDegree &u)
{
    // build_degree_complex has already checked d o d = 0.
    const auto cx = build_degree_complex(ideal, u);
    return detail::cohomology_all_unchecked(cx.terms, cx.maps, ideal.p());
}

} // namespace lcoh

#endif
