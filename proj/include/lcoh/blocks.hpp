#ifndef LCOH_BLOCKS_HPP
#define LCOH_BLOCKS_HPP

// Blocks of Z^n, degree sweeps and the checks run over them.
//
// The block of U is B(U) = {u : u_i >= 0 for i in U, u_i <= -1 otherwise}; the
// 2^n blocks partition Z^n. Constancy of shapes on a block can only be checked
// inside a finite window, so a passing verdict is evidence, not proof.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include <lcoh/cech.hpp>
#include <lcoh/dvr_module.hpp>
#include <lcoh/field_oracle.hpp>
#include <lcoh/ideal.hpp>

namespace lcoh
{

struct BlockId {
    // Bit j set iff variable j+1 is in U.
    std::uint64_t members = 0;
    GradedDegree corner;

    std::size_t n() const noexcept { return corner.size(); }
    bool contains(std::size_t j) const noexcept { return (members >> j) & 1U; }

    // "{1,3}" with 1-based variable indices.
    std::string to_string() const
    {
        std::string s = "{";
        bool first = true;
        for (std::size_t j = 0; j < n(); ++j) {
            if (contains(j)) {
                s += (first ? "" : ",") + std::to_string(j + 1);
                first = false;
            }
        }
        return s + "}";
    }

    friend bool operator==(const BlockId &a, const BlockId &b) { return a.corner == b.corner; }
};

inline BlockId make_block(std::uint64_t members, std::size_t n)
{
    BlockId b;
    b.members = members;
    b.corner.u.assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        if (!((members >> j) & 1U)) {
            b.corner.u[j] = -1;
        }
    }
    return b;
}

// All 2^n blocks. The k-th block has u_j = -1 exactly for the set bits j of k,
// so the full block {1..n} comes first and the empty block last.
inline std::vector<BlockId> blocks(std::size_t n)
{
    if (n < 1 || n > 30) {
        throw std::invalid_argument("blocks: n must be in [1, 30]");
    }
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    std::vector<BlockId> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t k = 0; k <= all; ++k) {
        out.push_back(make_block(all & ~k, n));
    }
    return out;
}

inline BlockId block_of(const GradedDegree &u)
{
    std::uint64_t members = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (u[j] >= 0) {
            members |= std::uint64_t{1} << j;
        }
    }
    return make_block(members, u.size());
}

struct BassNumbers {
    std::size_t mu0 = 0;
    std::size_t mu1 = 0;

    // mu_i(pA, M_u); zero for i >= 2 since 0 -> A -> A -> A/pA -> 0 is a free
    // resolution of the residue field.
    std::size_t mu(std::size_t i) const noexcept { return i == 0 ? mu0 : i == 1 ? mu1 : 0; }

    friend bool operator==(const BassNumbers &, const BassNumbers &) = default;
};

// mu0 = dim Hom(A/p, M_u) = l + t and mu1 = dim Ext^1(A/p, M_u) = a + t.
inline BassNumbers bass_numbers(const ModuleShape &shape)
{
    return {shape.l + shape.t(), shape.a + shape.t()};
}

struct ComponentReport {
    long i = 0;
    GradedDegree u;
    ModuleShape shape;
    std::size_t mu0 = 0;
    std::size_t mu1 = 0;
    FieldDim dimQ;
    FieldDim dimFp;
};

// Closed range of cohomological degrees; empty when last < first.
struct DegreeRange {
    long first = 0;
    long last = -1;

    bool empty() const noexcept { return last < first; }
    bool contains(long i) const noexcept { return i >= first && i <= last; }
};

// All u in [-window, window]^n in lexicographic order.
inline std::vector<GradedDegree> window_cells(std::size_t n, long window)
{
    if (window < 1) {
        throw std::invalid_argument("window must be >= 1");
    }
    std::vector<GradedDegree> out;
    GradedDegree u{std::vector<long>(n, -window)};
    while (true) {
        out.push_back(u);
        std::size_t j = n;
        while (j > 0 && u.u[j - 1] == window) {
            u.u[j - 1] = -window;
            --j;
        }
        if (j == 0) {
            break;
        }
        ++u.u[j - 1];
    }
    return out;
}

// Reports for every u in the window and i in degrees, ordered by (i, u).
// Cells are independent; jobs = 0 uses every hardware thread.
inline std::vector<ComponentReport> sweep(const IdealSpec &ideal, long window, DegreeRange degrees, unsigned jobs = 1)
{
    const auto cells = window_cells(ideal.n(), window);
    if (degrees.empty()) {
        return {};
    }
    const long top = static_cast<long>(ideal.num_generators());
    const std::size_t per_cell = static_cast<std::size_t>(degrees.last - degrees.first + 1);
    std::vector<ComponentReport> out(cells.size() * per_cell);

    auto compute_cell = [&](std::size_t c) {
        const auto &u = cells[c];
        const auto shapes = local_cohomology_all(ideal, u);
        const auto dq = cech_dims_over_Q(ideal, u);
        const auto dp = cech_dims_over_Fp(ideal, u);
        for (long i = degrees.first; i <= degrees.last; ++i) {
            ComponentReport rep;
            rep.i = i;
            rep.u = u;
            if (i >= 0 && i <= top) {
                const auto k = static_cast<std::size_t>(i);
                rep.shape = shapes[k];
                rep.dimQ = dq[k];
                rep.dimFp = dp[k];
            }
            const auto bass = bass_numbers(rep.shape);
            rep.mu0 = bass.mu0;
            rep.mu1 = bass.mu1;
            // Degree-major layout gives the (i, lex u) order directly.
            out[static_cast<std::size_t>(i - degrees.first) * cells.size() + c] = std::move(rep);
        }
    };

    if (jobs == 0) {
        jobs = std::max(1U, std::thread::hardware_concurrency());
    }
    if (jobs == 1 || cells.size() < 2) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            compute_cell(c);
        }
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t c = next++; c < cells.size(); c = next++) {
                    compute_cell(c);
                }
            } catch (...) {
                errors[w] = std::current_exception();
                next = cells.size();
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

struct BlockVerdict {
    long i = 0;
    BlockId block;
    std::size_t cells = 0;
    bool constant = true;
    ModuleShape witness;
    std::optional<GradedDegree> counterexample;
    bool bass_constant = true;
    std::optional<GradedDegree> bass_counterexample;
};

struct TorsionBound {
    // Largest torsion exponent on [-1,1]^n, and over the whole window.
    std::size_t m = 0;
    std::size_t s = 0;
    bool bound_ok = true;
};

struct IdentityFailure {
    std::string identity;
    long i = 0;
    GradedDegree u;
    long lhs = 0;
    long rhs = 0;
};

struct VerificationVerdict {
    std::vector<BlockVerdict> blocks;
    TorsionBound torsion;
    // Number of cells each identity was evaluated on.
    std::map<std::string, std::size_t> identity_checks;
    std::vector<IdentityFailure> failures;

    bool blocks_constant() const
    {
        return std::all_of(blocks.begin(), blocks.end(),
                           [](const BlockVerdict &b) { return b.constant && b.bass_constant; });
    }
    bool passed() const { return blocks_constant() && torsion.bound_ok && failures.empty(); }
};

// Per (i, U): does every cell of B(U) in the reports match the corner cell?
inline std::vector<BlockVerdict> verify_block_constancy(const std::vector<ComponentReport> &reports)
{
    std::map<std::pair<long, GradedDegree>, const ComponentReport *> corners;
    for (const auto &r : reports) {
        if (r.u == block_of(r.u).corner) {
            corners[{r.i, r.u}] = &r;
        }
    }
    std::map<std::pair<long, GradedDegree>, BlockVerdict> verdicts;
    for (const auto &r : reports) {
        const BlockId b = block_of(r.u);
        const auto corner = corners.find({r.i, b.corner});
        if (corner == corners.end()) {
            throw std::invalid_argument("reports miss the corner " + b.corner.to_string() + " of block "
                                        + b.to_string() + " at i = " + std::to_string(r.i));
        }
        auto [it, fresh] = verdicts.try_emplace({r.i, b.corner});
        BlockVerdict &v = it->second;
        if (fresh) {
            v.i = r.i;
            v.block = b;
            v.witness = corner->second->shape;
        }
        ++v.cells;
        if (v.constant && !(r.shape == v.witness)) {
            v.constant = false;
            v.counterexample = r.u;
        }
        if (v.bass_constant && (r.mu0 != corner->second->mu0 || r.mu1 != corner->second->mu1)) {
            v.bass_constant = false;
            v.bass_counterexample = r.u;
        }
    }
    std::vector<BlockVerdict> out;
    for (auto &[key, v] : verdicts) {
        out.push_back(std::move(v));
    }
    return out;
}

inline TorsionBound verify_torsion_bound(const std::vector<ComponentReport> &reports)
{
    TorsionBound tb;
    for (const auto &r : reports) {
        const std::size_t e = r.shape.max_torsion_exponent();
        tb.s = std::max(tb.s, e);
        const bool in_cube = std::all_of(r.u.u.begin(), r.u.u.end(), [](long x) { return x >= -1 && x <= 1; });
        if (in_cube) {
            tb.m = std::max(tb.m, e);
        }
    }
    tb.bound_ok = tb.s <= tb.m;
    return tb;
}

// Every consistency check on a sweep of ideal: block constancy, the torsion
// bound, the Bass formulas, and the Q / F_p / Euler characteristic identities.
inline VerificationVerdict verify(const IdealSpec &ideal, const std::vector<ComponentReport> &reports)
{
    VerificationVerdict v;
    v.blocks = verify_block_constancy(reports);
    v.torsion = verify_torsion_bound(reports);

    const long top = static_cast<long>(ideal.num_generators());
    std::map<std::pair<long, GradedDegree>, const ComponentReport *> index;
    for (const auto &r : reports) {
        index[{r.i, r.u}] = &r;
    }
    auto fail = [&](const char *name, const ComponentReport &r, long lhs, long rhs) {
        v.failures.push_back({name, r.i, r.u, lhs, rhs});
    };
    std::map<GradedDegree, std::size_t> degrees_seen;
    for (const auto &r : reports) {
        const auto &s = r.shape;
        const auto bass = bass_numbers(s);
        ++v.identity_checks["bass"];
        if (r.mu0 != bass.mu0) {
            fail("bass_mu0", r, static_cast<long>(r.mu0), static_cast<long>(bass.mu0));
        }
        if (r.mu1 != bass.mu1) {
            fail("bass_mu1", r, static_cast<long>(r.mu1), static_cast<long>(bass.mu1));
        }

        ++v.identity_checks["rational"];
        const long q_rhs = static_cast<long>(s.a + s.b);
        if (static_cast<long>(r.dimQ.value) != q_rhs) {
            fail("rational", r, static_cast<long>(r.dimQ.value), q_rhs);
        }

        std::optional<ModuleShape> next;
        if (r.i + 1 > top || r.i + 1 < 0) {
            next = ModuleShape{};
        } else if (auto it = index.find({r.i + 1, r.u}); it != index.end()) {
            next = it->second->shape;
        }
        if (next) {
            ++v.identity_checks["residue"];
            const long fp_rhs = static_cast<long>(s.a + s.t() + next->l + next->t());
            if (static_cast<long>(r.dimFp.value) != fp_rhs) {
                fail("residue", r, static_cast<long>(r.dimFp.value), fp_rhs);
            }
        }
        if (r.i >= 0 && r.i <= top) {
            ++degrees_seen[r.u];
        }
    }

    for (const auto &[u, count] : degrees_seen) {
        if (count != static_cast<std::size_t>(top + 1)) {
            continue;
        }
        const auto sk = cech_skeleton(ideal, u);
        long chi_q = 0, chi_p = 0;
        for (long i = 0; i <= top; ++i) {
            const auto &r = *index.at({i, u});
            const long sign = (i % 2) ? -1 : 1;
            chi_q += sign * static_cast<long>(r.dimQ.value);
            chi_p += sign * static_cast<long>(r.dimFp.value);
        }
        const auto &r0 = *index.at({0, u});
        ++v.identity_checks["euler_q"];
        if (chi_q != cech_euler_characteristic(sk, false)) {
            fail("euler_q", r0, chi_q, cech_euler_characteristic(sk, false));
        }
        ++v.identity_checks["euler_fp"];
        if (chi_p != cech_euler_characteristic(sk, true)) {
            fail("euler_fp", r0, chi_p, cech_euler_characteristic(sk, true));
        }
    }
    return v;
}

} // namespace lcoh

#endif
