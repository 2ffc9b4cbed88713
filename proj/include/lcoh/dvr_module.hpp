#ifndef LCOH_DVR_MODULE_HPP
#define LCOH_DVR_MODULE_HPP

// Module calculus over the DVR A = Z_(p).
//
// Objects are finite direct sums of copies of A and K. A submodule of such a
// sum is presented as A*L + D, where D is a K-subspace (the divisible part)
// and L a finite set of lattice generators. Cohomology of a complex of such
// sums is classified as
//
//     A^a (+) K^b (+) E^l (+) (+)_j (A/p^j)^alpha_j,     E = K/A.
//
// The decomposition is computed, not proved: K and E are injective and A is
// projective, so every extension met along the way splits and only ranks and
// invariant factors need to be tracked. No element of E is ever materialized.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <lcoh/error.hpp>
#include <lcoh/linalg.hpp>
#include <lcoh/matrix.hpp>
#include <lcoh/scalar.hpp>

namespace lcoh
{

enum class SummandTag { FreeA, FullK };

inline const char *to_string(SummandTag t) noexcept { return t == SummandTag::FreeA ? "A" : "K"; }

class ElementaryModule
{
public:
    ElementaryModule() = default;
    explicit ElementaryModule(std::vector<SummandTag> summands) : m_summands(std::move(summands)) {}
    ElementaryModule(std::initializer_list<SummandTag> summands) : m_summands(summands) {}

    std::size_t ambient_dim() const noexcept { return m_summands.size(); }
    SummandTag tag(std::size_t i) const { return m_summands.at(i); }
    const std::vector<SummandTag> &summands() const noexcept { return m_summands; }

    std::vector<std::size_t> indices_of(SummandTag t) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < m_summands.size(); ++i) {
            if (m_summands[i] == t) {
                out.push_back(i);
            }
        }
        return out;
    }

    friend bool operator==(const ElementaryModule &, const ElementaryModule &) = default;

private:
    std::vector<SummandTag> m_summands;
};

// A-linear map between elementary modules. Hom_A(K, A) = 0 and
// Hom_A(A, A) = A are enforced entrywise.
class ChainMap
{
public:
    ChainMap(ElementaryModule source, ElementaryModule target, ScalarMatrix matrix, const PrimeParam &p)
        : m_source(std::move(source)), m_target(std::move(target)), m_matrix(std::move(matrix))
    {
        if (m_matrix.rows() != m_target.ambient_dim() || m_matrix.cols() != m_source.ambient_dim()) {
            throw ConstraintError("chain map matrix must be " + std::to_string(m_target.ambient_dim()) + "x"
                                  + std::to_string(m_source.ambient_dim()));
        }
        for (std::size_t r = 0; r < m_matrix.rows(); ++r) {
            if (m_target.tag(r) != SummandTag::FreeA) {
                continue;
            }
            for (std::size_t c = 0; c < m_matrix.cols(); ++c) {
                const Scalar &x = m_matrix(r, c);
                if (x.is_zero()) {
                    continue;
                }
                if (m_source.tag(c) == SummandTag::FullK) {
                    throw ConstraintError("nonzero entry from K to A at (" + std::to_string(r) + ","
                                          + std::to_string(c) + ")");
                }
                if (valuation(x, p) < 0) {
                    throw ConstraintError("non-integral entry from A to A at (" + std::to_string(r) + ","
                                          + std::to_string(c) + ")");
                }
            }
        }
    }

    // The zero map.
    static ChainMap zero(ElementaryModule source, ElementaryModule target, const PrimeParam &p)
    {
        ScalarMatrix m(target.ambient_dim(), source.ambient_dim());
        return ChainMap(std::move(source), std::move(target), std::move(m), p);
    }

    const ElementaryModule &source() const noexcept { return m_source; }
    const ElementaryModule &target() const noexcept { return m_target; }
    const ScalarMatrix &matrix() const noexcept { return m_matrix; }

private:
    ElementaryModule m_source;
    ElementaryModule m_target;
    ScalarMatrix m_matrix;
};

// The submodule A*L + D of an elementary module.
class SubmodulePresentation
{
public:
    SubmodulePresentation(ElementaryModule ambient, std::vector<Vector> divisible_basis, std::vector<Vector> lattice_gens,
                          const PrimeParam &p)
        : m_ambient(std::move(ambient)), m_divisible(std::move(divisible_basis)), m_lattice(std::move(lattice_gens))
    {
        const std::size_t n = m_ambient.ambient_dim();
        for (const auto &v : m_divisible) {
            if (v.size() != n) {
                throw ConstraintError("divisible vector has wrong length");
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (m_ambient.tag(i) == SummandTag::FreeA && !v[i].is_zero()) {
                    throw ConstraintError("divisible part meets a free coordinate");
                }
            }
        }
        if (!m_divisible.empty() && rank(rows_to_matrix(m_divisible, n)) != m_divisible.size()) {
            throw ConstraintError("divisible basis is linearly dependent");
        }
        for (const auto &v : m_lattice) {
            if (v.size() != n) {
                throw ConstraintError("lattice generator has wrong length");
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (m_ambient.tag(i) == SummandTag::FreeA && !v[i].is_integral(p)) {
                    throw ConstraintError("lattice generator leaves A at coordinate " + std::to_string(i));
                }
            }
        }
    }

    const ElementaryModule &ambient() const noexcept { return m_ambient; }
    std::size_t ambient_dim() const noexcept { return m_ambient.ambient_dim(); }
    const std::vector<Vector> &divisible_basis() const noexcept { return m_divisible; }
    const std::vector<Vector> &lattice_gens() const noexcept { return m_lattice; }

private:
    ElementaryModule m_ambient;
    std::vector<Vector> m_divisible;
    std::vector<Vector> m_lattice;
};

// Isomorphism type A^a (+) K^b (+) E^l (+) (+)_j (A/p^j)^alpha[j-1].
struct ModuleShape {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t l = 0;
    // alpha[j-1] is the multiplicity of A/p^j; trailing zeros trimmed.
    std::vector<std::size_t> alpha;

    ModuleShape() = default;
    ModuleShape(std::size_t a_, std::size_t b_, std::size_t l_, std::vector<std::size_t> alpha_ = {})
        : a(a_), b(b_), l(l_), alpha(std::move(alpha_))
    {
        trim();
    }

    void trim()
    {
        while (!alpha.empty() && alpha.back() == 0) {
            alpha.pop_back();
        }
    }

    void add_torsion(std::size_t exponent, std::size_t count = 1)
    {
        if (exponent == 0 || count == 0) {
            return;
        }
        if (alpha.size() < exponent) {
            alpha.resize(exponent, 0);
        }
        alpha[exponent - 1] += count;
    }

    std::size_t alpha_at(std::size_t j) const { return j >= 1 && j <= alpha.size() ? alpha[j - 1] : 0; }

    // Number of cyclic torsion summands.
    std::size_t t() const
    {
        std::size_t s = 0;
        for (auto x : alpha) {
            s += x;
        }
        return s;
    }

    // The multiset of torsion exponents, nondecreasing.
    std::vector<std::size_t> torsion_exponents() const
    {
        std::vector<std::size_t> out;
        for (std::size_t j = 1; j <= alpha.size(); ++j) {
            out.insert(out.end(), alpha[j - 1], j);
        }
        return out;
    }

    // Largest torsion exponent, 0 if torsion-free.
    std::size_t max_torsion_exponent() const { return alpha.size(); }

    bool is_zero() const { return a == 0 && b == 0 && l == 0 && alpha.empty(); }

    std::string to_string() const
    {
        std::ostringstream os;
        os << '(' << a << ',' << b << ',' << l << ",(";
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            os << (j ? "," : "") << alpha[j];
        }
        os << "))";
        return os.str();
    }

    friend bool operator==(const ModuleShape &x, const ModuleShape &y)
    {
        return x.a == y.a && x.b == y.b && x.l == y.l && x.alpha == y.alpha;
    }
    friend std::ostream &operator<<(std::ostream &os, const ModuleShape &s) { return os << s.to_string(); }
};

struct SmithForm {
    // Exponents d_1 <= ... <= d_r of the nonzero diagonal entries p^d_k.
    std::vector<long> invariants;
    std::size_t rank = 0;
};

// Smith normal form over A. Pivot on the entry of least valuation (topmost,
// then leftmost), scale the pivot row by the inverse unit part so pivots are
// exact powers of p.
inline SmithForm smith_normal_form_dvr(ScalarMatrix m, const PrimeParam &p)
{
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (valuation(m(r, c), p) < 0) {
                throw ConstraintError("smith_normal_form_dvr: entry (" + std::to_string(r) + "," + std::to_string(c)
                                      + ") is not in A");
            }
        }
    }
    SmithForm out;
    const std::size_t diag = std::min(m.rows(), m.cols());
    for (std::size_t k = 0; k < diag; ++k) {
        long best = kInfiniteValuation;
        std::size_t br = 0, bc = 0;
        for (std::size_t r = k; r < m.rows(); ++r) {
            for (std::size_t c = k; c < m.cols(); ++c) {
                const long v = valuation(m(r, c), p);
                if (v < best) {
                    best = v;
                    br = r;
                    bc = c;
                }
            }
        }
        if (best == kInfiniteValuation) {
            break;
        }
        m.swap_rows(k, br);
        m.swap_cols(k, bc);
        const Scalar scale = Scalar(1) / unit_part(m(k, k), p);
        for (std::size_t c = k; c < m.cols(); ++c) {
            m(k, c) *= scale;
        }
        const Scalar pivot = m(k, k);
        for (std::size_t r = k + 1; r < m.rows(); ++r) {
            if (m(r, k).is_zero()) {
                continue;
            }
            const Scalar f = m(r, k) / pivot;
            for (std::size_t c = k; c < m.cols(); ++c) {
                if (!m(k, c).is_zero()) {
                    m(r, c) -= f * m(k, c);
                }
            }
        }
        // Column k is now zero below the pivot, so clearing row k only
        // touches row k itself.
        for (std::size_t c = k + 1; c < m.cols(); ++c) {
            m(k, c) = Scalar(0);
        }
        out.invariants.push_back(best);
        ++out.rank;
    }
    return out;
}

namespace detail
{

// A-basis of the lattice generated by gens, by echelon elimination with
// least-valuation pivots. Entries may lie in K.
inline std::vector<Vector> lattice_basis(std::vector<Vector> rows, std::size_t dim, const PrimeParam &p)
{
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const Vector &v) { return is_zero_vector(v); }),
               rows.end());
    std::size_t cur = 0;
    for (std::size_t col = 0; col < dim && cur < rows.size(); ++col) {
        long best = kInfiniteValuation;
        std::size_t sel = cur;
        for (std::size_t r = cur; r < rows.size(); ++r) {
            const long v = valuation(rows[r][col], p);
            if (v < best) {
                best = v;
                sel = r;
            }
        }
        if (best == kInfiniteValuation) {
            continue;
        }
        std::swap(rows[cur], rows[sel]);
        const Scalar pivot = rows[cur][col];
        for (std::size_t r = cur + 1; r < rows.size(); ++r) {
            if (rows[r][col].is_zero()) {
                continue;
            }
            const Scalar f = rows[r][col] / pivot;
            for (std::size_t c = col; c < dim; ++c) {
                if (!rows[cur][c].is_zero()) {
                    rows[r][c] -= f * rows[cur][c];
                }
            }
        }
        ++cur;
    }
    rows.resize(cur);
    return rows;
}

// A-basis of W cap A^n, where W is spanned by the linearly independent rows.
// Each row is normalized at an entry of least valuation, which makes it
// integral, and that column is then cleared from every other row.
inline std::vector<Vector> saturate(std::vector<Vector> rows, const PrimeParam &p)
{
    for (std::size_t i = 0; i < rows.size(); ++i) {
        long best = kInfiniteValuation;
        std::size_t col = 0;
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
            const long v = valuation(rows[i][c], p);
            if (v < best) {
                best = v;
                col = c;
            }
        }
        if (best == kInfiniteValuation) {
            throw ConstraintError("saturate: dependent rows");
        }
        const Scalar inv = Scalar(1) / rows[i][col];
        for (auto &x : rows[i]) {
            x *= inv;
        }
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == i || rows[k][col].is_zero()) {
                continue;
            }
            const Scalar f = rows[k][col];
            for (std::size_t c = 0; c < rows[k].size(); ++c) {
                if (!rows[i][c].is_zero()) {
                    rows[k][c] -= f * rows[i][c];
                }
            }
        }
    }
    return rows;
}

inline ScalarMatrix select_columns(const ScalarMatrix &m, const std::vector<std::size_t> &cols)
{
    ScalarMatrix out(m.rows(), cols.size());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t k = 0; k < cols.size(); ++k) {
            out(r, k) = m(r, cols[k]);
        }
    }
    return out;
}

// Some x with m x = rhs, or nullopt.
inline std::optional<Vector> solve(const ScalarMatrix &m, const Vector &rhs)
{
    ScalarMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            aug(r, c) = m(r, c);
        }
        aug(r, m.cols()) = rhs[r];
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) {
        return std::nullopt;
    }
    Vector x(m.cols(), Scalar(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        x[pivots[k]] = aug(k, m.cols());
    }
    return x;
}

} // namespace detail

// ker d as A*L + D inside the source of d.
inline SubmodulePresentation kernel_presentation(const ChainMap &d, const PrimeParam &p)
{
    const auto &src = d.source();
    const auto &m = d.matrix();
    const std::size_t n = src.ambient_dim();
    const auto a_idx = src.indices_of(SummandTag::FreeA);
    const auto k_idx = src.indices_of(SummandTag::FullK);
    const ScalarMatrix m_a = detail::select_columns(m, a_idx);
    const ScalarMatrix m_k = detail::select_columns(m, k_idx);

    // Divisible part: kernel vectors supported on K-coordinates.
    std::vector<Vector> divisible;
    for (const auto &z : nullspace(m_k)) {
        Vector v(n, Scalar(0));
        for (std::size_t k = 0; k < k_idx.size(); ++k) {
            v[k_idx[k]] = z[k];
        }
        divisible.push_back(std::move(v));
    }

    // Lattice part: ker / D embeds into A^{#A} by projection; its image is
    // pi_A(ker_K) cap A^{#A}, a saturated lattice. Lift a basis of it.
    std::vector<Vector> lattice;
    if (!a_idx.empty()) {
        std::vector<Vector> projected;
        for (const auto &z : nullspace(m)) {
            Vector y;
            y.reserve(a_idx.size());
            for (auto i : a_idx) {
                y.push_back(z[i]);
            }
            projected.push_back(std::move(y));
        }
        std::vector<Vector> span;
        if (!projected.empty()) {
            ScalarMatrix r = rows_to_matrix(projected, a_idx.size());
            const std::size_t rk = rref(r).size();
            for (std::size_t i = 0; i < rk; ++i) {
                span.push_back(r.row(i));
            }
        }
        for (const auto &y : detail::saturate(std::move(span), p)) {
            Vector rhs = mat_vec(m_a, y);
            for (auto &x : rhs) {
                x = -x;
            }
            const auto xk = detail::solve(m_k, rhs);
            if (!xk) {
                throw Error("kernel_presentation: projection does not lift");
            }
            Vector v(n, Scalar(0));
            for (std::size_t k = 0; k < a_idx.size(); ++k) {
                v[a_idx[k]] = y[k];
            }
            for (std::size_t k = 0; k < k_idx.size(); ++k) {
                v[k_idx[k]] = (*xk)[k];
            }
            lattice.push_back(std::move(v));
        }
    }
    return SubmodulePresentation(src, std::move(divisible), std::move(lattice), p);
}

// d(source) as A*L + D inside the target of d.
inline SubmodulePresentation image_presentation(const ChainMap &d, const PrimeParam &p)
{
    const auto &src = d.source();
    const auto &m = d.matrix();
    std::vector<Vector> divisible;
    const auto k_idx = src.indices_of(SummandTag::FullK);
    if (!k_idx.empty() && m.rows() > 0) {
        std::vector<Vector> cols;
        for (auto c : k_idx) {
            cols.push_back(m.column(c));
        }
        ScalarMatrix r = rows_to_matrix(cols, m.rows());
        const std::size_t rk = rref(r).size();
        for (std::size_t i = 0; i < rk; ++i) {
            divisible.push_back(r.row(i));
        }
    }
    std::vector<Vector> lattice;
    if (m.rows() > 0) {
        for (auto c : src.indices_of(SummandTag::FreeA)) {
            auto col = m.column(c);
            if (!is_zero_vector(col)) {
                lattice.push_back(std::move(col));
            }
        }
    }
    return SubmodulePresentation(d.target(), std::move(divisible), std::move(lattice), p);
}

// Shape of (A*L_ker + D_ker) / (A*L_im + D_im).
//
// Work in V = K^N / D_im. The divisible part of the numerator is
// D' = D_ker / D_im of dimension d. Modulo D' the two lattices become
// Lambda_ker contains Lambda_im, whose quotient is A^a (+) torsion by SNF. The
// part of A*L_im lying in D' is a lattice of rank rho, and D' modulo it is
// K^(d - rho) (+) E^rho.
inline ModuleShape quotient_shape(const SubmodulePresentation &ker, const SubmodulePresentation &im,
                                  const PrimeParam &p)
{
    const std::size_t n = ker.ambient_dim();
    if (im.ambient_dim() != n) {
        throw ConstraintError("quotient_shape: ambient dimensions differ");
    }

    const SubspaceQuotient mod_dim(im.divisible_basis(), n);
    const SubspaceQuotient mod_dker(ker.divisible_basis(), n);
    for (const auto &v : im.divisible_basis()) {
        if (!mod_dker.contains(v)) {
            throw NotASubobject();
        }
    }

    // D' inside V.
    std::vector<Vector> dker_in_v;
    for (const auto &v : ker.divisible_basis()) {
        dker_in_v.push_back(mod_dim.reduce(v));
    }
    const SubspaceQuotient mod_dprime(dker_in_v, mod_dim.quotient_dim());
    const std::size_t d = mod_dprime.subspace_dim();

    // Lattices in W = V / D'.
    std::vector<Vector> lk, li_v, li_w;
    for (const auto &v : ker.lattice_gens()) {
        lk.push_back(mod_dprime.reduce(mod_dim.reduce(v)));
    }
    for (const auto &v : im.lattice_gens()) {
        li_v.push_back(mod_dim.reduce(v));
        li_w.push_back(mod_dprime.reduce(li_v.back()));
    }
    const std::size_t wdim = mod_dprime.quotient_dim();
    const auto basis = detail::lattice_basis(std::move(lk), wdim, p);

    ScalarMatrix coords(basis.size(), li_w.size());
    const auto all_coords = coordinates_in(basis, li_w, wdim);
    for (std::size_t g = 0; g < li_w.size(); ++g) {
        const auto &c = all_coords[g];
        if (!c) {
            throw NotASubobject();
        }
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (!(*c)[k].is_integral(p)) {
                throw NotASubobject();
            }
            coords(k, g) = (*c)[k];
        }
    }
    const SmithForm snf = smith_normal_form_dvr(coords, p);

    const std::size_t span_im = li_v.empty() ? 0 : rank(rows_to_matrix(li_v, mod_dim.quotient_dim()));
    const std::size_t rho = span_im - snf.rank;

    ModuleShape shape;
    shape.a = basis.size() - snf.rank;
    shape.l = rho;
    shape.b = d - rho;
    for (long e : snf.invariants) {
        shape.add_torsion(static_cast<std::size_t>(e));
    }
    shape.trim();
    return shape;
}

namespace detail
{

inline void check_composable(const ChainMap &second, const ChainMap &first, std::size_t position)
{
    if (!(first.target() == second.source())) {
        throw ConstraintError("maps at position " + std::to_string(position) + " are not composable");
    }
    if (first.matrix().rows() == 0 || first.matrix().cols() == 0 || second.matrix().rows() == 0) {
        return;
    }
    const ScalarMatrix prod = second.matrix() * first.matrix();
    for (std::size_t r = 0; r < prod.rows(); ++r) {
        for (std::size_t c = 0; c < prod.cols(); ++c) {
            if (!prod(r, c).is_zero()) {
                throw NotAComplex(position);
            }
        }
    }
}

inline void check_complex(const std::vector<ElementaryModule> &terms, const std::vector<ChainMap> &maps)
{
    const std::size_t expected = terms.empty() ? 0 : terms.size() - 1;
    if (maps.size() != expected) {
        throw ConstraintError("a complex with " + std::to_string(terms.size()) + " terms needs "
                              + std::to_string(expected) + " maps");
    }
    for (std::size_t j = 0; j < maps.size(); ++j) {
        if (!(maps[j].source() == terms[j]) || !(maps[j].target() == terms[j + 1])) {
            throw ConstraintError("map " + std::to_string(j) + " does not match its terms");
        }
    }
    for (std::size_t j = 1; j < maps.size(); ++j) {
        check_composable(maps[j], maps[j - 1], j);
    }
}

inline ChainMap outgoing(const std::vector<ElementaryModule> &terms, const std::vector<ChainMap> &maps,
                         std::size_t i, const PrimeParam &p)
{
    return i < maps.size() ? maps[i] : ChainMap::zero(terms[i], ElementaryModule{}, p);
}

inline ChainMap incoming(const std::vector<ElementaryModule> &terms, const std::vector<ChainMap> &maps,
                         std::size_t i, const PrimeParam &p)
{
    return i > 0 ? maps[i - 1] : ChainMap::zero(ElementaryModule{}, terms[i], p);
}

} // namespace detail

// H^position of the complex terms[0] -> terms[1] -> ..., with zero maps past
// either end. Positions outside the complex give the zero shape.
inline ModuleShape cohomology_at(const std::vector<ElementaryModule> &terms, const std::vector<ChainMap> &maps,
                                 long position, const PrimeParam &p)
{
    detail::check_complex(terms, maps);
    if (position < 0 || static_cast<std::size_t>(position) >= terms.size()) {
        return {};
    }
    const auto i = static_cast<std::size_t>(position);
    return quotient_shape(kernel_presentation(detail::outgoing(terms, maps, i, p), p),
                          image_presentation(detail::incoming(terms, maps, i, p), p), p);
}

namespace detail
{

// cohomology_all without validating the complex, for callers that built it
// and already checked d o d = 0.
inline std::vector<ModuleShape> cohomology_all_unchecked(const std::vector<ElementaryModule> &terms,
                                                         const std::vector<ChainMap> &maps, const PrimeParam &p)
{
    std::vector<ModuleShape> out;
    out.reserve(terms.size());
    std::optional<SubmodulePresentation> prev_image;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const ChainMap out_map = outgoing(terms, maps, i, p);
        auto im = prev_image ? std::move(*prev_image) : image_presentation(incoming(terms, maps, i, p), p);
        out.push_back(quotient_shape(kernel_presentation(out_map, p), im, p));
        prev_image = image_presentation(out_map, p);
    }
    return out;
}

} // namespace detail

// Every H^i at once; each differential is presented once.
inline std::vector<ModuleShape> cohomology_all(const std::vector<ElementaryModule> &terms,
                                               const std::vector<ChainMap> &maps, const PrimeParam &p)
{
    detail::check_complex(terms, maps);
    return detail::cohomology_all_unchecked(terms, maps, p);
}

} // namespace lcoh

#endif
