#ifndef LCOH_LINALG_HPP
#define LCOH_LINALG_HPP

// Linear algebra over K = Q used by the module calculus.

#include <cstddef>
#include <optional>
#include <vector>

#include <lcoh/matrix.hpp>
#include <lcoh/scalar.hpp>

namespace lcoh
{

using Vector = std::vector<Scalar>;
using ScalarMatrix = Matrix<Scalar>;

inline bool is_zero_vector(const Vector &v)
{
    for (const auto &x : v) {
        if (!x.is_zero()) {
            return false;
        }
    }
    return true;
}

// In-place reduced row echelon form. Returns the pivot columns in order.
inline std::vector<std::size_t> rref(ScalarMatrix &m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col).is_zero()) {
            ++sel;
        }
        if (sel == m.rows()) {
            continue;
        }
        m.swap_rows(sel, row);
        const Scalar inv = Scalar(1) / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) {
            m(row, c) *= inv;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) {
                continue;
            }
            const Scalar f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) {
                if (!m(row, c).is_zero()) {
                    m(r, c) -= f * m(row, c);
                }
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(ScalarMatrix m) { return rref(m).size(); }

inline ScalarMatrix rows_to_matrix(const std::vector<Vector> &rows, std::size_t dim)
{
    return ScalarMatrix::from_rows(rows, dim);
}

// Basis of {x : m x = 0}.
inline std::vector<Vector> nullspace(const ScalarMatrix &m)
{
    ScalarMatrix r = m;
    const auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        Vector v(m.cols(), Scalar(0));
        v[free] = Scalar(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            v[pivots[k]] = -r(k, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Reduction modulo a K-subspace: a linear surjection K^N -> K^(N - dim D)
// whose kernel is exactly D. Coordinates at the RREF pivot columns of D are
// eliminated and the remaining coordinates are kept.
class SubspaceQuotient
{
public:
    SubspaceQuotient(const std::vector<Vector> &spanning, std::size_t dim) : m_dim(dim)
    {
        m_basis = rows_to_matrix(spanning, dim);
        m_pivots = rref(m_basis);
        std::vector<bool> is_pivot(dim, false);
        for (auto c : m_pivots) {
            is_pivot[c] = true;
        }
        for (std::size_t c = 0; c < dim; ++c) {
            if (!is_pivot[c]) {
                m_kept.push_back(c);
            }
        }
    }

    std::size_t subspace_dim() const noexcept { return m_pivots.size(); }
    std::size_t ambient_dim() const noexcept { return m_dim; }
    std::size_t quotient_dim() const noexcept { return m_kept.size(); }

    Vector reduce(const Vector &v) const
    {
        Vector w = v;
        for (std::size_t k = 0; k < m_pivots.size(); ++k) {
            const Scalar f = w[m_pivots[k]];
            if (f.is_zero()) {
                continue;
            }
            for (std::size_t c = 0; c < m_dim; ++c) {
                if (!m_basis(k, c).is_zero()) {
                    w[c] -= f * m_basis(k, c);
                }
            }
        }
        Vector out;
        out.reserve(m_kept.size());
        for (auto c : m_kept) {
            out.push_back(w[c]);
        }
        return out;
    }

    bool contains(const Vector &v) const { return is_zero_vector(reduce(v)); }

private:
    std::size_t m_dim;
    ScalarMatrix m_basis;
    std::vector<std::size_t> m_pivots;
    std::vector<std::size_t> m_kept;
};

// Coefficients c with sum_k c_k rows[k] = v for each v in vs, where the rows
// are linearly independent; nullopt for a v outside their span. One
// elimination serves every right-hand side.
inline std::vector<std::optional<Vector>> coordinates_in(const std::vector<Vector> &rows,
                                                         const std::vector<Vector> &vs, std::size_t n)
{
    const std::size_t r = rows.size();
    // Columns: the r basis vectors followed by the right-hand sides.
    ScalarMatrix aug(n, r + vs.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < r; ++k) {
            aug(i, k) = rows[k][i];
        }
        for (std::size_t g = 0; g < vs.size(); ++g) {
            aug(i, r + g) = vs[g][i];
        }
    }
    const auto pivots = rref(aug);
    std::size_t basis_pivots = 0;
    while (basis_pivots < pivots.size() && pivots[basis_pivots] < r) {
        ++basis_pivots;
    }
    std::vector<std::optional<Vector>> out;
    out.reserve(vs.size());
    for (std::size_t g = 0; g < vs.size(); ++g) {
        bool inside = true;
        for (std::size_t k = basis_pivots; k < n && inside; ++k) {
            inside = aug(k, r + g).is_zero();
        }
        if (!inside) {
            out.emplace_back();
            continue;
        }
        Vector c(r, Scalar(0));
        for (std::size_t k = 0; k < basis_pivots; ++k) {
            c[pivots[k]] = aug(k, r + g);
        }
        out.emplace_back(std::move(c));
    }
    return out;
}

inline std::optional<Vector> coordinates_in(const std::vector<Vector> &rows, const Vector &v)
{
    return coordinates_in(rows, std::vector<Vector>{v}, v.size()).front();
}

inline Vector mat_vec(const ScalarMatrix &m, const Vector &x)
{
    Vector out(m.rows(), Scalar(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_zero() && !x[j].is_zero()) {
                out[i] += m(i, j) * x[j];
            }
        }
    }
    return out;
}

} // namespace lcoh

#endif
