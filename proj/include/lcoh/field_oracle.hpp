#ifndef LCOH_FIELD_ORACLE_HPP
#define LCOH_FIELD_ORACLE_HPP

// Dimensions of Cech cohomology over the generic fibre Q and the special
// fibre F_p. These share only the Cech combinatorics with the DVR engine; the
// linear algebra is plain Gaussian elimination over each field.
//
// Identities checked against the engine, per cell (i, u):
//   dim_Q  H^i = a_i + b_i
//   dim_Fp H^i = a_i + t_i + l_{i+1} + t_{i+1}
// The second comes from 0 -> M^i/pM^i -> H^i_{I}(F_p[X]) -> ker(p | M^{i+1}) -> 0,
// with dim (M/pM)_u = a + t and dim ker(p on M_u) = l + t.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <lcoh/cech.hpp>
#include <lcoh/matrix.hpp>

namespace lcoh
{

struct FieldDim {
    std::size_t value = 0;

    friend bool operator==(const FieldDim &, const FieldDim &) = default;
};

// Element of Z/p.
class ModP
{
public:
    ModP() = default;
    ModP(long v, long p) : m_p(p), m_v(((v % p) + p) % p) {}

    long value() const noexcept { return m_v; }
    long modulus() const noexcept { return m_p; }
    bool is_zero() const noexcept { return m_v == 0; }

    ModP inverse() const
    {
        // Fermat; p is prime.
        long result = 1, base = m_v, e = m_p - 2;
        while (e > 0) {
            if (e & 1) {
                result = static_cast<long>((static_cast<__int128>(result) * base) % m_p);
            }
            base = static_cast<long>((static_cast<__int128>(base) * base) % m_p);
            e >>= 1;
        }
        return ModP(result, m_p);
    }

    friend ModP operator-(const ModP &a, const ModP &b) { return ModP(a.m_v - b.m_v, a.m_p); }
    friend ModP operator*(const ModP &a, const ModP &b)
    {
        return ModP(static_cast<long>((static_cast<__int128>(a.m_v) * b.m_v) % a.m_p), a.m_p);
    }
    friend bool operator==(const ModP &a, const ModP &b) { return a.m_v == b.m_v; }

private:
    long m_p = 2;
    long m_v = 0;
};

namespace detail
{

inline bool field_is_zero(const mpq_class &x) { return sgn(x) == 0; }
inline mpq_class field_inverse(const mpq_class &x) { return 1 / x; }
inline bool field_is_zero(const ModP &x) { return x.is_zero(); }
inline ModP field_inverse(const ModP &x) { return x.inverse(); }

} // namespace detail

// Rank by Gaussian elimination over a field.
template <typename F>
std::size_t field_rank(Matrix<F> m)
{
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t sel = rank;
        while (sel < m.rows() && detail::field_is_zero(m(sel, col))) {
            ++sel;
        }
        if (sel == m.rows()) {
            continue;
        }
        m.swap_rows(sel, rank);
        const F inv = detail::field_inverse(m(rank, col));
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            if (detail::field_is_zero(m(r, col))) {
                continue;
            }
            const F f = m(r, col) * inv;
            for (std::size_t c = col; c < m.cols(); ++c) {
                m(r, c) = m(r, c) - f * m(rank, c);
            }
        }
        ++rank;
    }
    return rank;
}

namespace detail
{

template <typename F, typename Keep, typename Make>
std::vector<FieldDim> field_cech_dims(const CechSkeleton &sk, Keep keep, Make make)
{
    const std::size_t len = sk.positions.size();
    std::vector<std::size_t> dims(len, 0), ranks(len, 0);
    for (std::size_t t = 0; t < len; ++t) {
        for (const auto &slot : sk.positions[t]) {
            dims[t] += keep(slot) ? 1 : 0;
        }
    }
    for (std::size_t t = 0; t + 1 < len; ++t) {
        Matrix<F> m(dims[t + 1], dims[t], make(0));
        for_each_differential_entry(sk, t, keep, [&](std::size_t r, std::size_t c, long s) { m(r, c) = make(s); });
        ranks[t] = field_rank(std::move(m));
    }
    std::vector<FieldDim> out(len);
    for (std::size_t t = 0; t < len; ++t) {
        out[t].value = dims[t] - ranks[t] - (t ? ranks[t - 1] : 0);
    }
    return out;
}

} // namespace detail

// dim_Q of H^t of the degree-u Cech complex of I*Q[X], t = 0..r.
inline std::vector<FieldDim> cech_dims_over_Q(const IdealSpec &ideal, const GradedDegree &u)
{
    return detail::field_cech_dims<mpq_class>(
        cech_skeleton(ideal, u), [](const CechSlot &) { return true; }, [](long s) { return mpq_class(s); });
}

// dim_Fp of H^t of the degree-u Cech complex of I*F_p[X], t = 0..r. Slots
// whose coefficient is divisible by p localize to the zero ring.
inline std::vector<FieldDim> cech_dims_over_Fp(const IdealSpec &ideal, const GradedDegree &u)
{
    const long p = ideal.p().value();
    return detail::field_cech_dims<ModP>(
        cech_skeleton(ideal, u), [](const CechSlot &s) { return s.kind == LocalizationKind::FreeA; },
        [p](long s) { return ModP(s, p); });
}

inline FieldDim cech_dim_over_Q(const IdealSpec &ideal, long i, const GradedDegree &u)
{
    if (i < 0 || static_cast<std::size_t>(i) > ideal.num_generators()) {
        return {};
    }
    return cech_dims_over_Q(ideal, u)[static_cast<std::size_t>(i)];
}

inline FieldDim cech_dim_over_Fp(const IdealSpec &ideal, long i, const GradedDegree &u)
{
    if (i < 0 || static_cast<std::size_t>(i) > ideal.num_generators()) {
        return {};
    }
    return cech_dims_over_Fp(ideal, u)[static_cast<std::size_t>(i)];
}

// Alternating sum of term counts, the Euler characteristic of the degree-u
// complex over Q (all nonzero slots) or over F_p (free slots only).
inline long cech_euler_characteristic(const CechSkeleton &sk, bool over_fp)
{
    long chi = 0;
    for (std::size_t t = 0; t < sk.positions.size(); ++t) {
        const long c = static_cast<long>(sk.count(t, over_fp));
        chi += (t % 2) ? -c : c;
    }
    return chi;
}

} // namespace lcoh

#endif
