#ifndef LCOH_SCALAR_HPP
#define LCOH_SCALAR_HPP

// Exact arithmetic for the discrete valuation ring A = Z_(p) and its fraction
// field K = Q.
//
// The complete DVR of mixed characteristic (0, p) is modelled by the p-local
// integers inside Q rather than by the p-adic completion. Every quantity this
// library computes (ranks, valuations, invariant factors, multiplicities of
// K and of the injective hull E = K/A) is unchanged by completion, and exact
// rationals avoid any precision management.

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace lcoh
{

// Valuation of zero.
inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

class PrimeParam
{
public:
    explicit PrimeParam(long p) : m_p(p), m_mpz(p)
    {
        if (p < 2 || !is_prime(p)) {
            throw std::invalid_argument("p must be prime (got " + std::to_string(p) + ")");
        }
    }

    long value() const noexcept { return m_p; }
    const mpz_class &as_mpz() const noexcept { return m_mpz; }

    friend bool operator==(const PrimeParam &a, const PrimeParam &b) noexcept { return a.m_p == b.m_p; }

    static bool is_prime(long n) noexcept
    {
        if (n < 2) {
            return false;
        }
        for (long d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                return false;
            }
        }
        return true;
    }

private:
    long m_p;
    mpz_class m_mpz;
};

// An exact rational number in canonical form (coprime numerator and positive
// denominator). Membership in A is relative to a prime, see is_integral().
class Scalar
{
public:
    Scalar() = default;
    Scalar(long v) : m_q(v) {}
    Scalar(long num, long den) : m_q(num, den)
    {
        if (den == 0) {
            throw std::domain_error("zero denominator");
        }
        m_q.canonicalize();
    }
    explicit Scalar(mpz_class v) : m_q(std::move(v)) {}
    explicit Scalar(mpq_class v) : m_q(std::move(v)) { m_q.canonicalize(); }

    // Accepts "a" or "a/b" in base 10.
    static Scalar parse(const std::string &text)
    {
        mpq_class q;
        if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
            throw std::invalid_argument("not a rational number: '" + text + "'");
        }
        q.canonicalize();
        return Scalar(std::move(q));
    }

    const mpq_class &value() const noexcept { return m_q; }
    mpz_class numerator() const { return m_q.get_num(); }
    mpz_class denominator() const { return m_q.get_den(); }

    bool is_zero() const noexcept { return sgn(m_q) == 0; }
    int sign() const noexcept { return sgn(m_q); }
    bool is_integral(const PrimeParam &p) const { return is_zero() || valuation_of(p) >= 0; }

    std::string to_string() const { return m_q.get_str(); }

    Scalar &operator+=(const Scalar &o)
    {
        m_q += o.m_q;
        return *this;
    }
    Scalar &operator-=(const Scalar &o)
    {
        m_q -= o.m_q;
        return *this;
    }
    Scalar &operator*=(const Scalar &o)
    {
        m_q *= o.m_q;
        return *this;
    }
    Scalar &operator/=(const Scalar &o)
    {
        if (o.is_zero()) {
            throw std::domain_error("division by zero");
        }
        m_q /= o.m_q;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
    friend Scalar operator-(const Scalar &a) { return Scalar(mpq_class(-a.m_q)); }

    friend bool operator==(const Scalar &a, const Scalar &b) { return a.m_q == b.m_q; }
    friend bool operator<(const Scalar &a, const Scalar &b) { return a.m_q < b.m_q; }

    friend std::ostream &operator<<(std::ostream &os, const Scalar &x) { return os << x.m_q; }

private:
    long valuation_of(const PrimeParam &p) const
    {
        mpz_class rest;
        long vn = static_cast<long>(mpz_remove(rest.get_mpz_t(), m_q.get_num_mpz_t(), p.as_mpz().get_mpz_t()));
        long vd = static_cast<long>(mpz_remove(rest.get_mpz_t(), m_q.get_den_mpz_t(), p.as_mpz().get_mpz_t()));
        return vn - vd;
    }

    friend long valuation(const Scalar &x, const PrimeParam &p);

    mpq_class m_q;
};

// v with x = p^v * u for a p-unit u; kInfiniteValuation for x = 0.
inline long valuation(const Scalar &x, const PrimeParam &p)
{
    if (x.is_zero()) {
        return kInfiniteValuation;
    }
    return x.valuation_of(p);
}

inline Scalar prime_power(const PrimeParam &p, long e)
{
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.as_mpz().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) {
        return Scalar(pe);
    }
    return Scalar(mpq_class(mpz_class(1), pe));
}

// u with x = p^valuation(x) * u; throws on zero.
inline Scalar unit_part(const Scalar &x, const PrimeParam &p)
{
    if (x.is_zero()) {
        throw std::domain_error("unit_part of zero");
    }
    return x / prime_power(p, valuation(x, p));
}

} // namespace lcoh

#endif
