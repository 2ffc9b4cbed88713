#include <random>

#include <gtest/gtest.h>

#include <lcoh/blocks.hpp>
#include <lcoh/field_oracle.hpp>

#include "test_support.hpp"

using namespace lcoh;

namespace
{

IdealSpec single(long p, long coeff, long exponent)
{
    return IdealSpec(PrimeParam(p), 1, {CMonomialGenerator{Scalar(coeff), {exponent}}});
}

GradedDegree deg(std::vector<long> u) { return GradedDegree{std::move(u)}; }

} // namespace

TEST(FieldRank, SmallMatrices)
{
    Matrix<mpq_class> q{{1, 2}, {2, 4}};
    EXPECT_EQ(field_rank(q), 1u);
    Matrix<ModP> m(2, 2, ModP(0, 3));
    m(0, 0) = ModP(1, 3);
    m(0, 1) = ModP(2, 3);
    m(1, 0) = ModP(2, 3);
    m(1, 1) = ModP(1, 3);
    // det = 1 - 4 = -3 = 0 mod 3.
    EXPECT_EQ(field_rank(m), 1u);
    EXPECT_EQ(field_rank(Matrix<mpq_class>(0, 4)), 0u);
}

TEST(ModP, Arithmetic)
{
    const ModP a(3, 7), b(-2, 7);
    EXPECT_EQ((a * b).value(), 1);
    EXPECT_EQ((a - b).value(), 5);
    EXPECT_EQ((a * a.inverse()).value(), 1);
}

TEST(CechDimOverQ, Examples)
{
    const auto I5X = single(5, 5, 1);
    EXPECT_EQ(cech_dim_over_Q(I5X, 1, deg({0})).value, 0u);
    EXPECT_EQ(cech_dim_over_Q(I5X, 1, deg({-1})).value, 1u);
    const auto IX = single(5, 1, 1);
    for (long u = -3; u <= 3; ++u) {
        EXPECT_EQ(cech_dim_over_Q(IX, 0, deg({u})).value, 0u);
    }
    EXPECT_EQ(cech_dim_over_Q(IX, 7, deg({0})).value, 0u);
}

TEST(CechDimOverFp, Examples)
{
    const auto I5X = single(5, 5, 1);
    EXPECT_EQ(cech_dim_over_Fp(I5X, 0, deg({0})).value, 1u);
    EXPECT_EQ(cech_dim_over_Fp(I5X, 1, deg({0})).value, 0u);
    const auto IX = single(3, 1, 1);
    EXPECT_EQ(cech_dim_over_Fp(IX, 1, deg({-1})).value, 1u);
}

TEST(CechDims, ProjectivePlaneSeesCharacteristic)
{
    // Over F_2 the torsion in H^4 reappears as H^3 and H^4 of dimension one.
    const auto I = lcoh::testing::rp2_ideal(2);
    const GradedDegree u{std::vector<long>(10, -1)};
    std::vector<std::size_t> q, f;
    for (const auto &d : cech_dims_over_Q(I, u)) {
        q.push_back(d.value);
    }
    for (const auto &d : cech_dims_over_Fp(I, u)) {
        f.push_back(d.value);
    }
    EXPECT_EQ(q, (std::vector<std::size_t>{0, 0, 0, 0, 0, 0, 0}));
    EXPECT_EQ(f, (std::vector<std::size_t>{0, 0, 0, 1, 1, 0, 0}));
}

TEST(CechIdentities, HoldOnRandomIdeals)
{
    std::mt19937_64 rng(41);
    for (int k = 0; k < 40; ++k) {
        const auto I = lcoh::testing::random_ideal(rng);
        const std::size_t r = I.num_generators();
        for (const auto &u : window_cells(I.n(), 2)) {
            const auto shapes = local_cohomology_all(I, u);
            const auto q = cech_dims_over_Q(I, u);
            const auto f = cech_dims_over_Fp(I, u);
            long chi_q = 0, chi_p = 0;
            for (std::size_t i = 0; i <= r; ++i) {
                const auto &s = shapes[i];
                EXPECT_EQ(q[i].value, s.a + s.b) << to_text(I) << " i=" << i << " u=" << u.to_string();
                const std::size_t next = i < r ? shapes[i + 1].l + shapes[i + 1].t() : 0;
                EXPECT_EQ(f[i].value, s.a + s.t() + next) << to_text(I) << " i=" << i << " u=" << u.to_string();
                chi_q += (i % 2 ? -1 : 1) * static_cast<long>(q[i].value);
                chi_p += (i % 2 ? -1 : 1) * static_cast<long>(f[i].value);
            }
            const auto sk = cech_skeleton(I, u);
            EXPECT_EQ(chi_q, cech_euler_characteristic(sk, false));
            EXPECT_EQ(chi_p, cech_euler_characteristic(sk, true));
        }
    }
}
