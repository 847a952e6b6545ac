#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include <chowseries/chow_generators.hpp>
#include <chowseries/random.hpp>
#include <chowseries/recurrence.hpp>

#include "oracles.hpp"

using namespace chowseries;

namespace
{

std::vector<Rational> ints(std::initializer_list<long> xs)
{
    std::vector<Rational> out;
    for (long x : xs) {
        out.emplace_back(x);
    }
    return out;
}

// Terms of a random C-finite sequence of order <= k.
std::vector<Rational> random_cfinite(random::Engine &rng, std::size_t k, std::size_t len)
{
    std::vector<Rational> c(k), a;
    for (auto &x : c) {
        x = Rational(random::uniform(rng, -3, 3));
    }
    for (std::size_t i = 0; i < k; ++i) {
        a.emplace_back(random::uniform(rng, -5, 5));
    }
    while (a.size() < len) {
        Rational next = 0;
        for (std::size_t j = 0; j < k; ++j) {
            next += c[j] * a[a.size() - 1 - j];
        }
        a.push_back(next);
    }
    a.resize(len);
    return a;
}

} // namespace

TEST(BerlekampMassey, TriangularNumbers)
{
    const auto seq = ints({1, 3, 6, 10, 15, 21, 28, 36, 45, 55});
    const auto rec = find_recurrence(seq, 5);
    ASSERT_TRUE(rec);
    EXPECT_EQ(rec->order, 3u);
    EXPECT_EQ(rec->connection, ints({1, -3, 3, -1}));
    const auto [f, g] = recurrence_to_fraction(*rec, seq);
    EXPECT_EQ(g, GradedPolynomial::one(1));
    EXPECT_EQ(f.coefficient(ExponentVector{1}), LaurentPoly(BigInt(-3)));
}

TEST(BerlekampMassey, ConstantAndZero)
{
    auto rec = find_recurrence(ints({1, 1, 1, 1}), 2);
    ASSERT_TRUE(rec);
    EXPECT_EQ(rec->order, 1u);
    EXPECT_EQ(rec->connection, ints({1, -1}));
    rec = find_recurrence(ints({0, 0, 0, 0}), 2);
    ASSERT_TRUE(rec);
    EXPECT_EQ(rec->order, 0u);
}

TEST(BerlekampMassey, SquaresInExponentHaveNoShortRecurrence)
{
    // t^(d^2) indicator, d <= 6.
    std::vector<Rational> seq(37, Rational(0));
    for (int d = 0; d <= 6; ++d) {
        seq[static_cast<std::size_t>(d * d)] = 1;
    }
    EXPECT_FALSE(find_recurrence(seq, 6));
    EXPECT_EQ(oracle::linear_complexity(seq) > 6, true);
}

TEST(BerlekampMassey, PreconditionOnLength)
{
    EXPECT_THROW(find_recurrence(ints({1, 2, 3}), 2), std::invalid_argument);
}

TEST(BerlekampMassey, LinearComplexityMatchesHankelOracle)
{
    random::Engine rng(404);
    for (int i = 0; i < 200; ++i) {
        const std::size_t k = static_cast<std::size_t>(random::uniform(rng, 0, 5));
        const std::size_t len = 2 * 6 + static_cast<std::size_t>(random::uniform(rng, 0, 6));
        std::vector<Rational> seq = random_cfinite(rng, k, len);
        if (i % 3 == 0) {
            // Arbitrary data: complexity is usually about len / 2.
            for (auto &x : seq) {
                x = Rational(random::uniform(rng, -4, 4), random::uniform(rng, 1, 3));
            }
        }
        const std::size_t L = oracle::linear_complexity(seq);
        const auto rec = find_recurrence(seq, 6);
        if (L <= 6) {
            ASSERT_TRUE(rec) << "i=" << i;
            ASSERT_EQ(rec->order, L) << "i=" << i;
            for (std::size_t n = L; n < seq.size(); ++n) {
                Rational acc = 0;
                for (std::size_t j = 0; j < rec->connection.size() && j <= n; ++j) {
                    acc += rec->connection[j] * seq[n - j];
                }
                ASSERT_EQ(acc, 0);
            }
        } else {
            ASSERT_FALSE(rec) << "i=" << i;
        }
    }
}

TEST(PrimitiveVector, ClearsDenominatorsAndSign)
{
    const auto v = primitive_integer_vector({Rational(-1, 2), Rational(3, 4), Rational(0)});
    EXPECT_EQ(v, (std::vector<BigInt>{2, -3, 0}));
}

TEST(SeriesRecurrence, FindsLineDenominator)
{
    const auto phi = divisor_chow_series(1, 12);
    std::vector<LaurentPoly> coeffs;
    for (const auto &[lambda, p] : phi.coefficients()) {
        coeffs.push_back(p);
    }
    const auto found = find_series_recurrence(coeffs, {}, [&](const GradedPolynomial &f, const GradedPolynomial &g) {
        return witness_check(f, phi, g);
    });
    ASSERT_TRUE(found);
    GradedPolynomial expected(1);
    expected.add_term(ExponentVector{0}, LaurentPoly(BigInt(1)));
    expected.add_term(ExponentVector{1}, LaurentPoly{{0, -1}, {2, -1}});
    expected.add_term(ExponentVector{2}, LaurentPoly{{2, 1}});
    EXPECT_EQ(found->first, expected);
    EXPECT_EQ(found->second, GradedPolynomial::one(1));
}

TEST(SeriesRecurrence, RecoversRandomDenominators)
{
    random::Engine rng(55);
    int recovered = 0;
    for (int i = 0; i < 20; ++i) {
        const auto f = random::denominator(rng, 3, 3, 3);
        const auto inv = series_invert(f, ExponentVector{16});
        // Clear denominators so the series is integral.
        BigInt den = 1;
        for (const auto &[lambda, p] : inv.coefficients()) {
            for (const auto &[e, c] : p.terms()) {
                den = lcm(den, c.get_den());
            }
        }
        GradedSeries::map_type coeffs;
        for (const auto &[lambda, p] : inv.coefficients()) {
            coeffs[lambda] = to_integral(p.scaled(Rational(den)));
        }
        const auto phi = GradedSeries::from_coefficients(ExponentVector{16}, coeffs);
        std::vector<LaurentPoly> c;
        for (const auto &[lambda, p] : phi.coefficients()) {
            c.push_back(p);
        }
        const auto found = find_series_recurrence(
            c, {}, [&](const GradedPolynomial &a, const GradedPolynomial &b) { return witness_check(a, phi, b); });
        ASSERT_TRUE(found) << f.to_string();
        // Any accepted pair satisfies a * phi = b, so a * g = b * f on the box.
        ASSERT_TRUE(witness_check(found->first, phi, found->second));
        const auto deg = found->first.support_box()[0];
        EXPECT_LE(deg, f.support_box()[0]);
        ++recovered;
    }
    EXPECT_EQ(recovered, 20);
}

TEST(Oracles, ModularScreenAgreesWithExactHankelSolve)
{
    random::Engine rng(606);
    for (int i = 0; i < 150; ++i) {
        const std::size_t k = static_cast<std::size_t>(random::uniform(rng, 0, 7));
        std::vector<Rational> seq = random_cfinite(rng, k, 20);
        const std::size_t L = oracle::linear_complexity(seq);
        for (std::size_t m = 0; m <= 8; ++m) {
            ASSERT_EQ(oracle::no_recurrence_up_to(seq, m), L > m) << "i=" << i << " m=" << m;
        }
    }
}
