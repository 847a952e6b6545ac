#ifndef CHOWSERIES_RANDOM_HPP
#define CHOWSERIES_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <chowseries/graded_series.hpp>
#include <chowseries/laurent_poly.hpp>
#include <chowseries/motive.hpp>

// Seeded generators of random algebraic objects, shared by the property
// tests and the `selftest` command.

namespace chowseries::random
{

using Engine = std::mt19937_64;

inline std::int64_t uniform(Engine &rng, std::int64_t lo, std::int64_t hi)
{
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// At most max_terms terms, exponents in [lo, hi], coefficients in [-c, c].
inline LaurentPoly laurent(Engine &rng, int max_terms = 8, std::int64_t lo = -4, std::int64_t hi = 8,
                           std::int64_t c = 9)
{
    LaurentPoly out;
    const auto n = uniform(rng, 0, max_terms);
    for (std::int64_t i = 0; i < n; ++i) {
        out.add_term(uniform(rng, lo, hi), BigInt(uniform(rng, -c, c)));
    }
    return out;
}

// A class built from projective spaces with oplus, otimes, negation and twist
// normalization.
inline MotiveClass motive(Engine &rng, int depth = 3)
{
    if (depth == 0 || uniform(rng, 0, 3) == 0) {
        return motive_of_projective_space(uniform(rng, 0, 4));
    }
    switch (uniform(rng, 0, 3)) {
        case 0:
            return motive_oplus(motive(rng, depth - 1), motive(rng, depth - 1));
        case 1:
            return motive_otimes(motive(rng, depth - 1), motive(rng, depth - 1));
        case 2:
            return motive(rng, depth - 1) - motive(rng, depth - 1);
        default:
            break;
    }
    return normalize_twist(TwistedPresentation{motive(rng, depth - 1).poincare(), uniform(rng, -2, 2)});
}

// Box of the given rank, each coordinate in [0, max_trunc].
inline ExponentVector box(Engine &rng, std::size_t rank, std::int64_t max_trunc)
{
    std::vector<std::int64_t> c(rank);
    for (auto &x : c) {
        x = uniform(rng, 0, max_trunc);
    }
    return ExponentVector(std::move(c));
}

inline GradedSeries series(Engine &rng, const ExponentVector &truncation, int max_terms = 4)
{
    GradedSeries::map_type coeffs;
    for (const auto &lambda : box_points(truncation)) {
        coeffs.emplace(lambda, laurent(rng, max_terms, -2, 4, 5));
    }
    return GradedSeries::from_coefficients(truncation, std::move(coeffs));
}

// Support inside [0, bound]; constant term a nonzero monomial.
inline GradedPolynomial invertible_polynomial(Engine &rng, const ExponentVector &bound, int max_terms = 3)
{
    GradedPolynomial out(bound.rank());
    std::int64_t c0 = 0;
    while (c0 == 0) {
        c0 = uniform(rng, -3, 3);
    }
    out.add_term(ExponentVector::zero(bound.rank()), LaurentPoly::monomial(BigInt(c0), uniform(rng, -2, 2)));
    for (const auto &lambda : box_points(bound)) {
        if (lambda.is_zero() || uniform(rng, 0, 1) == 0) {
            continue;
        }
        out.add_term(lambda, laurent(rng, max_terms, -2, 4, 5));
    }
    return out;
}

inline GradedPolynomial polynomial(Engine &rng, const ExponentVector &bound, int max_terms = 3)
{
    GradedPolynomial out(bound.rank());
    for (const auto &lambda : box_points(bound)) {
        if (uniform(rng, 0, 1) == 0) {
            continue;
        }
        out.add_term(lambda, laurent(rng, max_terms, -2, 4, 5));
    }
    return out;
}

// Rank-1 f in Z[s, t] with deg_s f <= max_s, deg_t f <= max_t, coefficients
// in [-c, c], and f(0) a nonzero integer times a power of s (a unit after
// tensoring with Q).
inline GradedPolynomial denominator(Engine &rng, std::int64_t max_s = 6, std::int64_t max_t = 6, std::int64_t c = 5)
{
    GradedPolynomial out(1);
    std::int64_t c0 = 0;
    while (c0 == 0) {
        c0 = uniform(rng, -c, c);
    }
    out.add_term(ExponentVector{0}, LaurentPoly::monomial(BigInt(c0), uniform(rng, 0, max_s)));
    for (std::int64_t d = 0; d <= max_t; ++d) {
        for (std::int64_t e = 0; e <= max_s; ++e) {
            // Nothing else at t^0, so f(0) stays a monomial.
            if (d == 0 || uniform(rng, 0, 2) != 0) {
                continue;
            }
            out.add_term(ExponentVector{d}, LaurentPoly::monomial(BigInt(uniform(rng, -c, c)), e));
        }
    }
    return out;
}

} // namespace chowseries::random

#endif // CHOWSERIES_RANDOM_HPP
