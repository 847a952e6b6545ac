#ifndef CHOWSERIES_CHOW_GENERATORS_HPP
#define CHOWSERIES_CHOW_GENERATORS_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <chowseries/bigint.hpp>
#include <chowseries/exponent_function.hpp>
#include <chowseries/graded_series.hpp>
#include <chowseries/laurent_poly.hpp>

namespace chowseries
{

// Divisors on P^n: the degree-d piece of the Chow variety is
// P^(binomial(d+n, d) - 1).
struct DivisorChowFamily {
    std::int64_t n = 1;

    explicit DivisorChowFamily(std::int64_t dim) : n(dim)
    {
        if (dim < 1) {
            throw std::domain_error("divisor family needs n >= 1, got " + std::to_string(dim));
        }
    }

    // d -> binomial(d + n, d), the number of monomials of degree d in n+1
    // variables; strictly increasing, equal to 1 at d = 0.
    ExponentFunction exponent_fn() const
    {
        return ExponentFunction::binomial_family(1, n);
    }

    BigInt point_count(std::int64_t d) const
    {
        return binomial(static_cast<std::uint64_t>(d + n), static_cast<std::uint64_t>(d));
    }
};

inline SeriesDescriptor divisor_chow_descriptor(std::int64_t n)
{
    return SeriesDescriptor{"divisor-chow", {n}, DivisorChowFamily(n).exponent_fn()};
}

// sum_d PP(P^(binomial(d+n,d) - 1)) t^d, exact for d <= max_d.
inline GradedSeries divisor_chow_series(std::int64_t n, std::int64_t max_d)
{
    if (max_d < 0) {
        throw std::domain_error("max_d must be nonnegative");
    }
    const DivisorChowFamily family(n);
    return GradedSeries::from_generator(
        ExponentVector{max_d},
        [family](const ExponentVector &lambda) {
            return geometric_sum(detail::to_int64(family.point_count(lambda[0])));
        },
        divisor_chow_descriptor(n));
}

// Euler characteristics of the same Chow varieties: each coefficient is the
// s = -1 value of the corresponding divisor_chow_series coefficient.
inline GradedSeries euler_chow_series(std::int64_t n, std::int64_t max_d)
{
    if (max_d < 0) {
        throw std::domain_error("max_d must be nonnegative");
    }
    const DivisorChowFamily family(n);
    return GradedSeries::from_generator(
        ExponentVector{max_d},
        [family](const ExponentVector &lambda) {
            const LaurentPoly pp = geometric_sum(detail::to_int64(family.point_count(lambda[0])));
            return LaurentPoly(eval_minus_one(pp));
        },
        SeriesDescriptor{"euler-chow", {n}, std::nullopt});
}

// Even Betti numbers b_0, b_2, ..., b_2m of a space with no odd cohomology.
class BettiProfile
{
public:
    static BettiProfile from_even(std::vector<std::int64_t> even)
    {
        if (even.empty() || even.front() < 1) {
            throw std::domain_error("Betti profile needs b_0 >= 1");
        }
        for (auto b : even) {
            if (b < 0) {
                throw std::domain_error("Betti numbers must be nonnegative");
            }
        }
        BettiProfile out;
        out.m_even = std::move(even);
        return out;
    }

    // b_0, b_1, b_2, ...; odd entries must vanish.
    static BettiProfile from_full(const std::vector<std::int64_t> &all)
    {
        std::vector<std::int64_t> even;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (i % 2 == 1) {
                if (all[i] != 0) {
                    throw std::domain_error("odd Betti number b_" + std::to_string(i)
                                            + " is nonzero; only even cohomology is supported");
                }
                continue;
            }
            even.push_back(all[i]);
        }
        return from_even(std::move(even));
    }

    const std::vector<std::int64_t> &even() const
    {
        return m_even;
    }

    LaurentPoly poincare() const
    {
        LaurentPoly out;
        for (std::size_t i = 0; i < m_even.size(); ++i) {
            out.add_term(2 * static_cast<std::int64_t>(i), BigInt(m_even[i]));
        }
        return out;
    }

private:
    std::vector<std::int64_t> m_even;
};

namespace detail
{

// prod_i (1 - s^(2i) t)^(-b_2i) expanded to t^max_d.
inline GradedSeries symmetric_power_expansion(const BettiProfile &b, std::int64_t max_d)
{
    const ExponentVector box{max_d};
    RationalGradedSeries acc = indicator_series<Rational>(ExponentVector{0}, box);
    for (std::size_t i = 0; i < b.even().size(); ++i) {
        if (b.even()[i] == 0) {
            continue;
        }
        GradedPolynomial factor = GradedPolynomial::one(1);
        factor.add_term(ExponentVector{1}, LaurentPoly::monomial(BigInt(-1), 2 * static_cast<std::int64_t>(i)));
        const RationalGradedSeries inv = series_invert(factor, box).without_generator();
        for (std::int64_t k = 0; k < b.even()[i]; ++k) {
            acc = series_convolve(acc.without_generator(), inv);
        }
    }
    return to_integral(acc.without_generator());
}

} // namespace detail

// sum_d PP(Sym^d X) t^d for X with only even cohomology, from the product
// formula prod_i (1 - s^(2i) t)^(-b_2i).
inline GradedSeries zero_cycle_series(const BettiProfile &b, std::int64_t max_d)
{
    if (max_d < 0) {
        throw std::domain_error("max_d must be nonnegative");
    }
    GradedSeries head = detail::symmetric_power_expansion(b, max_d);
    // The generator re-expands up to the requested degree.
    auto gen = [b](const ExponentVector &lambda) {
        return detail::symmetric_power_expansion(b, lambda[0]).coefficient(lambda);
    };
    std::vector<std::int64_t> params = b.even();
    return GradedSeries::assemble(head.truncation(), head.coefficients(),
                                  std::make_shared<const GradedSeries::generator_type>(std::move(gen)))
        .with_descriptor(SeriesDescriptor{"zero-cycles", std::move(params), std::nullopt});
}

// d -> 2 binomial(d + n, d): the nonconstant s-exponents of (1 - s^2) times
// the divisor series.
inline ExponentFunction gap_exponent_fn(std::int64_t n)
{
    return DivisorChowFamily(n).exponent_fn().scaled(2);
}

} // namespace chowseries

#endif // CHOWSERIES_CHOW_GENERATORS_HPP
