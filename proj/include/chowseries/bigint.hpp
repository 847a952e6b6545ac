#ifndef CHOWSERIES_BIGINT_HPP
#define CHOWSERIES_BIGINT_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace chowseries
{

// Exact integers and rationals. GMP keeps zero canonical (no signed zero) and
// mpq results are always reduced.
using BigInt = mpz_class;
using Rational = mpq_class;

namespace detail
{

inline bool is_zero(const BigInt &x)
{
    return sgn(x) == 0;
}

inline bool is_zero(const Rational &x)
{
    return sgn(x) == 0;
}

inline std::string to_decimal(const BigInt &x)
{
    return x.get_str(10);
}

inline std::string to_decimal(const Rational &x)
{
    return x.get_str(10);
}

template <typename Coeff>
Coeff parse_coefficient(const std::string &text);

template <>
inline BigInt parse_coefficient<BigInt>(const std::string &text)
{
    BigInt out;
    if (text.empty() || out.set_str(text, 10) != 0) {
        throw std::invalid_argument("not a decimal integer: '" + text + "'");
    }
    return out;
}

template <>
inline Rational parse_coefficient<Rational>(const std::string &text)
{
    Rational out;
    if (text.empty() || out.set_str(text, 10) != 0) {
        throw std::invalid_argument("not a decimal rational: '" + text + "'");
    }
    if (sgn(out.get_den()) == 0) {
        throw std::invalid_argument("zero denominator: '" + text + "'");
    }
    out.canonicalize();
    return out;
}

inline std::int64_t to_int64(const BigInt &x)
{
    if (!x.fits_slong_p()) {
        throw std::overflow_error("integer does not fit in 64 bits: " + x.get_str());
    }
    return static_cast<std::int64_t>(x.get_si());
}

} // namespace detail

// Exact binomial coefficient; zero when b > a.
inline BigInt binomial(std::uint64_t a, std::uint64_t b)
{
    if (b > a) {
        return 0;
    }
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return out;
}

// Least common multiple of denominators; used to clear a rational vector.
inline BigInt lcm(const BigInt &a, const BigInt &b)
{
    BigInt out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline BigInt gcd(const BigInt &a, const BigInt &b)
{
    BigInt out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

} // namespace chowseries

#endif // CHOWSERIES_BIGINT_HPP
