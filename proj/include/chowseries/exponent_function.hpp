#ifndef CHOWSERIES_EXPONENT_FUNCTION_HPP
#define CHOWSERIES_EXPONENT_FUNCTION_HPP

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <chowseries/bigint.hpp>

namespace chowseries
{

// An integer-valued polynomial in d, stored in the binomial (Newton) basis:
//
//     e(d) = sum_j c_j * binomial(d, j),   c_j integers.
//
// Every integer-valued polynomial has exactly one such expansion, so degree
// and leading sign are read off directly, and finite differences just shift
// the coefficient vector. Used to describe support exponents of generated
// series without fixing a truncation.
class ExponentFunction
{
public:
    ExponentFunction() = default;

    explicit ExponentFunction(std::vector<BigInt> newton, std::string label = {})
        : m_newton(std::move(newton)), m_label(std::move(label))
    {
        trim();
    }

    // scale * binomial(d + k, d); by Vandermonde this is
    // scale * sum_j binomial(k, j) binomial(d, j).
    static ExponentFunction binomial_family(std::int64_t scale, std::int64_t k)
    {
        if (k < 0) {
            throw std::domain_error("binomial_family requires k >= 0");
        }
        std::vector<BigInt> c;
        c.reserve(static_cast<std::size_t>(k) + 1u);
        for (std::int64_t j = 0; j <= k; ++j) {
            c.push_back(BigInt(scale) * binomial(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(j)));
        }
        std::ostringstream os;
        if (scale != 1) {
            os << scale << '*';
        }
        os << "binomial(d+" << k << ",d)";
        return ExponentFunction(std::move(c), os.str());
    }

    const std::vector<BigInt> &newton_coefficients() const
    {
        return m_newton;
    }

    // -1 for the zero function.
    std::int64_t degree() const
    {
        return static_cast<std::int64_t>(m_newton.size()) - 1;
    }

    bool leading_positive() const
    {
        return !m_newton.empty() && sgn(m_newton.back()) > 0;
    }

    BigInt operator()(std::uint64_t d) const
    {
        BigInt out = 0;
        for (std::size_t j = 0; j < m_newton.size(); ++j) {
            out += m_newton[j] * binomial(d, j);
        }
        return out;
    }

    // e(d + 1) - e(d).
    ExponentFunction difference() const
    {
        if (m_newton.size() <= 1u) {
            return ExponentFunction{};
        }
        std::vector<BigInt> c(m_newton.begin() + 1, m_newton.end());
        return ExponentFunction(std::move(c), m_label.empty() ? std::string{} : "diff(" + m_label + ")");
    }

    ExponentFunction scaled(std::int64_t k) const
    {
        std::vector<BigInt> c = m_newton;
        for (auto &x : c) {
            x *= k;
        }
        std::string label;
        if (!m_label.empty()) {
            label = std::to_string(k) + "*" + m_label;
        }
        return ExponentFunction(std::move(c), std::move(label));
    }

    // Consecutive differences tend to +infinity: degree >= 2 with positive
    // leading coefficient.
    bool has_unbounded_differences() const
    {
        return degree() >= 2 && leading_positive();
    }

    std::string describe() const
    {
        if (!m_label.empty()) {
            return m_label;
        }
        std::ostringstream os;
        bool first = true;
        for (std::size_t j = 0; j < m_newton.size(); ++j) {
            if (sgn(m_newton[j]) == 0) {
                continue;
            }
            os << (first ? "" : " + ") << m_newton[j].get_str() << "*binomial(d," << j << ")";
            first = false;
        }
        return first ? "0" : os.str();
    }

    friend bool operator==(const ExponentFunction &a, const ExponentFunction &b)
    {
        return a.m_newton == b.m_newton;
    }

private:
    void trim()
    {
        while (!m_newton.empty() && sgn(m_newton.back()) == 0) {
            m_newton.pop_back();
        }
    }

    std::vector<BigInt> m_newton;
    std::string m_label;
};

} // namespace chowseries

#endif // CHOWSERIES_EXPONENT_FUNCTION_HPP
