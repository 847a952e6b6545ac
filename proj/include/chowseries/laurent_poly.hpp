#ifndef CHOWSERIES_LAURENT_POLY_HPP
#define CHOWSERIES_LAURENT_POLY_HPP

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <chowseries/bigint.hpp>

namespace chowseries
{

// Univariate Laurent polynomial in the cohomology variable s.
//
// Sparse, ordered by exponent. Zero coefficients are never stored, so two
// polynomials are equal iff their term maps are equal. The empty map is 0.
template <typename Coeff>
class BasicLaurentPoly
{
public:
    using coeff_type = Coeff;
    using exponent_type = std::int64_t;
    using map_type = std::map<exponent_type, Coeff>;

    BasicLaurentPoly() = default;

    // Constant polynomial.
    explicit BasicLaurentPoly(Coeff c)
    {
        add_term(0, std::move(c));
    }

    BasicLaurentPoly(std::initializer_list<std::pair<exponent_type, Coeff>> terms)
    {
        for (const auto &[e, c] : terms) {
            add_term(e, c);
        }
    }

    static BasicLaurentPoly monomial(Coeff c, exponent_type e)
    {
        BasicLaurentPoly out;
        out.add_term(e, std::move(c));
        return out;
    }

    static BasicLaurentPoly from_map(map_type terms)
    {
        BasicLaurentPoly out;
        for (auto &[e, c] : terms) {
            out.add_term(e, std::move(c));
        }
        return out;
    }

    const map_type &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    std::size_t size() const
    {
        return m_terms.size();
    }

    Coeff coefficient(exponent_type e) const
    {
        auto it = m_terms.find(e);
        return it == m_terms.end() ? Coeff(0) : it->second;
    }

    std::optional<exponent_type> degree() const
    {
        if (m_terms.empty()) {
            return std::nullopt;
        }
        return m_terms.rbegin()->first;
    }

    std::optional<exponent_type> low_degree() const
    {
        if (m_terms.empty()) {
            return std::nullopt;
        }
        return m_terms.begin()->first;
    }

    // Nonzero scalar times a single power of s: the units of Q[s, 1/s].
    bool is_monomial() const
    {
        return m_terms.size() == 1u;
    }

    bool is_constant() const
    {
        return m_terms.empty() || (m_terms.size() == 1u && m_terms.begin()->first == 0);
    }

    // Multiply by s^k.
    BasicLaurentPoly shifted(exponent_type k) const
    {
        BasicLaurentPoly out;
        for (const auto &[e, c] : m_terms) {
            out.m_terms.emplace_hint(out.m_terms.end(), e + k, c);
        }
        return out;
    }

    BasicLaurentPoly scaled(const Coeff &k) const
    {
        if (detail::is_zero(k)) {
            return {};
        }
        BasicLaurentPoly out;
        for (const auto &[e, c] : m_terms) {
            out.m_terms.emplace_hint(out.m_terms.end(), e, c * k);
        }
        return out;
    }

    BasicLaurentPoly &operator+=(const BasicLaurentPoly &other)
    {
        for (const auto &[e, c] : other.m_terms) {
            add_term(e, c);
        }
        return *this;
    }

    BasicLaurentPoly &operator-=(const BasicLaurentPoly &other)
    {
        for (const auto &[e, c] : other.m_terms) {
            add_term(e, -c);
        }
        return *this;
    }

    // Accumulate c * s^e.
    void add_term(exponent_type e, const Coeff &c)
    {
        if (detail::is_zero(c)) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (detail::is_zero(it->second)) {
                m_terms.erase(it);
            }
        }
    }

    friend BasicLaurentPoly operator+(BasicLaurentPoly a, const BasicLaurentPoly &b)
    {
        a += b;
        return a;
    }

    friend BasicLaurentPoly operator-(BasicLaurentPoly a, const BasicLaurentPoly &b)
    {
        a -= b;
        return a;
    }

    friend BasicLaurentPoly operator-(const BasicLaurentPoly &a)
    {
        return a.scaled(Coeff(-1));
    }

    friend BasicLaurentPoly operator*(const BasicLaurentPoly &a, const BasicLaurentPoly &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        BasicLaurentPoly out;
        Coeff prod;
        for (const auto &[ea, ca] : a.m_terms) {
            for (const auto &[eb, cb] : b.m_terms) {
                prod = ca * cb;
                out.add_term(ea + eb, prod);
            }
        }
        return out;
    }

    BasicLaurentPoly &operator*=(const BasicLaurentPoly &other)
    {
        *this = *this * other;
        return *this;
    }

    friend bool operator==(const BasicLaurentPoly &a, const BasicLaurentPoly &b)
    {
        return a.m_terms == b.m_terms;
    }

    // "1 + 2 s^2 - s^-1"
    std::string to_string() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto &[e, c] : m_terms) {
            const bool neg = sgn(c) < 0;
            Coeff mag = neg ? Coeff(-c) : c;
            if (first) {
                os << (neg ? "-" : "");
            } else {
                os << (neg ? " - " : " + ");
            }
            first = false;
            const bool unit = (mag == 1);
            if (e == 0) {
                os << detail::to_decimal(mag);
                continue;
            }
            if (!unit) {
                os << detail::to_decimal(mag) << ' ';
            }
            os << 's';
            if (e != 1) {
                os << '^' << e;
            }
        }
        return os.str();
    }

private:
    map_type m_terms;
};

using LaurentPoly = BasicLaurentPoly<BigInt>;
using RationalLaurentPoly = BasicLaurentPoly<Rational>;

// Exact value at s = -1: the Euler characteristic specialization.
template <typename Coeff>
Coeff eval_minus_one(const BasicLaurentPoly<Coeff> &p)
{
    Coeff out = 0;
    for (const auto &[e, c] : p.terms()) {
        if (e % 2 == 0) {
            out += c;
        } else {
            out -= c;
        }
    }
    return out;
}

// Exact value at a rational point; s = 0 is rejected when negative powers occur.
template <typename Coeff>
Rational evaluate(const BasicLaurentPoly<Coeff> &p, const Rational &x)
{
    Rational out = 0;
    if (p.is_zero()) {
        return out;
    }
    if (sgn(x) == 0) {
        if (*p.low_degree() < 0) {
            throw std::domain_error("cannot evaluate a negative power of s at s = 0");
        }
        return Rational(p.coefficient(0));
    }
    // Horner from the top exponent down, then the factor x^low.
    auto power = [&x](std::int64_t k) {
        Rational pw;
        mpz_pow_ui(pw.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(k));
        mpz_pow_ui(pw.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(k));
        pw.canonicalize();
        return pw;
    };
    std::int64_t prev = *p.degree();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (it->first != prev) {
            out *= power(prev - it->first);
            prev = it->first;
        }
        out += Rational(it->second);
    }
    const std::int64_t low = *p.low_degree();
    if (low > 0) {
        out *= power(low);
    } else if (low < 0) {
        out /= power(-low);
    }
    return out;
}

// 1 + s^2 + ... + s^(2(N-1)) = (1 - s^(2N)) / (1 - s^2), the Poincare
// polynomial of P^(N-1).
inline LaurentPoly geometric_sum(std::int64_t count)
{
    if (count <= 0) {
        throw std::domain_error("geometric_sum requires a positive term count, got " + std::to_string(count));
    }
    LaurentPoly::map_type terms;
    for (std::int64_t i = 0; i < count; ++i) {
        terms.emplace_hint(terms.end(), 2 * i, BigInt(1));
    }
    return LaurentPoly::from_map(std::move(terms));
}

inline RationalLaurentPoly to_rational(const LaurentPoly &p)
{
    RationalLaurentPoly::map_type terms;
    for (const auto &[e, c] : p.terms()) {
        terms.emplace_hint(terms.end(), e, Rational(c));
    }
    return RationalLaurentPoly::from_map(std::move(terms));
}

inline bool is_integral(const RationalLaurentPoly &p)
{
    for (const auto &[e, c] : p.terms()) {
        if (c.get_den() != 1) {
            return false;
        }
    }
    return true;
}

inline LaurentPoly to_integral(const RationalLaurentPoly &p)
{
    LaurentPoly::map_type terms;
    for (const auto &[e, c] : p.terms()) {
        if (c.get_den() != 1) {
            throw std::domain_error("coefficient " + c.get_str() + " is not an integer");
        }
        terms.emplace_hint(terms.end(), e, c.get_num());
    }
    return LaurentPoly::from_map(std::move(terms));
}

} // namespace chowseries

#endif // CHOWSERIES_LAURENT_POLY_HPP
