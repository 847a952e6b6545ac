#ifndef CHOWSERIES_MOTIVE_HPP
#define CHOWSERIES_MOTIVE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <chowseries/bigint.hpp>
#include <chowseries/laurent_poly.hpp>

namespace chowseries
{

// A class in the Grothendieck ring of homological Chow motives, represented
// by its image under the cohomology series map: the virtual Poincare
// polynomial sum_i (dim H_i(M) - dim H_i(N)) s^i with the Tate twist already
// folded into the exponents. Coefficients may be negative (virtual classes).
//
// Two classes compare equal iff their images agree; this is faithful on the
// subring generated by projective spaces.
class MotiveClass
{
public:
    MotiveClass() = default;
    explicit MotiveClass(LaurentPoly pp) : m_pp(std::move(pp)) {}

    // Class of the empty scheme.
    static MotiveClass zero()
    {
        return MotiveClass{};
    }
    // h(Pt), the unit for the tensor product.
    static MotiveClass unit()
    {
        return MotiveClass{LaurentPoly(BigInt(1))};
    }

    const LaurentPoly &poincare() const
    {
        return m_pp;
    }

    friend MotiveClass operator+(const MotiveClass &a, const MotiveClass &b)
    {
        return MotiveClass{a.m_pp + b.m_pp};
    }
    // [M] - [N]
    friend MotiveClass operator-(const MotiveClass &a, const MotiveClass &b)
    {
        return MotiveClass{a.m_pp - b.m_pp};
    }
    friend MotiveClass operator-(const MotiveClass &a)
    {
        return MotiveClass{-a.m_pp};
    }
    friend MotiveClass operator*(const MotiveClass &a, const MotiveClass &b)
    {
        return MotiveClass{a.m_pp * b.m_pp};
    }
    friend bool operator==(const MotiveClass &a, const MotiveClass &b) = default;

    std::string to_string() const
    {
        return "[" + m_pp.to_string() + "]";
    }

private:
    LaurentPoly m_pp;
};

// (X, p, n) as seen through homology: the Poincare polynomial of the image of
// p, and the Tate twist n.
struct TwistedPresentation {
    LaurentPoly base_pp;
    std::int64_t twist = 0;
};

// Twist n multiplies by s^(-2n). With this sign, (P^1, [P x P^1], -1) keeps
// only its degree-2 class and lands on the point motive in degree 0.
inline MotiveClass normalize_twist(const TwistedPresentation &tp)
{
    return MotiveClass{tp.base_pp.shifted(-2 * tp.twist)};
}

// The move (X, p, n) ~ (X x (P^1)^k, p x [(P x P^1)^k], n + k): only the class
// [P x P^1] in degree 2 survives each extra factor, so the base polynomial
// picks up s^(2k).
inline TwistedPresentation apply_twist_move(const TwistedPresentation &tp, std::int64_t k)
{
    return TwistedPresentation{tp.base_pp.shifted(2 * k), tp.twist + k};
}

// h(P^m).
inline MotiveClass motive_of_projective_space(std::int64_t m)
{
    if (m < 0) {
        throw std::domain_error("projective space dimension must be nonnegative");
    }
    return MotiveClass{geometric_sum(m + 1)};
}

inline MotiveClass motive_oplus(const MotiveClass &a, const MotiveClass &b)
{
    return a + b;
}

inline MotiveClass motive_otimes(const MotiveClass &a, const MotiveClass &b)
{
    return a * b;
}

// chi(M): the cohomology series at s = -1.
inline BigInt euler(const MotiveClass &a)
{
    return eval_minus_one(a.poincare());
}

} // namespace chowseries

#endif // CHOWSERIES_MOTIVE_HPP
