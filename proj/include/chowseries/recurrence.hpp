#ifndef CHOWSERIES_RECURRENCE_HPP
#define CHOWSERIES_RECURRENCE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <chowseries/bigint.hpp>
#include <chowseries/graded_series.hpp>
#include <chowseries/laurent_poly.hpp>

namespace chowseries
{

// A linear recurrence of order L with connection polynomial
// C(t) = 1 + c_1 t + ... + c_k t^k (k <= L):
//
//     sum_j c_j a_(n-j) = 0   for every n >= L.
//
// Equivalently (sum a_n t^n) * C(t) is a polynomial of degree < L.
struct LinearRecurrence {
    std::size_t order = 0;
    std::vector<Rational> connection{Rational(1)};
};

// Shortest linear recurrence consistent with the whole sequence
// (Berlekamp-Massey over Q). Returns nothing when the linear complexity
// exceeds max_order. Requires seq.size() >= 2 * max_order so that any
// recurrence found is the unique shortest one.
inline std::optional<LinearRecurrence> find_recurrence(std::span<const Rational> seq, std::size_t max_order)
{
    if (seq.size() < 2 * max_order) {
        throw std::invalid_argument("find_recurrence: sequence of length " + std::to_string(seq.size())
                                    + " is too short for max_order " + std::to_string(max_order));
    }
    std::vector<Rational> c{Rational(1)};
    std::vector<Rational> b{Rational(1)};
    std::size_t length = 0;
    std::size_t shift = 1;
    Rational last_discrepancy = 1;

    for (std::size_t n = 0; n < seq.size(); ++n) {
        Rational d = seq[n];
        for (std::size_t i = 1; i < c.size() && i <= n; ++i) {
            d += c[i] * seq[n - i];
        }
        if (sgn(d) == 0) {
            ++shift;
            continue;
        }
        const Rational factor = d / last_discrepancy;
        std::vector<Rational> next = c;
        if (next.size() < b.size() + shift) {
            next.resize(b.size() + shift, Rational(0));
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            next[i + shift] -= factor * b[i];
        }
        if (2 * length <= n) {
            b = std::move(c);
            length = n + 1 - length;
            last_discrepancy = d;
            shift = 1;
        } else {
            ++shift;
        }
        c = std::move(next);
    }
    while (c.size() > 1 && sgn(c.back()) == 0) {
        c.pop_back();
    }
    if (length > max_order || 2 * length > seq.size()) {
        return std::nullopt;
    }
    return LinearRecurrence{length, std::move(c)};
}

// Scale a rational vector to a primitive integer vector with the same
// direction and a positive first nonzero entry.
inline std::vector<BigInt> primitive_integer_vector(const std::vector<Rational> &v)
{
    BigInt den = 1;
    for (const auto &x : v) {
        den = lcm(den, x.get_den());
    }
    std::vector<BigInt> out;
    out.reserve(v.size());
    BigInt g = 0;
    for (const auto &x : v) {
        out.push_back(x.get_num() * (den / x.get_den()));
        g = gcd(g, out.back());
    }
    if (g == 0) {
        return out;
    }
    auto first = std::find_if(out.begin(), out.end(), [](const BigInt &x) { return sgn(x) != 0; });
    if (sgn(*first) < 0) {
        g = -g;
    }
    for (auto &x : out) {
        x /= g;
    }
    return out;
}

// f = C(t) (integral, primitive) and g = f * seq truncated below the order,
// as rank-1 graded polynomials constant in s.
inline std::pair<GradedPolynomial, GradedPolynomial> recurrence_to_fraction(const LinearRecurrence &rec,
                                                                            std::span<const Rational> seq)
{
    const std::vector<BigInt> ints = primitive_integer_vector(rec.connection);
    GradedPolynomial f(1);
    for (std::size_t j = 0; j < ints.size(); ++j) {
        f.add_term(ExponentVector{static_cast<std::int64_t>(j)}, LaurentPoly(ints[j]));
    }
    GradedPolynomial g(1);
    for (std::size_t d = 0; d < rec.order && d < seq.size(); ++d) {
        Rational acc = 0;
        for (std::size_t j = 0; j < ints.size() && j <= d; ++j) {
            acc += Rational(ints[j]) * seq[d - j];
        }
        if (acc.get_den() != 1) {
            throw std::domain_error("numerator has non-integral coefficient " + acc.get_str()
                                    + "; sequence is not integral");
        }
        g.add_term(ExponentVector{static_cast<std::int64_t>(d)}, LaurentPoly(acc.get_num()));
    }
    return {std::move(f), std::move(g)};
}

namespace detail
{

// Arithmetic modulo the Mersenne prime 2^61 - 1.
struct ModP {
    static constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;

    static std::uint64_t reduce(const BigInt &x)
    {
        return mpz_fdiv_ui(x.get_mpz_t(), p);
    }
    static std::uint64_t mul(std::uint64_t a, std::uint64_t b)
    {
        const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
        std::uint64_t r = static_cast<std::uint64_t>(z & p) + static_cast<std::uint64_t>(z >> 61);
        return r >= p ? r - p : r;
    }
    static std::uint64_t sub(std::uint64_t a, std::uint64_t b)
    {
        return a >= b ? a - b : a + p - b;
    }
    static std::uint64_t pow(std::uint64_t a, std::uint64_t e)
    {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1u) {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    static std::uint64_t inv(std::uint64_t a)
    {
        return pow(a, p - 2);
    }
};

// Row-echelon basis over F_p that accepts rows one at a time.
class ModpEchelon
{
public:
    explicit ModpEchelon(std::size_t cols) : m_cols(cols) {}

    // True when the row increased the rank.
    bool insert(std::vector<std::uint64_t> row)
    {
        for (std::size_t r = 0; r < m_rows.size(); ++r) {
            const std::uint64_t x = row[m_pivots[r]];
            if (x == 0) {
                continue;
            }
            const auto &basis = m_rows[r];
            for (std::size_t c = m_pivots[r]; c < m_cols; ++c) {
                if (basis[c] != 0) {
                    row[c] = ModP::sub(row[c], ModP::mul(x, basis[c]));
                }
            }
        }
        std::size_t piv = 0;
        while (piv < m_cols && row[piv] == 0) {
            ++piv;
        }
        if (piv == m_cols) {
            return false;
        }
        const std::uint64_t s = ModP::inv(row[piv]);
        for (std::size_t c = piv; c < m_cols; ++c) {
            row[c] = ModP::mul(row[c], s);
        }
        m_rows.push_back(std::move(row));
        m_pivots.push_back(piv);
        return true;
    }

    std::size_t rank() const
    {
        return m_rows.size();
    }
    bool full() const
    {
        return m_rows.size() == m_cols;
    }

private:
    std::size_t m_cols;
    std::vector<std::vector<std::uint64_t>> m_rows;
    std::vector<std::size_t> m_pivots;
};

// One nonzero vector of the right nullspace of an exact rational matrix, or
// nothing when the nullspace is trivial.
inline std::optional<std::vector<Rational>> rational_null_vector(std::vector<std::vector<Rational>> m,
                                                                 std::size_t cols)
{
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && sgn(m[sel][col]) == 0) {
            ++sel;
        }
        if (sel == m.size()) {
            continue;
        }
        std::swap(m[row], m[sel]);
        const Rational inv = 1 / m[row][col];
        for (std::size_t c = col; c < cols; ++c) {
            m[row][c] *= inv;
        }
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || sgn(m[r][col]) == 0) {
                continue;
            }
            const Rational k = m[r][col];
            for (std::size_t c = col; c < cols; ++c) {
                m[r][c] -= k * m[row][c];
            }
        }
        pivot_cols.push_back(col);
        ++row;
    }
    if (pivot_cols.size() == cols) {
        return std::nullopt;
    }
    std::size_t free_col = 0;
    for (std::size_t k = 0; k < pivot_cols.size() && pivot_cols[k] == free_col; ++k) {
        ++free_col;
    }
    std::vector<Rational> v(cols, Rational(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
        v[pivot_cols[r]] = -m[r][free_col];
    }
    return v;
}

} // namespace detail

struct SeriesRecurrenceLimits {
    // Bound on max(deg_t f, deg_t g + 1).
    std::size_t max_order = 12;
    // Bound on the s-degree of each t-coefficient of f.
    std::int64_t max_s_degree = 12;
};

// Candidate denominator/numerator pair for a rank-1 series with Laurent
// coefficients c_0, ..., c_T: f = sum_{j<=k} f_j(s) t^j with f(0) a unit of
// Q[s, 1/s], and g = f * phi truncated below t^k, such that f * phi has no
// terms in t-degrees k..T.
//
// Candidates are enumerated by increasing order k, then increasing s-degree
// of f. Each (k, s-degree) linear system is first ranked modulo 2^61 - 1:
// independence mod p implies independence over Q, so a full-rank system is
// skipped without exact arithmetic. Otherwise the independent rows are solved
// exactly. `accept(f, g)` has the final say; the search continues past
// rejected candidates. Orders are capped so that at least k + 1 t-degrees
// constrain every candidate.
template <typename Accept>
std::optional<std::pair<GradedPolynomial, GradedPolynomial>>
find_series_recurrence(std::span<const LaurentPoly> coeffs, const SeriesRecurrenceLimits &limits, Accept &&accept)
{
    const std::int64_t top = static_cast<std::int64_t>(coeffs.size()) - 1;
    if (top < 1) {
        return std::nullopt;
    }
    // Dense residues of every coefficient, indexed from its low exponent.
    struct Dense {
        std::int64_t low = 0;
        std::vector<std::uint64_t> vals;
        std::uint64_t at(std::int64_t e) const
        {
            const std::int64_t i = e - low;
            return (i < 0 || i >= static_cast<std::int64_t>(vals.size())) ? 0 : vals[static_cast<std::size_t>(i)];
        }
    };
    std::vector<Dense> dense(coeffs.size());
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
        if (coeffs[d].is_zero()) {
            continue;
        }
        dense[d].low = *coeffs[d].low_degree();
        dense[d].vals.assign(static_cast<std::size_t>(*coeffs[d].degree() - dense[d].low + 1), 0);
        for (const auto &[e, c] : coeffs[d].terms()) {
            dense[d].vals[static_cast<std::size_t>(e - dense[d].low)] = detail::ModP::reduce(c);
        }
    }

    const std::int64_t max_k = std::min<std::int64_t>(static_cast<std::int64_t>(limits.max_order), (top + 1) / 2);
    for (std::int64_t k = 1; k <= max_k; ++k) {
        for (std::int64_t deg = 0; deg <= limits.max_s_degree; ++deg) {
            const std::size_t width = static_cast<std::size_t>(deg + 1);
            const std::size_t cols = static_cast<std::size_t>(k + 1) * width;
            detail::ModpEchelon ech(cols);
            // (t-degree, s-exponent) of the rows that raised the rank.
            std::vector<std::pair<std::int64_t, std::int64_t>> picked;
            for (std::int64_t d = k; d <= top && !ech.full(); ++d) {
                std::int64_t lo = 0;
                std::int64_t hi = -1;
                bool any = false;
                for (std::int64_t j = 0; j <= k; ++j) {
                    const auto &c = coeffs[static_cast<std::size_t>(d - j)];
                    if (c.is_zero()) {
                        continue;
                    }
                    lo = any ? std::min(lo, *c.low_degree()) : *c.low_degree();
                    hi = any ? std::max(hi, *c.degree() + deg) : *c.degree() + deg;
                    any = true;
                }
                for (std::int64_t e = lo; any && e <= hi && !ech.full(); ++e) {
                    std::vector<std::uint64_t> row(cols, 0);
                    bool nonzero = false;
                    for (std::int64_t j = 0; j <= k; ++j) {
                        const Dense &c = dense[static_cast<std::size_t>(d - j)];
                        for (std::int64_t a = 0; a <= deg; ++a) {
                            const std::uint64_t v = c.at(e - a);
                            row[static_cast<std::size_t>(j) * width + static_cast<std::size_t>(a)] = v;
                            nonzero = nonzero || v != 0;
                        }
                    }
                    if (nonzero && ech.insert(std::move(row))) {
                        picked.emplace_back(d, e);
                    }
                }
            }
            if (ech.full()) {
                continue;
            }

            std::vector<std::vector<Rational>> exact;
            exact.reserve(picked.size());
            for (const auto &[d, e] : picked) {
                std::vector<Rational> row(cols, Rational(0));
                for (std::int64_t j = 0; j <= k; ++j) {
                    const auto &c = coeffs[static_cast<std::size_t>(d - j)];
                    for (std::int64_t a = 0; a <= deg; ++a) {
                        row[static_cast<std::size_t>(j) * width + static_cast<std::size_t>(a)] = c.coefficient(e - a);
                    }
                }
                exact.push_back(std::move(row));
            }
            auto v = detail::rational_null_vector(std::move(exact), cols);
            if (!v) {
                continue;
            }
            const std::vector<BigInt> ints = primitive_integer_vector(*v);
            GradedPolynomial f(1);
            for (std::int64_t j = 0; j <= k; ++j) {
                LaurentPoly fj;
                for (std::int64_t a = 0; a <= deg; ++a) {
                    fj.add_term(a, ints[static_cast<std::size_t>(j) * width + static_cast<std::size_t>(a)]);
                }
                f.add_term(ExponentVector{j}, fj);
            }
            if (!is_invertible(f)) {
                continue;
            }
            GradedPolynomial g(1);
            for (std::int64_t d = 0; d < k && d <= top; ++d) {
                LaurentPoly acc;
                for (std::int64_t j = 0; j <= d; ++j) {
                    acc += f.coefficient(ExponentVector{j}) * coeffs[static_cast<std::size_t>(d - j)];
                }
                g.add_term(ExponentVector{d}, acc);
            }
            if (accept(f, g)) {
                return std::make_pair(std::move(f), std::move(g));
            }
        }
    }
    return std::nullopt;
}

} // namespace chowseries

#endif // CHOWSERIES_RECURRENCE_HPP
