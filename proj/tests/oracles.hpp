#ifndef CHOWSERIES_TESTS_ORACLES_HPP
#define CHOWSERIES_TESTS_ORACLES_HPP

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <chowseries/bigint.hpp>
#include <chowseries/laurent_poly.hpp>

namespace oracle
{

using chowseries::BigInt;
using chowseries::LaurentPoly;
using chowseries::Rational;

// Pascal's triangle rows 0..n.
inline std::vector<std::vector<BigInt>> pascal(std::size_t n)
{
    std::vector<std::vector<BigInt>> rows(n + 1);
    for (std::size_t a = 0; a <= n; ++a) {
        rows[a].assign(a + 1, BigInt(1));
        for (std::size_t b = 1; b < a; ++b) {
            rows[a][b] = rows[a - 1][b - 1] + rows[a - 1][b];
        }
    }
    return rows;
}

// Schoolbook product on dense arrays indexed from the lowest exponent.
inline std::map<std::int64_t, BigInt> dense_product(const LaurentPoly &a, const LaurentPoly &b)
{
    std::map<std::int64_t, BigInt> out;
    if (a.is_zero() || b.is_zero()) {
        return out;
    }
    const std::int64_t la = *a.low_degree(), ha = *a.degree();
    const std::int64_t lb = *b.low_degree(), hb = *b.degree();
    std::vector<BigInt> acc(static_cast<std::size_t>(ha - la + hb - lb + 1), BigInt(0));
    for (std::int64_t i = la; i <= ha; ++i) {
        for (std::int64_t j = lb; j <= hb; ++j) {
            acc[static_cast<std::size_t>(i - la + j - lb)] += a.coefficient(i) * b.coefficient(j);
        }
    }
    for (std::size_t k = 0; k < acc.size(); ++k) {
        if (acc[k] != 0) {
            out[static_cast<std::int64_t>(k) + la + lb] = acc[k];
        }
    }
    return out;
}

// Exact solve of an overdetermined rational system A x = b by Gaussian
// elimination; nothing when inconsistent.
inline std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && a[sel][c] == 0) {
            ++sel;
        }
        if (sel == rows) {
            continue;
        }
        std::swap(a[r], a[sel]);
        std::swap(b[r], b[sel]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) {
                continue;
            }
            const Rational k = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) {
                a[i][j] -= k * a[r][j];
            }
            b[i] -= k * b[r];
        }
        piv.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (b[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = 0; i < piv.size(); ++i) {
        x[piv[i]] = b[i] / a[i][piv[i]];
    }
    return x;
}

// Smallest L such that some c_1..c_L give a_n = -sum c_j a_(n-j) for all
// L <= n < len, found by trying L = 0, 1, ... and solving the Hankel-type
// system exactly.
inline std::size_t linear_complexity(const std::vector<Rational> &a)
{
    for (std::size_t L = 0; L <= a.size(); ++L) {
        if (L == 0) {
            bool zero = true;
            for (const auto &x : a) {
                zero = zero && x == 0;
            }
            if (zero) {
                return 0;
            }
            continue;
        }
        std::vector<std::vector<Rational>> m;
        std::vector<Rational> rhs;
        for (std::size_t n = L; n < a.size(); ++n) {
            std::vector<Rational> row(L);
            for (std::size_t j = 1; j <= L; ++j) {
                row[j - 1] = a[n - j];
            }
            m.push_back(row);
            rhs.push_back(-a[n]);
        }
        if (m.empty() || solve(m, rhs)) {
            return L;
        }
    }
    return a.size();
}

// Residue of a rational modulo the prime 10^9 + 7; nothing if the
// denominator vanishes there.
inline std::optional<std::uint64_t> residue(const Rational &x)
{
    constexpr std::uint64_t p = 1'000'000'007ULL;
    const BigInt num = ((BigInt(x.get_num()) % p) + p) % p;
    const BigInt den = BigInt(x.get_den()) % p;
    if (den == 0) {
        return std::nullopt;
    }
    // Fermat inverse.
    BigInt inv;
    const BigInt mod(static_cast<unsigned long>(p));
    mpz_powm_ui(inv.get_mpz_t(), den.get_mpz_t(), p - 2, mod.get_mpz_t());
    return static_cast<std::uint64_t>(BigInt(num * inv % mod).get_ui());
}

// Rank of a matrix over Z/(10^9 + 7).
inline std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> m)
{
    constexpr std::uint64_t p = 1'000'000'007ULL;
    auto pw = [](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        for (; e; e >>= 1, b = b * b % p) {
            if (e & 1) {
                r = r * b % p;
            }
        }
        return r;
    };
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t sel = rank;
        while (sel < m.size() && m[sel][c] == 0) {
            ++sel;
        }
        if (sel == m.size()) {
            continue;
        }
        std::swap(m[rank], m[sel]);
        const std::uint64_t inv = pw(m[rank][c], p - 2);
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            const std::uint64_t k = m[i][c] * inv % p;
            for (std::size_t j = c; j < cols; ++j) {
                m[i][j] = (m[i][j] + (p - k) * m[rank][j]) % p;
            }
        }
        ++rank;
    }
    return rank;
}

// True iff no recurrence a_n = -sum_{j<=L} c_j a_(n-j) (L <= n < len) of
// order L <= max_order exists. For each L the augmented system [A | b] is
// first ranked mod p: full column rank there forces full rank over Q, so the
// system is inconsistent. Otherwise the system is solved exactly.
inline bool no_recurrence_up_to(const std::vector<Rational> &a, std::size_t max_order)
{
    for (std::size_t L = 0; L <= max_order && L <= a.size(); ++L) {
        std::vector<std::vector<Rational>> m;
        std::vector<Rational> rhs;
        std::vector<std::vector<std::uint64_t>> aug;
        bool reducible = true;
        for (std::size_t n = L; n < a.size(); ++n) {
            std::vector<Rational> row(L);
            std::vector<std::uint64_t> r(L + 1);
            for (std::size_t j = 1; j <= L; ++j) {
                row[j - 1] = a[n - j];
            }
            for (std::size_t j = 0; j <= L; ++j) {
                const auto x = residue(j < L ? row[j] : a[n]);
                reducible = reducible && x.has_value();
                r[j] = x.value_or(0);
            }
            m.push_back(row);
            rhs.push_back(-a[n]);
            aug.push_back(r);
        }
        if (reducible && rank_mod_p(aug) == L + 1) {
            continue;
        }
        if (L == 0) {
            bool zero = true;
            for (const auto &x : a) {
                zero = zero && x == 0;
            }
            if (zero) {
                return false;
            }
            continue;
        }
        if (m.empty() || solve(m, rhs)) {
            return false;
        }
    }
    return true;
}

} // namespace oracle

#endif // CHOWSERIES_TESTS_ORACLES_HPP
