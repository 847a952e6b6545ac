#ifndef CHOWSERIES_GRADED_SERIES_HPP
#define CHOWSERIES_GRADED_SERIES_HPP

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <chowseries/bigint.hpp>
#include <chowseries/exponent_function.hpp>
#include <chowseries/laurent_poly.hpp>

namespace chowseries
{

// Raised when the available truncation cannot decide a question. Distinct
// from a "false" answer.
class inconclusive_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Raised when generating coefficients would exceed CHOWSERIES_MAX_TERMS.
class term_cap_exceeded : public std::length_error
{
public:
    using std::length_error::length_error;
};

// Global cap on the number of Laurent terms a single series may hold.
inline std::size_t max_terms()
{
    constexpr std::size_t fallback = 1'000'000;
    const char *env = std::getenv("CHOWSERIES_MAX_TERMS");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    char *end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
        return fallback;
    }
    return static_cast<std::size_t>(v);
}

// A degree multi-index in the grading monoid N^r. Addition is the monoid
// operation; ordering is lexicographic, which refines the componentwise
// partial order (mu <= lambda componentwise implies mu <= lambda).
class ExponentVector
{
public:
    ExponentVector() = default;

    explicit ExponentVector(std::vector<std::int64_t> coords) : m_coords(std::move(coords))
    {
        for (auto c : m_coords) {
            if (c < 0) {
                throw std::domain_error("exponent vector coordinates must be nonnegative");
            }
        }
    }

    ExponentVector(std::initializer_list<std::int64_t> coords) : ExponentVector(std::vector<std::int64_t>(coords)) {}

    static ExponentVector zero(std::size_t rank)
    {
        return ExponentVector(std::vector<std::int64_t>(rank, 0));
    }

    std::size_t rank() const
    {
        return m_coords.size();
    }
    const std::vector<std::int64_t> &coords() const
    {
        return m_coords;
    }
    std::int64_t operator[](std::size_t i) const
    {
        return m_coords[i];
    }

    bool is_zero() const
    {
        return std::all_of(m_coords.begin(), m_coords.end(), [](auto c) { return c == 0; });
    }

    // Componentwise <=.
    bool fits_in(const ExponentVector &box) const
    {
        if (box.rank() != rank()) {
            return false;
        }
        for (std::size_t i = 0; i < rank(); ++i) {
            if (m_coords[i] > box.m_coords[i]) {
                return false;
            }
        }
        return true;
    }

    friend ExponentVector operator+(const ExponentVector &a, const ExponentVector &b)
    {
        check_rank(a, b);
        std::vector<std::int64_t> out(a.rank());
        for (std::size_t i = 0; i < a.rank(); ++i) {
            out[i] = a.m_coords[i] + b.m_coords[i];
        }
        return ExponentVector(std::move(out));
    }

    // a - b, defined when b <= a componentwise.
    friend ExponentVector operator-(const ExponentVector &a, const ExponentVector &b)
    {
        check_rank(a, b);
        std::vector<std::int64_t> out(a.rank());
        for (std::size_t i = 0; i < a.rank(); ++i) {
            out[i] = a.m_coords[i] - b.m_coords[i];
        }
        return ExponentVector(std::move(out));
    }

    friend ExponentVector componentwise_min(const ExponentVector &a, const ExponentVector &b)
    {
        check_rank(a, b);
        std::vector<std::int64_t> out(a.rank());
        for (std::size_t i = 0; i < a.rank(); ++i) {
            out[i] = std::min(a.m_coords[i], b.m_coords[i]);
        }
        return ExponentVector(std::move(out));
    }

    friend ExponentVector componentwise_max(const ExponentVector &a, const ExponentVector &b)
    {
        check_rank(a, b);
        std::vector<std::int64_t> out(a.rank());
        for (std::size_t i = 0; i < a.rank(); ++i) {
            out[i] = std::max(a.m_coords[i], b.m_coords[i]);
        }
        return ExponentVector(std::move(out));
    }

    ExponentVector scaled(std::int64_t k) const
    {
        std::vector<std::int64_t> out = m_coords;
        for (auto &c : out) {
            c *= k;
        }
        return ExponentVector(std::move(out));
    }

    friend auto operator<=>(const ExponentVector &, const ExponentVector &) = default;
    friend bool operator==(const ExponentVector &, const ExponentVector &) = default;

    std::string to_string() const
    {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < m_coords.size(); ++i) {
            os << (i ? "," : "") << m_coords[i];
        }
        os << ')';
        return os.str();
    }

private:
    static void check_rank(const ExponentVector &a, const ExponentVector &b)
    {
        if (a.rank() != b.rank()) {
            throw std::domain_error("exponent vector rank mismatch: " + std::to_string(a.rank()) + " vs "
                                    + std::to_string(b.rank()));
        }
    }

    std::vector<std::int64_t> m_coords;
};

// All points of the box [0, bound] in lexicographic order.
inline std::vector<ExponentVector> box_points(const ExponentVector &bound)
{
    std::vector<ExponentVector> out;
    const std::size_t r = bound.rank();
    std::vector<std::int64_t> cur(r, 0);
    while (true) {
        out.emplace_back(cur);
        std::size_t i = r;
        while (i > 0) {
            --i;
            if (cur[i] < bound[i]) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
            if (i == 0) {
                return out;
            }
        }
        if (r == 0) {
            return out;
        }
    }
}

// Where the coefficients of a generated series come from, when known.
struct SeriesDescriptor {
    // Preset name ("divisor-chow", ...); empty when unknown.
    std::string family;
    std::vector<std::int64_t> params;
    // Rank-1 only: when set, the coefficient at degree d is
    // geometric_sum(geometric_sum_terms(d)).
    std::optional<ExponentFunction> geometric_sum_terms;
};

// A formal power series over N^r with Laurent polynomial coefficients, known
// exactly on the box [0, truncation]. Every point of the box has a stored
// coefficient (possibly zero). An optional pure generator extends the series
// to larger boxes; previously stored coefficients are never recomputed.
template <typename Coeff>
class BasicGradedSeries
{
public:
    using coeff_type = Coeff;
    using poly_type = BasicLaurentPoly<Coeff>;
    using generator_type = std::function<poly_type(const ExponentVector &)>;
    using map_type = std::map<ExponentVector, poly_type>;

    BasicGradedSeries() = default;

    // Coefficients missing from `coeffs` are zero; entries outside the box
    // are rejected.
    static BasicGradedSeries from_coefficients(ExponentVector truncation, map_type coeffs)
    {
        BasicGradedSeries out;
        out.m_truncation = std::move(truncation);
        for (auto &[lambda, p] : coeffs) {
            if (!lambda.fits_in(out.m_truncation)) {
                throw std::domain_error("coefficient at " + lambda.to_string() + " lies outside truncation "
                                        + out.m_truncation.to_string());
            }
        }
        for (auto &lambda : box_points(out.m_truncation)) {
            auto it = coeffs.find(lambda);
            out.m_coeffs.emplace_hint(out.m_coeffs.end(), lambda,
                                      it == coeffs.end() ? poly_type{} : std::move(it->second));
        }
        out.check_budget();
        return out;
    }

    static BasicGradedSeries from_generator(ExponentVector truncation, generator_type gen,
                                            std::optional<SeriesDescriptor> descriptor = std::nullopt)
    {
        if (!gen) {
            throw std::invalid_argument("from_generator requires a callable generator");
        }
        BasicGradedSeries seed;
        seed.m_truncation = ExponentVector::zero(truncation.rank());
        seed.m_generator = std::make_shared<const generator_type>(std::move(gen));
        seed.m_descriptor = std::move(descriptor);
        return seed.compute_box(truncation, {});
    }

    std::size_t rank() const
    {
        return m_truncation.rank();
    }
    const ExponentVector &truncation() const
    {
        return m_truncation;
    }
    const map_type &coefficients() const
    {
        return m_coeffs;
    }
    bool has_generator() const
    {
        return static_cast<bool>(m_generator);
    }
    const std::optional<SeriesDescriptor> &descriptor() const
    {
        return m_descriptor;
    }

    const poly_type &coefficient(const ExponentVector &lambda) const
    {
        auto it = m_coeffs.find(lambda);
        if (it == m_coeffs.end()) {
            throw std::out_of_range("degree " + lambda.to_string() + " is outside truncation "
                                    + m_truncation.to_string());
        }
        return it->second;
    }

    // Evaluate the generator directly, ignoring the cache.
    poly_type generate(const ExponentVector &lambda) const
    {
        if (!m_generator) {
            throw std::domain_error("series has no generator");
        }
        return (*m_generator)(lambda);
    }

    std::size_t term_count() const
    {
        std::size_t n = 0;
        for (const auto &[lambda, p] : m_coeffs) {
            n += p.size();
        }
        return n;
    }

    // Same series known on a new box. Points already stored are copied; the
    // rest come from the generator, possibly in parallel.
    BasicGradedSeries extended(const ExponentVector &new_truncation) const
    {
        if (new_truncation.rank() != rank()) {
            throw std::domain_error("extension box has the wrong rank");
        }
        if (!new_truncation.fits_in(m_truncation) && !m_generator) {
            throw std::domain_error("cannot extend a series without a generator");
        }
        return compute_box(new_truncation, m_coeffs);
    }

    // Restriction to the intersection of the current box with `box`.
    BasicGradedSeries restricted(const ExponentVector &box) const
    {
        BasicGradedSeries out;
        out.m_truncation = componentwise_min(m_truncation, box);
        out.m_generator = m_generator;
        out.m_descriptor = m_descriptor;
        for (const auto &[lambda, p] : m_coeffs) {
            if (lambda.fits_in(out.m_truncation)) {
                out.m_coeffs.emplace_hint(out.m_coeffs.end(), lambda, p);
            }
        }
        return out;
    }

    BasicGradedSeries with_descriptor(std::optional<SeriesDescriptor> d) const
    {
        BasicGradedSeries out = *this;
        out.m_descriptor = std::move(d);
        return out;
    }

    BasicGradedSeries without_generator() const
    {
        BasicGradedSeries out = *this;
        out.m_generator.reset();
        out.m_descriptor.reset();
        return out;
    }

    // Coefficient data equality on the box; generators are not compared.
    friend bool operator==(const BasicGradedSeries &a, const BasicGradedSeries &b)
    {
        return a.m_truncation == b.m_truncation && a.m_coeffs == b.m_coeffs;
    }

    // Internal constructor for operations that build the full map themselves.
    static BasicGradedSeries assemble(ExponentVector truncation, map_type coeffs,
                                      std::shared_ptr<const generator_type> gen)
    {
        BasicGradedSeries out;
        out.m_truncation = std::move(truncation);
        out.m_coeffs = std::move(coeffs);
        out.m_generator = std::move(gen);
        out.check_budget();
        return out;
    }

    const std::shared_ptr<const generator_type> &generator_handle() const
    {
        return m_generator;
    }

private:
    void check_budget() const
    {
        if (term_count() > max_terms()) {
            throw term_cap_exceeded("series holds more than " + std::to_string(max_terms())
                                    + " Laurent terms (CHOWSERIES_MAX_TERMS)");
        }
    }

    BasicGradedSeries compute_box(const ExponentVector &box, const map_type &cache) const
    {
        std::vector<ExponentVector> points = box_points(box);
        std::vector<std::size_t> missing;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (cache.find(points[i]) == cache.end()) {
                missing.push_back(i);
            }
        }
        if (!missing.empty() && !m_generator) {
            throw std::domain_error("series has no generator to fill " + box.to_string());
        }

        // Each slot is written exactly once by one worker; assembly below is
        // sequential and ordered, so the result does not depend on scheduling.
        std::vector<poly_type> fresh(missing.size());
        const std::size_t cap = max_terms();
        std::atomic<std::size_t> terms{0};
        for (const auto &[lambda, p] : cache) {
            if (lambda.fits_in(box)) {
                terms += p.size();
            }
        }
        std::atomic<std::size_t> next{0};
        std::atomic<bool> over{false};
        auto work = [&]() {
            while (!over.load()) {
                const std::size_t k = next.fetch_add(1);
                if (k >= missing.size()) {
                    return;
                }
                fresh[k] = (*m_generator)(points[missing[k]]);
                if (terms.fetch_add(fresh[k].size()) + fresh[k].size() > cap) {
                    over = true;
                }
            }
        };

        const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
        const std::size_t nthreads = missing.size() >= 16 ? std::min<std::size_t>(hw, 8) : 1;
        if (nthreads <= 1) {
            work();
        } else {
            std::vector<std::exception_ptr> errors(nthreads);
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < nthreads; ++t) {
                pool.emplace_back([&, t]() {
                    try {
                        work();
                    } catch (...) {
                        errors[t] = std::current_exception();
                        over = true;
                    }
                });
            }
            for (auto &th : pool) {
                th.join();
            }
            for (auto &e : errors) {
                if (e) {
                    std::rethrow_exception(e);
                }
            }
        }
        if (over.load()) {
            throw term_cap_exceeded("generating " + box.to_string() + " exceeds " + std::to_string(cap)
                                    + " Laurent terms (CHOWSERIES_MAX_TERMS)");
        }

        BasicGradedSeries out;
        out.m_truncation = box;
        out.m_generator = m_generator;
        out.m_descriptor = m_descriptor;
        std::size_t k = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (k < missing.size() && missing[k] == i) {
                out.m_coeffs.emplace_hint(out.m_coeffs.end(), points[i], std::move(fresh[k]));
                ++k;
            } else {
                out.m_coeffs.emplace_hint(out.m_coeffs.end(), points[i], cache.at(points[i]));
            }
        }
        return out;
    }

    ExponentVector m_truncation;
    map_type m_coeffs;
    std::shared_ptr<const generator_type> m_generator;
    std::optional<SeriesDescriptor> m_descriptor;
};

// Finitely supported element of the monoid ring: a polynomial in the grading
// variables with Laurent polynomial coefficients.
template <typename Coeff>
class BasicGradedPolynomial
{
public:
    using poly_type = BasicLaurentPoly<Coeff>;
    using map_type = std::map<ExponentVector, poly_type>;

    BasicGradedPolynomial() = default;
    explicit BasicGradedPolynomial(std::size_t rank) : m_rank(rank) {}

    static BasicGradedPolynomial from_terms(std::size_t rank, map_type terms)
    {
        BasicGradedPolynomial out(rank);
        for (auto &[lambda, p] : terms) {
            out.add_term(lambda, p);
        }
        return out;
    }

    static BasicGradedPolynomial monomial(const ExponentVector &lambda, poly_type p)
    {
        BasicGradedPolynomial out(lambda.rank());
        out.add_term(lambda, p);
        return out;
    }

    // The unit delta_0.
    static BasicGradedPolynomial one(std::size_t rank)
    {
        return monomial(ExponentVector::zero(rank), poly_type(Coeff(1)));
    }

    std::size_t rank() const
    {
        return m_rank;
    }
    const map_type &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }

    poly_type coefficient(const ExponentVector &lambda) const
    {
        auto it = m_terms.find(lambda);
        return it == m_terms.end() ? poly_type{} : it->second;
    }

    poly_type constant_term() const
    {
        return coefficient(ExponentVector::zero(m_rank));
    }

    void add_term(const ExponentVector &lambda, const poly_type &p)
    {
        if (lambda.rank() != m_rank) {
            throw std::domain_error("graded polynomial rank mismatch");
        }
        if (p.is_zero()) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(lambda, p);
        if (!inserted) {
            it->second += p;
            if (it->second.is_zero()) {
                m_terms.erase(it);
            }
        }
    }

    // Componentwise max over the support; zero vector when empty.
    ExponentVector support_box() const
    {
        ExponentVector out = ExponentVector::zero(m_rank);
        for (const auto &[lambda, p] : m_terms) {
            out = componentwise_max(out, lambda);
        }
        return out;
    }

    // Highest s-exponent over all coefficients.
    std::optional<std::int64_t> s_degree() const
    {
        std::optional<std::int64_t> out;
        for (const auto &[lambda, p] : m_terms) {
            out = out ? std::max(*out, *p.degree()) : *p.degree();
        }
        return out;
    }

    std::optional<std::int64_t> s_low_degree() const
    {
        std::optional<std::int64_t> out;
        for (const auto &[lambda, p] : m_terms) {
            out = out ? std::min(*out, *p.low_degree()) : *p.low_degree();
        }
        return out;
    }

    BasicGradedPolynomial s_shifted(std::int64_t k) const
    {
        BasicGradedPolynomial out(m_rank);
        for (const auto &[lambda, p] : m_terms) {
            out.m_terms.emplace_hint(out.m_terms.end(), lambda, p.shifted(k));
        }
        return out;
    }

    // The polynomial viewed as a series on `box`; its generator is exact
    // everywhere.
    BasicGradedSeries<Coeff> as_series(const ExponentVector &box) const
    {
        if (box.rank() != m_rank) {
            throw std::domain_error("graded polynomial rank mismatch");
        }
        auto terms = std::make_shared<const map_type>(m_terms);
        return BasicGradedSeries<Coeff>::from_generator(box, [terms](const ExponentVector &lambda) {
            auto it = terms->find(lambda);
            return it == terms->end() ? poly_type{} : it->second;
        });
    }

    friend BasicGradedPolynomial operator+(const BasicGradedPolynomial &a, const BasicGradedPolynomial &b)
    {
        check_rank(a, b);
        BasicGradedPolynomial out = a;
        for (const auto &[lambda, p] : b.m_terms) {
            out.add_term(lambda, p);
        }
        return out;
    }

    friend BasicGradedPolynomial operator-(const BasicGradedPolynomial &a, const BasicGradedPolynomial &b)
    {
        check_rank(a, b);
        BasicGradedPolynomial out = a;
        for (const auto &[lambda, p] : b.m_terms) {
            out.add_term(lambda, -p);
        }
        return out;
    }

    friend BasicGradedPolynomial operator*(const BasicGradedPolynomial &a, const BasicGradedPolynomial &b)
    {
        check_rank(a, b);
        BasicGradedPolynomial out(a.m_rank);
        for (const auto &[la, pa] : a.m_terms) {
            for (const auto &[lb, pb] : b.m_terms) {
                out.add_term(la + lb, pa * pb);
            }
        }
        return out;
    }

    friend bool operator==(const BasicGradedPolynomial &, const BasicGradedPolynomial &) = default;

    std::string to_string() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto &[lambda, p] : m_terms) {
            os << (first ? "" : " + ") << '(' << p.to_string() << ')';
            first = false;
            if (!lambda.is_zero()) {
                os << "*t^" << (m_rank == 1 ? std::to_string(lambda[0]) : lambda.to_string());
            }
        }
        return os.str();
    }

private:
    static void check_rank(const BasicGradedPolynomial &a, const BasicGradedPolynomial &b)
    {
        if (a.m_rank != b.m_rank) {
            throw std::domain_error("graded polynomial rank mismatch");
        }
    }

    std::size_t m_rank = 0;
    map_type m_terms;
};

using GradedSeries = BasicGradedSeries<BigInt>;
using RationalGradedSeries = BasicGradedSeries<Rational>;
using GradedPolynomial = BasicGradedPolynomial<BigInt>;
using RationalGradedPolynomial = BasicGradedPolynomial<Rational>;

namespace detail
{

template <typename Coeff>
void check_same_rank(std::size_t a, std::size_t b, const char *op)
{
    if (a != b) {
        throw std::domain_error(std::string(op) + ": rank mismatch (" + std::to_string(a) + " vs "
                                + std::to_string(b) + ")");
    }
}

// (f x g)(lambda) over a box, driven by the nonzero entries of both maps.
template <typename Coeff, typename MapA, typename MapB>
typename BasicGradedSeries<Coeff>::map_type convolve_maps(const MapA &a, const MapB &b, const ExponentVector &box)
{
    typename BasicGradedSeries<Coeff>::map_type out;
    for (const auto &lambda : box_points(box)) {
        out.emplace_hint(out.end(), lambda, BasicLaurentPoly<Coeff>{});
    }
    for (const auto &[mu, p] : a) {
        if (p.is_zero() || !mu.fits_in(box)) {
            continue;
        }
        for (const auto &[nu, q] : b) {
            if (q.is_zero()) {
                continue;
            }
            ExponentVector lambda = mu + nu;
            if (!lambda.fits_in(box)) {
                continue;
            }
            out[lambda] += p * q;
        }
    }
    return out;
}

} // namespace detail

// Coefficientwise sum on the common box.
template <typename Coeff>
BasicGradedSeries<Coeff> series_add(const BasicGradedSeries<Coeff> &f, const BasicGradedSeries<Coeff> &g)
{
    detail::check_same_rank<Coeff>(f.rank(), g.rank(), "series_add");
    const ExponentVector box = componentwise_min(f.truncation(), g.truncation());
    typename BasicGradedSeries<Coeff>::map_type out;
    for (const auto &lambda : box_points(box)) {
        out.emplace_hint(out.end(), lambda, f.coefficient(lambda) + g.coefficient(lambda));
    }
    std::shared_ptr<const typename BasicGradedSeries<Coeff>::generator_type> gen;
    if (f.has_generator() && g.has_generator()) {
        auto gf = f.generator_handle();
        auto gg = g.generator_handle();
        gen = std::make_shared<const typename BasicGradedSeries<Coeff>::generator_type>(
            [gf, gg](const ExponentVector &lambda) { return (*gf)(lambda) + (*gg)(lambda); });
    }
    return BasicGradedSeries<Coeff>::assemble(box, std::move(out), std::move(gen));
}

template <typename Coeff>
BasicGradedSeries<Coeff> series_negate(const BasicGradedSeries<Coeff> &f)
{
    typename BasicGradedSeries<Coeff>::map_type out;
    for (const auto &[lambda, p] : f.coefficients()) {
        out.emplace_hint(out.end(), lambda, -p);
    }
    std::shared_ptr<const typename BasicGradedSeries<Coeff>::generator_type> gen;
    if (f.has_generator()) {
        auto gf = f.generator_handle();
        gen = std::make_shared<const typename BasicGradedSeries<Coeff>::generator_type>(
            [gf](const ExponentVector &lambda) { return -(*gf)(lambda); });
    }
    return BasicGradedSeries<Coeff>::assemble(f.truncation(), std::move(out), std::move(gen));
}

// (f x g)(lambda) = sum over lambda = mu1 + mu2 of f(mu1) g(mu2). Each
// decomposition of a point of the common box stays inside that box, so the
// result is exact there.
template <typename Coeff>
BasicGradedSeries<Coeff> series_convolve(const BasicGradedSeries<Coeff> &f, const BasicGradedSeries<Coeff> &g)
{
    detail::check_same_rank<Coeff>(f.rank(), g.rank(), "series_convolve");
    const ExponentVector box = componentwise_min(f.truncation(), g.truncation());
    auto out = detail::convolve_maps<Coeff>(f.coefficients(), g.coefficients(), box);
    std::shared_ptr<const typename BasicGradedSeries<Coeff>::generator_type> gen;
    if (f.has_generator() && g.has_generator()) {
        auto gf = f.generator_handle();
        auto gg = g.generator_handle();
        gen = std::make_shared<const typename BasicGradedSeries<Coeff>::generator_type>(
            [gf, gg](const ExponentVector &lambda) {
                BasicLaurentPoly<Coeff> acc;
                for (const auto &mu : box_points(lambda)) {
                    acc += (*gf)(mu) * (*gg)(lambda - mu);
                }
                return acc;
            });
    }
    return BasicGradedSeries<Coeff>::assemble(box, std::move(out), std::move(gen));
}

// Polynomial times series, exact on the series' box.
template <typename Coeff>
BasicGradedSeries<Coeff> series_convolve(const BasicGradedPolynomial<Coeff> &f, const BasicGradedSeries<Coeff> &phi)
{
    detail::check_same_rank<Coeff>(f.rank(), phi.rank(), "series_convolve");
    return series_convolve(f.as_series(phi.truncation()), phi);
}

// f is a unit of the rationalized series ring iff f(0) is a unit of
// Q[s, 1/s], i.e. a nonzero rational multiple of one power of s.
template <typename Coeff>
bool is_invertible(const BasicGradedPolynomial<Coeff> &f)
{
    return f.constant_term().is_monomial();
}

namespace detail
{

inline RationalLaurentPoly as_rational(const LaurentPoly &p)
{
    return to_rational(p);
}
inline const RationalLaurentPoly &as_rational(const RationalLaurentPoly &p)
{
    return p;
}

template <typename Coeff>
std::map<ExponentVector, RationalLaurentPoly> invert_on_box(const BasicGradedPolynomial<Coeff> &f,
                                                            const ExponentVector &box)
{
    const auto c0 = as_rational(f.constant_term());
    const auto [e0, q0] = *c0.terms().begin();
    const RationalLaurentPoly inv0 = RationalLaurentPoly::monomial(Rational(1) / q0, -e0);

    std::vector<std::pair<ExponentVector, RationalLaurentPoly>> tail;
    for (const auto &[mu, p] : f.terms()) {
        if (!mu.is_zero() && mu.fits_in(box)) {
            tail.emplace_back(mu, as_rational(p));
        }
    }

    // Lexicographic order visits lambda - mu before lambda for every mu != 0.
    std::map<ExponentVector, RationalLaurentPoly> g;
    for (const auto &lambda : box_points(box)) {
        RationalLaurentPoly acc;
        if (lambda.is_zero()) {
            acc = RationalLaurentPoly(Rational(1));
        }
        for (const auto &[mu, p] : tail) {
            if (mu.fits_in(lambda)) {
                acc -= p * g.at(lambda - mu);
            }
        }
        g.emplace_hint(g.end(), lambda, inv0 * acc);
    }
    return g;
}

} // namespace detail

// The inverse of an invertible graded polynomial, exact on [0, truncation].
// Coefficients are rational in general; see is_integral/to_integral.
template <typename Coeff>
RationalGradedSeries series_invert(const BasicGradedPolynomial<Coeff> &f, const ExponentVector &truncation)
{
    if (f.rank() != truncation.rank()) {
        throw std::domain_error("series_invert: rank mismatch");
    }
    if (!is_invertible(f)) {
        throw std::domain_error("series_invert: constant term " + f.constant_term().to_string()
                                + " is not a unit");
    }
    auto coeffs = detail::invert_on_box(f, truncation);
    auto poly = std::make_shared<const BasicGradedPolynomial<Coeff>>(f);
    auto gen = std::make_shared<const RationalGradedSeries::generator_type>([poly](const ExponentVector &lambda) {
        return detail::invert_on_box(*poly, lambda).at(lambda);
    });
    return RationalGradedSeries::assemble(truncation, std::move(coeffs), std::move(gen));
}

inline bool is_integral(const RationalGradedSeries &f)
{
    return std::all_of(f.coefficients().begin(), f.coefficients().end(),
                       [](const auto &kv) { return is_integral(kv.second); });
}

inline GradedSeries to_integral(const RationalGradedSeries &f)
{
    GradedSeries::map_type out;
    for (const auto &[lambda, p] : f.coefficients()) {
        out.emplace_hint(out.end(), lambda, to_integral(p));
    }
    std::shared_ptr<const GradedSeries::generator_type> gen;
    if (f.has_generator()) {
        auto gf = f.generator_handle();
        gen = std::make_shared<const GradedSeries::generator_type>(
            [gf](const ExponentVector &lambda) { return to_integral((*gf)(lambda)); });
    }
    return GradedSeries::assemble(f.truncation(), std::move(out), std::move(gen)).with_descriptor(f.descriptor());
}

inline RationalGradedSeries to_rational(const GradedSeries &f)
{
    RationalGradedSeries::map_type out;
    for (const auto &[lambda, p] : f.coefficients()) {
        out.emplace_hint(out.end(), lambda, to_rational(p));
    }
    std::shared_ptr<const RationalGradedSeries::generator_type> gen;
    if (f.has_generator()) {
        auto gf = f.generator_handle();
        gen = std::make_shared<const RationalGradedSeries::generator_type>(
            [gf](const ExponentVector &lambda) { return to_rational((*gf)(lambda)); });
    }
    return RationalGradedSeries::assemble(f.truncation(), std::move(out), std::move(gen))
        .with_descriptor(f.descriptor());
}

inline RationalGradedPolynomial to_rational(const GradedPolynomial &f)
{
    RationalGradedPolynomial out(f.rank());
    for (const auto &[lambda, p] : f.terms()) {
        out.add_term(lambda, to_rational(p));
    }
    return out;
}

// Does f x phi = g hold on phi's whole box? Every point of supp(f) and
// supp(g) must lie in the box, otherwise the check cannot be made and
// inconclusive_error is thrown.
template <typename Coeff>
bool witness_check(const BasicGradedPolynomial<Coeff> &f, const BasicGradedSeries<Coeff> &phi,
                   const BasicGradedPolynomial<Coeff> &g)
{
    if (f.rank() != phi.rank() || g.rank() != phi.rank()) {
        throw std::domain_error("witness_check: rank mismatch");
    }
    const ExponentVector &box = phi.truncation();
    for (const auto *p : {&f, &g}) {
        for (const auto &[lambda, c] : p->terms()) {
            if (!lambda.fits_in(box)) {
                throw inconclusive_error("witness_check: truncation " + box.to_string() + " does not cover degree "
                                         + lambda.to_string());
            }
        }
    }
    for (const auto &[lambda, phi_lambda] : phi.coefficients()) {
        BasicLaurentPoly<Coeff> acc;
        for (const auto &[mu, p] : f.terms()) {
            if (mu.fits_in(lambda)) {
                acc += p * phi.coefficient(lambda - mu);
            }
        }
        if (!(acc == g.coefficient(lambda))) {
            return false;
        }
    }
    return true;
}

// delta_lambda * p on the given box.
template <typename Coeff>
BasicGradedSeries<Coeff> indicator_series(const ExponentVector &lambda, const ExponentVector &box,
                                          BasicLaurentPoly<Coeff> p = BasicLaurentPoly<Coeff>(Coeff(1)))
{
    return BasicGradedPolynomial<Coeff>::monomial(lambda, std::move(p)).as_series(box);
}

} // namespace chowseries

#endif // CHOWSERIES_GRADED_SERIES_HPP
