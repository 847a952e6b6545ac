#ifndef CHOWSERIES_RATIONALITY_HPP
#define CHOWSERIES_RATIONALITY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <chowseries/bigint.hpp>
#include <chowseries/exponent_function.hpp>
#include <chowseries/graded_series.hpp>
#include <chowseries/laurent_poly.hpp>
#include <chowseries/recurrence.hpp>

namespace chowseries
{

// A rank-1 series phi(s, t) = sum_d c_d(s) t^d regrouped by powers of s:
// phi = sum_i a_i(t) s^i. Only nonzero slices are stored; each slice holds
// the t-coefficients a_i[0..T].
struct BivariateView {
    std::int64_t t_truncation = 0;
    std::map<std::int64_t, std::vector<BigInt>> slices;

    friend bool operator==(const BivariateView &, const BivariateView &) = default;
};

inline BivariateView bivariate_view(const GradedSeries &phi)
{
    if (phi.rank() != 1) {
        throw std::domain_error("bivariate_view needs a rank-1 series");
    }
    BivariateView out;
    out.t_truncation = phi.truncation()[0];
    const auto len = static_cast<std::size_t>(out.t_truncation + 1);
    for (const auto &[lambda, p] : phi.coefficients()) {
        for (const auto &[e, c] : p.terms()) {
            auto &slice = out.slices[e];
            if (slice.empty()) {
                slice.assign(len, BigInt(0));
            }
            slice[static_cast<std::size_t>(lambda[0])] = c;
        }
    }
    return out;
}

inline GradedSeries series_from_view(const BivariateView &v)
{
    GradedSeries::map_type coeffs;
    for (const auto &[e, slice] : v.slices) {
        for (std::size_t d = 0; d < slice.size(); ++d) {
            coeffs[ExponentVector{static_cast<std::int64_t>(d)}].add_term(e, slice[d]);
        }
    }
    return GradedSeries::from_coefficients(ExponentVector{v.t_truncation}, std::move(coeffs));
}

enum class GrowthKind { symbolic, empirical_monotone, none };

struct GrowthEvidence {
    GrowthKind kind = GrowthKind::none;
    // Symbolic: the support points after the first are support_fn(0), support_fn(1), ...
    std::optional<ExponentFunction> support_fn;
    // Empirical: gap indices over which the gaps were seen to grow.
    std::size_t first = 0;
    std::size_t last = 0;

    // Symbolic with consecutive differences tending to infinity.
    bool symbolic_unbounded() const
    {
        return kind == GrowthKind::symbolic && support_fn && support_fn->has_unbounded_differences();
    }

    std::string describe() const
    {
        switch (kind) {
            case GrowthKind::symbolic:
                return "symbolic: support points follow " + support_fn->describe() + " (degree "
                       + std::to_string(support_fn->degree()) + ")";
            case GrowthKind::empirical_monotone:
                return "empirical: gaps nondecreasing over indices " + std::to_string(first) + ".."
                       + std::to_string(last);
            case GrowthKind::none:
                break;
        }
        return "none";
    }
};

// Support points d_1 < d_2 < ... of the s-slices, and for each consecutive
// pair the number of vanishing slices strictly between them
// (gaps[i] = d_(i+1) - d_i - 1). The last support point has no recorded gap:
// nothing past the truncation is known.
struct GapCertificate {
    std::vector<std::int64_t> support_points;
    std::vector<std::int64_t> gaps;
    GrowthEvidence growth;
    std::vector<std::string> diagnostics;

    // d_(i+1) - d_i, i.e. gap + 1.
    std::vector<std::int64_t> support_differences() const
    {
        std::vector<std::int64_t> out = gaps;
        for (auto &x : out) {
            ++x;
        }
        return out;
    }
};

// Gap sequence of a view. When `support_fn` is given it is checked against
// the data: every support point after the first must be support_fn(0),
// support_fn(1), ... in order, and there must be at least three of them.
inline GapCertificate extract_gaps(const BivariateView &v, const std::optional<ExponentFunction> &support_fn = {})
{
    GapCertificate cert;
    for (const auto &[e, slice] : v.slices) {
        cert.support_points.push_back(e);
    }
    if (cert.support_points.size() < 2) {
        throw inconclusive_error("gap extraction needs at least two nonzero s-slices, found "
                                 + std::to_string(cert.support_points.size()));
    }
    for (std::size_t i = 0; i + 1 < cert.support_points.size(); ++i) {
        cert.gaps.push_back(cert.support_points[i + 1] - cert.support_points[i] - 1);
    }

    // Two observed gaps at least, so the data can contradict the description.
    if (support_fn && cert.support_points.size() < 3) {
        cert.diagnostics.push_back("too few support points to check " + support_fn->describe());
    } else if (support_fn) {
        bool matches = true;
        for (std::size_t i = 1; i < cert.support_points.size(); ++i) {
            if ((*support_fn)(i - 1) != cert.support_points[i]) {
                matches = false;
                cert.diagnostics.push_back("support point " + std::to_string(cert.support_points[i])
                                           + " differs from " + support_fn->describe() + " at d="
                                           + std::to_string(i - 1));
                break;
            }
        }
        if (matches) {
            cert.growth.kind = GrowthKind::symbolic;
            cert.growth.support_fn = support_fn;
            return cert;
        }
    }

    const auto &g = cert.gaps;
    if (g.size() >= 2 && std::is_sorted(g.begin(), g.end()) && g.back() > g.front()) {
        cert.growth.kind = GrowthKind::empirical_monotone;
        cert.growth.first = 0;
        cert.growth.last = g.size() - 1;
    }
    return cert;
}

enum class VerdictKind { certified_non_rational, rational_witnessed, inconclusive };

inline const char *to_string(VerdictKind k)
{
    switch (k) {
        case VerdictKind::certified_non_rational:
            return "CertifiedNonRational";
        case VerdictKind::rational_witnessed:
            return "RationalWitnessed";
        case VerdictKind::inconclusive:
            break;
    }
    return "Inconclusive";
}

// f * phi = g, checked exactly on every degree up to checked_truncation.
struct RecurrenceWitness {
    GradedPolynomial f;
    GradedPolynomial g;
    ExponentVector discovery_truncation;
    ExponentVector checked_truncation;
};

struct Verdict {
    VerdictKind kind = VerdictKind::inconclusive;
    std::optional<GapCertificate> certificate;
    std::optional<RecurrenceWitness> witness;
    std::string reason;
    // Both a non-rationality certificate and a rationality witness were
    // produced; one of them is wrong.
    bool inconsistent = false;
    // The truncation was too small to produce any evidence at all.
    bool insufficient_data = false;
    std::vector<std::string> notes;
};

// Unbounded gaps prove non-rationality, but only a symbolic description of the
// support points can show the gaps are unbounded; finite data never does.
inline Verdict certify_unbounded(const GapCertificate &cert)
{
    Verdict v;
    v.certificate = cert;
    if (cert.growth.symbolic_unbounded()) {
        v.kind = VerdictKind::certified_non_rational;
        v.reason = "support points follow " + cert.growth.support_fn->describe()
                   + ", whose consecutive differences tend to infinity";
        return v;
    }
    v.kind = VerdictKind::inconclusive;
    switch (cert.growth.kind) {
        case GrowthKind::symbolic:
            v.reason = "support points follow " + cert.growth.support_fn->describe()
                       + ", whose differences stay bounded";
            break;
        case GrowthKind::empirical_monotone:
            v.reason = "gaps grow within the truncation but no symbolic description proves they are unbounded";
            break;
        case GrowthKind::none:
            v.reason = "no growth evidence for the gap sequence";
            break;
    }
    return v;
}

// The series whose s-support carries the gaps. For a series whose
// coefficients are geometric sums (1 - s^(2N(d))) / (1 - s^2), multiplying by
// (1 - s^2) leaves only the exponents 0 and 2N(d); for anything else this is
// the series itself. Returns the support function of the gapped form when
// known.
inline std::pair<GradedSeries, std::optional<ExponentFunction>> gapped_form(const GradedSeries &phi)
{
    const auto &desc = phi.descriptor();
    if (phi.rank() != 1 || !desc || !desc->geometric_sum_terms) {
        return {phi, std::nullopt};
    }
    GradedPolynomial one_minus_s2 = GradedPolynomial::monomial(ExponentVector{0}, LaurentPoly{{0, 1}, {2, -1}});
    return {series_convolve(one_minus_s2, phi), desc->geometric_sum_terms->scaled(2)};
}

struct ObstructionCheck {
    std::int64_t support_point = 0;
    std::int64_t gap = 0;
    // deg_s f + support_point
    std::int64_t probe_exponent = 0;
    bool nonzero = false;
};

struct ObstructionResult {
    bool confirmed = false;
    std::vector<ObstructionCheck> checks;
};

// Tests whether f can be a denominator of phi, using the gap argument: if the
// gapped form psi of phi has a support point d_i followed by more than
// deg_s f empty slices, then the s^(deg_s f + d_i) slice of f * psi equals
// f_top(t) * a_(d_i)(t), which is nonzero; a polynomial numerator of small
// s-degree cannot match it. Each such d_i whose product term lands inside the
// t-truncation is checked by direct convolution.
//
// Throws inconclusive_error when no support point qualifies within the
// truncation.
inline ObstructionResult denominator_obstruction_detail(const GradedPolynomial &f, const GradedSeries &phi)
{
    if (phi.rank() != 1 || f.rank() != 1) {
        throw std::domain_error("denominator obstruction needs rank-1 inputs");
    }
    if (f.is_zero()) {
        throw std::domain_error("denominator must be nonzero");
    }
    // Multiplying by a power of s is harmless: normalize to f in Z[s, t].
    const GradedPolynomial fn = f.s_shifted(-*f.s_low_degree());
    const std::int64_t deg_f = *fn.s_degree();
    const auto [psi, fn_support] = gapped_form(phi);
    const BivariateView view = bivariate_view(psi);
    const GapCertificate cert = extract_gaps(view, fn_support);
    const std::int64_t T = psi.truncation()[0];

    // Lowest t-degree of the top s-coefficient of f.
    std::int64_t f_top_low = -1;
    for (const auto &[lambda, p] : fn.terms()) {
        if (sgn(p.coefficient(deg_f)) == 0) {
            continue;
        }
        f_top_low = lambda[0];
        break;
    }

    const BivariateView product = bivariate_view(series_convolve(fn, psi));

    ObstructionResult out;
    bool contradiction = false;
    for (std::size_t i = 0; i < cert.gaps.size(); ++i) {
        if (cert.gaps[i] <= deg_f) {
            continue;
        }
        const std::int64_t di = cert.support_points[i];
        const auto &slice = view.slices.at(di);
        const auto low = std::find_if(slice.begin(), slice.end(), [](const BigInt &x) { return sgn(x) != 0; });
        const std::int64_t slice_low = low - slice.begin();
        if (f_top_low + slice_low > T) {
            continue;
        }
        ObstructionCheck check;
        check.support_point = di;
        check.gap = cert.gaps[i];
        check.probe_exponent = deg_f + di;
        const auto it = product.slices.find(check.probe_exponent);
        check.nonzero = it != product.slices.end();
        if (!check.nonzero) {
            contradiction = true;
        }
        out.checks.push_back(check);
    }
    if (out.checks.empty()) {
        throw inconclusive_error("no support point with gap > deg_s f = " + std::to_string(deg_f)
                                 + " has its product term inside t-truncation " + std::to_string(T));
    }
    out.confirmed = !contradiction;
    return out;
}

inline bool denominator_obstruction(const GradedPolynomial &f, const GradedSeries &phi)
{
    return denominator_obstruction_detail(f, phi).confirmed;
}

struct ReportConfig {
    std::size_t max_order = 12;
    std::int64_t max_s_degree = 12;
};

namespace detail
{

inline bool constant_in_s(const GradedSeries &phi)
{
    return std::all_of(phi.coefficients().begin(), phi.coefficients().end(),
                       [](const auto &kv) { return kv.second.is_constant(); });
}

struct RecurrenceAttempt {
    std::optional<RecurrenceWitness> witness;
    bool ran = false;
    std::vector<std::string> notes;
};

// Searches for f, g on a discovery prefix, then requires witness_check both
// on the prefix and on a box twice as large. With a generator the prefix is
// the full truncation and the series is extended; without one the prefix is
// the lower half of the data.
inline RecurrenceAttempt attempt_recurrence(const GradedSeries &phi, const ReportConfig &config)
{
    RecurrenceAttempt out;
    const std::int64_t T = phi.truncation()[0];
    const std::int64_t discovery = phi.has_generator() ? T : T / 2;
    if (discovery < 1) {
        out.notes.push_back("recurrence search skipped: too few coefficients");
        return out;
    }
    const GradedSeries prefix = phi.restricted(ExponentVector{discovery});
    const ExponentVector verify_box{2 * discovery};
    std::optional<GradedSeries> verify;

    auto accept = [&](const GradedPolynomial &f, const GradedPolynomial &g) {
        try {
            if (!witness_check(f, prefix, g)) {
                return false;
            }
            if (!verify) {
                verify = phi.has_generator() ? phi.extended(verify_box) : phi;
            }
            return witness_check(f, *verify, g);
        } catch (const inconclusive_error &e) {
            out.notes.push_back(std::string("candidate rejected: ") + e.what());
        } catch (const term_cap_exceeded &e) {
            out.notes.push_back(std::string("candidate unverified: ") + e.what());
        }
        return false;
    };

    std::vector<LaurentPoly> coeffs;
    for (const auto &[lambda, p] : prefix.coefficients()) {
        coeffs.push_back(p);
    }

    std::optional<std::pair<GradedPolynomial, GradedPolynomial>> found;
    if (constant_in_s(prefix)) {
        std::vector<Rational> seq;
        for (const auto &p : coeffs) {
            seq.emplace_back(p.coefficient(0));
        }
        const std::size_t order = std::min(config.max_order, seq.size() / 2);
        out.ran = true;
        if (auto rec = find_recurrence(seq, order)) {
            auto fg = recurrence_to_fraction(*rec, seq);
            if (accept(fg.first, fg.second)) {
                found = std::move(fg);
            }
        }
    } else {
        out.ran = true;
        found = find_series_recurrence(coeffs, SeriesRecurrenceLimits{config.max_order, config.max_s_degree}, accept);
    }
    if (found) {
        out.witness = RecurrenceWitness{std::move(found->first), std::move(found->second), ExponentVector{discovery},
                                        verify ? verify->truncation() : prefix.truncation()};
    }
    return out;
}

} // namespace detail

// Full decision pipeline for a rank-1 series:
//   gap route:        gapped form -> bivariate view -> gap certificate -> certify
//   recurrence route: denominator search -> witness_check on 2x truncation
// Non-rationality of the cohomology-series image implies non-rationality of
// the motivic series, so a certificate here carries over.
inline Verdict rationality_report(const GradedSeries &phi, const ReportConfig &config = {})
{
    if (phi.rank() != 1) {
        Verdict v;
        v.reason = "rationality decisions are implemented for rank-1 series only";
        return v;
    }

    std::optional<GapCertificate> cert;
    std::optional<Verdict> gap_verdict;
    std::vector<std::string> notes;
    try {
        const auto [psi, support_fn] = gapped_form(phi);
        if (support_fn) {
            notes.push_back("gap route runs on (1 - s^2) * phi");
        }
        cert = extract_gaps(bivariate_view(psi), support_fn);
        gap_verdict = certify_unbounded(*cert);
    } catch (const inconclusive_error &e) {
        notes.push_back(std::string("gap route: ") + e.what());
    }

    detail::RecurrenceAttempt rec = detail::attempt_recurrence(phi, config);
    notes.insert(notes.end(), rec.notes.begin(), rec.notes.end());

    Verdict v;
    v.certificate = cert;
    v.witness = rec.witness;
    v.notes = std::move(notes);
    const bool certified = gap_verdict && gap_verdict->kind == VerdictKind::certified_non_rational;
    if (certified && rec.witness) {
        v.kind = VerdictKind::inconclusive;
        v.inconsistent = true;
        v.reason = "internal inconsistency: both a gap certificate and a rationality witness were produced";
    } else if (certified) {
        v.kind = VerdictKind::certified_non_rational;
        v.reason = gap_verdict->reason;
    } else if (rec.witness) {
        v.kind = VerdictKind::rational_witnessed;
        v.reason = "f * phi = g verified exactly up to degree " + rec.witness->checked_truncation.to_string();
    } else {
        v.kind = VerdictKind::inconclusive;
        std::string gap_reason = gap_verdict ? gap_verdict->reason : "no gap sequence";
        v.reason = gap_reason + "; no recurrence of order <= " + std::to_string(config.max_order) + " found";
        v.insufficient_data = !rec.ran && (!cert || cert->growth.kind == GrowthKind::none);
    }
    return v;
}

} // namespace chowseries

#endif // CHOWSERIES_RATIONALITY_HPP
