#ifndef CHOWSERIES_JSON_IO_HPP
#define CHOWSERIES_JSON_IO_HPP

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <chowseries/bigint.hpp>
#include <chowseries/graded_series.hpp>
#include <chowseries/laurent_poly.hpp>
#include <chowseries/rationality.hpp>

// Series JSON shape:
//
//   {"rank": r, "truncation": [..],
//    "entries": [{"lambda": [..], "coeff": [[exp, "int"], ...]}, ...],
//    "generator": {"family": "divisor-chow", "params": [2]}}      (optional)
//
// Integers are decimal strings so they round-trip at any size. Every point of
// the truncation box is written, zero coefficients as an empty list.

namespace chowseries
{

template <typename Coeff>
nlohmann::json poly_to_json(const BasicLaurentPoly<Coeff> &p)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto &[e, c] : p.terms()) {
        out.push_back(nlohmann::json::array({e, detail::to_decimal(c)}));
    }
    return out;
}

template <typename Coeff>
BasicLaurentPoly<Coeff> poly_from_json(const nlohmann::json &j)
{
    if (!j.is_array()) {
        throw std::invalid_argument("coefficient must be an array of [exponent, \"integer\"] pairs");
    }
    BasicLaurentPoly<Coeff> out;
    std::set<std::int64_t> seen;
    for (const auto &term : j) {
        if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() || !term[1].is_string()) {
            throw std::invalid_argument("malformed coefficient term: " + term.dump());
        }
        const auto e = term[0].get<std::int64_t>();
        if (!seen.insert(e).second) {
            throw std::invalid_argument("duplicate exponent " + std::to_string(e) + " in coefficient");
        }
        out.add_term(e, detail::parse_coefficient<Coeff>(term[1].get<std::string>()));
    }
    return out;
}

inline nlohmann::json exponent_to_json(const ExponentVector &v)
{
    return nlohmann::json(v.coords());
}

inline ExponentVector exponent_from_json(const nlohmann::json &j, std::size_t rank)
{
    if (!j.is_array() || j.size() != rank) {
        throw std::invalid_argument("expected an exponent vector of length " + std::to_string(rank) + ", got "
                                    + j.dump());
    }
    std::vector<std::int64_t> coords;
    for (const auto &x : j) {
        if (!x.is_number_integer() || x.get<std::int64_t>() < 0) {
            throw std::invalid_argument("exponent vector entries must be nonnegative integers: " + j.dump());
        }
        coords.push_back(x.get<std::int64_t>());
    }
    return ExponentVector(std::move(coords));
}

template <typename Coeff>
nlohmann::json series_to_json(const BasicGradedSeries<Coeff> &f)
{
    nlohmann::json out;
    out["rank"] = f.rank();
    out["truncation"] = exponent_to_json(f.truncation());
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &[lambda, p] : f.coefficients()) {
        entries.push_back({{"lambda", exponent_to_json(lambda)}, {"coeff", poly_to_json(p)}});
    }
    out["entries"] = std::move(entries);
    if (f.descriptor() && !f.descriptor()->family.empty()) {
        out["generator"] = {{"family", f.descriptor()->family}, {"params", f.descriptor()->params}};
    }
    return out;
}

// Coefficient data only; a "generator" block is left for the caller to
// interpret (see read_generator_block).
template <typename Coeff>
BasicGradedSeries<Coeff> series_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("rank") || !j.contains("truncation") || !j.contains("entries")) {
        throw std::invalid_argument("series JSON needs rank, truncation and entries");
    }
    if (!j["rank"].is_number_integer() || j["rank"].get<std::int64_t>() < 1) {
        throw std::invalid_argument("rank must be a positive integer");
    }
    const auto rank = static_cast<std::size_t>(j["rank"].get<std::int64_t>());
    const ExponentVector box = exponent_from_json(j["truncation"], rank);
    if (!j["entries"].is_array()) {
        throw std::invalid_argument("entries must be an array");
    }
    typename BasicGradedSeries<Coeff>::map_type coeffs;
    for (const auto &entry : j["entries"]) {
        if (!entry.is_object() || !entry.contains("lambda") || !entry.contains("coeff")) {
            throw std::invalid_argument("entry needs lambda and coeff: " + entry.dump());
        }
        ExponentVector lambda = exponent_from_json(entry["lambda"], rank);
        if (!lambda.fits_in(box)) {
            throw std::invalid_argument("entry " + lambda.to_string() + " lies outside truncation " + box.to_string());
        }
        auto p = poly_from_json<Coeff>(entry["coeff"]);
        if (!coeffs.emplace(std::move(lambda), std::move(p)).second) {
            throw std::invalid_argument("duplicate entry " + entry["lambda"].dump());
        }
    }
    return BasicGradedSeries<Coeff>::from_coefficients(box, std::move(coeffs));
}

// (family, params) from an optional "generator" block.
inline std::optional<std::pair<std::string, std::vector<std::int64_t>>> read_generator_block(const nlohmann::json &j)
{
    if (!j.contains("generator")) {
        return std::nullopt;
    }
    const auto &g = j["generator"];
    if (!g.is_object() || !g.contains("family") || !g["family"].is_string() || !g.contains("params")
        || !g["params"].is_array()) {
        throw std::invalid_argument("generator block needs a family string and a params array");
    }
    std::vector<std::int64_t> params;
    for (const auto &x : g["params"]) {
        if (!x.is_number_integer()) {
            throw std::invalid_argument("generator params must be integers");
        }
        params.push_back(x.get<std::int64_t>());
    }
    return std::make_pair(g["family"].get<std::string>(), std::move(params));
}

template <typename Coeff>
nlohmann::json graded_poly_to_json(const BasicGradedPolynomial<Coeff> &f)
{
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &[lambda, p] : f.terms()) {
        entries.push_back({{"lambda", exponent_to_json(lambda)}, {"coeff", poly_to_json(p)}});
    }
    return {{"rank", f.rank()}, {"entries", std::move(entries)}};
}

inline nlohmann::json verdict_to_json(const Verdict &v)
{
    nlohmann::json out;
    out["verdict"] = to_string(v.kind);
    if (v.certificate) {
        out["support_points"] = v.certificate->support_points;
        out["gaps"] = v.certificate->gaps;
        out["alpha_paper_convention"] = v.certificate->support_differences();
    } else {
        out["support_points"] = nlohmann::json::array();
        out["gaps"] = nlohmann::json::array();
        out["alpha_paper_convention"] = nlohmann::json::array();
    }
    if (v.witness) {
        out["witness"] = {{"f", graded_poly_to_json(v.witness->f)},
                          {"g", graded_poly_to_json(v.witness->g)},
                          {"checked_truncation", exponent_to_json(v.witness->checked_truncation)},
                          {"discovery_truncation", exponent_to_json(v.witness->discovery_truncation)}};
    } else {
        out["witness"] = nullptr;
    }
    nlohmann::json evidence;
    evidence["reason"] = v.reason;
    evidence["growth"] = v.certificate ? v.certificate->growth.describe() : "none";
    evidence["symbolic_unbounded"] = v.certificate && v.certificate->growth.symbolic_unbounded();
    evidence["inconsistent"] = v.inconsistent;
    evidence["insufficient_data"] = v.insufficient_data;
    evidence["notes"] = v.notes;
    evidence["diagnostics"] = v.certificate ? v.certificate->diagnostics : std::vector<std::string>{};
    out["evidence"] = std::move(evidence);
    return out;
}

} // namespace chowseries

#endif // CHOWSERIES_JSON_IO_HPP
