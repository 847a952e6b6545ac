#ifndef CHOWSERIES_CLI_HPP
#define CHOWSERIES_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <chowseries/chow_generators.hpp>
#include <chowseries/graded_series.hpp>
#include <chowseries/json_io.hpp>
#include <chowseries/laurent_poly.hpp>
#include <chowseries/motive.hpp>
#include <chowseries/random.hpp>
#include <chowseries/rationality.hpp>
#include <chowseries/recurrence.hpp>

namespace chowseries::cli
{

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_selftest_failed = 1;
inline constexpr int exit_bad_input = 2;
inline constexpr int exit_insufficient = 3;
inline constexpr int exit_term_cap = 4;

// Raised for anything that should end with exit_bad_input.
class input_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string preset;
    std::string input;
    std::int64_t n = 2;
    std::int64_t max_d = 10;
    std::int64_t max_s = 40;
    std::vector<std::int64_t> betti;
    std::string format = "text";
    std::size_t max_order = 12;
    std::uint64_t seed = 1;
    // recurrence slice: evaluate at s = eval_s, or take the s^row coefficient
    std::int64_t eval_s = -1;
    std::optional<std::int64_t> s_row;
};

inline GradedSeries make_preset(const std::string &name, std::int64_t n, const std::vector<std::int64_t> &betti,
                                std::int64_t max_d)
{
    if (max_d < 0) {
        throw input_error("--max-d must be nonnegative");
    }
    try {
        if (name == "divisor-chow") {
            return divisor_chow_series(n, max_d);
        }
        if (name == "euler-chow") {
            return euler_chow_series(n, max_d);
        }
        if (name == "zero-cycles") {
            if (betti.empty()) {
                throw input_error("zero-cycles needs --betti (even Betti numbers, e.g. 1,1 for P^1)");
            }
            return zero_cycle_series(BettiProfile::from_even(betti), max_d);
        }
    } catch (const std::domain_error &e) {
        throw input_error(e.what());
    }
    throw input_error("unknown preset '" + name + "' (expected divisor-chow, euler-chow or zero-cycles)");
}

// Reads a series file. A "generator" block is honoured only if the stored
// entries agree with that generator on the whole stored box.
inline GradedSeries load_series(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw input_error("cannot open " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw input_error(path + ": " + e.what());
    }
    try {
        GradedSeries data = series_from_json<BigInt>(j);
        auto block = read_generator_block(j);
        if (!block) {
            return data;
        }
        const auto &[family, params] = *block;
        if (data.rank() != 1) {
            throw input_error(path + ": generator block on a series of rank " + std::to_string(data.rank()));
        }
        GradedSeries preset;
        if (family == "zero-cycles") {
            preset = make_preset(family, 0, params, data.truncation()[0]);
        } else {
            if (params.size() != 1) {
                throw input_error(path + ": " + family + " takes exactly one parameter");
            }
            preset = make_preset(family, params[0], {}, data.truncation()[0]);
        }
        if (!(preset == data)) {
            throw input_error(path + ": entries disagree with the " + family + " generator");
        }
        return preset;
    } catch (const std::invalid_argument &e) {
        throw input_error(path + ": " + e.what());
    } catch (const std::domain_error &e) {
        throw input_error(path + ": " + e.what());
    }
}

inline GradedSeries resolve_series(const RunConfig &cfg)
{
    if (!cfg.input.empty() && !cfg.preset.empty()) {
        throw input_error("give either a preset or --input, not both");
    }
    if (!cfg.input.empty()) {
        return load_series(cfg.input);
    }
    if (cfg.preset.empty()) {
        throw input_error("no series selected: use --preset or --input");
    }
    return make_preset(cfg.preset, cfg.n, cfg.betti, cfg.max_d);
}

inline std::string describe_source(const RunConfig &cfg, const GradedSeries &phi)
{
    std::ostringstream os;
    if (!cfg.input.empty()) {
        os << cfg.input;
    } else if (cfg.preset == "zero-cycles") {
        os << "zero-cycles betti=";
        for (std::size_t i = 0; i < cfg.betti.size(); ++i) {
            os << (i ? "," : "") << cfg.betti[i];
        }
    } else {
        os << cfg.preset << " n=" << cfg.n;
    }
    os << ", truncation " << phi.truncation().to_string();
    return os.str();
}

// "{0:1, 2:1, 4:1}", eliding exponents above max_s.
inline std::string render_coefficient(const LaurentPoly &p, std::int64_t max_s, bool &elided)
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto &[e, c] : p.terms()) {
        if (e > max_s) {
            os << (first ? "" : ", ") << "...";
            elided = true;
            break;
        }
        os << (first ? "" : ", ") << e << ':' << c.get_str();
        first = false;
    }
    os << '}';
    return os.str();
}

inline void render_series_text(std::ostream &out, const RunConfig &cfg, const GradedSeries &phi)
{
    out << "# " << describe_source(cfg, phi) << '\n';
    bool elided = false;
    for (const auto &[lambda, p] : phi.coefficients()) {
        if (phi.rank() == 1) {
            out << "d=" << lambda[0];
        } else {
            out << "lambda=" << lambda.to_string();
        }
        out << ": " << render_coefficient(p, cfg.max_s, elided) << '\n';
    }
    if (elided) {
        out << "# s-exponents above " << cfg.max_s << " elided (raise --max-s or use --format json)\n";
    }
}

inline int cmd_series(const RunConfig &cfg, std::ostream &out)
{
    const GradedSeries phi = resolve_series(cfg);
    if (cfg.format == "json") {
        out << series_to_json(phi).dump() << '\n';
    } else {
        render_series_text(out, cfg, phi);
    }
    return exit_ok;
}

template <typename T>
std::string join(const std::vector<T> &v)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i ? ", " : "") << v[i];
    }
    return os.str();
}

inline void render_verdict_text(std::ostream &out, const Verdict &v)
{
    out << "verdict: " << to_string(v.kind) << '\n';
    out << "reason: " << v.reason << '\n';
    if (v.certificate) {
        out << "support points: " << join(v.certificate->support_points) << '\n';
        out << "gaps (empty slices between support points): " << join(v.certificate->gaps) << '\n';
        out << "support differences (gap + 1): " << join(v.certificate->support_differences()) << '\n';
        out << "growth evidence: " << v.certificate->growth.describe() << '\n';
        for (const auto &d : v.certificate->diagnostics) {
            out << "diagnostic: " << d << '\n';
        }
    } else {
        out << "support points: (none)\n";
    }
    if (v.witness) {
        out << "witness f: " << v.witness->f.to_string() << '\n';
        out << "witness g: " << v.witness->g.to_string() << '\n';
        out << "discovered on degrees <= " << v.witness->discovery_truncation.to_string()
            << ", checked on degrees <= " << v.witness->checked_truncation.to_string() << '\n';
    }
    if (v.inconsistent) {
        out << "inconsistent: both a certificate and a witness were produced\n";
    }
    for (const auto &n : v.notes) {
        out << "note: " << n << '\n';
    }
}

inline int cmd_certify(const RunConfig &cfg, std::ostream &out)
{
    const GradedSeries phi = resolve_series(cfg);
    const Verdict v = rationality_report(phi, ReportConfig{cfg.max_order, 12});
    if (cfg.format == "json") {
        out << verdict_to_json(v).dump() << '\n';
    } else {
        out << "# " << describe_source(cfg, phi) << '\n';
        render_verdict_text(out, v);
    }
    return v.insufficient_data ? exit_insufficient : exit_ok;
}

// The scalar sequence selected by --s-row or --eval-s.
inline std::vector<Rational> slice_sequence(const RunConfig &cfg, const GradedSeries &phi)
{
    if (phi.rank() != 1) {
        throw input_error("recurrence needs a rank-1 series");
    }
    std::vector<Rational> seq;
    for (const auto &[lambda, p] : phi.coefficients()) {
        if (cfg.s_row) {
            seq.emplace_back(p.coefficient(*cfg.s_row));
        } else {
            seq.push_back(evaluate(p, Rational(cfg.eval_s)));
        }
    }
    return seq;
}

inline std::string render_recurrence(const LinearRecurrence &rec)
{
    std::ostringstream os;
    os << "a(n) =";
    bool first = true;
    for (std::size_t j = 1; j < rec.connection.size(); ++j) {
        const Rational c = -rec.connection[j];
        if (sgn(c) == 0) {
            continue;
        }
        os << (first ? " " : (sgn(c) < 0 ? " - " : " + "));
        const Rational mag = (first || sgn(c) > 0) ? c : Rational(-c);
        os << mag.get_str() << "*a(n-" << j << ")";
        first = false;
    }
    if (first) {
        os << " 0";
    }
    os << "  for n >= " << rec.order;
    return os.str();
}

inline int cmd_recurrence(const RunConfig &cfg, std::ostream &out)
{
    const GradedSeries phi = resolve_series(cfg);
    std::vector<Rational> seq = slice_sequence(cfg, phi);
    if (std::all_of(seq.begin(), seq.end(), [](const Rational &x) { return sgn(x) == 0; })) {
        throw input_error("selected slice is empty (all coefficients vanish)");
    }
    for (const auto &x : seq) {
        if (x.get_den() != 1) {
            throw input_error("selected slice is not integral; choose an integer s with only nonnegative powers");
        }
    }
    const std::size_t order = std::min(cfg.max_order, seq.size() / 2);
    const auto rec = find_recurrence(seq, order);

    nlohmann::json j;
    j["slice"] = cfg.s_row ? "s-row " + std::to_string(*cfg.s_row) : "s = " + std::to_string(cfg.eval_s);
    j["length"] = seq.size();
    j["max_order"] = order;
    if (!rec) {
        j["found"] = false;
        if (cfg.format == "json") {
            out << j.dump() << '\n';
        } else {
            out << "# " << describe_source(cfg, phi) << ", slice " << j["slice"].get<std::string>() << '\n';
            out << "none found up to max_order " << order << '\n';
        }
        return exit_ok;
    }
    const auto [f, g] = recurrence_to_fraction(*rec, seq);
    GradedSeries::map_type coeffs;
    for (std::size_t d = 0; d < seq.size(); ++d) {
        coeffs.emplace(ExponentVector{static_cast<std::int64_t>(d)}, LaurentPoly(seq[d].get_num()));
    }
    const GradedSeries slice =
        GradedSeries::from_coefficients(ExponentVector{static_cast<std::int64_t>(seq.size()) - 1}, std::move(coeffs));
    const bool verified = witness_check(f, slice, g);

    j["found"] = true;
    j["order"] = rec->order;
    std::vector<std::string> conn;
    for (const auto &c : rec->connection) {
        conn.push_back(c.get_str());
    }
    j["connection"] = conn;
    j["f"] = graded_poly_to_json(f);
    j["g"] = graded_poly_to_json(g);
    j["verified"] = verified;
    j["checked_truncation"] = exponent_to_json(slice.truncation());
    if (cfg.format == "json") {
        out << j.dump() << '\n';
    } else {
        out << "# " << describe_source(cfg, phi) << ", slice " << j["slice"].get<std::string>() << '\n';
        out << "order: " << rec->order << '\n';
        out << "recurrence: " << render_recurrence(*rec) << '\n';
        out << "f: " << f.to_string() << '\n';
        out << "g: " << g.to_string() << '\n';
        out << "witness " << (verified ? "verified" : "FAILED") << " on degrees <= " << slice.truncation().to_string()
            << '\n';
    }
    return exit_ok;
}

// Randomized law checks with a reproducible seed.
inline int cmd_selftest(const RunConfig &cfg, std::ostream &out)
{
    random::Engine rng(cfg.seed);
    int failures = 0;
    auto report = [&](const std::string &name, bool ok) {
        out << (ok ? "PASS " : "FAIL ") << name << '\n';
        failures += ok ? 0 : 1;
    };

    bool ok = true;
    for (int i = 0; i < 100 && ok; ++i) {
        const auto a = random::laurent(rng), b = random::laurent(rng), c = random::laurent(rng);
        ok = (a + b) + c == a + (b + c) && a * b == b * a && a * (b + c) == a * b + a * c
             && eval_minus_one(a * b) == eval_minus_one(a) * eval_minus_one(b);
    }
    report("laurent ring axioms and s=-1 homomorphism", ok);

    ok = true;
    for (int i = 0; i < 100 && ok; ++i) {
        const auto a = random::motive(rng), b = random::motive(rng);
        ok = euler(a + b) == euler(a) + euler(b) && euler(a * b) == euler(a) * euler(b)
             && a * MotiveClass::unit() == a;
    }
    report("motive classes: unit law and Euler homomorphism", ok);

    ok = true;
    for (int i = 0; i < 40 && ok; ++i) {
        const std::size_t rank = static_cast<std::size_t>(random::uniform(rng, 1, 2));
        const ExponentVector box = random::box(rng, rank, rank == 1 ? 8 : 4);
        const auto f = random::series(rng, box), g = random::series(rng, box), h = random::series(rng, box);
        ok = series_convolve(series_convolve(f, g), h) == series_convolve(f, series_convolve(g, h))
             && series_convolve(f, g) == series_convolve(g, f)
             && series_convolve(f, series_add(g, h)) == series_add(series_convolve(f, g), series_convolve(f, h));
    }
    report("convolution ring axioms", ok);

    ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
        const std::size_t rank = static_cast<std::size_t>(random::uniform(rng, 1, 2));
        const ExponentVector box = random::box(rng, rank, 4);
        const auto f = random::invertible_polynomial(rng, box);
        const auto inv = series_invert(f, box);
        ok = series_convolve(to_rational(f), inv) == indicator_series<Rational>(ExponentVector::zero(rank), box);
    }
    report("f x invert(f) = delta_0", ok);

    const GradedSeries div2 = divisor_chow_series(2, 8);
    const Verdict v = rationality_report(div2);
    report("divisor-chow n=2 certified non-rational", v.kind == VerdictKind::certified_non_rational);
    ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
        ok = denominator_obstruction(random::denominator(rng), divisor_chow_series(2, 12));
    }
    report("random denominators obstructed on divisor-chow n=2", ok);

    return failures == 0 ? exit_ok : exit_selftest_failed;
}

inline int dispatch(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    try {
        if (cfg.format != "text" && cfg.format != "json") {
            throw input_error("--format must be text or json");
        }
        if (cfg.command == "series") {
            return cmd_series(cfg, out);
        }
        if (cfg.command == "certify") {
            return cmd_certify(cfg, out);
        }
        if (cfg.command == "recurrence") {
            return cmd_recurrence(cfg, out);
        }
        if (cfg.command == "selftest") {
            return cmd_selftest(cfg, out);
        }
        throw input_error("unknown command '" + cfg.command + "'");
    } catch (const input_error &e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_input;
    } catch (const term_cap_exceeded &e) {
        err << "error: " << e.what() << '\n';
        return exit_term_cap;
    } catch (const inconclusive_error &e) {
        err << "error: " << e.what() << '\n';
        return exit_insufficient;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_input;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_input;
    }
}

// Entry point shared by the binary and the tests. `args` excludes argv[0].
inline int run(std::vector<std::string> args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Chow series of projective spaces: exact expansion and rationality certification", "chowseries"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_source = [&cfg](CLI::App *sub) {
        sub->add_option("preset_name", cfg.preset, "Preset (same as --preset)");
        sub->add_option("--preset", cfg.preset, "divisor-chow | euler-chow | zero-cycles");
        sub->add_option("--input", cfg.input, "Series JSON file");
        sub->add_option("--n", cfg.n, "Dimension n of P^n for divisor-chow / euler-chow")->check(CLI::PositiveNumber);
        sub->add_option("--max-d", cfg.max_d, "t-truncation (largest degree d)")->check(CLI::NonNegativeNumber);
        sub->add_option("--betti", cfg.betti, "Even Betti numbers b0,b2,... for zero-cycles")->delimiter(',');
        sub->add_option("--format", cfg.format, "text | json");
    };

    CLI::App *series = app.add_subcommand("series", "Print the coefficient table of a series");
    add_source(series);
    series->add_option("--max-s", cfg.max_s, "Largest s-exponent shown in text tables");

    CLI::App *certify = app.add_subcommand("certify", "Run the rationality pipeline");
    add_source(certify);
    certify->add_option("--max-order", cfg.max_order, "Largest recurrence order searched");

    CLI::App *recurrence = app.add_subcommand("recurrence", "Fit a linear recurrence to a scalar slice");
    add_source(recurrence);
    recurrence->add_option("--max-order", cfg.max_order, "Largest recurrence order searched");
    recurrence->add_option("--eval-s", cfg.eval_s, "Slice by evaluating at this integer s (default -1)");
    recurrence->add_option("--s-row", cfg.s_row, "Slice by taking the coefficient of s^ROW");

    CLI::App *selftest = app.add_subcommand("selftest", "Randomized law checks");
    selftest->add_option("--seed", cfg.seed, "Random seed");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_bad_input;
    }
    for (CLI::App *sub : {series, certify, recurrence, selftest}) {
        if (sub->parsed()) {
            cfg.command = sub->get_name();
        }
    }
    return dispatch(cfg, out, err);
}

} // namespace chowseries::cli

#endif // CHOWSERIES_CLI_HPP
