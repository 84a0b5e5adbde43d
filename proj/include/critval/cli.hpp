#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "critical_map.hpp"
#include "dyson.hpp"
#include "format.hpp"
#include "polymatrix.hpp"
#include "stratify.hpp"

namespace critval::cli {

enum class Command { Verify, Vandermonde, Dyson, Jacobian, Lift, Sweep };

struct RunConfig {
    Command command = Command::Verify;
    std::optional<MultiIndex> a;       // verify / dyson / jacobian
    int vandermonde_n = 1;             // vandermonde
    int n_max = 7;                     // sweep bounds
    int m_max = 3;
    double tol = 1e-10;                // lift residual tolerance
    std::string format = "text";       // text | json | csv
    std::string out_path;              // empty = default stream
    std::string path_in;               // lift target path file
    std::optional<ComplexPoint> start; // lift start point
};

// comma-separated positive integers, e.g. "2,3"
inline MultiIndex parse_multi_index(const std::string& text) {
    std::vector<int> parts;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(token, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid multi-index component '" + token + "'");
        }
        if (used != token.size() || value < 1)
            throw std::invalid_argument("invalid multi-index component '" + token + "'");
        parts.push_back(value);
    }
    if (parts.empty()) throw std::invalid_argument("empty multi-index");
    return MultiIndex(std::move(parts));
}

// comma-separated coordinates, each "re" or "re:im", e.g. "1,-1" or "0.5:1,2:-0.25"
inline ComplexPoint parse_start(const std::string& text) {
    ComplexPoint z;
    std::istringstream in(text);
    std::string token;
    auto to_double = [](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid coordinate '" + s + "'");
        }
        if (used != s.size()) throw std::invalid_argument("invalid coordinate '" + s + "'");
        return v;
    };
    while (std::getline(in, token, ',')) {
        const std::size_t colon = token.find(':');
        if (colon == std::string::npos) z.emplace_back(to_double(token), 0.0);
        else z.emplace_back(to_double(token.substr(0, colon)), to_double(token.substr(colon + 1)));
    }
    if (z.empty()) throw std::invalid_argument("empty start point");
    return z;
}

namespace detail {

inline void compositions_of(int n, int m, std::vector<int>& current, std::vector<MultiIndex>& out) {
    if (m == 1) {
        current.push_back(n);
        out.emplace_back(current);
        current.pop_back();
        return;
    }
    for (int first = 1; first <= n - (m - 1); ++first) {
        current.push_back(first);
        compositions_of(n - first, m - 1, current, out);
        current.pop_back();
    }
}

}  // namespace detail

// all compositions a with sum <= n_max and length <= m_max, ordered
// lexicographically on (n, m, a) for reproducible sweep logs
inline std::vector<MultiIndex> enumerate_compositions(int n_max, int m_max) {
    if (n_max < 1 || m_max < 1) throw std::invalid_argument("enumerate_compositions: bounds must be >= 1");
    std::vector<MultiIndex> out;
    std::vector<int> current;
    for (int n = 1; n <= n_max; ++n)
        for (int m = 1; m <= std::min(m_max, n); ++m) detail::compositions_of(n, m, current, out);
    return out;
}

struct ParseResult {
    std::optional<RunConfig> config;  // set on successful parse
    int exit_code = 0;                // 0 help, 2 usage error (when config is empty)
    std::string message;
};

// Parse command-line arguments (natural order, program name excluded).
inline ParseResult parse_args(std::vector<std::string> args) {
    RunConfig config;
    std::string a_text, start_text;

    CLI::App app{"exact verification of critical-point-to-critical-value Jacobian identities"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--n-max", config.n_max, "sweep bound on n (sum of the multi-index)")
        ->envname("CRITVAL_N_MAX")
        ->check(CLI::PositiveNumber);
    app.add_option("--m-max", config.m_max, "sweep bound on m (length of the multi-index)")
        ->envname("CRITVAL_M_MAX")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", config.tol, "residual tolerance for path lifting")
        ->envname("CRITVAL_TOL")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", config.format, "report format")
        ->envname("CRITVAL_FORMAT")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--out", config.out_path, "write the report to this file instead of stdout")
        ->envname("CRITVAL_OUT");

    CLI::App* verify = app.add_subcommand("verify", "check the determinant factorization for one multi-index");
    verify->add_option("a", a_text, "multi-index, comma-separated positive integers (e.g. 2,3)")->required();

    CLI::App* vandermonde = app.add_subcommand("vandermonde", "check the Vandermonde determinant product form");
    vandermonde->add_option("n", config.vandermonde_n, "matrix size")->required()->check(CLI::PositiveNumber);

    CLI::App* dyson = app.add_subcommand("dyson", "check the constant-term identity for one multi-index");
    dyson->add_option("a", a_text, "multi-index, comma-separated positive integers")->required();

    CLI::App* jacobian = app.add_subcommand("jacobian", "print the symbolic Jacobian matrix");
    jacobian->add_option("a", a_text, "multi-index, comma-separated positive integers")->required();

    CLI::App* lift = app.add_subcommand("lift", "lift a critical-value path through theta");
    lift->add_option("--path-in", config.path_in, "target path file (dim=<n> header, re im pairs per line)")
        ->required();
    lift->add_option("--start", start_text, "start point, comma-separated re[:im] coordinates")->required();

    app.add_subcommand("sweep", "run every check over all multi-indices within the bounds");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return ParseResult{std::nullopt, 0, app.help()};
    } catch (const CLI::ParseError& e) {
        return ParseResult{std::nullopt, 2, std::string(e.what()) + "\nRun with --help for usage."};
    }

    try {
        if (verify->parsed()) {
            config.command = Command::Verify;
            config.a = parse_multi_index(a_text);
        } else if (vandermonde->parsed()) {
            config.command = Command::Vandermonde;
        } else if (dyson->parsed()) {
            config.command = Command::Dyson;
            config.a = parse_multi_index(a_text);
        } else if (jacobian->parsed()) {
            config.command = Command::Jacobian;
            config.a = parse_multi_index(a_text);
        } else if (lift->parsed()) {
            config.command = Command::Lift;
            config.start = parse_start(start_text);
        } else {
            config.command = Command::Sweep;
        }
    } catch (const std::invalid_argument& e) {
        return ParseResult{std::nullopt, 2, std::string(e.what()) + "\nRun with --help for usage."};
    }
    return ParseResult{std::move(config), 0, ""};
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    return quoted + "\"";
}

inline nlohmann::ordered_json json_index(const MultiIndex& a) { return nlohmann::ordered_json(a.values()); }

struct CheckRecord {
    MultiIndex a;
    std::string check;
    bool pass;
    double wall_time_ms;
};

// one instance of the sweep: factorization, divisibility, and the two
// constant-term identities, with the bundle and determinant shared
inline std::vector<CheckRecord> sweep_instance(const MultiIndex& a, const SizeGuard& guard) {
    using clock = std::chrono::steady_clock;
    std::vector<CheckRecord> records;
    auto timed = [&](const std::string& name, auto&& body) {
        const auto start = clock::now();
        const bool pass = body();
        const double ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
        records.push_back(CheckRecord{a, name, pass, ms});
    };

    const JacobianBundle bundle = build_bundle(a);
    const MultiPoly det = determinant(bundle.jacobian);

    timed("jacobian_factorization", [&] { return det == closed_form_determinant(a); });
    timed("column_divisibility", [&] { return check_column_divisibility(bundle); });
    timed("column_difference_divisibility", [&] { return check_column_difference_divisibility(bundle); });
    timed("dyson_constant_term", [&] { return run_dyson(a, guard).equal; });
    timed("detja_coefficient", [&] {
        std::vector<int> exps(static_cast<std::size_t>(a.m()), a.n());
        return det.coefficient_of(Monomial(std::move(exps))) == Rational(a.n() % 2 ? -1 : 1);
    });
    return records;
}

}  // namespace detail

// Execute the configured command, writing the report to `sink` (or to
// config.out_path when set). Returns the exit code for identity
// outcomes; numeric and usage failures surface as exceptions
// (LiftError, std::invalid_argument / GuardExceeded).
inline int run(const RunConfig& config, std::ostream& sink) {
    std::ofstream file;
    std::ostream* out = &sink;
    if (!config.out_path.empty()) {
        file.open(config.out_path);
        if (!file) throw std::invalid_argument("cannot open output file '" + config.out_path + "'");
        out = &file;
    }

    using nlohmann::ordered_json;

    switch (config.command) {
        case Command::Verify: {
            const MultiIndex& a = *config.a;
            const SizeGuard guard{std::max(config.n_max, a.n()), std::max(config.m_max, a.m())};
            const IdentityReport report = verify_identity(a, guard);
            if (config.format == "json") {
                ordered_json j{{"command", "verify"},
                               {"a", detail::json_index(a)},
                               {"n", a.n()},
                               {"m", a.m()},
                               {"lhs_text", print_poly(report.lhs)},
                               {"rhs_text", print_poly(report.rhs)},
                               {"equal", report.equal},
                               {"wall_time_ms", report.wall_time_ms}};
                if (!report.equal) j["failure"] = {{"a", detail::json_index(a)}, {"check", "jacobian_factorization"}};
                *out << j.dump(2) << "\n";
            } else if (config.format == "csv") {
                *out << "a,n,m,equal,wall_time_ms,lhs,rhs\n"
                     << detail::csv_field(a.str()) << "," << a.n() << "," << a.m() << ","
                     << (report.equal ? "true" : "false") << "," << report.wall_time_ms << ","
                     << detail::csv_field(print_poly(report.lhs)) << ","
                     << detail::csv_field(print_poly(report.rhs)) << "\n";
            } else {
                *out << "a=" << a.str() << " n=" << a.n() << " m=" << a.m() << "\n"
                     << "lhs = " << print_poly(report.lhs) << "\n"
                     << "rhs = " << print_poly(report.rhs) << "\n"
                     << "equal = " << (report.equal ? "true" : "false") << "\n"
                     << "wall_time_ms = " << report.wall_time_ms << "\n";
                if (!report.equal) *out << "FAIL a=" << a.str() << " check=jacobian_factorization\n";
            }
            return report.equal ? 0 : 1;
        }

        case Command::Vandermonde: {
            const int n = config.vandermonde_n;
            const MultiPoly det = determinant(vandermonde_matrix(n));
            const MultiPoly product = vandermonde_product(n);
            const bool equal = det == product;
            if (config.format == "json") {
                ordered_json j{{"command", "vandermonde"},
                               {"n", n},
                               {"det_text", print_poly(det)},
                               {"product_text", print_poly(product)},
                               {"equal", equal}};
                if (!equal) j["failure"] = {{"n", n}, {"check", "vandermonde_product"}};
                *out << j.dump(2) << "\n";
            } else if (config.format == "csv") {
                *out << "n,equal,det,product\n"
                     << n << "," << (equal ? "true" : "false") << "," << detail::csv_field(print_poly(det)) << ","
                     << detail::csv_field(print_poly(product)) << "\n";
            } else {
                *out << "n=" << n << "\n"
                     << "det = " << print_poly(det) << "\n"
                     << "product = " << print_poly(product) << "\n"
                     << "equal = " << (equal ? "true" : "false") << "\n";
                if (!equal) *out << "FAIL n=" << n << " check=vandermonde_product\n";
            }
            return equal ? 0 : 1;
        }

        case Command::Dyson: {
            const MultiIndex& a = *config.a;
            const SizeGuard guard{std::max(config.n_max, a.n()), std::max(config.m_max, a.m())};
            const DysonReport report = run_dyson(a, guard);
            if (config.format == "json") {
                ordered_json j{{"command", "dyson"},
                               {"a", detail::json_index(a)},
                               {"constant_term", report.constant_term.get_str()},
                               {"multinomial", report.multinomial.get_str()},
                               {"equal", report.equal}};
                if (!report.equal) j["failure"] = {{"a", detail::json_index(a)}, {"check", "dyson_constant_term"}};
                *out << j.dump(2) << "\n";
            } else if (config.format == "csv") {
                *out << "a,constant_term,multinomial,equal\n"
                     << detail::csv_field(a.str()) << "," << report.constant_term.get_str() << ","
                     << report.multinomial.get_str() << "," << (report.equal ? "true" : "false") << "\n";
            } else {
                *out << "a=" << a.str() << " n=" << a.n() << " m=" << a.m() << "\n"
                     << "constant_term = " << report.constant_term.get_str() << "\n"
                     << "multinomial = " << report.multinomial.get_str() << "\n"
                     << "equal = " << (report.equal ? "true" : "false") << "\n";
                if (!report.equal) *out << "FAIL a=" << a.str() << " check=dyson_constant_term\n";
            }
            return report.equal ? 0 : 1;
        }

        case Command::Jacobian: {
            const MultiIndex& a = *config.a;
            const JacobianBundle bundle = build_bundle(a);
            const int m = a.m();
            if (config.format == "json") {
                ordered_json entries = ordered_json::array();
                for (int i = 1; i <= m; ++i) {
                    ordered_json row = ordered_json::array();
                    for (int j = 1; j <= m; ++j) row.push_back(print_poly(bundle.jacobian.at(i, j)));
                    entries.push_back(std::move(row));
                }
                ordered_json theta = ordered_json::array();
                for (const MultiPoly& t : bundle.theta) theta.push_back(print_poly(t));
                ordered_json j{{"command", "jacobian"},
                               {"a", detail::json_index(a)},
                               {"theta", std::move(theta)},
                               {"entries", std::move(entries)}};
                *out << j.dump(2) << "\n";
            } else if (config.format == "csv") {
                *out << "i,j,entry\n";
                for (int i = 1; i <= m; ++i)
                    for (int j = 1; j <= m; ++j)
                        *out << i << "," << j << "," << detail::csv_field(print_poly(bundle.jacobian.at(i, j)))
                             << "\n";
            } else {
                *out << "a=" << a.str() << " n=" << a.n() << " m=" << a.m() << "\n";
                for (int j = 1; j <= m; ++j)
                    *out << "theta[" << j << "] = " << print_poly(bundle.theta[static_cast<std::size_t>(j - 1)])
                         << "\n";
                for (int i = 1; i <= m; ++i)
                    for (int j = 1; j <= m; ++j)
                        *out << "J[" << i << "][" << j << "] = " << print_poly(bundle.jacobian.at(i, j)) << "\n";
            }
            return 0;
        }

        case Command::Lift: {
            std::ifstream in(config.path_in);
            if (!in) throw std::invalid_argument("cannot open path file '" + config.path_in + "'");
            const ComplexPath target = read_path(in);
            const ComplexPoint& z0 = *config.start;
            ContinuationOptions opts;
            opts.residual_tol = config.tol;
            const SetPartition lambda = part_of(z0, opts.coincidence_tol);
            const ComplexPath lifted = lift_path(lambda, z0, target, opts);
            write_path(*out, lifted);
            return 0;
        }

        case Command::Sweep: {
            const SizeGuard guard{config.n_max, config.m_max};
            std::vector<detail::CheckRecord> records;
            for (const MultiIndex& a : enumerate_compositions(config.n_max, config.m_max)) {
                auto instance = detail::sweep_instance(a, guard);
                records.insert(records.end(), instance.begin(), instance.end());
            }
            const auto first_fail = std::find_if(records.begin(), records.end(),
                                                 [](const detail::CheckRecord& r) { return !r.pass; });
            const bool all_pass = first_fail == records.end();
            if (config.format == "json") {
                ordered_json rows = ordered_json::array();
                for (const auto& r : records)
                    rows.push_back(ordered_json{{"a", detail::json_index(r.a)},
                                                {"check", r.check},
                                                {"pass", r.pass},
                                                {"wall_time_ms", r.wall_time_ms}});
                ordered_json j{{"command", "sweep"},
                               {"n_max", config.n_max},
                               {"m_max", config.m_max},
                               {"records", std::move(rows)},
                               {"all_pass", all_pass}};
                if (!all_pass)
                    j["failure"] = {{"a", detail::json_index(first_fail->a)}, {"check", first_fail->check}};
                *out << j.dump(2) << "\n";
            } else if (config.format == "csv") {
                *out << "a,check,pass,wall_time_ms\n";
                for (const auto& r : records)
                    *out << detail::csv_field(r.a.str()) << "," << r.check << "," << (r.pass ? "true" : "false")
                         << "," << r.wall_time_ms << "\n";
            } else {
                for (const auto& r : records)
                    *out << (r.pass ? "ok   " : "FAIL ") << "a=" << r.a.str() << " check=" << r.check << " "
                         << r.wall_time_ms << "ms\n";
                *out << (all_pass ? "all checks passed" : "some checks FAILED") << " (" << records.size()
                     << " records)\n";
                if (!all_pass) *out << "FAIL a=" << first_fail->a.str() << " check=" << first_fail->check << "\n";
            }
            return all_pass ? 0 : 1;
        }
    }
    return 2;
}

// run() with exceptions mapped to the documented exit codes:
// 2 for usage problems, 3 for numeric failure.
inline int run_catching(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        return run(config, out);
    } catch (const LiftError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const GuardExceeded& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
}

inline int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    ParseResult parsed = parse_args(std::vector<std::string>(argv + 1, argv + argc));
    if (!parsed.config) {
        (parsed.exit_code == 0 ? out : err) << parsed.message << "\n";
        return parsed.exit_code;
    }
    return run_catching(*parsed.config, out, err);
}

}  // namespace critval::cli
