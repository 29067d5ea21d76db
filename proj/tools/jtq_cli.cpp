// jtq-cli: exact totient quotients, cyclotomic derivatives, Euler-product
// constants, and summatory verification runs.
//
// Every JSON result embeds the normalized config that produced it; `rerun
// --config saved.json` re-executes that config through the same dispatch
// path, so config+results round-trip bit-for-bit (provenance.timestamp is the
// only volatile field).

#include <jtq/jtq.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using jtq::ordered_json;

// exit codes: 0 ok, 2 parse, 3 precision, 4 domain, 5 capacity
enum ExitCode { kOk = 0, kRuntime = 1, kParse = 2, kPrecision = 3, kDomain = 4, kCapacity = 5 };

jtq::PrecisionContext context_from(const ordered_json& config) {
    jtq::PrecisionContext ctx;
    ctx.decimal_digits = config.value("digits", 50u);
    ctx.direct_prime_limit = config.value("p0", std::uint64_t{100});
    ctx.tail_series_order = config.value("order", 60u);
    ctx.validate();
    return ctx;
}

jtq::ExponentVector exponents_from(const ordered_json& config) {
    return jtq::ExponentVector::parse(config.value("e", std::string{}));
}

std::string rat_decimal(const jtq::Rat& r, unsigned digits) {
    return jtq::real_to_string(jtq::to_real(r), digits);
}

ordered_json run_constants(const ordered_json& config) {
    auto ctx = context_from(config);
    jtq::ConstantValue value;
    if (config.contains("k")) {
        value = jtq::sigma_k_phi(config["k"].get<unsigned>(), ctx);
    } else {
        const auto theta = jtq::theta_from_exponents(exponents_from(config));
        const std::string method = config.value("method", std::string{"accelerated"});
        if (method == "accelerated")
            value = jtq::singular_series_accelerated(theta, ctx);
        else if (method == "truncated")
            value = jtq::singular_series_truncated(
                theta, config.value("prime_limit", std::uint64_t{100000}), ctx);
        else
            throw std::invalid_argument("constants: unknown method '" + method + "'");
    }
    ordered_json r = jtq::constant_to_json(value, config.value("digits", 50u));
    ordered_json out = ordered_json::array();
    out.push_back(std::move(r));
    return out;
}

ordered_json run_cyclotomic(const ordered_json& config) {
    const unsigned n = config["n"].get<unsigned>();
    const unsigned k = config.value("k", 0u);
    const jtq::Int z(config.value("z", std::string{"1"}));
    const auto phi = jtq::cyclotomic_poly(n);
    ordered_json r;
    r["n"] = n;
    r["k"] = k;
    r["z"] = z.str();
    r["degree"] = phi->degree();
    const jtq::Int dk = jtq::derivative_at(*phi, k, z);
    r["value"] = dk.str();
    const jtq::Int at_z = jtq::derivative_at(*phi, 0, z);
    if (k >= 1 && at_z != 0) {
        const jtq::Rat ratio = jtq::Rat(dk) / jtq::Rat(at_z);
        r["ratio"] = jtq::rat_to_string(ratio);
        const jtq::Rat normalized = jtq::normalized_derivative(n, k, z);
        r["normalized"] = jtq::rat_to_string(normalized);
        r["normalized_decimal"] = rat_decimal(normalized, config.value("digits", 50u));
    }
    ordered_json out = ordered_json::array();
    out.push_back(std::move(r));
    return out;
}

ordered_json run_jordan(const ordered_json& config) {
    const auto e = exponents_from(config);
    const std::uint64_t n = config["n"].get<std::uint64_t>();
    const jtq::Rat value = jtq::jordan_quotient(e, n);
    ordered_json r;
    r["e"] = e.to_string();
    r["n"] = n;
    r["value"] = jtq::rat_to_string(value);
    r["decimal"] = rat_decimal(value, config.value("digits", 50u));
    r["weight"] = e.weight();
    r["balanced"] = e.balanced();
    ordered_json out = ordered_json::array();
    out.push_back(std::move(r));
    return out;
}

ordered_json run_sum(const ordered_json& config) {
    const auto e = exponents_from(config);
    const double beta = config.value("beta", 0.0);
    std::vector<std::uint64_t> grid;
    if (config.contains("grid"))
        grid = config["grid"].get<std::vector<std::uint64_t>>();
    else
        grid = {config["xmax"].get<std::uint64_t>()};
    std::string mode = config.value("mode", std::string{"auto"});
    const bool integral_beta = beta == std::floor(beta);
    if (mode == "auto") mode = (integral_beta && grid.back() <= 200000) ? "exact" : "real";
    if (mode == "exact" && !integral_beta)
        throw std::domain_error("sum: exact mode requires an integral beta");
    const unsigned digits = config.value("digits", 50u);

    ordered_json out = ordered_json::array();
    if (mode == "exact") {
        const auto sums = jtq::jordan_summatory_exact(e, static_cast<long>(beta), grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            ordered_json r;
            r["x"] = grid[i];
            r["sum"] = jtq::rat_to_string(sums[i]);
            r["decimal"] = rat_decimal(sums[i], digits);
            out.push_back(std::move(r));
        }
    } else if (mode == "real") {
        const auto sums = jtq::jordan_summatory(e, beta, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            ordered_json r;
            r["x"] = grid[i];
            r["sum"] = jtq::real_to_string(sums[i], digits);
            out.push_back(std::move(r));
        }
    } else {
        throw std::invalid_argument("sum: unknown mode '" + mode + "'");
    }
    return out;
}

ordered_json run_verify(const ordered_json& config) {
    auto ctx = context_from(config);
    unsigned k = config.value("k", 2u);
    const jtq::TheoremId id =
        jtq::parse_theorem_id(config["theorem"].get<std::string>(), k);
    jtq::VerifyOptions opts;
    opts.k = k;
    if (config.contains("e")) opts.e = exponents_from(config);
    opts.beta = config.value("beta", 0.0);
    opts.points_per_decade = config.value("points_per_decade", 20u);
    opts.x_min = config.value("x_min", std::uint64_t{1000});
    opts.seed = config.value("seed", std::uint64_t{12345});
    opts.threads = config.value("threads", 1u);
    const auto report =
        jtq::verify_theorem(id, config["xmax"].get<std::uint64_t>(), ctx, opts);
    ordered_json out = ordered_json::array();
    out.push_back(jtq::report_to_json(report, config.value("digits", 50u)));
    return out;
}

ordered_json run_from_config(const ordered_json& config) {
    const std::string command = config.at("command").get<std::string>();
    if (command == "constants") return run_constants(config);
    if (command == "cyclotomic") return run_cyclotomic(config);
    if (command == "jordan") return run_jordan(config);
    if (command == "sum") return run_sum(config);
    if (command == "verify") return run_verify(config);
    throw std::invalid_argument("unknown command '" + command + "' in config");
}

// ---- rendering ----

std::string render_text(const ordered_json& envelope) {
    std::ostringstream out;
    const auto& config = envelope["config"];
    out << "# " << config["command"].get<std::string>() << "\n";
    for (const auto& r : envelope["results"]) {
        for (auto it = r.begin(); it != r.end(); ++it) {
            if (it.value().is_structured()) {
                out << it.key() << ": " << it.value().dump() << "\n";
            } else if (it.value().is_string()) {
                out << it.key() << ": " << it.value().get<std::string>() << "\n";
            } else {
                out << it.key() << ": " << it.value().dump() << "\n";
            }
        }
        out << "\n";
    }
    return out.str();
}

std::string render_csv(const ordered_json& envelope) {
    const auto& config = envelope["config"];
    const auto& results = envelope["results"];
    std::ostringstream out;
    out << "# config: " << config.dump() << "\n";
    const std::string command = config["command"].get<std::string>();
    if (command == "verify") {
        // x,sum,main,fitted,residual,bound_ratio rows from the report fields
        const auto& r = results[0];
        out << "x,sum,main,fitted,residual,bound_ratio\r\n";
        const auto& xs = r["x_grid"];
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out << xs[i].get<std::uint64_t>() << ','
                << r["sums"][i].get<std::string>() << ','
                << r["predicted_main"][i].get<std::string>() << ',';
            out.precision(17);
            out << r["fitted_values"][i].get<double>() << ','
                << r["residuals"][i].get<double>() << ','
                << r["bound_ratios"][i].get<double>() << "\r\n";
        }
        return out.str();
    }
    if (command == "sum") {
        out << "x,sum\r\n";
        for (const auto& r : results) {
            const auto& s = r.contains("decimal") ? r["decimal"] : r["sum"];
            out << r["x"].get<std::uint64_t>() << ',' << s.get<std::string>() << "\r\n";
        }
        return out.str();
    }
    // generic: key,value rows
    out << "key,value\r\n";
    for (const auto& r : results)
        for (auto it = r.begin(); it != r.end(); ++it)
            out << it.key() << ','
                << (it.value().is_string() ? it.value().get<std::string>()
                                           : it.value().dump())
                << "\r\n";
    return out.str();
}

int emit(const ordered_json& envelope, const std::string& format,
         const std::string& output) {
    std::string text;
    if (format == "json")
        text = envelope.dump(2) + "\n";
    else if (format == "csv")
        text = render_csv(envelope);
    else if (format == "text")
        text = render_text(envelope);
    else
        throw std::invalid_argument("unknown format '" + format + "'");
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + output);
        f << text;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jordan totient quotients, theta-totients, cyclotomic "
                 "derivatives, and their mean-value constants"};
    app.require_subcommand(1);

    std::string format = "text", output;
    unsigned digits = 50;
    std::uint64_t p0 = 100;
    unsigned order = 60;
    app.add_option("--format", format, "json | csv | text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output", output, "write to a file instead of stdout");
    app.add_option("--digits", digits, "requested decimal digits")
        ->envname("JTQ_DIGITS");
    app.add_option("--p0", p0, "direct Euler-product cutoff for acceleration");
    app.add_option("--order", order, "tail series order for acceleration");

    // constants
    auto* c_const = app.add_subcommand("constants", "Euler-product mean-value constants");
    std::string c_e, c_method = "accelerated";
    unsigned c_k = 0;
    std::uint64_t c_plimit = 100000;
    auto* c_e_opt = c_const->add_option("--e", c_e, "exponent vector, e.g. -2,1");
    auto* c_k_opt =
        c_const->add_option("--k", c_k, "derivative order: compute sigma_k(Phi)");
    c_const->add_option("--method", c_method, "accelerated | truncated")
        ->check(CLI::IsMember({"accelerated", "truncated"}));
    c_const->add_option("--plimit", c_plimit, "prime cutoff for --method truncated");
    c_e_opt->excludes(c_k_opt);

    // cyclotomic
    auto* c_cyc = app.add_subcommand("cyclotomic", "cyclotomic polynomial derivatives");
    unsigned y_n = 0, y_k = 0;
    std::string y_z = "1";
    c_cyc->add_option("--n", y_n, "index of Phi_n")->required();
    c_cyc->add_option("--k", y_k, "derivative order (0 = evaluate)");
    c_cyc->add_option("--z", y_z, "integer evaluation point");

    // jordan
    auto* c_jor = app.add_subcommand("jordan", "exact Jordan totient quotient J_e(n)");
    std::string j_e;
    std::uint64_t j_n = 0;
    c_jor->add_option("--e", j_e, "exponent vector")->required();
    c_jor->add_option("--n", j_n, "argument")->required();

    // sum
    auto* c_sum = app.add_subcommand("sum", "summatory function of J_e(n) n^beta");
    std::string s_e, s_mode = "auto";
    double s_beta = 0.0;
    std::uint64_t s_xmax = 0;
    std::vector<std::uint64_t> s_grid;
    c_sum->add_option("--e", s_e, "exponent vector")->required();
    c_sum->add_option("--beta", s_beta, "twist exponent");
    auto* s_xmax_opt = c_sum->add_option("--xmax", s_xmax, "single evaluation point");
    auto* s_grid_opt =
        c_sum->add_option("--grid", s_grid, "comma-separated evaluation points")
            ->delimiter(',');
    c_sum->add_option("--mode", s_mode, "exact | real | auto")
        ->check(CLI::IsMember({"exact", "real", "auto"}));
    s_xmax_opt->excludes(s_grid_opt);

    // verify
    auto* c_ver = app.add_subcommand("verify", "summatory theorem verification run");
    std::string v_theorem, v_e;
    std::uint64_t v_xmax = 1000000, v_xmin = 1000, v_seed = 12345;
    unsigned v_k = 2, v_ppd = 20, v_threads = 1;
    double v_beta = 0.0;
    c_ver->add_option("--theorem", v_theorem,
                      "thm1 | thm2 | prop1 | cor1 | thm3(k) | thm4 | thm5")
        ->required();
    c_ver->add_option("--xmax", v_xmax, "top of the range");
    c_ver->add_option("--xmin", v_xmin, "bottom of the grid");
    c_ver->add_option("--e", v_e, "exponent vector (thm1/thm2/prop1)");
    c_ver->add_option("--k", v_k, "order (thm3/cor1)");
    c_ver->add_option("--beta", v_beta, "twist exponent (prop1)");
    c_ver->add_option("--points-per-decade", v_ppd, "grid density");
    c_ver->add_option("--seed", v_seed, "oracle subsample seed");
    c_ver->add_option("--threads", v_threads, "worker threads");

    // rerun
    auto* c_rerun = app.add_subcommand("rerun", "re-execute a saved config");
    std::string r_config;
    c_rerun->add_option("--config", r_config, "path to a saved JSON result")->required();

    // let global options (--format, --digits, ...) appear after the subcommand
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParse;
    }

    try {
        ordered_json config;
        if (c_rerun->parsed()) {
            std::ifstream f(r_config);
            if (!f) throw std::invalid_argument("rerun: cannot open " + r_config);
            ordered_json saved = ordered_json::parse(f);
            config = saved.contains("config") ? saved["config"] : saved;
        } else {
            ordered_json cfg;
            if (c_const->parsed()) {
                cfg["command"] = "constants";
                if (c_k_opt->count())
                    cfg["k"] = c_k;
                else if (c_e_opt->count())
                    cfg["e"] = c_e;
                else
                    throw std::invalid_argument("constants: need --e or --k");
                cfg["method"] = c_method;
                if (c_method == "truncated") cfg["prime_limit"] = c_plimit;
            } else if (c_cyc->parsed()) {
                cfg["command"] = "cyclotomic";
                cfg["n"] = y_n;
                cfg["k"] = y_k;
                cfg["z"] = y_z;
            } else if (c_jor->parsed()) {
                cfg["command"] = "jordan";
                cfg["e"] = j_e;
                cfg["n"] = j_n;
            } else if (c_sum->parsed()) {
                cfg["command"] = "sum";
                cfg["e"] = s_e;
                cfg["beta"] = s_beta;
                if (s_grid_opt->count())
                    cfg["grid"] = s_grid;
                else if (s_xmax_opt->count())
                    cfg["xmax"] = s_xmax;
                else
                    throw std::invalid_argument("sum: need --xmax or --grid");
                cfg["mode"] = s_mode;
            } else if (c_ver->parsed()) {
                cfg["command"] = "verify";
                cfg["theorem"] = v_theorem;
                cfg["xmax"] = v_xmax;
                cfg["x_min"] = v_xmin;
                if (c_ver->get_option("--k")->count()) cfg["k"] = v_k;
                if (!v_e.empty()) cfg["e"] = v_e;
                if (c_ver->get_option("--beta")->count()) cfg["beta"] = v_beta;
                cfg["points_per_decade"] = v_ppd;
                cfg["seed"] = v_seed;
                cfg["threads"] = v_threads;
            }
            cfg["digits"] = digits;
            cfg["p0"] = p0;
            cfg["order"] = order;
            config = std::move(cfg);
        }

        const ordered_json results = run_from_config(config);
        const ordered_json envelope = jtq::report_envelope(config, results);
        return emit(envelope, format, output);
    } catch (const jtq::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kCapacity;
    } catch (const jtq::precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return kPrecision;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return kParse;
    } catch (const ordered_json::parse_error& e) {
        std::cerr << "config parse error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
}
