// Command-line surface: construction, bound checking, proof verification and
// extremal search, with one JSON object per run on stdout:
//   {"manifest": {...}, "result": {...}}
// Human-readable summaries go to stderr. Exit codes: 0 = all checks pass,
// 1 = mathematical finding (bound violation / identity failure),
// 2 = usage or data error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eil/eil.hpp"

namespace {

using eil::json;

class Timer {
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();

public:
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0_)
            .count();
    }
};

json make_manifest(const std::string& subcommand, const json& params, std::uint64_t seed,
                   int workers, long long wall_ms, const std::string& verdict) {
    json m;
    m["subcommand"] = subcommand;
    m["version"] = eil::kVersion;
    m["prng"] = eil::kPrngName;
    m["seed"] = seed;
    m["workers"] = workers;
    m["params"] = params;
    m["wall_ms"] = wall_ms;
    m["verdict"] = verdict;
    return m;
}

void emit(const json& manifest, const json& result) {
    json out;
    out["manifest"] = manifest;
    out["result"] = result;
    std::cout << out.dump() << "\n";
}

void write_result_file(const std::string& path, const json& result) {
    std::ofstream f(path);
    if (!f)
        throw eil::Error("cannot open output file '" + path + "'");
    f << result.dump() << "\n";
}

int cmd_construct(const std::string& kind, int order, int sylvester_m, long long paley_q,
                  const std::string& out, const std::string& format) {
    Timer timer;
    json params;
    params["kind"] = kind;
    params["format"] = format;
    if (order >= 0)
        params["order"] = order;
    if (sylvester_m >= 0)
        params["sylvester"] = sylvester_m;
    if (paley_q >= 0)
        params["paley"] = paley_q;
    if (!out.empty())
        params["out"] = out;

    json design;
    std::string text;
    if (kind == "hadamard") {
        int given = (order >= 0) + (sylvester_m >= 0) + (paley_q >= 0);
        if (given != 1)
            throw eil::InvalidArgument(
                "construct hadamard: give exactly one of --order, --sylvester, --paley");
        eil::HadamardMatrix h = order >= 0      ? eil::hadamard_of_order(order)
                                : sylvester_m >= 0 ? eil::sylvester(sylvester_m)
                                                   : eil::paley(paley_q);
        design = eil::design_to_json(h);
        text = eil::matrix_text(h.rational());
        std::cerr << "hadamard order " << h.order() << ", normalized="
                  << (h.normalized() ? "true" : "false") << ", H H^T = nI verified\n";
    } else if (kind == "smatrix") {
        if (order < 0 || sylvester_m >= 0 || paley_q >= 0)
            throw eil::InvalidArgument("construct smatrix: requires --order only");
        eil::SMatrix s = eil::smatrix_of_order(order);
        design = eil::design_to_json(s);
        text = eil::matrix_text(s.rational());
        std::cerr << "smatrix order " << s.order() << ", k=" << s.k()
                  << ", row/column sums and closed-form inverse verified\n";
    } else {
        throw eil::InvalidArgument("construct: kind must be hadamard or smatrix");
    }

    if (!out.empty()) {
        std::ofstream f(out);
        if (!f)
            throw eil::Error("cannot open output file '" + out + "'");
        if (format == "json")
            f << design.dump() << "\n";
        else
            f << text;
        design["path"] = out;
    }
    emit(make_manifest("construct", params, 0, 1, timer.ms(), "pass"), design);
    return 0;
}

int cmd_check(const std::string& path) {
    Timer timer;
    json params;
    params["file"] = path;
    eil::RationalMatrix a = eil::load_matrix_file(path);
    eil::BoundReport report = eil::check_bound(a);
    // even-case equality would contradict the strict inequality: a finding
    const bool finding =
        !report.satisfied ||
        (report.kind == eil::BoundCaseKind::even && report.equality);
    std::cerr << "n=" << report.n << " case=" << eil::to_string(report.kind)
              << " bound_sq=" << report.bound_sq.str()
              << " norm_sq=" << report.norm_sq.str()
              << (report.equality ? " (equality)" : "")
              << (report.satisfied ? "" : "  ** BOUND VIOLATED **") << "\n";
    emit(make_manifest("check", params, 0, 1, timer.ms(), finding ? "finding" : "pass"),
         report.to_json());
    return finding ? 1 : 0;
}

int search_common(const char* name, const eil::SearchConfig& config,
                  const eil::SearchResult& result, const Timer& timer, json params,
                  const std::string& out) {
    const bool finding = !result.all_satisfy_bound;
    json rj = result.to_json();
    if (!out.empty())
        write_result_file(out, rj);
    emit(make_manifest(name, params, config.seed, config.workers, timer.ms(),
                       finding ? "finding" : "pass"),
         rj);
    return finding ? 1 : 0;
}

int cmd_enumerate(int n, int workers, bool prune, const std::string& out) {
    Timer timer;
    eil::SearchConfig config;
    config.backend = eil::Backend::enumerate;
    config.n = n;
    config.workers = workers;
    config.canonical_prune = prune;
    eil::SearchResult result = eil::enumerate_binary(config);
    std::cerr << "enumerate n=" << n << ": examined " << result.examined << " ("
              << result.singular << " singular), min norm_sq = "
              << result.min_norm_sq.str() << " with " << result.minimizer_count
              << " minimizer(s); bound "
              << (result.all_satisfy_bound ? "holds" : "VIOLATED") << "\n";
    json params;
    params["n"] = n;
    params["prune"] = prune;
    return search_common("enumerate", config, result, timer, params, out);
}

int cmd_sample(int n, long long count, std::uint64_t seed, int workers,
               bool plant_identity, const std::string& out) {
    Timer timer;
    eil::SearchConfig config;
    config.backend = eil::Backend::sample;
    config.n = n;
    config.count = count;
    config.seed = seed;
    config.workers = workers;
    config.plant_identity = plant_identity;
    eil::SearchResult result = eil::sample_box(config);
    std::cerr << "sample n=" << n << ": " << result.examined << " draws ("
              << result.singular << " singular), min norm_sq ~= "
              << result.min_norm_sq_float << " at draw " << result.min_index << ", "
              << result.escalations << " escalated, " << result.violations
              << " violation(s)\n";
    json params;
    params["n"] = n;
    params["count"] = count;
    params["plant_identity"] = plant_identity;
    return search_common("sample", config, result, timer, params, out);
}

int cmd_descend(int n, int starts, std::uint64_t seed, int max_iters, int workers,
                const std::string& start_file, const std::string& out) {
    Timer timer;
    eil::SearchConfig config;
    config.backend = eil::Backend::descend;
    config.n = n;
    config.starts = starts;
    config.seed = seed;
    config.max_iters = max_iters;
    config.workers = workers;
    std::optional<eil::FloatMatrix> start;
    if (!start_file.empty()) {
        eil::RationalMatrix a = eil::load_matrix_file(start_file);
        if (a.order() != n)
            throw eil::DimensionMismatch("descend: start matrix order " +
                                         std::to_string(a.order()) +
                                         " does not match --n " + std::to_string(n));
        start = eil::to_float(a);
    }
    eil::SearchResult result = eil::descend(config, start);
    long long converged = 0;
    for (const auto& r : result.runs)
        converged += r.converged ? 1 : 0;
    std::cerr << "descend n=" << n << ": " << result.runs.size() << " run(s), "
              << converged << " converged, min terminal ~= " << result.min_norm_sq_float
              << ", " << result.violations << " below bound\n";
    json params;
    params["n"] = n;
    params["starts"] = starts;
    params["max_iters"] = max_iters;
    if (!start_file.empty())
        params["start"] = start_file;
    return search_common("descend", config, result, timer, params, out);
}

int cmd_verify_proof(int n_single, int n_min, int n_max, const std::string& case_filter,
                     bool only_f_max, bool only_g_max, long long samples,
                     std::uint64_t seed, int workers, const std::string& out) {
    Timer timer;
    json params;
    if (n_single > 0)
        params["n"] = n_single;
    params["n_min"] = n_min;
    params["n_max"] = n_max;
    params["case"] = case_filter;
    params["f_max"] = only_f_max;
    params["g_max"] = only_g_max;
    params["samples"] = samples;

    std::vector<int> ns;
    if (n_single > 0)
        ns.push_back(n_single);
    else
        for (int n = n_min; n <= n_max; ++n)
            ns.push_back(n);
    auto allowed = [&](int n) {
        if (case_filter == "all")
            return true;
        if (case_filter == "two")
            return n == 2;
        if (case_filter == "odd")
            return n % 2 == 1 && n >= 3;
        return n % 2 == 0 && n >= 4; // even
    };

    json result;
    bool all_pass = true;
    const bool focused = only_f_max || only_g_max;

    json fmax = json::array();
    json gmax = json::array();
    for (int n : ns) {
        if (!allowed(n))
            continue;
        if (n % 2 == 1 && n >= 3 && (only_f_max || !focused))
            fmax.push_back(eil::verify_f_max(n).to_json());
        if (n % 2 == 0 && n >= 4 && (only_g_max || !focused))
            gmax.push_back(eil::verify_g_max(n).to_json());
    }
    if (!fmax.empty())
        result["f_max"] = std::move(fmax);
    if (!gmax.empty())
        result["g_max"] = std::move(gmax);

    if (!focused) {
        json traces = json::array();
        for (int n : ns) {
            if (!allowed(n) || n < 3)
                continue;
            auto suite = eil::run_trace_suite(n, seed, samples, workers);
            all_pass = all_pass && suite.all_pass;
            traces.push_back(suite.to_json());
        }
        if (!traces.empty())
            result["traces"] = std::move(traces);

        bool any_even = false, any_two = false;
        std::vector<int> chain_orders;
        for (int n : ns) {
            if (!allowed(n))
                continue;
            any_even = any_even || (n % 2 == 0 && n >= 4);
            any_two = any_two || n == 2;
            if (n % 2 == 1 && n >= 3) {
                // equality chain needs a constructible S-matrix of order n
                try {
                    eil::smatrix_of_order(n);
                    chain_orders.push_back(n);
                } catch (const eil::Error&) {
                }
            }
        }
        if (any_even) {
            auto na = eil::run_non_attainment_suite(2, 1000);
            all_pass = all_pass && na.all_non_integer;
            result["non_attainment"] = na.to_json();
        }
        if (!chain_orders.empty()) {
            auto chain = eil::run_equality_chain_suite(chain_orders);
            all_pass = all_pass && chain.all_equality_true && chain.negative_controls_false;
            result["equality_chain"] = chain.to_json();
        }
        if (any_two) {
            auto two = eil::run_2x2_suite(seed, samples, workers);
            all_pass = all_pass && two.rational_all_zero && two.brackets_all_nonnegative &&
                       two.max_float_residual < 1e-12;
            result["two_by_two"] = two.to_json();
        }
    }
    result["all_pass"] = all_pass;
    std::cerr << "verify-proof: " << (all_pass ? "all identities hold" : "FAILURE")
              << "\n";
    if (!out.empty())
        write_result_file(out, result);
    emit(make_manifest("verify-proof", params, seed, workers, timer.ms(),
                       all_pass ? "pass" : "finding"),
         result);
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hadamard/S-matrix constructions, exact Frobenius-norm bounds on "
                 "matrix inverses, and mechanical verification of the bound proofs"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "Construct a design matrix");
    std::string kind;
    int order = -1, sylv = -1;
    long long paleyq = -1;
    std::string out, format = "text";
    construct->add_option("kind", kind, "hadamard or smatrix")->required();
    construct->add_option("--order", order, "target order");
    construct->add_option("--sylvester", sylv, "Sylvester doubling exponent m (order 2^m)");
    construct->add_option("--paley", paleyq, "Paley prime power q = 3 (mod 4) (order q+1)");
    construct->add_option("--out", out, "write the matrix to this file");
    construct->add_option("--format", format, "file format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    // check
    auto* check = app.add_subcommand("check", "Exact bound report for a matrix file");
    std::string check_file;
    check->add_option("file", check_file, "matrix file (text or JSON)")->required();

    // verify-proof
    auto* verify = app.add_subcommand("verify-proof", "Run the proof identity suites");
    int vp_n = 0, vp_min = 2, vp_max = 8;
    std::string vp_case = "all";
    bool vp_fmax = false, vp_gmax = false;
    long long vp_samples = 1000;
    std::uint64_t vp_seed = 0;
    int vp_workers = 1;
    std::string vp_out;
    verify->add_option("--n", vp_n, "run a single order");
    verify->add_option("--n-min", vp_min, "range start (default 2)");
    verify->add_option("--n-max", vp_max, "range end (default 8)");
    verify->add_option("--case", vp_case, "restrict to a case: odd|even|two|all")
        ->check(CLI::IsMember({"odd", "even", "two", "all"}));
    verify->add_flag("--f-max", vp_fmax, "only the f maximization report");
    verify->add_flag("--g-max", vp_gmax, "only the g maximization report");
    verify->add_option("--samples", vp_samples, "random draws per suite (default 1000)");
    verify->add_option("--seed", vp_seed, "PRNG seed");
    verify->add_option("--workers", vp_workers, "worker threads");
    verify->add_option("--out", vp_out, "also write the result JSON to this file");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "Exhaustive {0,1} minimum (n <= 5)");
    int en_n = 3, en_workers = 1;
    bool en_prune = false;
    std::string en_out;
    enumerate->add_option("--n", en_n, "order (2..5)")->required();
    enumerate->add_option("--workers", en_workers, "worker threads");
    enumerate->add_flag("--prune", en_prune, "canonical orbit pruning (n <= 4)");
    enumerate->add_option("--out", en_out, "also write the result JSON to this file");

    // sample
    auto* sample = app.add_subcommand("sample", "Seeded uniform sampling of the box");
    int sa_n = 3, sa_workers = 1;
    long long sa_count = 100000;
    std::uint64_t sa_seed = 0;
    bool sa_plant = false;
    std::string sa_out;
    sample->add_option("--n", sa_n, "order (>= 2)")->required();
    sample->add_option("--count", sa_count, "number of draws");
    sample->add_option("--seed", sa_seed, "PRNG seed");
    sample->add_option("--workers", sa_workers, "worker threads");
    sample->add_flag("--plant-identity", sa_plant, "replace draw 0 by the identity");
    sample->add_option("--out", sa_out, "also write the result JSON to this file");

    // descend
    auto* descend = app.add_subcommand("descend", "Projected gradient descent on the box");
    int de_n = 3, de_starts = 1, de_iters = 10000, de_workers = 1;
    std::uint64_t de_seed = 0;
    std::string de_start, de_out;
    descend->add_option("--n", de_n, "order (>= 2)")->required();
    descend->add_option("--starts", de_starts, "independent runs");
    descend->add_option("--seed", de_seed, "PRNG seed");
    descend->add_option("--max-iters", de_iters, "iteration cap per run");
    descend->add_option("--workers", de_workers, "worker threads");
    descend->add_option("--start", de_start, "matrix file used as the first start");
    descend->add_option("--out", de_out, "also write the result JSON to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*construct)
            return cmd_construct(kind, order, sylv, paleyq, out, format);
        if (*check)
            return cmd_check(check_file);
        if (*verify)
            return cmd_verify_proof(vp_n, vp_min, vp_max, vp_case, vp_fmax, vp_gmax,
                                    vp_samples, vp_seed, vp_workers, vp_out);
        if (*enumerate)
            return cmd_enumerate(en_n, en_workers, en_prune, en_out);
        if (*sample)
            return cmd_sample(sa_n, sa_count, sa_seed, sa_workers, sa_plant, sa_out);
        if (*descend)
            return cmd_descend(de_n, de_starts, de_seed, de_iters, de_workers, de_start,
                               de_out);
    } catch (const eil::IdentityViolated& e) {
        std::cerr << "IDENTITY VIOLATED: " << e.what() << "\n";
        return 1;
    } catch (const eil::ChainBroken& e) {
        std::cerr << "EQUALITY CHAIN BROKEN: " << e.what() << "\n";
        return 1;
    } catch (const eil::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
