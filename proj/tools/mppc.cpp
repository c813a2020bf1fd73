#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <json.hpp>

#include "mppc/errors.hpp"
#include "mppc/evaluation.hpp"
#include "mppc/generator.hpp"
#include "mppc/geojson.hpp"
#include "mppc/io.hpp"
#include "mppc/metric.hpp"
#include "mppc/pipelines.hpp"
#include "mppc/wspd.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw mppc::Error("cannot write " + path);
    out << text;
}

// Replaces the instance metric with an offline directions cache so every
// downstream consumer sees the repaired matrix.
void apply_directions_cache(mppc::Instance& inst, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw mppc::ParseError("cannot open " + path);
    const mppc::DistanceMatrix matrix = mppc::import_directions_cache(in, inst);
    std::vector<std::vector<double>> values(matrix.nodes(),
                                            std::vector<double>(matrix.nodes()));
    for (int i = 0; i < matrix.nodes(); ++i)
        for (int j = 0; j < matrix.nodes(); ++j) values[i][j] = matrix.distance(i, j);
    inst.metric_mode = mppc::MetricMode::matrix;
    inst.matrix = std::move(values);
}

// Optional --metric override rewriting the instance's declared mode.
void apply_metric_mode(mppc::Instance& inst, const std::string& mode) {
    if (mode.empty()) return;
    const auto parsed = mppc::metric_mode_from_string(mode);
    if (parsed == mppc::MetricMode::matrix && !inst.matrix)
        throw mppc::ValidationError("--metric matrix requires a matrix in the instance");
    inst.metric_mode = parsed;
}

// Structured-text dump of the decomposition algorithm 3 would use.
void write_wspd_dump(const mppc::Instance& inst, std::optional<double> separation,
                     std::optional<int> target_m, const std::string& path) {
    std::vector<mppc::Point> points;
    points.reserve(inst.sites.size());
    for (const auto& site : inst.sites) points.push_back({site.x, site.y});

    nlohmann::json doc;
    double s;
    if (separation) {
        s = *separation;
        doc["calibrated"] = false;
    } else {
        const int target = target_m.value_or(std::max(
            1, static_cast<int>(std::ceil(inst.total_quantity() / inst.capacity))));
        const auto calibration = mppc::calibrate_separation(points, target);
        s = calibration.separation;
        doc["calibrated"] = true;
        doc["target_m"] = target;
        doc["clamped"] = calibration.clamped;
    }
    doc["separation"] = s;
    doc["pairs"] = nlohmann::json::array();
    const mppc::SplitTree tree(points);
    for (const auto& pair : mppc::compute_wspd(tree, s))
        doc["pairs"].push_back({{"a", pair.a}, {"b", pair.b}});
    write_text_file(path, doc.dump(2) + "\n");
}

mppc::EvaluationReport make_report(const mppc::Instance& inst, const std::string& algorithm,
                                   const mppc::SolveResult& result, std::int64_t time_ms) {
    const mppc::DistanceMatrix matrix = mppc::build_metric(inst);
    auto report = mppc::EvaluationReport::make(inst.name, inst.n(), result.solution.profit,
                                               mppc::upper_bound(inst, matrix), time_ms,
                                               inst.horizon, algorithm);
    report.flags = result.diagnostics.flags;
    for (int site : result.diagnostics.uncovered_sites)
        report.flags.push_back("uncovered_site_" + std::to_string(site));
    for (const auto& route : result.solution.routes)
        report.route_diagnostics.push_back({route.vehicle,
                                            static_cast<int>(route.visits.size()),
                                            route.load, route.cost, route.profit()});
    return report;
}

struct SolveOptions {
    std::string algorithm = "1";
    std::string in_path;
    std::string out_path;
    std::string report_path;
    std::string cache_path;
    std::string metric_mode;
    std::string wspd_dump_path;
    std::string packer;
    bool no_aptas_fallback = false;
    std::string strategy = "exact";
    double epsilon = 0.5;
    double p = 6.0;
    double alpha = 1.0;
    std::optional<double> separation;
    std::optional<int> target_m;
    int max_exact_subset = 16;
    std::uint64_t seed = 0;

    mppc::SolverConfig config() const {
        mppc::SolverConfig cfg;
        cfg.algorithm = mppc::algorithm_from_string(algorithm);
        cfg.epsilon = epsilon;
        cfg.p = p;
        cfg.alpha = alpha;
        cfg.strategy = mppc::strategy_from_string(strategy);
        cfg.separation_override = separation;
        if (!packer.empty()) cfg.packer_override = mppc::packer_from_string(packer);
        cfg.allow_aptas_fallback = !no_aptas_fallback;
        cfg.max_exact_subset = max_exact_subset;
        cfg.seed = seed;
        return cfg;
    }
};

void add_solver_flags(CLI::App* cmd, SolveOptions& opt) {
    cmd->add_option("--epsilon", opt.epsilon, "Assumption 2 epsilon")
        ->envname("MPPC_EPSILON");
    cmd->add_option("--p", opt.p, "quantity growth exponent p")->envname("MPPC_P");
    cmd->add_option("--alpha", opt.alpha, "Assumption 3 alpha")->envname("MPPC_ALPHA");
    cmd->add_option("--strategy", opt.strategy,
                    "orienteering strategy: exact, insertion or bucketed")
        ->envname("MPPC_STRATEGY");
    cmd->add_option("--max-exact-subset", opt.max_exact_subset,
                    "exact/heuristic crossover size")
        ->envname("MPPC_MAX_EXACT_SUBSET");
    cmd->add_option("--directions-cache", opt.cache_path,
                    "offline directions cache replacing the instance metric")
        ->envname("MPPC_DIRECTIONS_CACHE");
    cmd->add_option("--metric", opt.metric_mode,
                    "override the instance metric mode (euclidean or haversine)")
        ->envname("MPPC_METRIC");
    cmd->add_option("--packer", opt.packer,
                    "override the packing step: ffd, mffd, aptas or exact")
        ->envname("MPPC_PACKER");
    cmd->add_flag("--no-aptas-fallback", opt.no_aptas_fallback,
                  "fail instead of falling back to MFFD when the APTAS budget is hit");
}

int run_generate(const mppc::GeneratorSpec& spec, const std::string& out_path,
                 double epsilon) {
    mppc::Instance inst = mppc::generate_instance(spec);
    const mppc::DistanceMatrix matrix = mppc::build_metric(inst);
    const auto report =
        mppc::validate_assumptions(inst, matrix, {epsilon, 6.0, 1.0});
    if (report.a2.status == mppc::AssumptionStatus::violated)
        std::cerr << "warning: generated instance violates Assumption 2 at epsilon "
                  << epsilon << " (" << report.a2.witness << ")\n";
    if (out_path.empty())
        std::cout << mppc::serialize_instance(inst);
    else
        mppc::save_instance_file(inst, out_path);
    return kExitOk;
}

int run_solve(const SolveOptions& opt) {
    mppc::Instance inst = mppc::load_instance_file(opt.in_path);
    apply_metric_mode(inst, opt.metric_mode);
    if (!opt.cache_path.empty()) apply_directions_cache(inst, opt.cache_path);
    if (!opt.wspd_dump_path.empty())
        write_wspd_dump(inst, opt.separation, opt.target_m, opt.wspd_dump_path);

    const auto cfg = opt.config();
    const auto start = Clock::now();
    const mppc::SolveResult result = mppc::run_pipeline(inst, cfg);
    const auto time_ms = elapsed_ms(start);

    mppc::SolutionDocument doc{inst.name, mppc::to_string(cfg.algorithm), result.solution};
    if (opt.out_path.empty())
        std::cout << mppc::serialize_solution(doc);
    else
        mppc::save_solution_file(doc, opt.out_path);

    const auto report = make_report(inst, mppc::to_string(cfg.algorithm), result, time_ms);
    const auto rendered = mppc::render_report({report});
    std::cerr << rendered.text;
    if (!opt.report_path.empty()) write_text_file(opt.report_path, rendered.json);
    return kExitOk;
}

int run_validate(const std::string& in_path, const std::string& solution_path,
                 const std::string& cache_path, double epsilon, double p, double alpha) {
    mppc::Instance inst = mppc::load_instance_file(in_path);
    if (!cache_path.empty()) apply_directions_cache(inst, cache_path);
    const mppc::DistanceMatrix matrix = mppc::build_metric(inst);

    const auto report = mppc::validate_assumptions(inst, matrix, {epsilon, p, alpha});
    std::cout << "instance " << inst.name << ": valid, n = " << inst.n() << "\n";
    std::cout << "assumption 1: " << mppc::to_string(report.a1.status) << " ("
              << report.a1.witness << ")\n";
    std::cout << "assumption 2: " << mppc::to_string(report.a2.status) << " ("
              << report.a2.witness << ")\n";
    std::cout << "assumption 3: " << mppc::to_string(report.a3.status) << " ("
              << report.a3.witness << ")\n";

    if (!solution_path.empty()) {
        const auto doc = mppc::load_solution_file(solution_path);
        const auto violations = mppc::check_feasibility(inst, doc.solution, &matrix);
        if (!violations.empty()) {
            for (const auto& v : violations) std::cerr << v.describe() << "\n";
            return kExitValidation;
        }
        std::cout << "solution: feasible, profit "
                  << mppc::compute_profit(inst, doc.solution, &matrix) << "\n";
    }
    return kExitOk;
}

int run_evaluate(const std::string& in_path, const std::string& solution_path,
                 const std::string& cache_path, const std::string& json_path) {
    mppc::Instance inst = mppc::load_instance_file(in_path);
    if (!cache_path.empty()) apply_directions_cache(inst, cache_path);
    const mppc::DistanceMatrix matrix = mppc::build_metric(inst);
    const auto doc = mppc::load_solution_file(solution_path);

    const auto violations = mppc::check_feasibility(inst, doc.solution, &matrix);
    if (!violations.empty()) {
        std::cerr << "solution is infeasible:\n";
        for (const auto& v : violations) std::cerr << "  " << v.describe() << "\n";
        return kExitValidation;
    }

    const double profit = mppc::compute_profit(inst, doc.solution, &matrix);
    auto report = mppc::EvaluationReport::make(inst.name, inst.n(), profit,
                                               mppc::upper_bound(inst, matrix), 0,
                                               inst.horizon, doc.algorithm);
    for (const auto& route : doc.solution.routes) {
        const auto timed = mppc::timed_route(inst, matrix, route.visits, route.vehicle);
        report.route_diagnostics.push_back({timed.vehicle,
                                            static_cast<int>(timed.visits.size()),
                                            timed.load, timed.cost, timed.profit()});
    }
    const auto rendered = mppc::render_report({report});
    std::cout << rendered.text;
    if (!json_path.empty()) write_text_file(json_path, rendered.json);
    return kExitOk;
}

int run_bench(const std::string& suite_dir, const std::string& algorithms,
              const SolveOptions& base, int jobs, const std::string& out_path) {
    if (!base.cache_path.empty())
        throw mppc::ParameterError("--directions-cache applies to one instance; use solve");
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(suite_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw mppc::ParameterError("no .json instances in " + suite_dir);

    std::vector<mppc::Algorithm> algs;
    if (algorithms == "all")
        algs = {mppc::Algorithm::alg1, mppc::Algorithm::alg2, mppc::Algorithm::alg3};
    else
        algs = {mppc::algorithm_from_string(algorithms)};

    struct Task {
        std::string file;
        mppc::Algorithm algorithm;
    };
    std::vector<Task> tasks;
    for (const auto& file : files)
        for (auto alg : algs) tasks.push_back({file, alg});

    std::vector<mppc::EvaluationReport> reports(tasks.size());
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (true) {
            const std::size_t index = cursor.fetch_add(1);
            if (index >= tasks.size()) return;
            try {
                mppc::Instance inst = mppc::load_instance_file(tasks[index].file);
                apply_metric_mode(inst, base.metric_mode);
                auto cfg = base.config();
                cfg.algorithm = tasks[index].algorithm;
                const auto start = Clock::now();
                const auto result = mppc::run_pipeline(inst, cfg);
                reports[index] =
                    make_report(inst, mppc::to_string(cfg.algorithm), result,
                                elapsed_ms(start));
            } catch (const std::exception& e) {
                std::scoped_lock lock(error_mutex);
                if (!failed.exchange(true))
                    first_error = tasks[index].file + ": " + e.what();
            }
        }
    };

    const int worker_count = std::max(1, jobs);
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (failed) throw mppc::Error("bench failed on " + first_error);

    const auto rendered = mppc::render_report(reports);
    std::cout << rendered.text;
    if (!out_path.empty()) write_text_file(out_path, rendered.json);
    return kExitOk;
}

int run_export_geojson(const std::string& in_path, const std::string& solution_path,
                       const std::string& cache_path, const std::string& out_path) {
    mppc::Instance inst = mppc::load_instance_file(in_path);
    if (!cache_path.empty()) apply_directions_cache(inst, cache_path);
    const auto doc = mppc::load_solution_file(solution_path);
    const std::string geojson = mppc::export_geojson(inst, doc.solution);
    if (out_path.empty())
        std::cout << geojson;
    else
        write_text_file(out_path, geojson);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"profit-maximizing pickup tours under time windows and capacity"};
    app.require_subcommand(1);

    // generate
    mppc::GeneratorSpec gen_spec;
    std::string gen_out;
    double gen_epsilon = 0.5;
    auto* generate = app.add_subcommand("generate", "generate a random instance");
    generate->add_option("--n", gen_spec.n, "number of sites")->envname("MPPC_N");
    generate->add_option("--horizon", gen_spec.horizon, "time horizon T")
        ->envname("MPPC_HORIZON");
    generate->add_option("--box", gen_spec.box_size, "coordinate box side (km)")
        ->envname("MPPC_BOX");
    generate->add_option("--q-lo", gen_spec.q_lo, "minimum quantity");
    generate->add_option("--q-hi", gen_spec.q_hi, "maximum quantity");
    generate->add_option("--capacity", gen_spec.capacity, "vehicle capacity Q")
        ->envname("MPPC_CAPACITY");
    generate->add_option("--speed", gen_spec.speed, "vehicle speed (km per time unit)")
        ->envname("MPPC_SPEED");
    generate->add_option("--seed", gen_spec.seed, "random seed")->envname("MPPC_SEED");
    generate->add_option("--name", gen_spec.name, "instance name");
    generate->add_option("--epsilon", gen_epsilon,
                         "epsilon used for the Assumption 2 warning");
    generate->add_option("--out", gen_out, "output instance file (stdout when omitted)");

    // solve
    SolveOptions solve_opt;
    auto* solve = app.add_subcommand("solve", "run one approximation pipeline");
    solve->add_option("--algorithm", solve_opt.algorithm, "pipeline: 1, 2 or 3")
        ->envname("MPPC_ALGORITHM");
    solve->add_option("--in", solve_opt.in_path, "instance file")->required();
    solve->add_option("--out", solve_opt.out_path, "solution file (stdout when omitted)");
    solve->add_option("--report", solve_opt.report_path, "evaluation report JSON file");
    solve->add_option("--s", solve_opt.separation, "WSPD separation override (algorithm 3)")
        ->envname("MPPC_S");
    solve->add_option("--target-m", solve_opt.target_m,
                      "pair-count target for the WSPD dump (defaults to ceil(sum q / Q))");
    solve->add_option("--wspd-dump", solve_opt.wspd_dump_path,
                      "write the pair decomposition as a JSON debug artifact");
    add_solver_flags(solve, solve_opt);

    // validate
    std::string val_in, val_solution, val_cache;
    double val_epsilon = 0.5, val_p = 6.0, val_alpha = 1.0;
    auto* validate = app.add_subcommand("validate", "validate an instance and assumptions");
    validate->add_option("--in", val_in, "instance file")->required();
    validate->add_option("--solution", val_solution, "solution file to check");
    validate->add_option("--directions-cache", val_cache, "offline directions cache");
    validate->add_option("--epsilon", val_epsilon, "Assumption 2 epsilon");
    validate->add_option("--p", val_p, "quantity growth exponent p");
    validate->add_option("--alpha", val_alpha, "Assumption 3 alpha");

    // evaluate
    std::string eval_in, eval_solution, eval_cache, eval_json;
    auto* evaluate = app.add_subcommand("evaluate", "report P, U and rho for a solution");
    evaluate->add_option("--in", eval_in, "instance file")->required();
    evaluate->add_option("--solution", eval_solution, "solution file")->required();
    evaluate->add_option("--directions-cache", eval_cache, "offline directions cache");
    evaluate->add_option("--json", eval_json, "machine-readable report file");

    // bench
    SolveOptions bench_opt;
    std::string bench_suite, bench_algorithms = "all", bench_out;
    int bench_jobs = 1;
    auto* bench = app.add_subcommand("bench", "run pipelines over an instance directory");
    bench->add_option("--suite", bench_suite, "directory of instance files")->required();
    bench->add_option("--algorithm", bench_algorithms, "all, 1, 2 or 3");
    bench->add_option("--jobs", bench_jobs, "parallel workers")->envname("MPPC_JOBS");
    bench->add_option("--out", bench_out, "report JSON file");
    add_solver_flags(bench, bench_opt);

    // export-geojson
    std::string geo_in, geo_solution, geo_cache, geo_out;
    auto* geo = app.add_subcommand("export-geojson", "emit sites and routes as GeoJSON");
    geo->add_option("--in", geo_in, "instance file")->required();
    geo->add_option("--solution", geo_solution, "solution file")->required();
    geo->add_option("--directions-cache", geo_cache, "offline directions cache");
    geo->add_option("--out", geo_out, "output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) return run_generate(gen_spec, gen_out, gen_epsilon);
        if (solve->parsed()) return run_solve(solve_opt);
        if (validate->parsed())
            return run_validate(val_in, val_solution, val_cache, val_epsilon, val_p,
                                val_alpha);
        if (evaluate->parsed()) return run_evaluate(eval_in, eval_solution, eval_cache,
                                                    eval_json);
        if (bench->parsed())
            return run_bench(bench_suite, bench_algorithms, bench_opt, bench_jobs,
                             bench_out);
        if (geo->parsed())
            return run_export_geojson(geo_in, geo_solution, geo_cache, geo_out);
    } catch (const mppc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const mppc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitUsage;
}
