#include "snoop/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>

#include "snoop/density.hpp"
#include "snoop/draw_csv.hpp"
#include "snoop/errors.hpp"
#include "snoop/format.hpp"
#include "snoop/normality.hpp"
#include "snoop/snoopsim.hpp"
#include "snoop/uniformity.hpp"

namespace snoop::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string exact(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Resolved parameters of one invocation. `args` re-creates the run through `replay`.
struct RunManifest {
    std::string command;
    std::vector<std::string> args;
    json config = json::object();
    std::optional<std::uint64_t> seed;

    json to_json() const {
        json j{{"command", command},
               {"args", args},
               {"config", config},
               {"tool_version", std::string(kToolVersion)},
               {"timestamp", utc_timestamp()}};
        j["seed"] = seed ? json(*seed) : json(nullptr);
        return j;
    }

    void add(const std::string& flag, const std::string& value, json echo) {
        args.push_back(flag);
        args.push_back(value);
        config[flag.substr(2)] = std::move(echo);
    }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write '" + path + "'");
    f << content;
    if (!f) throw DataError("failed writing '" + path + "'");
}

void emit_manifest(const RunManifest& manifest, const std::string& out_prefix, std::ostream& err) {
    if (out_prefix.empty()) {
        err << "manifest: " << manifest.to_json().dump() << '\n';
    } else {
        write_file(out_prefix + "manifest.json", manifest.to_json().dump(2) + "\n");
    }
}

std::string read_input(const std::string& path) {
    try {
        return lottery::read_text_file(path);
    } catch (const std::runtime_error& e) {
        throw DataError(e.what());
    }
}

std::string with_path(const std::string& path, const ParseError& e) { return path + ": " + e.what(); }

void check_lottery(int pool_size, int draw_size) {
    if (pool_size < 2 || draw_size < 1 || draw_size >= pool_size) {
        throw UsageError("--draw-size K and --pool-size V must satisfy 1 <= K < V");
    }
}

// ---------------------------------------------------------------------------------------------

struct TestNumberOptions {
    std::string csv;
    std::string summary;
    int m = 0;
    int pool_size = 49;
    int draw_size = 6;
    std::string side = "left";
    std::string out;
};

void run_test_number(const TestNumberOptions& o, bool draw_size_given, std::ostream& out, std::ostream& err) {
    if (o.csv.empty() == o.summary.empty()) throw UsageError("exactly one of --csv or --summary is required");
    check_lottery(o.pool_size, o.draw_size);
    if (o.m < 1 || o.m > o.pool_size) {
        throw UsageError("--m must lie in 1.." + std::to_string(o.pool_size) + ", got " + std::to_string(o.m));
    }
    uniformity::Side side;
    try {
        side = uniformity::parse_side(o.side);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }

    std::int64_t count = 0, n = 0;
    int k = o.draw_size;
    if (!o.csv.empty()) {
        const auto text = read_input(o.csv);
        try {
            const auto history = lottery::parse_draw_csv(text, o.pool_size);
            if (draw_size_given && history.config().draw_size != o.draw_size) {
                throw UsageError("--draw-size disagrees with the " + std::to_string(history.config().draw_size) +
                                 " number columns in " + o.csv);
            }
            k = history.config().draw_size;
            const auto counts = lottery::counts_from_history(history);
            count = counts[o.m];
            n = counts.total();
        } catch (const ParseError& e) {
            throw DataError(with_path(o.csv, e));
        }
    } else {
        const auto text = read_input(o.summary);
        try {
            const auto summary = lottery::parse_summary_csv(text);
            const auto it = summary.counts.find(o.m);
            if (it == summary.counts.end()) throw DataError(o.summary + ": no count for number " + std::to_string(o.m));
            count = it->second;
            n = summary.total;
        } catch (const ParseError& e) {
            throw DataError(with_path(o.summary, e));
        }
    }
    if (n < 1) throw DataError("sample is empty");

    const uniformity::NullModel model{o.pool_size, k, n};
    const auto r = uniformity::z_test_number(count, model, side);

    out << "Single-number test: m = " << o.m << ", V = " << o.pool_size << ", K = " << k
        << ", side = " << uniformity::to_string(side) << '\n';
    out << "  S_m = " << count << ", n = " << n << ", expected = " << format_fixed(model.expected_count(), 2) << '\n';
    out << "  classical (iid):   Z = " << format_fixed(r.statistic_iid, 4) << "  p = " << format_fixed(r.p_value_iid, 4)
        << '\n';
    out << "  corrected (K = " << k << "): Z = " << format_fixed(r.statistic_corrected, 4)
        << "  p = " << format_fixed(r.p_value, 4) << " (" << format_fixed(100.0 * r.p_value, 3) << "%)\n";
    out << "\nWARNING: this p-value is valid only if m = " << o.m
        << " was fixed before the data were inspected.\n"
           "If m was picked because its count looked extreme, the naive p-value is invalid. The\n"
           "corrected p-value for the selected minimum is P(Z_min <= Z); compute it with\n"
           "  snoop simulate-zmin --correct-p "
        << format_fixed(r.statistic_corrected, 4) << "\n";

    RunManifest manifest{"test-number", {}, json::object(), std::nullopt};
    if (!o.csv.empty()) manifest.add("--csv", o.csv, o.csv);
    if (!o.summary.empty()) manifest.add("--summary", o.summary, o.summary);
    manifest.add("--m", std::to_string(o.m), o.m);
    manifest.add("--pool-size", std::to_string(o.pool_size), o.pool_size);
    manifest.add("--draw-size", std::to_string(k), k);
    manifest.add("--side", std::string(uniformity::to_string(side)), std::string(uniformity::to_string(side)));

    if (!o.out.empty()) {
        manifest.add("--out", o.out, o.out);
        std::ostringstream csv;
        csv << "m,count,n,expected,sigma_iid,sigma_k,z_iid,z_corrected,side,p_value_iid,p_value\n"
            << o.m << ',' << count << ',' << n << ',' << format_real(model.expected_count()) << ','
            << format_real(r.sigma_iid) << ',' << format_real(r.sigma_k) << ',' << format_real(r.statistic_iid) << ','
            << format_real(r.statistic_corrected) << ',' << uniformity::to_string(side) << ','
            << format_probability(r.p_value_iid) << ',' << format_probability(r.p_value) << '\n';
        write_file(o.out + "test_number.csv", csv.str());
    }
    emit_manifest(manifest, o.out, err);
}

// ---------------------------------------------------------------------------------------------

struct TestUniformityOptions {
    std::string csv;
    std::string summary;
    std::string sample = "all";
    int pool_size = 49;
    int draw_size = 6;
    std::string out;
};

void run_test_uniformity(const TestUniformityOptions& o, std::ostream& out, std::ostream& err) {
    if (o.csv.empty() == o.summary.empty()) throw UsageError("exactly one of --csv or --summary is required");
    check_lottery(o.pool_size, o.draw_size);
    uniformity::ReportRows rows;
    if (o.sample == "I") rows = {true, false, false};
    else if (o.sample == "II") rows = {false, true, false};
    else if (o.sample == "III") rows = {false, false, true};
    else if (o.sample != "all") throw UsageError("--sample must be one of I, II, III, all");

    RunManifest manifest{"test-uniformity", {}, json::object(), std::nullopt};
    uniformity::SampleChainReport report;
    if (!o.csv.empty()) {
        const auto text = read_input(o.csv);
        try {
            const auto history = lottery::parse_draw_csv(text, o.pool_size);
            report = uniformity::sample_chain_report(history);
        } catch (const ParseError& e) {
            throw DataError(with_path(o.csv, e));
        }
        if ((o.sample == "II" && !report.mixed) || (o.sample == "III" && !report.additional_only)) {
            throw DataError("sample " + o.sample + " unavailable: the history has no additional numbers");
        }
        manifest.add("--csv", o.csv, o.csv);
    } else {
        if (o.sample != "I") throw UsageError("--summary supports only --sample I");
        const auto text = read_input(o.summary);
        try {
            const auto counts = lottery::parse_summary_csv(text).to_count_vector(o.pool_size);
            report.pool_size = o.pool_size;
            report.draw_size = o.draw_size;
            report.main = uniformity::pearson_test(counts, {o.pool_size, o.draw_size, counts.total()});
        } catch (const ParseError& e) {
            throw DataError(with_path(o.summary, e));
        } catch (const DomainError& e) {
            throw DataError(o.summary + ": " + e.what());
        }
        manifest.add("--summary", o.summary, o.summary);
        manifest.add("--draw-size", std::to_string(o.draw_size), o.draw_size);
    }
    manifest.add("--sample", o.sample, o.sample);
    manifest.add("--pool-size", std::to_string(o.pool_size), o.pool_size);

    uniformity::write_report_table(out, report, rows);
    if (!o.out.empty()) {
        manifest.add("--out", o.out, o.out);
        std::ostringstream csv;
        uniformity::write_report_csv(csv, report, rows);
        write_file(o.out + "uniformity.csv", csv.str());
    }
    emit_manifest(manifest, o.out, err);
}

// ---------------------------------------------------------------------------------------------

struct ZminOptions {
    std::size_t replications = 10000;
    std::int64_t games = 10000;
    int pool_size = 49;
    int draw_size = 6;
    std::uint64_t seed = sim::kDefaultSeed;
    std::string out = "zmin_";
    std::optional<double> correct_p;
    std::vector<double> alphas{0.01, 0.05, 0.10};
    unsigned workers = 0;
    std::size_t grid_points = 401;
};

void run_simulate_zmin(const ZminOptions& o, std::ostream& out, std::ostream& err) {
    check_lottery(o.pool_size, o.draw_size);
    if (o.games < 1) throw UsageError("--games must be positive");
    if (o.replications < sim::kMinReplications) {
        throw UsageError("--replications must be at least " + std::to_string(sim::kMinReplications));
    }
    if (o.grid_points < 2) throw UsageError("--grid-points must be at least 2");
    for (double a : o.alphas) {
        if (!(a > 0.0 && a < 1.0)) throw UsageError("--alpha values must lie in (0, 1)");
    }
    if (o.out.empty()) throw UsageError("--out prefix must not be empty");

    sim::SimulationConfig config;
    config.replications = o.replications;
    config.seed = o.seed;
    config.lottery = {o.pool_size, o.draw_size, o.games};
    config.workers = o.workers;

    const auto dist = sim::simulate_zmin(config);
    const auto table = sim::size_distortion_table(dist, o.alphas);

    const double h = dist::silverman_bandwidth(dist.values());
    const auto grid = dist::linear_grid(dist.min() - 3.0 * h, dist.max() + 3.0 * h, o.grid_points);
    const auto density = dist::kde_density(dist.values(), grid, h);

    out << "Z_min simulation: R = " << o.replications << ", N = " << o.games << ", V = " << o.pool_size
        << ", K = " << o.draw_size << ", seed = " << o.seed << '\n';
    out << "  alpha     z_alpha    P(Z_min <= z_alpha)   MC s.e.   inflation\n";
    for (const auto& e : table) {
        out << "  " << std::left << std::setw(10) << format_fixed(e.alpha, 4) << std::setw(11)
            << format_fixed(e.critical, 4) << std::setw(22) << format_fixed(e.rejection, 4) << std::setw(10)
            << format_fixed(e.standard_error, 4) << format_fixed(e.inflation, 2) << std::right << '\n';
    }
    out << "  density mode = " << format_fixed(density.mode(), 3) << " (bandwidth " << format_fixed(h, 4) << ")\n";
    if (o.correct_p) {
        const double p = sim::corrected_p_value(dist, *o.correct_p);
        out << "corrected p-value P(Z_min <= " << format_fixed(*o.correct_p, 4) << ") = " << format_fixed(p, 4)
            << " (MC s.e. " << format_fixed(sim::mc_standard_error(p, dist.size()), 4) << ")\n";
    }

    std::ostringstream values_csv, density_csv, distortion_csv;
    dist.write_csv(values_csv);
    dist::write_density_csv(density_csv, density);
    sim::write_distortion_csv(distortion_csv, table);
    write_file(o.out + "values.csv", values_csv.str());
    write_file(o.out + "density.csv", density_csv.str());
    write_file(o.out + "distortion.csv", distortion_csv.str());

    RunManifest manifest{"simulate-zmin", {}, json::object(), o.seed};
    manifest.add("--replications", std::to_string(o.replications), o.replications);
    manifest.add("--games", std::to_string(o.games), o.games);
    manifest.add("--pool-size", std::to_string(o.pool_size), o.pool_size);
    manifest.add("--draw-size", std::to_string(o.draw_size), o.draw_size);
    manifest.add("--seed", std::to_string(o.seed), o.seed);
    manifest.add("--grid-points", std::to_string(o.grid_points), o.grid_points);
    for (double a : o.alphas) manifest.args.insert(manifest.args.end(), {"--alpha", exact(a)});
    manifest.config["alpha"] = o.alphas;
    if (o.correct_p) manifest.add("--correct-p", exact(*o.correct_p), *o.correct_p);
    manifest.add("--out", o.out, o.out);
    emit_manifest(manifest, o.out, err);
}

// ---------------------------------------------------------------------------------------------

struct NormalityOptions {
    std::size_t replications = 100000;
    bool full = false;
    std::size_t sample_size = 1000;
    double alpha = 0.05;
    std::string alternative = "t10";
    std::uint64_t seed = sim::kDefaultSeed;
    std::string out = "normality_";
    std::optional<double> analytic_sizes;
    unsigned workers = 0;
};

void run_normality(const NormalityOptions& o, bool replications_given, std::ostream& out, std::ostream& err) {
    if (o.out.empty()) throw UsageError("--out prefix must not be empty");
    RunManifest manifest{"normality", {}, json::object(), std::nullopt};
    if (o.analytic_sizes) {
        const double a = *o.analytic_sizes;
        if (!(a >= 0.0 && a <= 1.0)) throw UsageError("--analytic-sizes must lie in [0, 1]");
        const auto s = normality::analytic_snoop_size(a);
        out << "analytic sizes at alpha = " << format_fixed(a, 4) << " (independent skewness and kurtosis tests)\n"
            << "  Gamma_max^2: 2a - a^2 = " << format_fixed(s.size_max, 4) << '\n'
            << "  Gamma_min^2: a^2      = " << format_fixed(s.size_min, 4) << '\n';
        manifest.add("--analytic-sizes", exact(a), a);
        emit_manifest(manifest, "", err);
        return;
    }
    if (o.full && replications_given) throw UsageError("--full and --replications are mutually exclusive");
    if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
    if (o.sample_size < 4) throw UsageError("--sample-size must be at least 4");

    sim::SimulationConfig config;
    config.replications = o.full ? 1000000 : o.replications;
    if (config.replications < sim::kMinReplications) {
        throw UsageError("--replications must be at least " + std::to_string(sim::kMinReplications));
    }
    config.seed = o.seed;
    config.sample_size = o.sample_size;
    config.workers = o.workers;
    try {
        config.alternative = sim::Alternative::parse(o.alternative);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }

    const auto table = sim::normality_size_power(config, o.alpha);
    sim::write_size_power_console(out, table);
    std::ostringstream csv;
    sim::write_size_power_csv(csv, table);
    write_file(o.out + "table.csv", csv.str());

    manifest.seed = o.seed;
    manifest.add("--replications", std::to_string(config.replications), config.replications);
    manifest.add("--sample-size", std::to_string(o.sample_size), o.sample_size);
    manifest.add("--alpha", exact(o.alpha), o.alpha);
    manifest.add("--alternative", config.alternative.name(), config.alternative.name());
    manifest.add("--seed", std::to_string(o.seed), o.seed);
    manifest.add("--out", o.out, o.out);
    emit_manifest(manifest, o.out, err);
}

// ---------------------------------------------------------------------------------------------

int report_error(std::ostream& err, const char* kind, const std::exception& e, int code) {
    err << "error (" << kind << "): " << e.what() << '\n';
    return code;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Snooping-aware uniformity and normality tests with Monte Carlo size studies", "snoop"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    TestNumberOptions tn;
    auto* test_number = app.add_subcommand("test-number", "Corrected single-number test for one lottery number");
    test_number->add_option("--csv", tn.csv, "Draw archive (date,n1..nK,add)");
    test_number->add_option("--summary", tn.summary, "Summary counts (m,count rows plus total,n)");
    test_number->add_option("--m", tn.m, "Number to test")->required();
    test_number->add_option("--pool-size", tn.pool_size, "Pool size V")->capture_default_str();
    auto* tn_k = test_number->add_option("--draw-size", tn.draw_size, "Balls per game K")->capture_default_str();
    test_number->add_option("--side", tn.side, "left, right or two-sided")->capture_default_str();
    test_number->add_option("--out", tn.out, "Output prefix for result CSV and manifest");

    TestUniformityOptions tu;
    auto* test_uniformity = app.add_subcommand("test-uniformity", "Corrected Pearson tests for samples I, II, III");
    test_uniformity->add_option("--csv", tu.csv, "Draw archive (date,n1..nK,add)");
    test_uniformity->add_option("--summary", tu.summary, "Complete summary counts (sample I only)");
    test_uniformity->add_option("--sample", tu.sample, "I, II, III or all")->capture_default_str();
    test_uniformity->add_option("--pool-size", tu.pool_size, "Pool size V")->capture_default_str();
    test_uniformity->add_option("--draw-size", tu.draw_size, "Balls per game K (summary input)")->capture_default_str();
    test_uniformity->add_option("--out", tu.out, "Output prefix for report CSV and manifest");

    ZminOptions zm;
    auto* zmin = app.add_subcommand("simulate-zmin", "Simulate the standardized minimum count under uniformity");
    zmin->add_option("--replications", zm.replications, "Monte Carlo replications R")->capture_default_str();
    zmin->add_option("--games", zm.games, "Games per replication N")->capture_default_str();
    zmin->add_option("--pool-size", zm.pool_size, "Pool size V")->capture_default_str();
    zmin->add_option("--draw-size", zm.draw_size, "Balls per game K")->capture_default_str();
    zmin->add_option("--seed", zm.seed, "Random seed")->capture_default_str();
    zmin->add_option("--out", zm.out, "Output file prefix")->capture_default_str();
    zmin->add_option("--correct-p", zm.correct_p, "Observed Z to correct for selecting the minimum");
    zmin->add_option("--alpha", zm.alphas, "Nominal levels for the distortion table")->capture_default_str();
    zmin->add_option("--workers", zm.workers, "Worker threads (0 = all cores)");
    zmin->add_option("--grid-points", zm.grid_points, "Density grid size")->capture_default_str();

    NormalityOptions nm;
    auto* norm = app.add_subcommand("normality", "Size and power of skewness/kurtosis/JB tests and snooping selectors");
    auto* nm_reps = norm->add_option("--replications", nm.replications, "Monte Carlo replications R")->capture_default_str();
    norm->add_flag("--full", nm.full, "Use 10^6 replications");
    norm->add_option("--sample-size", nm.sample_size, "Observations per replication n")->capture_default_str();
    norm->add_option("--alpha", nm.alpha, "Nominal level")->capture_default_str();
    norm->add_option("--alternative", nm.alternative, "gaussian or t<df>")->capture_default_str();
    norm->add_option("--seed", nm.seed, "Random seed")->capture_default_str();
    norm->add_option("--out", nm.out, "Output file prefix")->capture_default_str();
    norm->add_option("--analytic-sizes", nm.analytic_sizes, "Print 2a - a^2 and a^2 for this alpha and exit");
    norm->add_option("--workers", nm.workers, "Worker threads (0 = all cores)");

    std::string manifest_path;
    std::string replay_out;
    auto* replay = app.add_subcommand("replay", "Re-run a command from its manifest");
    replay->add_option("manifest", manifest_path, "manifest.json written by a previous run")->required();
    replay->add_option("--out", replay_out, "Override the output prefix");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*test_number) run_test_number(tn, tn_k->count() > 0, out, err);
        else if (*test_uniformity) run_test_uniformity(tu, out, err);
        else if (*zmin) run_simulate_zmin(zm, out, err);
        else if (*norm) run_normality(nm, nm_reps->count() > 0, out, err);
        else if (*replay) {
            json manifest;
            try {
                manifest = json::parse(read_input(manifest_path));
            } catch (const json::exception& e) {
                throw DataError(manifest_path + ": " + e.what());
            }
            if (!manifest.contains("command") || !manifest.contains("args")) {
                throw DataError(manifest_path + ": not a run manifest");
            }
            std::vector<std::string> rerun{manifest["command"].get<std::string>()};
            const auto stored = manifest["args"].get<std::vector<std::string>>();
            bool replaced = false;
            for (std::size_t i = 0; i < stored.size(); ++i) {
                rerun.push_back(stored[i]);
                if (stored[i] == "--out" && i + 1 < stored.size() && !replay_out.empty()) {
                    rerun.push_back(replay_out);
                    ++i;
                    replaced = true;
                }
            }
            if (!replay_out.empty() && !replaced) rerun.insert(rerun.end(), {"--out", replay_out});
            return run_cli(std::move(rerun), out, err);
        }
    } catch (const UsageError& e) {
        return report_error(err, "usage", e, kUsage);
    } catch (const DataError& e) {
        return report_error(err, "data", e, kDataError);
    } catch (const ParseError& e) {
        return report_error(err, "data", e, kDataError);
    } catch (const EmptySampleError& e) {
        return report_error(err, "data", e, kDataError);
    } catch (const NumericalError& e) {
        return report_error(err, "numerical", e, kNumericalFailure);
    } catch (const DomainError& e) {
        return report_error(err, "numerical", e, kNumericalFailure);
    }
    return kSuccess;
}

}  // namespace snoop::cli
