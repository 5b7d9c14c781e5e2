#include "snoop/snoopsim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <thread>

#include "snoop/distributions.hpp"
#include "snoop/errors.hpp"
#include "snoop/format.hpp"

namespace snoop::sim {

namespace {

unsigned resolve_workers(unsigned requested, std::size_t jobs) {
    unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(jobs, 1)));
}

// Runs body(begin, end) over contiguous chunks of [0, count). Each index is processed exactly
// once; callers write results into per-index slots, so the outcome is independent of `workers`.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body body) {
    workers = resolve_workers(workers, count);
    if (workers == 1) {
        body(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(count, w * chunk);
        const std::size_t end = std::min(count, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

void check_replications(std::size_t r) {
    if (r < kMinReplications) {
        throw DomainError("replications must be at least " + std::to_string(kMinReplications));
    }
}

constexpr std::uint32_t kNullLane = 0;
constexpr std::uint32_t kAlternativeLane = 2;
constexpr std::uint32_t kAlternativeDenominatorLane = 3;

}  // namespace

Alternative Alternative::parse(std::string_view text) {
    if (text == "gaussian" || text == "normal") return {Kind::gaussian, 0};
    std::string_view digits;
    if (text.starts_with("student_t(") && text.ends_with(")")) {
        digits = text.substr(10, text.size() - 11);
    } else if (text.starts_with("t:")) {
        digits = text.substr(2);
    } else if (text.starts_with("t")) {
        digits = text.substr(1);
    }
    int df = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), df);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || df < 1) {
        throw DomainError("unknown alternative '" + std::string(text) + "' (use gaussian or t<df>)");
    }
    return {Kind::student_t, df};
}

std::string Alternative::name() const {
    return kind == Kind::gaussian ? "gaussian" : "t" + std::to_string(df);
}

double standardized_min(const lottery::CountVector& counts, int draw_size) {
    const int v = counts.pool_size();
    if (draw_size < 1 || draw_size >= v) throw DomainError("standardized_min: K must satisfy 1 <= K < V");
    const auto n = counts.total();
    const auto span = counts.counts();
    const auto min_count = *std::min_element(span.begin(), span.end());
    const double sigma = std::sqrt(static_cast<double>(n) * (v - draw_size)) / v;
    return static_cast<double>(static_cast<std::int64_t>(v) * min_count - n) / v / sigma;
}

EmpiricalDistribution simulate_zmin(const SimulationConfig& config) {
    config.lottery.validate();
    check_replications(config.replications);
    std::vector<double> values(config.replications);
    parallel_for(config.replications, config.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            const auto counts = lottery::simulate_counts(config.lottery, RngState{config.seed, r});
            values[r] = standardized_min(counts, config.lottery.draw_size);
        }
    });
    return EmpiricalDistribution(std::move(values));
}

double corrected_p_value(const EmpiricalDistribution& dist, double z_observed) {
    if (dist.empty()) throw DomainError("corrected_p_value: empty distribution");
    return dist.ecdf(z_observed);
}

std::vector<DistortionEntry> size_distortion_table(const EmpiricalDistribution& dist,
                                                   const std::vector<double>& alphas) {
    if (dist.empty()) throw DomainError("size_distortion_table: empty distribution");
    std::vector<DistortionEntry> table;
    table.reserve(alphas.size());
    for (double a : alphas) {
        DistortionEntry e;
        e.alpha = a;
        e.critical = dist::std_normal_quantile(a);
        e.rejection = dist.ecdf(e.critical);
        e.standard_error = mc_standard_error(e.rejection, dist.size());
        e.inflation = e.rejection / a;
        table.push_back(e);
    }
    return table;
}

void write_distortion_csv(std::ostream& out, const std::vector<DistortionEntry>& table) {
    out << "alpha,critical_value,rejection_probability,mc_standard_error,size_inflation\n";
    for (const auto& e : table) {
        out << format_probability(e.alpha) << ',' << format_real(e.critical) << ',' << format_probability(e.rejection)
            << ',' << format_probability(e.standard_error) << ',' << format_real(e.inflation) << '\n';
    }
}

std::string_view statistic_name(Statistic s) {
    static constexpr std::string_view kNames[] = {"Gamma1^2", "Gamma2^2", "JB", "Gamma_max^2", "Gamma_min^2"};
    return kNames[s];
}

namespace {

// Fills `buffer` with one replication's data.
void draw_sample(const SimulationConfig& config, Scenario scenario, std::size_t r, std::vector<double>& buffer) {
    const RngState state{config.seed, r};
    if (scenario == Scenario::alternative && config.alternative.kind == Alternative::Kind::student_t) {
        dist::StudentT t(config.alternative.df, state, kAlternativeLane, kAlternativeDenominatorLane);
        for (auto& x : buffer) x = t();
        return;
    }
    Rng rng(state, scenario == Scenario::null ? kNullLane : kAlternativeLane);
    for (auto& x : buffer) x = rng.normal();
}

std::array<RateEstimate, kStatisticCount> rejection_rates(const SimulationConfig& config, Scenario scenario,
                                                          const normality::CriticalValues& crit) {
    std::vector<std::uint8_t> flags(config.replications);
    parallel_for(config.replications, config.workers, [&](std::size_t begin, std::size_t end) {
        std::vector<double> buffer(config.sample_size);
        for (std::size_t r = begin; r < end; ++r) {
            draw_sample(config, scenario, r, buffer);
            const auto rej = normality::reject_flags(normality::moment_stats(buffer), crit);
            flags[r] = static_cast<std::uint8_t>(rej.gamma1_sq << kGamma1Sq | rej.gamma2_sq << kGamma2Sq |
                                                 rej.jb << kJarqueBera | rej.gamma_max_sq << kGammaMaxSq |
                                                 rej.gamma_min_sq << kGammaMinSq);
        }
    });
    std::array<std::size_t, kStatisticCount> counts{};
    for (auto f : flags) {
        for (std::size_t s = 0; s < kStatisticCount; ++s) counts[s] += (f >> s) & 1u;
    }
    std::array<RateEstimate, kStatisticCount> rates{};
    for (std::size_t s = 0; s < kStatisticCount; ++s) {
        rates[s].rate = static_cast<double>(counts[s]) / static_cast<double>(config.replications);
        rates[s].standard_error = mc_standard_error(rates[s].rate, config.replications);
    }
    return rates;
}

}  // namespace

normality::MomentStats normality_replication(const SimulationConfig& config, Scenario scenario, std::size_t r) {
    if (config.sample_size < 4) throw DomainError("sample size must be at least 4");
    std::vector<double> buffer(config.sample_size);
    draw_sample(config, scenario, r, buffer);
    return normality::moment_stats(buffer);
}

SizePowerTable normality_size_power(const SimulationConfig& config, double alpha) {
    if (config.sample_size < 4) throw DomainError("sample size must be at least 4");
    check_replications(config.replications);
    const auto crit = normality::critical_values(alpha);
    SizePowerTable table;
    table.alpha = alpha;
    table.replications = config.replications;
    table.sample_size = config.sample_size;
    table.seed = config.seed;
    table.alternative = config.alternative;
    table.size = rejection_rates(config, Scenario::null, crit);
    table.power = rejection_rates(config, Scenario::alternative, crit);
    return table;
}

void write_size_power_csv(std::ostream& out, const SizePowerTable& table) {
    out << "test statistic";
    for (std::size_t s = 0; s < kStatisticCount; ++s) out << ',' << statistic_name(static_cast<Statistic>(s));
    out << '\n';
    auto row = [&](const char* label, const std::array<RateEstimate, kStatisticCount>& rates, bool se) {
        out << label;
        for (const auto& r : rates) out << ',' << format_probability(se ? r.standard_error : r.rate);
        out << '\n';
    };
    row("size", table.size, false);
    row("power", table.power, false);
    row("size_se", table.size, true);
    row("power_se", table.power, true);
}

void write_size_power_console(std::ostream& out, const SizePowerTable& table) {
    out << "alpha = " << table.alpha << ", n = " << table.sample_size << ", R = " << table.replications
        << ", alternative = " << table.alternative.name() << ", seed = " << table.seed << '\n';
    out << std::left << std::setw(16) << "test statistic";
    for (std::size_t s = 0; s < kStatisticCount; ++s) out << std::setw(14) << statistic_name(static_cast<Statistic>(s));
    out << '\n';
    auto row = [&](const char* label, const std::array<RateEstimate, kStatisticCount>& rates) {
        out << std::setw(16) << label;
        for (const auto& r : rates) out << std::setw(14) << format_fixed(r.rate, 4);
        out << '\n';
    };
    row("size", table.size);
    row("power", table.power);
    out << std::right << "(MC standard errors <= " << format_fixed(0.5 / std::sqrt(static_cast<double>(table.replications)), 4)
        << ")\n";
}

}  // namespace snoop::sim
