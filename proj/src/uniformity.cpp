#include "snoop/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "snoop/distributions.hpp"
#include "snoop/errors.hpp"
#include "snoop/format.hpp"

namespace snoop::uniformity {

std::string_view to_string(Side side) {
    switch (side) {
        case Side::left: return "left";
        case Side::right: return "right";
        case Side::two_sided: return "two-sided";
    }
    return "left";
}

Side parse_side(std::string_view text) {
    if (text == "left") return Side::left;
    if (text == "right") return Side::right;
    if (text == "two-sided" || text == "two_sided" || text == "both") return Side::two_sided;
    throw DomainError("unknown side '" + std::string(text) + "'");
}

void NullModel::validate() const {
    if (pool_size < 2) throw DomainError("null model: V must be at least 2");
    if (draw_size < 1 || draw_size >= pool_size) throw DomainError("null model: K must satisfy 1 <= K < V");
    if (n < 1) throw DomainError("null model: n must be positive");
}

double normal_p_value(double z, Side side) {
    switch (side) {
        case Side::left: return dist::std_normal_cdf(z);
        case Side::right: return dist::std_normal_cdf(-z);
        case Side::two_sided: return std::min(1.0, 2.0 * dist::std_normal_cdf(-std::abs(z)));
    }
    return 1.0;
}

ZTestResult z_test_number(std::int64_t count, const NullModel& model, Side side) {
    model.validate();
    if (count < 0 || count > model.n) throw DomainError("z_test_number: count must lie in [0, n]");
    const double v = model.pool_size;
    ZTestResult r;
    r.side = side;
    r.sigma_iid = std::sqrt(static_cast<double>(model.n) * (v - 1.0)) / v;
    r.sigma_k = r.sigma_iid * std::sqrt(model.finite_population_factor());
    // (S - n/V) written as (V S - n) / V keeps the deviation exact.
    const double deviation = static_cast<double>(model.pool_size * count - model.n) / v;
    r.statistic_iid = deviation / r.sigma_iid;
    r.statistic_corrected = deviation / r.sigma_k;
    r.p_value = normal_p_value(r.statistic_corrected, side);
    r.p_value_iid = normal_p_value(r.statistic_iid, side);
    return r;
}

double pearson_statistic_iid(const lottery::CountVector& counts) {
    const std::int64_t v = counts.pool_size();
    const std::int64_t n = counts.total();
    if (n <= 0) throw DomainError("pearson: empty sample");
    // sum (S - n/V)^2 / (n/V) = sum (V S - n)^2 / (V n)
    long double acc = 0.0L;
    for (auto s : counts.counts()) {
        const auto d = static_cast<long double>(v * s - n);
        acc += d * d;
    }
    return static_cast<double>(acc / (static_cast<long double>(v) * static_cast<long double>(n)));
}

ChiSqTestResult corrected_pearson(double statistic_iid, int pool_size, int draw_size, std::int64_t n) {
    if (pool_size < 2 || draw_size < 1 || draw_size >= pool_size) {
        throw DomainError("pearson: K must satisfy 1 <= K < V");
    }
    if (!(statistic_iid >= 0.0)) throw DomainError("pearson: statistic must be non-negative");
    ChiSqTestResult r;
    r.statistic_iid = statistic_iid;
    r.statistic_corrected = statistic_iid * ((pool_size - 1.0) / (pool_size - draw_size));
    r.df = pool_size - 1;
    r.p_value = dist::chi_squared_sf(r.statistic_corrected, r.df);
    r.draw_size = draw_size;
    r.n = n;
    return r;
}

ChiSqTestResult pearson_test(const lottery::CountVector& counts, const NullModel& model) {
    model.validate();
    if (counts.pool_size() != model.pool_size) throw DomainError("pearson: pool size mismatch");
    if (counts.total() != model.n) throw DomainError("pearson: counts total does not match n");
    return corrected_pearson(pearson_statistic_iid(counts), model.pool_size, model.draw_size, model.n);
}

SampleChainReport sample_chain_report(const lottery::DrawHistory& history) {
    using lottery::Sample;
    const auto& cfg = history.config();
    SampleChainReport report;
    report.pool_size = cfg.pool_size;
    report.draw_size = cfg.draw_size;

    const auto main = lottery::counts_from_history(history, Sample::main);
    report.main = pearson_test(main, {cfg.pool_size, cfg.draw_size, main.total()});

    if (history.additional_count() == 0) {
        report.notices.emplace_back("no additional numbers in history: samples II and III omitted");
        return report;
    }

    if (cfg.draw_size + 1 < cfg.pool_size) {
        const auto mixed = lottery::counts_from_history(history, Sample::main_and_additional);
        const double chi_iid = pearson_statistic_iid(mixed);
        MixedSampleBounds b;
        b.n = mixed.total();
        b.games_with_additional = history.additional_count();
        b.as_k = corrected_pearson(chi_iid, cfg.pool_size, cfg.draw_size, b.n);
        b.as_k_plus_1 = corrected_pearson(chi_iid, cfg.pool_size, cfg.draw_size + 1, b.n);
        b.p_value_low = b.as_k_plus_1.p_value;
        b.p_value_high = b.as_k.p_value;
        report.mixed = b;
    } else {
        report.notices.emplace_back("K + 1 = V: sample II cannot be corrected and is omitted");
    }

    const auto extra = lottery::counts_from_history(history, Sample::additional_only);
    report.additional_only = pearson_test(extra, {cfg.pool_size, 1, extra.total()});
    return report;
}

namespace {

std::string percent(double p) { return format_fixed(100.0 * p, 2) + "%"; }

std::string chi_label(int k) { return k == 1 ? "chi2_iid" : "chi2_(" + std::to_string(k) + ")"; }

}  // namespace

void write_report_table(std::ostream& out, const SampleChainReport& report, ReportRows rows) {
    const std::string kv = std::to_string(report.draw_size) + "/" + std::to_string(report.pool_size);
    out << std::left << std::setw(8) << "sample" << std::setw(20) << "type" << std::setw(10) << "n"
        << std::setw(36) << "statistic" << "p-value\n";
    out << std::string(90, '-') << '\n';
    if (rows.main) {
        out << std::setw(8) << "I" << std::setw(20) << kv << std::setw(10) << report.main.n
            << std::setw(36) << (chi_label(report.draw_size) + " = " + format_fixed(report.main.statistic_corrected, 2))
            << percent(report.main.p_value) << '\n';
    }
    if (report.mixed && rows.mixed) {
        const auto& b = *report.mixed;
        out << std::setw(8) << "II" << std::setw(20) << (kv + " + add. num.") << std::setw(10) << b.n
            << std::setw(36)
            << (chi_label(report.draw_size + 1) + " = " + format_fixed(b.as_k_plus_1.statistic_corrected, 2) + " / " +
                chi_label(report.draw_size) + " = " + format_fixed(b.as_k.statistic_corrected, 2))
            << '[' << percent(b.p_value_low) << ", " << percent(b.p_value_high) << "]  bounds only - mixed K\n";
    }
    if (report.additional_only && rows.additional_only) {
        const auto& r = *report.additional_only;
        out << std::setw(8) << "III" << std::setw(20) << "add. num. only" << std::setw(10) << r.n << std::setw(36)
            << (chi_label(1) + " = " + format_fixed(r.statistic_corrected, 2)) << percent(r.p_value) << '\n';
    }
    out << std::right;
    for (const auto& note : report.notices) out << "note: " << note << '\n';
}

void write_report_csv(std::ostream& out, const SampleChainReport& report, ReportRows rows) {
    const std::string kv = std::to_string(report.draw_size) + "/" + std::to_string(report.pool_size);
    out << "sample,type,n,statistic,value,p_value,note\n";
    auto row = [&](const char* sample, const std::string& type, const ChiSqTestResult& r, const char* note) {
        out << sample << ',' << type << ',' << r.n << ',' << chi_label(r.draw_size) << ','
            << format_real(r.statistic_corrected) << ',' << format_probability(r.p_value) << ',' << note << '\n';
    };
    if (rows.main) row("I", kv, report.main, "");
    if (report.mixed && rows.mixed) {
        row("II", kv + " + add. num.", report.mixed->as_k_plus_1, "lower bound - mixed K");
        row("II", kv + " + add. num.", report.mixed->as_k, "upper bound - mixed K");
    }
    if (report.additional_only && rows.additional_only) row("III", "add. num. only", *report.additional_only, "");
}

}  // namespace snoop::uniformity
