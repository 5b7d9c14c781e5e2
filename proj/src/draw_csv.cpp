#include "snoop/draw_csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "snoop/errors.hpp"

namespace snoop::lottery {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

// Yields (1-based line number, line) pairs with a leading BOM removed.
std::vector<std::pair<std::size_t, std::string_view>> lines_of(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto nl = text.find('\n');
        out.emplace_back(number, text.substr(0, nl));
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return out;
}

template <class Int>
bool parse_int(std::string_view s, Int& value) {
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    int year = 0, month = 0, day = 0;
    if (!parse_int(s.substr(0, 4), year) || !parse_int(s.substr(5, 2), month) || !parse_int(s.substr(8, 2), day)) {
        return false;
    }
    if (month < 1 || month > 12 || day < 1) return false;
    static constexpr int kDays[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (day > kDays[month - 1]) return false;
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return !(month == 2 && day == 29 && !leap);
}

int parse_header(std::size_t line_no, std::string_view line) {
    const auto fields = split_fields(line);
    const auto expected = [](int k) {
        std::string h = "date";
        for (int i = 1; i <= k; ++i) h += ",n" + std::to_string(i);
        return h + ",add";
    };
    if (fields.size() < 3 || fields.front() != "date" || fields.back() != "add") {
        throw ParseError(line_no, "header must read 'date,n1,...,nK,add'");
    }
    const int k = static_cast<int>(fields.size()) - 2;
    for (int i = 1; i <= k; ++i) {
        if (fields[static_cast<std::size_t>(i)] != "n" + std::to_string(i)) {
            throw ParseError(line_no, "header must read '" + expected(k) + "'");
        }
    }
    return k;
}

}  // namespace

DrawHistory parse_draw_csv(std::string_view text, int pool_size) {
    const auto lines = lines_of(text);
    std::size_t idx = 0;
    while (idx < lines.size() && trim(lines[idx].second).empty()) ++idx;
    if (idx == lines.size()) throw ParseError(1, "empty draw file");
    const int k = parse_header(lines[idx].first, lines[idx].second);

    LotteryConfig config{pool_size, k, 1};
    try {
        config.validate();
    } catch (const DomainError& e) {
        throw ParseError(lines[idx].first, e.what());
    }

    std::vector<Game> games;
    for (++idx; idx < lines.size(); ++idx) {
        const auto [line_no, raw] = lines[idx];
        if (trim(raw).empty()) continue;
        const auto fields = split_fields(raw);
        if (static_cast<int>(fields.size()) != k + 2) {
            throw ParseError(line_no, "expected " + std::to_string(k + 2) + " fields, got " + std::to_string(fields.size()));
        }
        Game g;
        if (!fields[0].empty() && !is_iso_date(fields[0])) {
            throw ParseError(line_no, "invalid date '" + std::string(fields[0]) + "'");
        }
        g.date = std::string(fields[0]);
        for (int i = 1; i <= k; ++i) {
            int x = 0;
            if (!parse_int(fields[static_cast<std::size_t>(i)], x)) {
                throw ParseError(line_no, "field n" + std::to_string(i) + " is not an integer");
            }
            g.numbers.push_back(x);
        }
        if (const auto add = fields.back(); !add.empty()) {
            int x = 0;
            if (!parse_int(add, x)) throw ParseError(line_no, "field add is not an integer");
            g.additional = x;
        }
        try {
            validate_game(g, config);
        } catch (const DomainError& e) {
            throw ParseError(line_no, e.what());
        }
        games.push_back(std::move(g));
    }
    if (games.empty()) throw ParseError(lines.back().first, "draw file contains no games");
    config.games = static_cast<std::int64_t>(games.size());
    return DrawHistory(config, std::move(games));
}

std::string format_draw_csv(const DrawHistory& history) {
    std::ostringstream out;
    out << "date";
    for (int i = 1; i <= history.config().draw_size; ++i) out << ",n" << i;
    out << ",add\n";
    for (const auto& g : history.games()) {
        out << g.date;
        for (int x : g.numbers) out << ',' << x;
        out << ',';
        if (g.additional) out << *g.additional;
        out << '\n';
    }
    return out.str();
}

CountVector SummaryCounts::to_count_vector(int pool_size) const {
    std::vector<std::int64_t> full(static_cast<std::size_t>(pool_size), 0);
    for (int m = 1; m <= pool_size; ++m) {
        const auto it = counts.find(m);
        if (it == counts.end()) throw DomainError("summary lacks a count for number " + std::to_string(m));
        full[static_cast<std::size_t>(m - 1)] = it->second;
    }
    if (counts.size() != static_cast<std::size_t>(pool_size)) throw DomainError("summary has numbers outside 1..V");
    return CountVector(std::move(full), total);
}

SummaryCounts parse_summary_csv(std::string_view text) {
    SummaryCounts summary;
    bool have_total = false;
    bool first_row = true;
    std::size_t last_line = 1;
    for (const auto& [line_no, raw] : lines_of(text)) {
        last_line = line_no;
        if (trim(raw).empty()) continue;
        const auto fields = split_fields(raw);
        if (fields.size() != 2) throw ParseError(line_no, "expected 2 fields");
        if (first_row && fields[0] == "m" && fields[1] == "count") {
            first_row = false;
            continue;
        }
        first_row = false;
        std::int64_t value = 0;
        if (!parse_int(fields[1], value) || value < 0) throw ParseError(line_no, "count must be a non-negative integer");
        if (fields[0] == "total") {
            if (have_total) throw ParseError(line_no, "duplicate total row");
            summary.total = value;
            have_total = true;
            continue;
        }
        int m = 0;
        if (!parse_int(fields[0], m) || m < 1) throw ParseError(line_no, "number must be a positive integer");
        if (!summary.counts.emplace(m, value).second) {
            throw ParseError(line_no, "duplicate row for number " + std::to_string(m));
        }
    }
    if (!have_total) throw ParseError(last_line, "missing 'total,n' row");
    std::int64_t sum = 0;
    for (const auto& [m, c] : summary.counts) {
        if (c > summary.total) throw ParseError(last_line, "count for " + std::to_string(m) + " exceeds total");
        sum += c;
    }
    if (sum > summary.total) throw ParseError(last_line, "counts exceed total");
    return summary;
}

std::string format_summary_csv(const SummaryCounts& summary) {
    std::ostringstream out;
    out << "m,count\n";
    for (const auto& [m, c] : summary.counts) out << m << ',' << c << '\n';
    out << "total," << summary.total << '\n';
    return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace snoop::lottery
