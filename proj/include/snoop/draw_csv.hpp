#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "snoop/lottery.hpp"

namespace snoop::lottery {

// Draw archive format:
//
//   date,n1,n2,n3,n4,n5,n6,add
//   1955-10-09,13,41,3,23,12,16,
//
// The number of `n` columns fixes K. `add` is empty when no additional number was drawn.
// Dates are ISO yyyy-mm-dd (empty is accepted for simulated histories). Blank lines are skipped.

/// Parses a draw archive. Throws ParseError naming the offending line.
DrawHistory parse_draw_csv(std::string_view text, int pool_size = 49);

/// Canonical serialization: fixed header, trimmed fields, LF line endings.
std::string format_draw_csv(const DrawHistory& history);

/// Summary counts: rows `m,count` and one `total,n` row; an optional `m,count`
/// header. Counts may cover only some numbers.
struct SummaryCounts {
    std::map<int, std::int64_t> counts;
    std::int64_t total = 0;

    /// Full count vector; requires every m in 1..pool_size and a matching sum.
    CountVector to_count_vector(int pool_size) const;
};

SummaryCounts parse_summary_csv(std::string_view text);
std::string format_summary_csv(const SummaryCounts& summary);

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace snoop::lottery
