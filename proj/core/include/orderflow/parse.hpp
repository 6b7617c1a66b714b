#pragma once

#include "orderflow/types.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace orderflow {

// Record layout, one record per line, delimiter-separated:
//   stock_id,date,time,event_kind,order_id,side,price,size,investor_class
// date = YYYYMMDD, time = HHMMSS or HHMMSS.mmm, side = B/S,
// investor_class = I (individual) / N (institution). Header line required.

struct RejectedRecord {
    std::size_t line_no = 0;
    std::string reason;
};

struct ParseResult {
    std::vector<OrderEvent> events;  // timestamp order per stock, input order overall
    std::vector<RejectedRecord> rejects;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

struct ParseOptions {
    char delimiter = ',';
    // When true, a cancel/execute whose order_id has no earlier submit for
    // the same stock is rejected at record level.
    bool check_order_links = true;
};

// Throws std::runtime_error on unreadable input, a malformed header, or
// out-of-order timestamps within a stock (corrupted feed). Per-record schema
// violations are reported in `rejects` and processing continues.
ParseResult parse_stream(std::istream& in, const ParseOptions& opts = {});
ParseResult parse_file(const std::string& path, const ParseOptions& opts = {});

// Canonical serialization: prices carry two decimals when tick-aligned to
// 0.01 (four otherwise), times drop the .mmm suffix when zero. Parsing a
// canonical file and serializing it again is byte-identical.
std::string serialize_event(const OrderEvent& ev, char delimiter = ',');
void write_events(std::ostream& out, const std::vector<OrderEvent>& events,
                  char delimiter = ',');

// Split table: stock_id,effective_date,factor. Throws on factor <= 0.
struct SplitEntry {
    Date effective_date = 0;
    double factor = 1.0;
};
using SplitTable = std::map<std::string, std::vector<SplitEntry>>;

SplitTable parse_split_table(std::istream& in, char delimiter = ',');
SplitTable parse_split_file(const std::string& path, char delimiter = ',');

// Field-level helpers shared with the CLI and generators.
std::string format_price(Price p);
std::string format_time_ms(int time_ms);

} // namespace orderflow
