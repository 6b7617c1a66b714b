#include "orderflow/parse.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace orderflow {

namespace {

std::vector<std::string_view> split_line(std::string_view s, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == delim) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

bool parse_int(std::string_view sv, long long& out) {
    if (sv.empty()) return false;
    auto res = std::from_chars(sv.data(), sv.data() + sv.size(), out);
    return res.ec == std::errc{} && res.ptr == sv.data() + sv.size();
}

// Decimal price -> scaled integer, exact up to 4 fractional digits.
bool parse_price(std::string_view sv, Price& out) {
    if (sv.empty()) return false;
    bool neg = false;
    if (sv.front() == '-') {
        neg = true;
        sv.remove_prefix(1);
    }
    auto dot = sv.find('.');
    std::string_view int_part = sv.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : sv.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) return false;
    if (frac_part.size() > 4) return false;

    long long whole = 0;
    if (!int_part.empty() && !parse_int(int_part, whole)) return false;
    long long frac = 0;
    if (!frac_part.empty()) {
        if (!parse_int(frac_part, frac) || frac < 0) return false;
        for (std::size_t i = frac_part.size(); i < 4; ++i) frac *= 10;
    }
    out = whole * kPriceScale + frac;
    if (neg) out = -out;
    return true;
}

// HHMMSS or HHMMSS.mmm -> milliseconds since midnight.
bool parse_time(std::string_view sv, int& out_ms) {
    auto dot = sv.find('.');
    std::string_view hms = sv.substr(0, dot);
    if (hms.size() != 6) return false;
    long long v = 0;
    if (!parse_int(hms, v)) return false;
    int hh = static_cast<int>(v / 10000);
    int mm = static_cast<int>((v / 100) % 100);
    int ss = static_cast<int>(v % 100);
    if (hh > 23 || mm > 59 || ss > 59) return false;
    int ms = 0;
    if (dot != std::string_view::npos) {
        std::string_view frac = sv.substr(dot + 1);
        if (frac.size() != 3) return false;
        long long f = 0;
        if (!parse_int(frac, f)) return false;
        ms = static_cast<int>(f);
    }
    out_ms = ((hh * 60 + mm) * 60 + ss) * 1000 + ms;
    return true;
}

} // namespace

std::string format_price(Price p) {
    char buf[40];
    bool neg = p < 0;
    long long a = neg ? -p : p;
    long long whole = a / kPriceScale;
    long long frac = a % kPriceScale;
    if (frac % 100 == 0) {
        std::snprintf(buf, sizeof buf, "%s%lld.%02lld", neg ? "-" : "", whole, frac / 100);
    } else {
        std::snprintf(buf, sizeof buf, "%s%lld.%04lld", neg ? "-" : "", whole, frac);
    }
    return buf;
}

std::string format_time_ms(int time_ms) {
    int ms = time_ms % 1000;
    int total_s = time_ms / 1000;
    int hh = total_s / 3600, mm = (total_s / 60) % 60, ss = total_s % 60;
    char buf[16];
    if (ms == 0) {
        std::snprintf(buf, sizeof buf, "%02d%02d%02d", hh, mm, ss);
    } else {
        std::snprintf(buf, sizeof buf, "%02d%02d%02d.%03d", hh, mm, ss, ms);
    }
    return buf;
}

ParseResult parse_stream(std::istream& in, const ParseOptions& opts) {
    if (!in.good()) throw std::runtime_error("unreadable input stream");

    ParseResult result;
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) {
        return result;  // empty file: empty sequence, zero rejects
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        auto header = split_line(line, opts.delimiter);
        if (header.size() != 9 || header[0] != "stock_id") {
            throw std::runtime_error("malformed header line: expected 9 columns starting with stock_id");
        }
    }

    struct StockState {
        Date last_date = 0;
        int last_time_ms = -1;
        std::unordered_set<std::string> submitted_ids;
    };
    std::unordered_map<std::string, StockState> per_stock;

    auto reject = [&](std::size_t ln, std::string reason) {
        result.rejects.push_back({ln, std::move(reason)});
        ++result.rejected;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        auto cols = split_line(line, opts.delimiter);
        if (cols.size() != 9) {
            reject(line_no, "expected 9 columns, got " + std::to_string(cols.size()));
            continue;
        }

        OrderEvent ev;
        ev.stock_id = std::string(cols[0]);
        if (ev.stock_id.empty()) {
            reject(line_no, "empty stock_id");
            continue;
        }

        long long date_v = 0;
        if (!parse_int(cols[1], date_v) || !is_valid_date(static_cast<Date>(date_v))) {
            reject(line_no, "bad date: " + std::string(cols[1]));
            continue;
        }
        ev.date = static_cast<Date>(date_v);

        if (!parse_time(cols[2], ev.time_ms)) {
            reject(line_no, "bad time: " + std::string(cols[2]));
            continue;
        }

        if (cols[3] == "submit") ev.kind = EventKind::submit;
        else if (cols[3] == "cancel") ev.kind = EventKind::cancel;
        else if (cols[3] == "execute") ev.kind = EventKind::execute;
        else {
            reject(line_no, "bad event_kind: " + std::string(cols[3]));
            continue;
        }

        ev.order_id = std::string(cols[4]);
        if (ev.order_id.empty()) {
            reject(line_no, "empty order_id");
            continue;
        }

        if (cols[5] == "B") ev.side = Side::buy;
        else if (cols[5] == "S") ev.side = Side::sell;
        else {
            reject(line_no, "bad side: " + std::string(cols[5]));
            continue;
        }

        if (!parse_price(cols[6], ev.price) || ev.price <= 0) {
            reject(line_no, "bad price: " + std::string(cols[6]));
            continue;
        }

        long long size_v = 0;
        if (!parse_int(cols[7], size_v) || size_v < 0) {
            reject(line_no, "bad size: " + std::string(cols[7]));
            continue;
        }
        ev.size = size_v;

        if (cols[8] == "I") ev.investor = InvestorClass::individual;
        else if (cols[8] == "N") ev.investor = InvestorClass::institution;
        else {
            reject(line_no, "bad investor_class: " + std::string(cols[8]));
            continue;
        }

        // Exchange semantics.
        if (ev.kind != EventKind::cancel && ev.size <= 0) {
            reject(line_no, "size must be positive for submit/execute");
            continue;
        }
        if (ev.kind == EventKind::submit && ev.side == Side::buy && ev.size % kBoardLot != 0) {
            reject(line_no, "buy submission size not a board-lot multiple");
            continue;
        }

        auto& st = per_stock[ev.stock_id];
        if (st.last_time_ms >= 0) {
            if (ev.date < st.last_date ||
                (ev.date == st.last_date && ev.time_ms < st.last_time_ms)) {
                throw std::runtime_error(
                    "out-of-order timestamp for stock " + ev.stock_id + " at line " +
                    std::to_string(line_no) + " (corrupted feed)");
            }
        }

        if (ev.kind == EventKind::submit) {
            if (!st.submitted_ids.insert(ev.order_id).second) {
                reject(line_no, "duplicate order_id on submit: " + ev.order_id);
                continue;
            }
        } else if (opts.check_order_links && !st.submitted_ids.count(ev.order_id)) {
            reject(line_no, "order_id references no earlier submit: " + ev.order_id);
            continue;
        }

        st.last_date = ev.date;
        st.last_time_ms = ev.time_ms;
        result.events.push_back(std::move(ev));
        ++result.accepted;
    }
    if (in.bad()) throw std::runtime_error("I/O error while reading input");
    return result;
}

ParseResult parse_file(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return parse_stream(in, opts);
}

std::string serialize_event(const OrderEvent& ev, char delimiter) {
    std::string out;
    out.reserve(64);
    const char d = delimiter;
    out += ev.stock_id;
    out += d;
    out += std::to_string(ev.date);
    out += d;
    out += format_time_ms(ev.time_ms);
    out += d;
    out += to_string(ev.kind);
    out += d;
    out += ev.order_id;
    out += d;
    out += to_string(ev.side);
    out += d;
    out += format_price(ev.price);
    out += d;
    out += std::to_string(ev.size);
    out += d;
    out += to_string(ev.investor);
    return out;
}

void write_events(std::ostream& out, const std::vector<OrderEvent>& events, char delimiter) {
    const char d = delimiter;
    out << "stock_id" << d << "date" << d << "time" << d << "event_kind" << d << "order_id"
        << d << "side" << d << "price" << d << "size" << d << "investor_class\n";
    for (const auto& ev : events) out << serialize_event(ev, delimiter) << '\n';
}

SplitTable parse_split_table(std::istream& in, char delimiter) {
    if (!in.good()) throw std::runtime_error("unreadable split table");
    SplitTable table;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cols = split_line(line, delimiter);
        if (!saw_header) {
            if (cols.size() != 3 || cols[0] != "stock_id") {
                throw std::runtime_error("malformed split table header");
            }
            saw_header = true;
            continue;
        }
        if (cols.size() != 3) {
            throw std::runtime_error("split table line " + std::to_string(line_no) +
                                     ": expected 3 columns");
        }
        long long date_v = 0;
        if (!parse_int(cols[1], date_v) || !is_valid_date(static_cast<Date>(date_v))) {
            throw std::runtime_error("split table line " + std::to_string(line_no) + ": bad date");
        }
        double factor = 0.0;
        try {
            factor = std::stod(std::string(cols[2]));
        } catch (...) {
            throw std::runtime_error("split table line " + std::to_string(line_no) + ": bad factor");
        }
        if (!(factor > 0.0)) {
            throw std::runtime_error("split table line " + std::to_string(line_no) +
                                     ": factor must be > 0");
        }
        table[std::string(cols[0])].push_back({static_cast<Date>(date_v), factor});
    }
    for (auto& [stock, entries] : table) {
        std::sort(entries.begin(), entries.end(),
                  [](const SplitEntry& a, const SplitEntry& b) {
                      return a.effective_date < b.effective_date;
                  });
    }
    return table;
}

SplitTable parse_split_file(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open split table: " + path);
    return parse_split_table(in, delimiter);
}

} // namespace orderflow
