#include "orderflow/types.hpp"

namespace orderflow {

const char* to_string(Side s) { return s == Side::buy ? "B" : "S"; }

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::submit: return "submit";
        case EventKind::cancel: return "cancel";
        case EventKind::execute: return "execute";
    }
    return "?";
}

const char* to_string(InvestorClass c) {
    return c == InvestorClass::individual ? "I" : "N";
}

const char* to_string(Aggressiveness a) {
    switch (a) {
        case Aggressiveness::partially_filled: return "partially_filled";
        case Aggressiveness::filled: return "filled";
        case Aggressiveness::limit: return "limit";
        case Aggressiveness::canceled: return "canceled";
    }
    return "?";
}

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return kDays[m - 1];
}

// Howard Hinnant's civil-from-days inverse: serial day count from a date.
long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

int weekday(Date ymd) {
    int y = ymd / 10000, m = (ymd / 100) % 100, d = ymd % 100;
    long z = days_from_civil(y, m, d);
    return static_cast<int>(((z % 7) + 11) % 7);  // 0 = Sunday .. 6 = Saturday
}

} // namespace

bool is_valid_date(Date ymd) {
    int y = ymd / 10000, m = (ymd / 100) % 100, d = ymd % 100;
    if (y < 1900 || y > 2200 || m < 1 || m > 12 || d < 1) return false;
    return d <= days_in_month(y, m);
}

Date next_trading_date(Date ymd) {
    int y = ymd / 10000, m = (ymd / 100) % 100, d = ymd % 100;
    do {
        ++d;
        if (d > days_in_month(y, m)) {
            d = 1;
            if (++m > 12) {
                m = 1;
                ++y;
            }
        }
        ymd = y * 10000 + m * 100 + d;
    } while (weekday(ymd) == 0 || weekday(ymd) == 6);
    return ymd;
}

} // namespace orderflow
