#pragma once

#include "orderflow/types.hpp"

namespace orderflow {

// The continuous double auction: [09:30, 11:30) and [13:00, 15:00), mapped
// onto one contiguous intraday axis t' = 1..240. A minute bar labeled t'
// covers [t'-1, t') minutes after session start, so the bar's closing quote
// is the last book state strictly before the boundary.
struct TradingClock {
    static constexpr int kMinutesPerDay = 240;
    static constexpr int kMorningOpenMs = (9 * 60 + 30) * 60 * 1000;
    static constexpr int kMorningCloseMs = (11 * 60 + 30) * 60 * 1000;
    static constexpr int kAfternoonOpenMs = 13 * 60 * 60 * 1000;
    static constexpr int kAfternoonCloseMs = 15 * 60 * 60 * 1000;

    // Maps a time of day to the intraday minute index 1..240, or 0 when the
    // time falls outside the continuous double auction (call auction,
    // cooling period, lunch break, overnight).
    static int intraday_index(int time_ms) {
        if (time_ms >= kMorningOpenMs && time_ms < kMorningCloseMs) {
            return (time_ms - kMorningOpenMs) / 60000 + 1;
        }
        if (time_ms >= kAfternoonOpenMs && time_ms < kAfternoonCloseMs) {
            return (time_ms - kAfternoonOpenMs) / 60000 + 121;
        }
        return 0;
    }

    // Start-of-minute wall time for bar index 1..240 (used by generators).
    static int minute_start_ms(int index) {
        if (index < 1 || index > kMinutesPerDay) {
            throw std::out_of_range("intraday index out of range");
        }
        if (index <= 120) return kMorningOpenMs + (index - 1) * 60000;
        return kAfternoonOpenMs + (index - 121) * 60000;
    }
};

} // namespace orderflow
