#include "autolog/time_parse.hpp"

#include <cctype>
#include <cstdio>

namespace autolog {

namespace {

// days since 1970-01-01 for a civil date (Howard Hinnant's algorithm)
std::int64_t days_from_civil(std::int64_t y, std::int64_t m, std::int64_t d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

bool valid_date(int y, int m, int d) {
    if (m < 1 || m > 12 || d < 1) return false;
    static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int dmax = days[m - 1];
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) dmax = 29;
    return d <= dmax;
}

}  // namespace

std::optional<std::int64_t> parse_iso_utc(const std::string& text) {
    int y = 0, mo = 0, da = 0, h = 0, mi = 0, s = 0;
    char sep = 0;
    char tail = 0;
    const int got = std::sscanf(text.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%c",
                                &y, &mo, &da, &sep, &h, &mi, &s, &tail);
    if (got < 7) return std::nullopt;
    if (sep != 'T' && sep != ' ') return std::nullopt;
    if (got == 8 && tail != 'Z') return std::nullopt;
    if (!valid_date(y, mo, da) || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60) {
        return std::nullopt;
    }
    return days_from_civil(y, mo, da) * 86400 + h * 3600 + mi * 60 + s;
}

std::optional<std::int64_t> parse_step_index(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    }
    try {
        return std::stoll(text);
    } catch (...) {
        return std::nullopt;
    }
}

}  // namespace autolog
