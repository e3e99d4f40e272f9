#include "ridgecast/timestamp.hpp"

#include <array>
#include <cstdio>

#include "ridgecast/errors.hpp"

namespace ridgecast {

namespace {

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(std::int64_t y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const int yoe = static_cast<int>(y - era * 400);
    const int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const int doe = static_cast<int>(z - era * 146097);
    const int yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = yoe + era * 400;
    const int doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const int mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yy + (m <= 2));
}

bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

} // namespace

Timestamp Timestamp::from_civil(int year, int month, int day, int hour, int minute, int second) {
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month) ||
        hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 || second > 59) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d", year, month, day, hour, minute, second);
        throw Error(ErrorCode::InvalidTimestamp, std::string("out-of-range field in '") + buf + "'");
    }
    return Timestamp(days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second);
}

Timestamp Timestamp::parse(const std::string& text) {
    if (text.size() != 19 || text[4] != '-' || text[7] != '-' || text[10] != ' ' ||
        text[13] != ':' || text[16] != ':') {
        throw Error(ErrorCode::InvalidTimestamp, "expected 'YYYY-MM-DD HH:MM:SS', got '" + text + "'");
    }
    int y, mo, d, h, mi, s;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2d %2d:%2d:%2d", &y, &mo, &d, &h, &mi, &s) != 6) {
        throw Error(ErrorCode::InvalidTimestamp, "unparseable timestamp '" + text + "'");
    }
    return from_civil(y, mo, d, h, mi, s);
}

std::string Timestamp::to_string() const {
    std::int64_t days = seconds_ / 86400;
    std::int64_t rem = seconds_ % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60), static_cast<int>(rem % 60));
    return buf;
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::SchemaMismatch: return "SchemaMismatch";
        case ErrorCode::NoTimestampColumn: return "NoTimestampColumn";
        case ErrorCode::InvalidTimestamp: return "InvalidTimestamp";
        case ErrorCode::AllMissingColumn: return "AllMissingColumn";
        case ErrorCode::UncoveredColumn: return "UncoveredColumn";
        case ErrorCode::EmptyFitSet: return "EmptyFitSet";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DegenerateSplit: return "DegenerateSplit";
        case ErrorCode::UnknownTestTimestamp: return "UnknownTestTimestamp";
        case ErrorCode::TooFewRows: return "TooFewRows";
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::StaleModel: return "StaleModel";
        case ErrorCode::CorruptFile: return "CorruptFile";
        case ErrorCode::VersionUnsupported: return "VersionUnsupported";
        case ErrorCode::EmptyRowSet: return "EmptyRowSet";
        case ErrorCode::KOutOfRange: return "KOutOfRange";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ConstraintViolation: return "ConstraintViolation";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace ridgecast
