#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace ridgecast {

/// UTC instant with second precision, stored as seconds since the Unix epoch.
/// Parses from and prints to "YYYY-MM-DD HH:MM:SS".
class Timestamp {
public:
    Timestamp() = default;
    explicit Timestamp(std::int64_t epoch_seconds) : seconds_(epoch_seconds) {}

    static Timestamp parse(const std::string& text);
    static Timestamp from_civil(int year, int month, int day, int hour, int minute, int second);

    std::string to_string() const;
    std::int64_t epoch_seconds() const noexcept { return seconds_; }

    Timestamp operator+(std::int64_t delta_seconds) const { return Timestamp(seconds_ + delta_seconds); }
    auto operator<=>(const Timestamp&) const = default;

private:
    std::int64_t seconds_ = 0;
};

} // namespace ridgecast
