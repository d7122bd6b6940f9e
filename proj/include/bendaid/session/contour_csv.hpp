#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bendaid/session/contour.hpp"

namespace bendaid::session {

class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    /// 1-based; the header is line 1.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// `t_ms,cents` header, then one row per point. Times use the shortest
/// round-trip decimal form, cents exactly four decimals.
std::string export_csv(const PitchContour& contour);

/// Inverse of export_csv. Accepts LF or CRLF and a missing final newline.
PitchContour import_csv(std::string_view text, ContourSource source = ContourSource::Recorded);

}  // namespace bendaid::session
