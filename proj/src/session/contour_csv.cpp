#include "bendaid/session/contour_csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace bendaid::session {

namespace {

void append_number(std::string& out, double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), end);
}

void append_fixed4(std::string& out, double v) {
    std::array<char, 40> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 4);
    std::string_view text(buf.data(), static_cast<std::size_t>(end - buf.data()));
    if (text == "-0.0000") text = "0.0000";
    out.append(text);
}

double parse_number(std::string_view field, std::size_t line, const char* name) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
        throw CsvError(std::string("malformed ") + name + " '" + std::string(field) + "'", line);
    }
    return v;
}

}  // namespace

std::string export_csv(const PitchContour& contour) {
    contour.validate();
    std::string out = "t_ms,cents\n";
    out.reserve(out.size() + contour.samples.size() * 16);
    for (const auto& p : contour.samples) {
        append_number(out, p.t_ms);
        out.push_back(',');
        append_fixed4(out, p.cents);
        out.push_back('\n');
    }
    return out;
}

PitchContour import_csv(std::string_view text, ContourSource source) {
    PitchContour contour;
    contour.source = source;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!saw_header) {
            if (line != "t_ms,cents") {
                throw CsvError("expected header 't_ms,cents'", line_no);
            }
            saw_header = true;
            continue;
        }
        if (line.empty()) {
            if (text.empty()) break;
            throw CsvError("empty row", line_no);
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            throw CsvError("expected two fields", line_no);
        }
        const ContourPoint p{parse_number(line.substr(0, comma), line_no, "t_ms"),
                             parse_number(line.substr(comma + 1), line_no, "cents")};
        if (!contour.samples.empty() && !(p.t_ms > contour.samples.back().t_ms)) {
            throw CsvError("t_ms must strictly increase", line_no);
        }
        contour.samples.push_back(p);
    }
    if (!saw_header) {
        throw CsvError("missing header", 1);
    }
    return contour;
}

}  // namespace bendaid::session
