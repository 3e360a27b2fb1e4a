#include "recqed/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "recqed/error.hpp"

namespace recqed::units {

namespace {

struct Split {
    double value;
    std::string_view suffix;
};

Split split(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr == text.data() || !std::isfinite(v)) {
        throw ParseError("not a number: '" + std::string(text) + "'");
    }
    std::string_view rest(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr));
    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
    return {v, rest};
}

template <std::size_t N>
double scaled(std::string_view text, const std::array<std::pair<std::string_view, double>, N>& table,
              const char* what) {
    const Split s = split(text);
    if (s.suffix.empty()) return s.value;
    for (const auto& [suffix, scale] : table) {
        if (s.suffix == suffix) return s.value * scale;
    }
    throw ParseError("unknown " + std::string(what) + " unit '" + std::string(s.suffix) +
                     "' in '" + std::string(text) + "'");
}

}  // namespace

double parse_number(std::string_view text) {
    const Split s = split(text);
    if (!s.suffix.empty()) throw ParseError("unexpected unit in '" + std::string(text) + "'");
    return s.value;
}

double parse_length(std::string_view text) {
    static constexpr std::array<std::pair<std::string_view, double>, 8> table{{
        {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6},
        {"µm", 1e-6}, {"nm", 1e-9}, {"pm", 1e-12}, {"km", 1e3}}};
    return scaled(text, table, "length");
}

double parse_volume(std::string_view text) {
    static constexpr std::array<std::pair<std::string_view, double>, 10> table{{
        {"m3", 1.0}, {"m^3", 1.0}, {"mm3", 1e-9}, {"mm^3", 1e-9}, {"um3", 1e-18},
        {"um^3", 1e-18}, {"µm3", 1e-18}, {"µm^3", 1e-18}, {"nm3", 1e-27}, {"nm^3", 1e-27}}};
    return scaled(text, table, "volume");
}

double parse_time(std::string_view text) {
    static constexpr std::array<std::pair<std::string_view, double>, 6> table{{
        {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"µs", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}}};
    return scaled(text, table, "time");
}

double parse_rate(std::string_view text, bool hz_is_angular) {
    const double cyc = hz_is_angular ? 1.0 : 2.0 * std::numbers::pi;
    const std::array<std::pair<std::string_view, double>, 10> table{{
        {"Hz", cyc}, {"kHz", 1e3 * cyc}, {"MHz", 1e6 * cyc}, {"GHz", 1e9 * cyc},
        {"THz", 1e12 * cyc}, {"rad/s", 1.0}, {"krad/s", 1e3}, {"Mrad/s", 1e6},
        {"Grad/s", 1e9}, {"/s", 1.0}}};
    return scaled(text, table, "rate");
}

}  // namespace recqed::units
