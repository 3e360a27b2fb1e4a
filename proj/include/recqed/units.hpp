#pragma once

#include <string_view>

/// Parsing of SI-suffixed command-line quantities. All results are SI.
namespace recqed::units {

/// Plain number ("1e9"); ParseError otherwise.
double parse_number(std::string_view text);

/// "606nm", "0.5mm", "1.2um", "3cm", "2m"; a bare number is metres.
double parse_length(std::string_view text);

/// "1000um3", "1e-15m^3"; a bare number is cubic metres.
double parse_volume(std::string_view text);

/// "10us", "5ms", "3ns"; a bare number is seconds (or the caller's unit).
double parse_time(std::string_view text);

/// Angular rate in rad/s. Frequency suffixes (Hz, kHz, MHz, GHz) are cyclic
/// and multiplied by 2 pi unless `hz_is_angular`; "rad/s" suffixes and bare
/// numbers are taken as angular already.
double parse_rate(std::string_view text, bool hz_is_angular = false);

}  // namespace recqed::units
