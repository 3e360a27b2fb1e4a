#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace recqed {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// Writes `contents` to `path` via a temporary file in the same directory
/// followed by a rename, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace recqed
