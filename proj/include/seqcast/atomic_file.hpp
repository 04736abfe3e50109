#pragma once

#include <filesystem>
#include <string_view>

namespace seqcast {

/// Writes `bytes` to a sibling temporary file and renames it over `path`,
/// so readers see either the old file, nothing, or the complete new file.
void write_file_atomically(const std::filesystem::path& path, std::string_view bytes);

}  // namespace seqcast
