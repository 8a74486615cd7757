#pragma once

#include <string>
#include <string_view>

namespace mlsparse {

// Writes to a temporary sibling file and renames it over `path`.
void write_file_atomic(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

}  // namespace mlsparse
