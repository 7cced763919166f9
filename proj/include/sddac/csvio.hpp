#pragma once

#include <string>
#include <vector>

namespace sddac {

// Shortest decimal that round-trips the exact double (std::to_chars).
std::string dstr(double v);

std::string read_file(const std::string& path);          // IoError on failure
void atomic_write_file(const std::string& path,          // temp + rename
                       const std::string& content);

// Minimal CSV column reader for the `psd` subcommand. With an empty column
// name: picks "v" if the header has one, else requires a single column.
std::vector<double> read_csv_column(const std::string& path,
                                    const std::string& column);

}  // namespace sddac
