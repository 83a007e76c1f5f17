#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace duopoly::cli {

/// printf("%.{sig}g"); negative zero prints as 0.
std::string format_sig(double v, int sig = 6);
std::string format_fixed(double v, int decimals);
std::string format_count(std::size_t n);

/// Rows of preformatted cells with `#` comment lines above the header.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const Table& table, std::ostream& out);

/// Right-aligned columns separated by two spaces; comments keep their `#`.
void write_aligned(const Table& table, std::ostream& out);

}  // namespace duopoly::cli
