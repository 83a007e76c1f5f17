#include "duopoly/cli/format.hpp"

#include <algorithm>
#include <cstdio>

namespace duopoly::cli {

namespace {

std::string csv_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string clean_zero(std::string s) {
  // "-0", "-0.00" and the like
  if (!s.empty() && s.front() == '-' &&
      s.find_first_not_of("0.", 1) == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

}  // namespace

std::string format_sig(double v, int sig) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return clean_zero(buf);
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return clean_zero(buf);
}

std::string format_count(std::size_t n) { return std::to_string(n); }

void write_csv(const Table& table, std::ostream& out) {
  for (const auto& c : table.comments) out << "# " << c << "\n";
  auto row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_cell(cells[i]);
    out << "\n";
  };
  row(table.header);
  for (const auto& r : table.rows) row(r);
}

void write_aligned(const Table& table, std::ostream& out) {
  for (const auto& c : table.comments) out << "# " << c << "\n";
  std::vector<std::size_t> width(table.header.size(), 0);
  auto measure = [&width](const std::vector<std::string>& cells) {
    if (cells.size() > width.size()) width.resize(cells.size(), 0);
    for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  };
  measure(table.header);
  for (const auto& r : table.rows) measure(r);
  auto row = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += "  ";
      line += std::string(width[i] - cells[i].size(), ' ') + cells[i];
    }
    out << line << "\n";
  };
  row(table.header);
  for (const auto& r : table.rows) row(r);
}

}  // namespace duopoly::cli
