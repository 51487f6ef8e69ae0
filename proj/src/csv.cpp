#include "oscillab/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace oscillab::csv {

namespace {

std::vector<std::vector<double>> read_rows(std::istream& in, std::size_t columns) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.find_first_of("abcdefghijklmnopqrstuvwxyz") != std::string::npos &&
          line.find_first_not_of("xreimw, ") == std::string::npos) {
        continue;  // header
      }
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      const auto* b = cell.data();
      while (b < cell.data() + cell.size() && *b == ' ') ++b;
      auto [ptr, ec] = std::from_chars(b, cell.data() + cell.size(), v);
      if (ec != std::errc()) throw std::invalid_argument("bad csv number: " + cell);
      row.push_back(v);
    }
    if (row.size() != columns) throw std::invalid_argument("csv row has wrong column count");
    rows.push_back(std::move(row));
  }
  return rows;
}

Grid grid_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("csv needs at least two rows");
  const std::size_t n = rows.size();
  const double h = (rows.back()[0] - rows.front()[0]) / static_cast<double>(n - 1);
  for (std::size_t j = 1; j < n; ++j) {
    if (std::abs(rows[j][0] - rows[j - 1][0] - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw std::invalid_argument("csv x column is not uniform");
    }
  }
  const double center = rows.front()[0] + 0.5 * static_cast<double>(n) * h;
  return Grid::with_size(center, h, n);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, ptr};
}

void write_function(std::ostream& out, const SampledFunction& f) {
  out << "x,re,im\n";
  for (std::size_t j = 0; j < f.size(); ++j) {
    out << format_double(f.grid.x(j)) << ',' << format_double(f.values[j].real()) << ','
        << format_double(f.values[j].imag()) << '\n';
  }
}

void write_weight(std::ostream& out, const Weight& w) {
  out << "x,w\n";
  for (std::size_t j = 0; j < w.size(); ++j) {
    out << format_double(w.grid().x(j)) << ',' << format_double(w[j]) << '\n';
  }
}

SampledFunction read_function(std::istream& in) {
  const auto rows = read_rows(in, 3);
  const Grid g = grid_from_rows(rows);
  std::vector<Complex> v(rows.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = {rows[j][1], rows[j][2]};
  return {g, std::move(v)};
}

Weight read_weight(std::istream& in) {
  const auto rows = read_rows(in, 2);
  const Grid g = grid_from_rows(rows);
  std::vector<double> v(rows.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = rows[j][1];
  return {g, std::move(v)};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace oscillab::csv
