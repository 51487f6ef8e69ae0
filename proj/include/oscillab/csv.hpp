#pragma once

// CSV serialization: SampledFunction as x,re,im; Weight as x,w.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "oscillab/numerics.hpp"

namespace oscillab::csv {

/// Shortest decimal form that round-trips the double.
std::string format_double(double v);

void write_function(std::ostream& out, const SampledFunction& f);
void write_weight(std::ostream& out, const Weight& w);

/// Reads x,re,im rows. The x column must describe a uniform power-of-two grid.
SampledFunction read_function(std::istream& in);
Weight read_weight(std::istream& in);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace oscillab::csv
