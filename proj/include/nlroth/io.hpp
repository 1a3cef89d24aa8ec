#pragma once

#include <filesystem>
#include <string>

#include "nlroth/core.hpp"
#include "nlroth/factors.hpp"

// File formats:
//   set file      header "N=<N>", then member integers, ascending, one per line
//   function file CSV with header "x,re,im", rows for x = 1..N
//   factor file   CSV with header "x,atom_id" plus a JSON metadata sidecar
// Doubles are written with enough digits to round-trip exactly.

namespace nlroth {

void write_set_file(const std::filesystem::path& path, const IntegerSet& a);
IntegerSet read_set_file(const std::filesystem::path& path);

void write_function_file(const std::filesystem::path& path, const BoundedFunction& f);
BoundedFunction read_function_file(const std::filesystem::path& path);

void write_factor_file(const std::filesystem::path& csv_path,
                       const std::filesystem::path& meta_path, const Factor& b);
Factor read_factor_file(const std::filesystem::path& csv_path,
                        const std::filesystem::path& meta_path);

/// %.17g rendering, the shortest form that survives a parse round-trip.
std::string format_double(double v);

}  // namespace nlroth
