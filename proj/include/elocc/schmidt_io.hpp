#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "elocc/monotone.hpp"

namespace elocc {

/// Reads a single-column CSV with header `lambda`. Rows need not be sorted;
/// normalize_descending() is applied with the given truncation.
SchmidtVector read_schmidt_csv(std::istream& in, double trunc_tol = kDefaultTruncation);
SchmidtVector read_schmidt_csv(const std::filesystem::path& path,
                               double trunc_tol = kDefaultTruncation);

std::string format_schmidt_csv(const SchmidtVector& v);

}  // namespace elocc
