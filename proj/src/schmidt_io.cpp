#include "elocc/schmidt_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include "elocc/error.hpp"
#include "elocc/report.hpp"

namespace elocc {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

SchmidtVector read_schmidt_csv(std::istream& in, double trunc_tol) {
  std::string line;
  bool header_seen = false;
  std::vector<double> raw;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string cell = trim(line);
    if (cell.empty() || cell.front() == '#') continue;
    if (!header_seen) {
      if (cell != "lambda") {
        throw Error(ErrorCode::ParseError, "expected header 'lambda', got '" + cell + "'");
      }
      header_seen = true;
      continue;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
      std::ostringstream msg;
      msg << "line " << line_no << ": not a number: '" << cell << "'";
      throw Error(ErrorCode::ParseError, msg.str());
    }
    raw.push_back(value);
  }
  if (!header_seen) throw Error(ErrorCode::ParseError, "missing 'lambda' header");
  return normalize_descending(raw, trunc_tol);
}

SchmidtVector read_schmidt_csv(const std::filesystem::path& path, double trunc_tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_schmidt_csv(in, trunc_tol);
}

std::string format_schmidt_csv(const SchmidtVector& v) {
  std::string out = "lambda\n";
  for (double x : v.coeffs()) {
    out += format_real(x);
    out += '\n';
  }
  return out;
}

}  // namespace elocc
