#include "elocc/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "elocc/error.hpp"

namespace elocc {

using nlohmann::json;

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string format_fixed(double x, int decimals) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

namespace {

std::string cell_text(const InterceptionTable& t, std::size_t i, std::size_t j, const TableFormat& fmt) {
  const auto c = t.cell(i, j);
  if (!c) return "N";
  return fmt.paper_rounding ? format_fixed(round_up_tenth(*c), 1) : format_fixed(*c, fmt.decimals);
}

json spectrum(const SchmidtVector& v) {
  return json(std::vector<double>(v.coeffs().begin(), v.coeffs().end()));
}

}  // namespace

std::string table_csv(const InterceptionTable& table, std::string_view parameter,
                      const TableFormat& fmt) {
  std::string out(parameter);
  for (double l : table.labels()) out += "," + format_real(l);
  out += '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out += format_real(table.labels()[i]);
    for (std::size_t j = 0; j < table.size(); ++j) out += "," + cell_text(table, i, j, fmt);
    out += '\n';
  }
  return out;
}

json table_json(const InterceptionTable& table, std::string_view parameter, const TableFormat& fmt) {
  json cells = json::array();
  json all = json::array();
  for (std::size_t i = 0; i < table.size(); ++i) {
    json row = json::array();
    json row_all = json::array();
    for (std::size_t j = 0; j < table.size(); ++j) {
      const auto c = table.cell(i, j);
      if (!c) {
        row.push_back(nullptr);
      } else {
        row.push_back(fmt.paper_rounding ? round_up_tenth(*c) : *c);
      }
      row_all.push_back(table.crossings(i, j));
    }
    cells.push_back(std::move(row));
    all.push_back(std::move(row_all));
  }
  return json{{"parameter", parameter},
              {"labels", std::vector<double>(table.labels().begin(), table.labels().end())},
              {"paper_rounding", fmt.paper_rounding},
              {"cells", std::move(cells)},
              {"crossings", std::move(all)}};
}

std::string sweep_csv(const SweepResult& sweep) {
  std::size_t width = 0;
  for (const auto& pt : sweep.points) {
    width = std::max(width, pt.ground.rank());
    if (pt.excited) width = std::max(width, pt.excited->rank());
  }
  std::string out = sweep.parameter + ",state,energy";
  for (std::size_t k = 1; k <= width; ++k) out += ",lambda_" + std::to_string(k);
  out += '\n';
  auto row = [&](double value, const char* state, double energy, const SchmidtVector& v) {
    out += format_real(value) + "," + state + "," + format_real(energy);
    for (std::size_t k = 0; k < width; ++k) out += "," + (k < v.rank() ? format_real(v[k]) : std::string());
    out += '\n';
  };
  for (const auto& pt : sweep.points) {
    row(pt.value, "ground", pt.ground_energy, pt.ground);
    if (pt.excited) row(pt.value, "excited", *pt.excited_energy, *pt.excited);
  }
  return out;
}

json sweep_json(const SweepResult& sweep) {
  json points = json::array();
  for (const auto& pt : sweep.points) {
    json p{{"value", pt.value},
           {"ground_energy", pt.ground_energy},
           {"ground_degenerate", pt.ground_degenerate},
           {"ground", spectrum(pt.ground)}};
    if (pt.excited) {
      p["excited_energy"] = *pt.excited_energy;
      p["excited"] = spectrum(*pt.excited);
    }
    points.push_back(std::move(p));
  }
  return json{{"model", sweep.model.to_string()},
              {"parameter", sweep.parameter},
              {"n_sites", sweep.n_sites},
              {"cut", sweep.cut.to_string()},
              {"points", std::move(points)}};
}

json pattern_json(const PatternReport& r, double split_value) {
  auto block = [](const BlockCount& b) { return json{{"cells", b.cells}, {"crossings", b.crossings}}; };
  return json{{"pattern", to_string(r.pattern)},
              {"split", split_value},
              {"first_block", block(r.first)},
              {"second_block", block(r.second)},
              {"off_diagonal", block(r.off)},
              {"crossing_phase_first", r.crossing_phase_first},
              {"nonconforming_fraction", r.nonconforming_fraction}};
}

json bracket_json(const BracketTrace& trace) {
  auto one = [](const Bracket& b) {
    return json{{"lower", b.lower}, {"upper", b.upper}, {"step", b.step}, {"midpoint", b.midpoint()}};
  };
  json levels = json::array();
  for (const auto& b : trace.levels) levels.push_back(one(b));
  json out = one(trace.bracket);
  out["levels"] = std::move(levels);
  return out;
}

std::string bracket_csv(const BracketTrace& trace) {
  std::string out = "lower,upper,step,midpoint\n";
  for (const auto& b : trace.levels) {
    out += format_real(b.lower) + "," + format_real(b.upper) + "," + format_real(b.step) + "," +
           format_real(b.midpoint()) + "\n";
  }
  return out;
}

json scaling_json(const ScalingFit& fit, std::span<const ScalingPoint> points) {
  json pts = json::array();
  for (const auto& p : points) pts.push_back(json{{"n_sites", p.n_sites}, {"critical", p.critical}});
  return json{{"a", fit.a},
              {"b", fit.b},
              {"c", fit.c},
              {"rms_residual", fit.rms_residual},
              {"degenerate", fit.degenerate},
              {"points", std::move(pts)}};
}

std::string scaling_csv(const ScalingFit& fit, std::span<const ScalingPoint> points) {
  std::string out = "n_sites,critical,fitted\n";
  for (const auto& p : points) {
    out += std::to_string(p.n_sites) + "," + format_real(p.critical) + "," + format_real(fit(p.n_sites)) + "\n";
  }
  out += "# a=" + format_real(fit.a) + " b=" + format_real(fit.b) + " c=" + format_real(fit.c) +
         " rms=" + format_real(fit.rms_residual) + (fit.degenerate ? " degenerate" : "") + "\n";
  return out;
}

json verdict_json(const ConversionVerdict& v) {
  return json{{"direction", to_string(v.direction)}, {"crossings", v.crossings}};
}

json excited_json(const ExcitedComparison& cmp) {
  return json{{"verdict", verdict_json(cmp.verdict)},
              {"ground_energy", cmp.ground_energy},
              {"excited_energy", cmp.excited_energy},
              {"large_alpha_gap", cmp.large_alpha_gap},
              {"ground", spectrum(cmp.ground)},
              {"excited", spectrum(cmp.excited)}};
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error(ErrorCode::IoError, "write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw Error(ErrorCode::IoError, "cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace elocc
