#include <cstdio>
#include <sstream>

#include "subclust/harness.hpp"

namespace subclust {
namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

constexpr std::array<const char*, 4> kIndicators = {"Mean", "STD", "Max", "Min"};

std::string cell_text(const GridCell& cell, std::size_t indicator) {
  if (!cell.result) return "ERR";
  const auto& r = *cell.result;
  switch (indicator) {
    case 0: return fixed2(r.mean);
    case 1: return fixed2(r.std);
    case 2: return fixed2(r.max);
    default: return fixed2(r.min);
  }
}

}  // namespace

std::string emit_table(const GridResult& grid, TableFormat format) {
  std::ostringstream out;
  if (format == TableFormat::csv) {
    out << "method,indicator";
    for (auto s : kTableSolvers) out << ',' << upper(to_string(s));
    out << '\n';
    for (std::size_t a = 0; a < kTableAffinities.size(); ++a) {
      for (std::size_t ind = 0; ind < kIndicators.size(); ++ind) {
        out << upper(to_string(kTableAffinities[a])) << ',' << kIndicators[ind];
        for (std::size_t s = 0; s < kTableSolvers.size(); ++s) {
          out << ',' << cell_text(grid.cells[a][s], ind);
        }
        out << '\n';
      }
    }
    return out.str();
  }

  char line[128];
  if (!grid.dataset_name.empty()) out << "Dataset: " << grid.dataset_name << '\n';
  std::snprintf(line, sizeof line, "%-8s%-11s%9s%9s%9s%9s\n", "Method", "indicator", "LSR", "SMR",
                "LRRSC", "SSC");
  out << line;
  for (std::size_t a = 0; a < kTableAffinities.size(); ++a) {
    for (std::size_t ind = 0; ind < kIndicators.size(); ++ind) {
      const std::string method = ind == 0 ? upper(to_string(kTableAffinities[a])) : "";
      std::snprintf(line, sizeof line, "%-8s%-11s%9s%9s%9s%9s\n", method.c_str(), kIndicators[ind],
                    cell_text(grid.cells[a][0], ind).c_str(),
                    cell_text(grid.cells[a][1], ind).c_str(),
                    cell_text(grid.cells[a][2], ind).c_str(),
                    cell_text(grid.cells[a][3], ind).c_str());
      out << line;
    }
  }
  for (std::size_t a = 0; a < kTableAffinities.size(); ++a) {
    for (std::size_t s = 0; s < kTableSolvers.size(); ++s) {
      const auto& cell = grid.cells[a][s];
      if (!cell.result) {
        out << "ERR " << upper(to_string(kTableAffinities[a])) << '/'
            << upper(to_string(kTableSolvers[s])) << ": " << cell.error << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace subclust
