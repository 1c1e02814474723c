#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "tgm/errors.hpp"
#include "tgm/harness.hpp"

namespace tgm {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::out | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string_view divergence_label(const SweepRow& row) {
  if (row.tgm.diverged && row.fdm.diverged) return "both";
  if (row.tgm.diverged) return "tgm";
  if (row.fdm.diverged) return "fdm";
  return "none";
}

}  // namespace

void export_snapshots_csv(const std::filesystem::path& path, const ExperimentResult& result) {
  auto out = open_for_write(path);
  out << "t,x,u_real,u_exact\n";
  for (const auto& snap : result.snapshots)
    for (std::size_t j = 0; j < result.grid->size(); ++j)
      out << num(snap.t) << ',' << num(result.grid->x(j)) << ',' << num(snap.u_real[j]) << ','
          << num(snap.u_exact[j]) << '\n';
  finish(out, path);
}

void export_spectra_csv(const std::filesystem::path& path, const ExperimentResult& result) {
  auto out = open_for_write(path);
  out << "t,k,re,im\n";
  for (const auto& snap : result.snapshots)
    for (std::size_t m = 0; m < result.grid->size(); ++m)
      out << num(snap.t) << ',' << num(result.grid->wavenumber(m)) << ','
          << num(snap.numeric[m].real()) << ',' << num(snap.numeric[m].imag()) << '\n';
  finish(out, path);
}

void export_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows) {
  auto out = open_for_write(path);
  out << "dt,er_tgm,er_fdm,diverged\n";
  for (const auto& row : rows)
    out << num(row.dt) << ',' << num(row.tgm.er) << ',' << num(row.fdm.er) << ','
        << divergence_label(row) << '\n';
  finish(out, path);
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  CsvTable table;
  std::string line;
  if (std::getline(in, line)) table.header = split(line);
  while (std::getline(in, line))
    if (!line.empty()) table.rows.push_back(split(line));
  return table;
}

}  // namespace tgm
