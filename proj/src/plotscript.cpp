#include "decay/plotscript.hpp"

#include "decay/bw.hpp"
#include "decay/csv.hpp"

#include <cstdio>
#include <filesystem>

namespace decay {

FigureId parse_figure(std::string_view name) {
  if (name == "fig1") return FigureId::fig1;
  if (name == "fig2") return FigureId::fig2;
  if (name == "fig3") return FigureId::fig3;
  if (name == "fig4") return FigureId::fig4;
  throw ConfigError("unknown figure '" + std::string(name) + "' (expected fig1..fig4)");
}

std::string_view figure_name(FigureId id) {
  switch (id) {
    case FigureId::fig1:
      return "fig1";
    case FigureId::fig2:
      return "fig2";
    case FigureId::fig3:
      return "fig3";
    case FigureId::fig4:
      return "fig4";
  }
  return "fig1";
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "''";
    else out += c;
  }
  return out + "'";
}

std::string using_clause(std::size_t x, std::size_t y) {
  return "using " + std::to_string(x + 1) + ":" + std::to_string(y + 1);
}

// "time: 1" metadata gives a "t = 1" title; otherwise the file name.
std::string title_of(const CsvTable& table, const std::string& path) {
  for (const auto& line : table.metadata) {
    if (line.rfind("time: ", 0) == 0) return "t = " + line.substr(6);
  }
  return std::filesystem::path(path).filename().string();
}

std::string preamble(FigureId figure, const std::string& image, const std::string& size) {
  std::string s;
  s += "# gnuplot script, " + std::string(figure_name(figure)) + "\n";
  s += "set datafile separator ','\n";
  s += "set datafile commentschars '#'\n";
  s += "set key autotitle columnheader\n";
  s += "set terminal pngcairo size " + size + "\n";
  s += "set output " + quote(image) + "\n";
  return s;
}

std::string spectra_plot(const std::vector<std::string>& paths, const std::string& column) {
  std::string s = "plot ";
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const CsvTable table = read_csv(paths[i]);
    const std::size_t x = table.column("omega");
    const std::size_t y = table.column(column);
    if (i) s += ", \\\n     ";
    s += quote(paths[i]) + " " + using_clause(x, y) + " with lines lw 2 dt " + std::to_string(i + 1) +
         " title " + quote(title_of(table, paths[i]));
  }
  return s + "\n";
}

}  // namespace

std::string emit_plotscript(FigureId figure, const std::vector<std::string>& csv_paths, const std::string& image) {
  if (csv_paths.empty()) throw ConfigError("plot script needs at least one CSV file");
  const std::string png = image.empty() ? std::string(figure_name(figure)) + ".png" : image;
  std::string s;
  switch (figure) {
    case FigureId::fig1:
      s = preamble(figure, png, "800,600");
      s += "set xlabel 'omega'\nset ylabel 'eta(t, omega)'\n";
      s += spectra_plot(csv_paths, "eta");
      break;
    case FigureId::fig2:
      s = preamble(figure, png, "800,600");
      s += "set xlabel 'omega'\nset ylabel 'eta(t, omega) / eta(t, M)'\n";
      s += spectra_plot(csv_paths, "eta_normalized");
      break;
    case FigureId::fig3: {
      if (csv_paths.size() != 1) throw ConfigError("fig3 takes exactly one fwhm CSV");
      const CsvTable table = read_csv(csv_paths[0]);
      const std::size_t x = table.column("t");
      const std::size_t y = table.column("delta_omega_over_gamma");
      char ref[64];
      std::snprintf(ref, sizeof ref, "%.4f", 2.0 * short_time_constant());
      std::string gamma = "1";
      for (const auto& line : table.metadata) {
        if (line.rfind("gamma: ", 0) != 0) continue;
        try {
          gamma = format_number(std::stod(line.substr(7)));
        } catch (const std::exception&) {
          throw ConfigError("malformed gamma metadata in '" + csv_paths[0] + "'");
        }
      }
      s = preamble(figure, png, "800,600");
      s += "gamma = " + gamma + "\n";
      s += "set logscale x\nset xlabel 't / tau'\nset ylabel 'delta omega / Gamma'\nset yrange [0:*]\n";
      s += "plot " + quote(csv_paths[0]) + " using ($" + std::to_string(x + 1) + " * gamma):" + std::to_string(y + 1) +
           " with lines lw 2 dt 1 title 'delta omega / Gamma', \\\n";
      s += "     " + std::string(ref) + " / x with lines lw 1 dt 2 title '" + ref + " / t'\n";
      break;
    }
    case FigureId::fig4: {
      if (csv_paths.size() != 2) throw ConfigError("fig4 takes a survival CSV and an eta CSV");
      const CsvTable survival = read_csv(csv_paths[0]);
      const std::size_t tx = survival.column("t_over_tau");
      const std::size_t p = survival.column("survival");
      const std::size_t e = survival.column("exponential");
      const CsvTable eta = read_csv(csv_paths[1]);
      const std::size_t w = eta.column("omega");
      if (eta.columns.size() < 2) throw ConfigError("eta CSV has no spectrum columns");
      s = preamble(figure, png, "800,1000");
      s += "set multiplot layout 2,1\n";
      s += "set xlabel 't / tau'\nset ylabel 'p(t)'\n";
      s += "plot " + quote(csv_paths[0]) + " " + using_clause(tx, p) + " with lines lw 2 dt 1 title 'p(t)', \\\n";
      s += "     " + quote(csv_paths[0]) + " " + using_clause(tx, e) + " with lines lw 1 dt 2 title 'exp(-t / tau)'\n";
      s += "set xlabel 'omega'\nset ylabel 'eta(t, omega) / eta(t, M)'\n";
      s += "plot ";
      int style = 1;
      for (std::size_t c = 0; c < eta.columns.size(); ++c) {
        if (c == w) continue;
        if (style > 1) s += ", \\\n     ";
        s += quote(csv_paths[1]) + " " + using_clause(w, c) + " with lines lw 2 dt " + std::to_string(style) +
             " title " + quote(eta.columns[c]);
        ++style;
      }
      s += "\nunset multiplot\n";
      break;
    }
  }
  return s;
}

}  // namespace decay
