#ifndef DECAY_PLOTSCRIPT_HPP_
#define DECAY_PLOTSCRIPT_HPP_

// gnuplot scripts that render the CSV outputs in the layout of the four
// figures: spectra at two times, peak-normalized spectra, the width against
// time, and the band model (survival probability above, spectra below).

#include <string>
#include <string_view>
#include <vector>

namespace decay {

enum class FigureId { fig1, fig2, fig3, fig4 };

FigureId parse_figure(std::string_view name);
std::string_view figure_name(FigureId id);

/// Script text for the given CSV files. Throws ConfigError when a file lacks
/// a required column or the number of files does not fit the figure, IoError
/// when a file cannot be read.
///   fig1: spectrum CSVs (omega, eta)
///   fig2: spectrum CSVs (omega, eta_normalized)
///   fig3: one fwhm CSV (t, delta_omega_over_gamma)
///   fig4: survival CSV (t_over_tau, survival, exponential) then eta CSV (omega, ...)
std::string emit_plotscript(FigureId figure, const std::vector<std::string>& csv_paths,
                            const std::string& image = "");

}  // namespace decay

#endif  // DECAY_PLOTSCRIPT_HPP_
