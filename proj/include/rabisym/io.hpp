#ifndef RABISYM_IO_HPP
#define RABISYM_IO_HPP

#include <filesystem>
#include <string>

#include "coeffs.hpp"
#include "spectrum.hpp"
#include "symmetry.hpp"

namespace rabisym::io
{

/// Decimal with 17 significant digits (shortest spelling thereof).
std::string format_value(double v);

/// Write via temp file + rename so readers never see partial output.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// CSV: header `g,level_index,energy_rescaled,parity`, one row per
// (grid point, level); parity 1, -1, or 0 for unlabeled.
std::string scan_to_csv(const SpectrumScan& scan);

std::string crossings_to_json(const std::vector<CrossingEvent>& events);

// {"N":..., "params":{...}, "entries":[{"elem":"A","n":0,"m":0,"value":...},...]}
// with stable key order.
std::string coeff_table_to_json(const CoeffTable& table, const ModelParams& params);
CoeffTable coeff_table_from_json(const std::string& text);

std::string jsquare_to_json(const JSquarePoly& poly,
                            const std::vector<double>& analytic = {});

/// Self-contained SVG: one polyline run per level per parity stretch,
/// blue +1, red -1, gray unlabeled.
std::string scan_to_svg(const SpectrumScan& scan, int width = 900, int height = 600);

} // namespace rabisym::io

#endif
