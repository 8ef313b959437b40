#pragma once

#include "graphbeam/eigenfunctions.hpp"
#include "graphbeam/oracle.hpp"
#include "graphbeam/simulator.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace graphbeam {

inline constexpr const char* kToolVersion = "graphbeam 1.0.0";

// 17 significant digits, scientific, '.' separator, locale independent
std::string fmt_double(double x);

void write_spectrum_csv(std::ostream& os, const SpectrumReport& report);
SpectrumReport read_spectrum_csv(std::istream& is, const NetworkParams& p);

// JSON mirror with tool version, config and wall time (seconds)
nlohmann::json spectrum_json(const SpectrumReport& report, double wall_time);

void write_modes_csv(std::ostream& os,
                     const std::vector<EigenfunctionRep>& modes,
                     int grid_points);

void write_oracle_csv(std::ostream& os, const std::vector<cplx>& oracle);
nlohmann::json match_json(const MatchReport& mr, double wall_time);

void write_trace_csv(std::ostream& os, const EnergyTrace& trace);
EnergyTrace read_trace_csv(std::istream& is);
nlohmann::json decay_json(const DecayEstimate& est, double wall_time);

} // namespace graphbeam
