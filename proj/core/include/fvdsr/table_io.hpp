#pragma once

// Fixed-column CSV and JSON serialization of spectra and scans.

#include <iosfwd>
#include <span>
#include <string>

#include "fvdsr/scattering.hpp"
#include "fvdsr/spectra.hpp"

namespace fvdsr {

/// "sr", "dsr", "gdsr", "ac", "ms" or "generic".
std::string model_label(const DeformationModel& model);

/// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

inline constexpr const char* kSpectrumHeader =
    "model,l_p,chi,alpha2,delta_alpha,n,E_plus,E_minus,spacing_plus,valid";
inline constexpr const char* kScanHeader = "model,l_p,chi,E,k,inner_regime,inner_value,R,T,flag";

void write_spectrum_csv(std::ostream& os, std::span<const SpectrumResult> spectra);
void write_spectrum_json(std::ostream& os, std::span<const SpectrumResult> spectra);

struct ScanSeries {
    DeformationModel model;
    std::vector<ScatteringPoint> points;
};

void write_scan_csv(std::ostream& os, std::span<const ScanSeries> series);
void write_scan_json(std::ostream& os, std::span<const ScanSeries> series);

}  // namespace fvdsr
