#include "fvdsr/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace fvdsr {

namespace {

using nlohmann::ordered_json;

ordered_json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

std::string_view inner_regime_name(const LocalWavenumber& w) {
    if (!w.valid) return "invalid";
    return w.regime == WaveRegime::Propagating ? "propagating" : "evanescent";
}

}  // namespace

std::string model_label(const DeformationModel& model) {
    if (model.is_ac_type()) return "ac";
    if (model.is_ms_type()) return "ms";
    return std::string(kind_name(model.kind));
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_spectrum_csv(std::ostream& os, std::span<const SpectrumResult> spectra) {
    os << kSpectrumHeader << '\n';
    for (const auto& s : spectra) {
        const std::string prefix = model_label(s.model) + ',' + format_double(s.model.l_p) + ',' +
                                   format_double(s.model.chi) + ',' + format_double(s.model.alpha2) + ',' +
                                   format_double(s.model.delta_alpha) + ',';
        for (const auto& r : s.rows) {
            os << prefix << r.n << ',' << format_double(r.e_plus) << ',' << format_double(r.e_minus) << ','
               << format_double(r.spacing_plus) << ',' << (r.valid ? 1 : 0) << '\n';
        }
    }
}

void write_spectrum_json(std::ostream& os, std::span<const SpectrumResult> spectra) {
    ordered_json rows = ordered_json::array();
    for (const auto& s : spectra) {
        for (const auto& r : s.rows) {
            rows.push_back({{"model", model_label(s.model)},
                            {"l_p", s.model.l_p},
                            {"chi", s.model.chi},
                            {"alpha2", s.model.alpha2},
                            {"delta_alpha", s.model.delta_alpha},
                            {"n", r.n},
                            {"E_plus", number(r.e_plus)},
                            {"E_minus", number(r.e_minus)},
                            {"spacing_plus", number(r.spacing_plus)},
                            {"valid", r.valid}});
        }
    }
    os << rows.dump(1) << '\n';
}

void write_scan_csv(std::ostream& os, std::span<const ScanSeries> series) {
    os << kScanHeader << '\n';
    for (const auto& s : series) {
        const std::string prefix =
            model_label(s.model) + ',' + format_double(s.model.l_p) + ',' + format_double(s.model.chi) + ',';
        for (const auto& p : s.points) {
            os << prefix << format_double(p.energy) << ',' << format_double(p.k_out) << ','
               << inner_regime_name(p.inner) << ',' << format_double(p.inner.value) << ','
               << format_double(p.r_coef) << ',' << format_double(p.t_coef) << ',' << regime_name(p.flag)
               << '\n';
        }
    }
}

void write_scan_json(std::ostream& os, std::span<const ScanSeries> series) {
    ordered_json rows = ordered_json::array();
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            rows.push_back({{"model", model_label(s.model)},
                            {"l_p", s.model.l_p},
                            {"chi", s.model.chi},
                            {"E", p.energy},
                            {"k", number(p.k_out)},
                            {"inner_regime", inner_regime_name(p.inner)},
                            {"inner_value", number(p.inner.value)},
                            {"R", number(p.r_coef)},
                            {"T", number(p.t_coef)},
                            {"flag", regime_name(p.flag)}});
        }
    }
    os << rows.dump(1) << '\n';
}

}  // namespace fvdsr
