#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fvdsr/deformation.hpp"
#include "fvdsr/scattering.hpp"
#include "fvdsr/spectra.hpp"

namespace fvdsr::cli {

enum class Command { SpectrumWell, SpectrumOscillator, ScatterBarrier, ScatterStep, Threshold, Resonances, Check };
enum class Format { Csv, Json };

std::string_view command_name(Command c) noexcept;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConflictError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Geometry = std::variant<WellConfig, OscillatorConfig, BarrierConfig, StepConfig>;

struct RunConfig {
    Command command = Command::Check;
    std::vector<DeformationModel> models;  // one entry per (model, l_p) pair
    Geometry geometry;
    double e_min = 0.0;
    double e_max = 10.0;
    int points = 1001;
    int count = 5;
    std::string output = ".";  // directory for table commands, file for the rest; "-" is stdout
    Format format = Format::Csv;
    unsigned threads = 1;
};

/// argv excludes the program name. file_text holds key=value lines; when it
/// is empty and argv carries --config, the file is read from disk.
RunConfig parse_config(const std::vector<std::string>& argv,
                       const std::optional<std::string>& file_text = std::nullopt);

/// Returns the process exit status: 0 ok, 2 domain or IO error, 3 check failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full front end: parse, run, map errors to exit codes and a JSON error
/// line on err.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace fvdsr::cli
