#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "fvdsr/error.hpp"
#include "fvdsr/table_io.hpp"
#include "fvdsr/validation.hpp"

namespace fvdsr::cli {

namespace {

const std::map<std::string, Command, std::less<>> kCommands{
    {"spectrum-well", Command::SpectrumWell},   {"spectrum-oscillator", Command::SpectrumOscillator},
    {"scatter-barrier", Command::ScatterBarrier}, {"scatter-step", Command::ScatterStep},
    {"threshold", Command::Threshold},          {"resonances", Command::Resonances},
    {"check", Command::Check},
};

std::string command_list() {
    std::string s;
    for (const auto& [name, _] : kCommands) s += (s.empty() ? "" : ", ") + name;
    return s;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_number(const std::string& token, const char* what) {
    double v = 0.0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw UsageError(std::string("invalid ") + what + " value '" + token + "'");
    return v;
}

std::string trim(std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
}

// key = value lines to flag tokens. '#' starts a comment, [section] lines are skipped.
std::vector<std::string> file_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty() || line.front() == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
        if (key == "config") throw UsageError("config files cannot include other config files");
        out.push_back((key.size() == 1 ? "-" : "--") + key);
        out.push_back(value);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

unsigned threads_from_env() {
    const char* env = std::getenv("FVDSR_THREADS");
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (!env || !*env) return hw;
    unsigned v = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec != std::errc{} || ptr != end || v == 0)
        throw UsageError(std::string("FVDSR_THREADS must be a positive integer, got '") + env + "'");
    return v;
}

struct Defaults {
    std::vector<std::string> models;
    std::vector<double> l_p;
};

Defaults defaults_for(Command c) {
    switch (c) {
        case Command::SpectrumWell: return {{"sr", "dsr", "gdsr"}, {0.0, 0.02, 0.2}};
        case Command::SpectrumOscillator: return {{"ac", "ms"}, {0.0, 0.01, 0.02}};
        case Command::ScatterBarrier:
        case Command::ScatterStep:
        case Command::Resonances: return {{"sr", "dsr", "gdsr"}, {0.0, 0.02, 0.06}};
        case Command::Threshold: return {{"sr", "dsr", "gdsr", "ms", "ac"}, {0.02}};
        case Command::Check: return {{}, {}};
    }
    return {};
}

DeformationModel build_model(const std::string& name, double lp, double chi, double alpha2, double delta_alpha) {
    if (name == "sr") return DeformationModel::sr();
    if (name == "dsr") return DeformationModel::dsr(lp);
    if (name == "gdsr") return DeformationModel::gdsr(lp, chi);
    if (name == "generic") return DeformationModel::generic(lp, alpha2, delta_alpha);
    if (name == "ac") return DeformationModel::ac(lp);
    if (name == "ms") return DeformationModel::ms(lp);
    throw UsageError("unknown model '" + name + "' (expected sr, dsr, gdsr, generic, ac, ms)");
}

std::ostream& open_or(std::ofstream& file, std::ostream& out, const std::string& path) {
    if (path == "-") return out;
    file.open(path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    return file;
}

void finish(std::ofstream& file, const std::string& path) {
    if (!file.is_open()) return;
    file.flush();
    if (!file) throw IoError("write to '" + path + "' failed");
}

std::vector<double> energy_grid(const RunConfig& c) {
    std::vector<double> g(static_cast<std::size_t>(c.points));
    for (int i = 0; i < c.points; ++i) g[i] = c.e_min + (c.e_max - c.e_min) * i / (c.points - 1);
    return g;
}

// Groups models by label so each output file holds one model family.
std::vector<std::pair<std::string, std::vector<DeformationModel>>> by_label(const std::vector<DeformationModel>& ms) {
    std::vector<std::pair<std::string, std::vector<DeformationModel>>> out;
    for (const auto& m : ms) {
        const std::string label = model_label(m);
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == label; });
        if (it == out.end()) out.push_back({label, {m}});
        else it->second.push_back(m);
    }
    return out;
}

std::string extension(Format f) { return f == Format::Csv ? "csv" : "json"; }

template <class Emit>
void emit_tables(const RunConfig& c, std::ostream& out, Emit&& emit) {
    const auto groups = by_label(c.models);
    if (c.output == "-") {
        emit(out, c.models);
        return;
    }
    std::filesystem::create_directories(c.output);
    for (const auto& [label, models] : groups) {
        const std::string path =
            (std::filesystem::path(c.output) / (std::string(command_name(c.command)) + "_" + label + "." +
                                                extension(c.format)))
                .string();
        std::ofstream file;
        emit(open_or(file, out, path), models);
        finish(file, path);
    }
}

int run_check_command(const RunConfig& c, std::ostream& out) {
    int failures = 0;
    for (const auto& check : oracle_suite(c.threads)) {
        const CheckResult r = run_check(check);
        const char* status = r.passed ? "PASS" : (check.gating ? "FAIL" : "INFO");
        if (!r.passed && check.gating) ++failures;
        out << '[' << status << "] " << std::left << std::setw(30) << r.name << ' ' << std::fixed
            << std::setprecision(3) << r.seconds << "s  " << r.detail << '\n';
    }
    out << (failures == 0 ? "all gating checks passed" : std::to_string(failures) + " gating check(s) failed")
        << '\n';
    return failures == 0 ? 0 : 3;
}

}  // namespace

std::string_view command_name(Command c) noexcept {
    for (const auto& [name, cmd] : kCommands)
        if (cmd == c) return name;
    return "check";
}

RunConfig parse_config(const std::vector<std::string>& argv, const std::optional<std::string>& file_text) {
    if (argv.empty()) throw UsageError("missing command; expected one of: " + command_list());
    const auto cmd_it = kCommands.find(argv.front());
    if (cmd_it == kCommands.end())
        throw UsageError("unknown command '" + argv.front() + "'; expected one of: " + command_list());

    // The config file goes first so that argv flags take precedence.
    std::vector<std::string> rest(argv.begin() + 1, argv.end());
    std::optional<std::string> text = file_text;
    for (std::size_t i = 0; i < rest.size(); ++i) {
        std::string path;
        if (rest[i] == "--config" && i + 1 < rest.size()) {
            path = rest[i + 1];
            rest.erase(rest.begin() + static_cast<long>(i), rest.begin() + static_cast<long>(i) + 2);
        } else if (rest[i].rfind("--config=", 0) == 0) {
            path = rest[i].substr(9);
            rest.erase(rest.begin() + static_cast<long>(i));
        } else if (rest[i] == "--config") {
            throw UsageError("--config needs a file argument");
        } else {
            continue;
        }
        if (!text) text = read_file(path);
        --i;
    }
    std::vector<std::string> tokens = text ? file_tokens(*text) : std::vector<std::string>{};
    tokens.insert(tokens.end(), rest.begin(), rest.end());

    RunConfig c;
    c.command = cmd_it->second;
    std::string model_text, lp_text, format_text = "csv";
    double chi = 1.0, alpha2 = 0.0, delta_alpha = 0.0;
    double mass = 1.0, width = 1.0, omega = 1.0, height = 2.0, barrier_width = 4.0;
    int nmax = 0;

    CLI::App app{"fvdsr"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    auto* o_model = app.add_option("--model,--kind", model_text, "sr|dsr|gdsr|generic|ac|ms, comma list");
    auto* o_lp = app.add_option("--lp,--l_p", lp_text, "comma list of l_p values");
    auto* o_chi = app.add_option("--chi", chi);
    auto* o_a2 = app.add_option("--alpha2", alpha2);
    auto* o_da = app.add_option("--delta-alpha,--delta_alpha", delta_alpha);
    auto* o_mass = app.add_option("--mass", mass);
    auto* o_width = app.add_option("--width", width, "well width L");
    auto* o_omega = app.add_option("--omega", omega);
    auto* o_v0 = app.add_option("--v0,--height", height);
    auto* o_a = app.add_option("-a,--barrier-width,--barrier_width", barrier_width);
    auto* o_emin = app.add_option("--emin", c.e_min);
    auto* o_emax = app.add_option("--emax", c.e_max);
    auto* o_points = app.add_option("--points", c.points);
    auto* o_nmax = app.add_option("--nmax,--n_max", nmax);
    auto* o_count = app.add_option("--count", c.count);
    auto* o_output = app.add_option("-o,--output", c.output);
    app.add_option("--format", format_text);

    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(command_name(c.command)) + ": " + e.what());
    }

    if (format_text == "csv") c.format = Format::Csv;
    else if (format_text == "json") c.format = Format::Json;
    else throw UsageError("unknown format '" + format_text + "' (expected csv or json)");

    // Command/geometry compatibility.
    std::set<const CLI::Option*> allowed;
    switch (c.command) {
        case Command::SpectrumWell: allowed = {o_mass, o_width, o_nmax}; break;
        case Command::SpectrumOscillator: allowed = {o_mass, o_omega, o_nmax}; break;
        case Command::ScatterBarrier: allowed = {o_mass, o_v0, o_a, o_emin, o_emax, o_points}; break;
        case Command::ScatterStep: allowed = {o_mass, o_v0, o_emin, o_emax, o_points}; break;
        case Command::Threshold: allowed = {o_mass, o_v0}; break;
        case Command::Resonances: allowed = {o_mass, o_v0, o_a, o_count}; break;
        case Command::Check: allowed = {}; break;
    }
    for (const CLI::Option* o : {o_mass, o_width, o_omega, o_v0, o_a, o_emin, o_emax, o_points, o_nmax, o_count}) {
        if (o->count() > 0 && !allowed.count(o))
            throw ConflictError(std::string(command_name(c.command)) + " does not take " + o->get_name());
    }
    if (c.command == Command::Check) {
        for (const CLI::Option* o : {o_model, o_lp, o_chi, o_a2, o_da})
            if (o->count() > 0) throw ConflictError("check does not take " + o->get_name());
        if (o_output->count() == 0) c.output = "-";
        c.threads = threads_from_env();
        return c;
    }

    const Defaults def = defaults_for(c.command);
    const std::vector<std::string> names = o_model->count() ? split_list(model_text) : def.models;
    if (names.empty()) throw UsageError("--model needs at least one model");
    std::vector<double> lps;
    if (o_lp->count()) {
        for (const auto& t : split_list(lp_text)) lps.push_back(parse_number(t, "--lp"));
        if (lps.empty()) throw UsageError("--lp needs at least one value");
    } else {
        lps = def.l_p;
    }
    for (const auto& n : names) {
        if (o_model->count() && o_chi->count() && n != "gdsr") throw ConflictError("--chi applies only to model gdsr, not " + n);
        if (o_model->count() && (o_a2->count() || o_da->count()) && n != "generic")
            throw ConflictError("--alpha2/--delta-alpha apply only to model generic, not " + n);
        if (n == "sr") {
            c.models.push_back(DeformationModel::sr());
            continue;
        }
        for (double lp : lps) {
            try {
                c.models.push_back(build_model(n, lp, chi, alpha2, delta_alpha));
            } catch (const Error& e) {
                throw UsageError(std::string("--lp: ") + e.what());
            }
        }
    }

    switch (c.command) {
        case Command::SpectrumWell: c.geometry = WellConfig{mass, width, o_nmax->count() ? nmax : 50}; break;
        case Command::SpectrumOscillator:
            c.geometry = OscillatorConfig{mass, omega, o_nmax->count() ? nmax : 10};
            break;
        case Command::ScatterBarrier:
        case Command::Resonances: c.geometry = BarrierConfig{mass, height, barrier_width}; break;
        case Command::ScatterStep:
        case Command::Threshold: c.geometry = StepConfig{mass, height}; break;
        case Command::Check: break;
    }
    if (c.points < 2) throw UsageError("--points must be >= 2");
    if (!(c.e_max > c.e_min)) throw UsageError("--emax must exceed --emin");
    if (c.count < 1) throw UsageError("--count must be >= 1");
    try {
        std::visit([](const auto& g) { validate(g); }, c.geometry);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (o_output->count() == 0 && (c.command == Command::Threshold || c.command == Command::Resonances))
        c.output = "-";
    c.threads = threads_from_env();
    return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    (void)err;
    switch (c.command) {
        case Command::SpectrumWell:
        case Command::SpectrumOscillator:
            emit_tables(c, out, [&](std::ostream& os, const std::vector<DeformationModel>& models) {
                std::vector<SpectrumResult> spectra;
                for (const auto& m : models) {
                    if (c.command == Command::SpectrumWell)
                        spectra.push_back(well_spectrum(std::get<WellConfig>(c.geometry), m));
                    else
                        spectra.push_back(oscillator_spectrum(std::get<OscillatorConfig>(c.geometry), m));
                }
                if (c.format == Format::Csv) write_spectrum_csv(os, spectra);
                else write_spectrum_json(os, spectra);
            });
            return 0;
        case Command::ScatterBarrier:
        case Command::ScatterStep: {
            const auto grid = energy_grid(c);
            const ScatteringGeometry geo = c.command == Command::ScatterBarrier
                                               ? ScatteringGeometry{std::get<BarrierConfig>(c.geometry)}
                                               : ScatteringGeometry{std::get<StepConfig>(c.geometry)};
            emit_tables(c, out, [&](std::ostream& os, const std::vector<DeformationModel>& models) {
                std::vector<ScanSeries> series;
                for (const auto& m : models) series.push_back({m, rt_scan(geo, m, grid, c.threads)});
                if (c.format == Format::Csv) write_scan_csv(os, series);
                else write_scan_json(os, series);
            });
            return 0;
        }
        case Command::Threshold: {
            const auto& step = std::get<StepConfig>(c.geometry);
            std::ofstream file;
            std::ostream& os = open_or(file, out, c.output);
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            if (c.format == Format::Csv) os << "model,l_p,chi,alpha2,delta_alpha,V0,m,E_star,shift\n";
            for (const auto& m : c.models) {
                const double e_star = supercritical_threshold(step, m);
                const double shift = e_star - (step.height - step.mass);
                if (c.format == Format::Csv) {
                    os << model_label(m) << ',' << format_double(m.l_p) << ',' << format_double(m.chi) << ','
                       << format_double(m.alpha2) << ',' << format_double(m.delta_alpha) << ','
                       << format_double(step.height) << ',' << format_double(step.mass) << ','
                       << format_double(e_star) << ',' << format_double(shift) << '\n';
                } else {
                    rows.push_back({{"model", model_label(m)}, {"l_p", m.l_p}, {"chi", m.chi},
                                    {"alpha2", m.alpha2}, {"delta_alpha", m.delta_alpha}, {"V0", step.height},
                                    {"m", step.mass}, {"E_star", e_star}, {"shift", shift}});
                }
            }
            if (c.format == Format::Json) os << rows.dump(1) << '\n';
            finish(file, c.output);
            return 0;
        }
        case Command::Resonances: {
            const auto& barrier = std::get<BarrierConfig>(c.geometry);
            std::ofstream file;
            std::ostream& os = open_or(file, out, c.output);
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            if (c.format == Format::Csv) os << "model,l_p,chi,j,E\n";
            for (const auto& m : c.models) {
                const auto energies = resonance_energies(barrier, m, c.count);
                for (std::size_t j = 0; j < energies.size(); ++j) {
                    if (c.format == Format::Csv)
                        os << model_label(m) << ',' << format_double(m.l_p) << ',' << format_double(m.chi) << ','
                           << j + 1 << ',' << format_double(energies[j]) << '\n';
                    else
                        rows.push_back({{"model", model_label(m)}, {"l_p", m.l_p}, {"chi", m.chi},
                                        {"j", j + 1}, {"E", energies[j]}});
                }
            }
            if (c.format == Format::Json) os << rows.dump(1) << '\n';
            finish(file, c.output);
            return 0;
        }
        case Command::Check: {
            std::ofstream file;
            std::ostream& os = open_or(file, out, c.output);
            const int status = run_check_command(c, os);
            finish(file, c.output);
            return status;
        }
    }
    return 0;
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    auto report = [&](const char* kind, std::string_view code, const std::string& message) {
        nlohmann::ordered_json line{{"error", kind}, {"code", code}, {"message", message}};
        err << line.dump() << '\n';
    };
    try {
        const RunConfig config = parse_config(argv);
        return run(config, out, err);
    } catch (const UsageError& e) {
        report("usage", "UsageError", e.what());
        return 1;
    } catch (const ConflictError& e) {
        report("usage", "ConflictError", e.what());
        return 1;
    } catch (const Error& e) {
        report("domain", to_string(e.code()), e.what());
        return 2;
    } catch (const IoError& e) {
        report("io", "IoError", e.what());
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        report("io", "IoError", e.what());
        return 2;
    }
}

}  // namespace fvdsr::cli
