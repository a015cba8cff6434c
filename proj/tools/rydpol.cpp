// rydpol: batch front end. Every subcommand writes deterministic CSV/JSON.
//
// Exit codes: 0 success, 2 usage error, 3 numeric failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rydpol/blockade.hpp"
#include "rydpol/evolution.hpp"
#include "rydpol/integrals.hpp"
#include "rydpol/io.hpp"
#include "rydpol/params.hpp"
#include "rydpol/special_functions.hpp"
#include "rydpol/state.hpp"
#include "rydpol/wigner.hpp"

namespace {

using namespace rydpol;
using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelOptions {
    std::string potential = "vdw";
    std::string sign = "attractive";

    void add(CLI::App* cmd) {
        cmd->add_option("--potential", potential, "Interaction kernel: vdw (1/r^6) or dd (1/r^3)")
            ->check(CLI::IsMember({"vdw", "dd"}))
            ->capture_default_str();
        cmd->add_option("--sign", sign, "attractive or repulsive")
            ->check(CLI::IsMember({"attractive", "repulsive"}))
            ->capture_default_str();
    }
    InteractionModel model() const { return {parse_potential(potential), parse_sign(sign)}; }
};

struct McOptions {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 1;

    void add(CLI::App* cmd) {
        cmd->add_option("--samples", samples, "Monte-Carlo samples per point (>= 1000)")->capture_default_str();
        cmd->add_option("--seed", seed, "Monte-Carlo seed")->capture_default_str();
        cmd->add_option("--threads", threads, "Worker threads (output does not depend on this)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    }
    McSettings settings() const { return {samples, seed, threads}; }
};

/// Writes to `path`, or stdout when empty.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

template <typename T>
std::vector<T> parse_list_or_usage(const std::string& text, auto&& parse) {
    std::vector<T> out;
    try {
        for (const auto& item : split_list(text)) out.push_back(parse(item));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return out;
}

std::vector<double> grid_or_usage(const std::string& text, bool log_scale) {
    try {
        return parse_time_grid(text, log_scale);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad grid '") + text + "': " + e.what());
    } catch (const std::out_of_range&) {
        throw UsageError("bad grid '" + text + "'");
    }
}

std::pair<double, double> range_or_usage(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) throw std::invalid_argument("expected lo:hi");
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw UsageError("bad range '" + text + "' (expected lo:hi)");
    }
}

// params ---------------------------------------------------------------------

struct ParamsCommand {
    ModelOptions model;
    int atoms = 0;
    double radius_um = 0.0;
    std::optional<double> c6;
    std::optional<double> c3;
    double tau_ns = 0.0;
    double t_ns = 0.0;
    double alpha = 1.0;
    std::string format = "csv";
    std::string output;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("params", "Map physical parameters to scaled units");
        model.add(cmd);
        cmd->add_option("--N", atoms, "Number of atoms")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--R-um", radius_um, "Sphere radius in micrometres")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--c6-ghz-um6", c6, "|C6|/(2 pi) in GHz um^6 (vdw)")->check(CLI::PositiveNumber);
        cmd->add_option("--c3-ghz-um3", c3, "|C3|/(2 pi) in GHz um^3 (dd)")->check(CLI::PositiveNumber);
        cmd->add_option("--tau-ns", tau_ns, "Excitation pulse duration in ns")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--T-ns", t_ns, "Interaction time in ns")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--alpha", alpha, "Target |alpha|")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        cmd->add_option("-o,--output", output, "Output file (default stdout)");
        cmd->callback([this] { run(); });
    }

    void run() {
        const auto m = model.model();
        const auto coefficient = m.potential == Potential::VanDerWaals ? c6 : c3;
        if (!coefficient)
            throw UsageError(m.potential == Potential::VanDerWaals ? "--c6-ghz-um6 is required for --potential vdw"
                                                                   : "--c3-ghz-um3 is required for --potential dd");
        PhysicalParams p{atoms, radius_um, *coefficient, tau_ns, t_ns, alpha};
        const auto s = to_scaled(p, m);
        const double omega = pulse_area_for_alpha(atoms, alpha);

        std::vector<std::pair<std::string, double>> rows = {
            {"N", static_cast<double>(atoms)},
            {"R_um", radius_um},
            {"c_ghz_um_p", *coefficient},
            {"exponent", static_cast<double>(m.exponent())},
            {"T_R_ns", s.characteristic_time_ns},
            {"tau_ns", tau_ns},
            {"t_pulse", s.scaled_pulse},
            {"T_ns", t_ns},
            {"t", s.scaled_time},
            {"alpha_abs", alpha},
            {"pulse_area", omega},
            {"expected_excitations", expected_excitations(atoms, omega)},
            {"n_max", static_cast<double>(s.n_max)},
        };
        Output out(output);
        if (format == "json") {
            json j = json::object();
            for (const auto& [k, v] : rows) j[k] = v;
            out.stream() << j.dump(2) << '\n';
        } else {
            out.stream() << "quantity,value\n";
            for (const auto& [k, v] : rows) out.stream() << k << ',' << format_number(v) << '\n';
        }
    }
};

// un -------------------------------------------------------------------------

struct UnCommand {
    ModelOptions model;
    McOptions mc;
    std::string n_list;
    std::string t_grid;
    std::string scale = "lin";
    std::string methods = "ansatz-m2";
    std::string output;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("un", "U_n(t) = <n|U|n> curves");
        model.add(cmd);
        mc.add(cmd);
        cmd->add_option("--n", n_list, "Comma-separated excitation numbers")->required();
        cmd->add_option("--t", t_grid, "Scaled time or grid lo:hi:points")->required();
        cmd->add_option("--scale", scale, "Grid spacing: lin or log")->check(CLI::IsMember({"lin", "log"}))->capture_default_str();
        cmd->add_option("--method", methods, "Comma-separated: ansatz-m2, ansatz-m3, expansion, mc")->capture_default_str();
        cmd->add_option("-o,--output", output, "Output CSV (default stdout)");
        cmd->callback([this] { run(); });
    }

    void run() {
        const auto ns = parse_list_or_usage<int>(n_list, [](const std::string& s) {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size() || v < 0) throw std::invalid_argument("excitation numbers must be integers >= 0");
            return v;
        });
        const auto ms = parse_list_or_usage<UnMethod>(methods, [](const std::string& s) { return parse_un_method(s); });
        const auto ts = grid_or_usage(t_grid, scale == "log");
        for (double t : ts)
            if (t < 0.0) throw UsageError("times must be non-negative");
        if (mc.samples < 1000) throw UsageError("--samples must be at least 1000");

        std::vector<UnCurve> curves;
        for (UnMethod m : ms)
            for (int n : ns) curves.push_back(un_curve(n, m, ts, model.model(), mc.settings()));
        Output out(output);
        write_un_csv(out.stream(), curves);
    }
};

// evolve ---------------------------------------------------------------------

struct EvolveCommand {
    ModelOptions model;
    McOptions mc;
    double alpha = 1.0;
    double alpha_phase = 0.0;
    double t = 0.0;
    int n_max = -1;
    std::string method = "ansatz-m2";
    std::string readout = "renormalized";
    std::string output;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("evolve", "Evolve a coherent polariton state and write a state file");
        model.add(cmd);
        mc.add(cmd);
        cmd->add_option("--alpha", alpha, "|alpha| of the initial coherent state")->check(CLI::NonNegativeNumber)->capture_default_str();
        cmd->add_option("--alpha-phase", alpha_phase, "Phase of alpha in radians")->capture_default_str();
        cmd->add_option("--t", t, "Scaled interaction time")->required()->check(CLI::NonNegativeNumber);
        cmd->add_option("--n-max", n_max, "Fock truncation (default: tail below 1e-10, at least 2)");
        cmd->add_option("--method", method, "ansatz-m2, ansatz-m3, expansion or mc")->capture_default_str();
        cmd->add_option("--readout", readout, "renormalized or unnormalized")->capture_default_str();
        cmd->add_option("-o,--output", output, "Output state JSON (default stdout)");
        cmd->callback([this] { run(); });
    }

    void run() {
        UnMethod m;
        ReadoutMode mode;
        try {
            m = parse_un_method(method);
            mode = parse_readout_mode(readout);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        const int nm = n_max >= 0 ? n_max : std::max(2, default_n_max(alpha));
        const auto initial = coherent_amplitudes(std::polar(alpha, alpha_phase), nm);
        const auto evolved = evolve_state(initial, t, model.model(), {m, mc.settings()});
        // Validates that the readout is a proper density matrix.
        (void)readout_density_matrix(evolved, mode);

        json j = state_to_json(evolved);
        j["t"] = t;
        j["method"] = to_string(m);
        j["readout"] = to_string(mode);
        j["potential"] = model.potential;
        j["sign"] = model.sign;
        Output out(output);
        out.stream() << j.dump(2) << '\n';
    }
};

// wigner ---------------------------------------------------------------------

struct WignerCommand {
    std::string state_path;
    std::string q_range = "-5:5";
    std::string p_range = "-5:5";
    double step = 0.05;
    std::string readout;
    std::optional<double> alpha_re;
    std::optional<double> alpha_im;
    std::string output;
    std::string summary;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("wigner", "Wigner function of a state file");
        cmd->add_option("--state", state_path, "State JSON file")->required();
        cmd->add_option("--q", q_range, "q range lo:hi")->capture_default_str();
        cmd->add_option("--p", p_range, "p range lo:hi")->capture_default_str();
        cmd->add_option("--step", step, "Grid step")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--readout", readout, "renormalized or unnormalized (default: from state file)");
        cmd->add_option("--alpha-re", alpha_re, "Real part of alpha for the fidelity target (default: from state)");
        cmd->add_option("--alpha-im", alpha_im, "Imaginary part of alpha for the fidelity target");
        cmd->add_option("-o,--output", output, "Output CSV q,p,w (default stdout)");
        cmd->add_option("--summary", summary, "Summary JSON path (default stderr)");
        cmd->callback([this] { run(); });
    }

    void run() {
        const auto [qlo, qhi] = range_or_usage(q_range);
        const auto [plo, phi] = range_or_usage(p_range);
        std::ifstream in(state_path);
        if (!in) throw FormatError("cannot open state file '" + state_path + "'");
        json j;
        try {
            in >> j;
        } catch (const json::parse_error& e) {
            throw FormatError(std::string("state file is not valid JSON: ") + e.what());
        }
        const auto state = state_from_json(j);
        std::string mode_text = readout;
        if (mode_text.empty()) mode_text = j.value("readout", std::string("renormalized"));
        ReadoutMode mode;
        try {
            mode = parse_readout_mode(mode_text);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        std::complex<double> alpha = state.alpha;
        if (alpha_re || alpha_im) alpha = {alpha_re.value_or(0.0), alpha_im.value_or(0.0)};

        const auto rho = readout_density_matrix(state, mode);
        const auto grid = wigner_of(rho, {qlo, qhi, step}, {plo, phi, step});
        if (grid.coverage_warning)
            std::cerr << fmt::format("warning: grid integral misses Tr rho by {:.3e}; enlarge the grid\n",
                                     grid.normalization_deficit);
        Output out(output);
        write_wigner_csv(out.stream(), grid);
        const auto s = summary_to_json(summarize(rho, grid, alpha)).dump(2);
        if (summary.empty()) {
            std::cerr << s << '\n';
        } else {
            std::ofstream sf(summary);
            if (!sf) throw UsageError("cannot open summary file '" + summary + "'");
            sf << s << '\n';
        }
    }
};

// integrals ------------------------------------------------------------------

struct IntegralsCommand {
    ModelOptions model;
    McOptions mc;
    std::string t_grid;
    std::string scale = "lin";
    std::string methods = "quadrature";
    double tol = 1e-12;
    std::string output;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("integrals", "Interaction integrals I2, J3, I3");
        model.add(cmd);
        mc.add(cmd);
        cmd->add_option("--t", t_grid, "Scaled time or grid lo:hi:points")->required();
        cmd->add_option("--scale", scale, "Grid spacing: lin or log")->check(CLI::IsMember({"lin", "log"}))->capture_default_str();
        cmd->add_option("--method", methods, "Comma-separated: analytic, quadrature, short-time, mc")->capture_default_str();
        cmd->add_option("--tol", tol, "Quadrature absolute tolerance")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("-o,--output", output, "Output CSV (default stdout)");
        cmd->callback([this] { run(); });
    }

    void run() {
        const auto ms = parse_list_or_usage<IntegralMethod>(methods, [](const std::string& s) { return parse_integral_method(s); });
        const auto ts = grid_or_usage(t_grid, scale == "log");
        for (double t : ts)
            if (t < 0.0) throw UsageError("times must be non-negative");
        const auto m = model.model();
        std::vector<PairIntegrals> rows;
        for (IntegralMethod method : ms) {
            if (method == IntegralMethod::MonteCarlo) {
                if (mc.samples < 1000) throw UsageError("--samples must be at least 1000");
                const auto mcrows = triple_integrals_mc_curve(m, ts, mc.settings());
                rows.insert(rows.end(), mcrows.begin(), mcrows.end());
                continue;
            }
            for (double t : ts) {
                switch (method) {
                    case IntegralMethod::Analytic: rows.push_back(i2_analytic(m, t)); break;
                    case IntegralMethod::Quadrature: rows.push_back(i2_quadrature(m, t, tol)); break;
                    case IntegralMethod::ShortTime: rows.push_back(i2_short_time(m, t)); break;
                    default: break;
                }
                if (rows.back().out_of_range)
                    std::cerr << fmt::format("warning: t = {} outside the validated range of {}\n", t,
                                             to_string(method));
            }
        }
        Output out(output);
        write_integrals_csv(out.stream(), rows);
    }
};

// blockade -------------------------------------------------------------------

struct BlockadeCommand {
    ModelOptions model;
    std::string tau_grid;
    std::string t_grid;
    std::string scale = "lin";
    std::string pulse = "square";
    std::string output;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("blockade", "Excitation-epoch correction factor c(tau, T)");
        model.add(cmd);
        cmd->add_option("--tau", tau_grid, "Scaled pulse duration or grid")->required();
        cmd->add_option("--T", t_grid, "Scaled interaction time or grid (each >= tau)")->required();
        cmd->add_option("--scale", scale, "Grid spacing: lin or log")->check(CLI::IsMember({"lin", "log"}))->capture_default_str();
        cmd->add_option("--pulse", pulse, "square or gaussian")->check(CLI::IsMember({"square", "gaussian"}))->capture_default_str();
        cmd->add_option("-o,--output", output, "Output CSV (default stdout)");
        cmd->callback([this] { run(); });
    }

    void run() {
        const auto taus = grid_or_usage(tau_grid, scale == "log");
        const auto ts = grid_or_usage(t_grid, scale == "log");
        std::vector<BlockadeCorrection> rows;
        for (double tau : taus)
            for (double t : ts)
                rows.push_back(correction_factor(ExcitationPulse(parse_pulse_shape(pulse), tau), t, model.model()));
        Output out(output);
        write_blockade_csv(out.stream(), rows);
    }
};

int report(const std::string& message, int code, bool as_json) {
    if (as_json)
        std::cerr << json{{"error", message}, {"exit_code", code}}.dump() << '\n';
    else
        std::cerr << "error: " << message << '\n';
    return code;
}

bool wants_json(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--format" && std::string(argv[i + 1]) == "json") return true;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--format=json") return true;
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rydberg-polariton collision simulator: U_n curves, interaction integrals, Wigner functions"};
    app.require_subcommand(1);
    ParamsCommand params;
    UnCommand un;
    EvolveCommand evolve;
    WignerCommand wigner;
    IntegralsCommand integrals;
    BlockadeCommand blockade;
    params.add(app);
    un.add(app);
    evolve.add(app);
    wigner.add(app);
    integrals.add(app);
    blockade.add(app);

    const bool as_json = wants_json(argc, argv);
    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        // Callbacks run inside parse(); their exceptions are not ParseErrors.
        if (as_json) return report(e.what(), kExitUsage, true);
        app.exit(e);
        return kExitUsage;
    } catch (const UsageError& e) {
        return report(e.what(), kExitUsage, as_json);
    } catch (const FormatError& e) {
        return report(e.what(), kExitUsage, as_json);
    } catch (const std::invalid_argument& e) {
        return report(e.what(), kExitUsage, as_json);
    } catch (const std::exception& e) {
        return report(e.what(), kExitNumeric, as_json);
    }
    return 0;
}
