#include "rydpol/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace rydpol {

using nlohmann::json;

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (x == 0.0) return "0";  // folds -0 into 0
    return fmt::format("{:.15g}", x);
}

json state_to_json(const PolaritonState& s) {
    json amps = json::array();
    for (Eigen::Index n = 0; n < s.amplitudes.size(); ++n)
        amps.push_back({s.amplitudes(n).real(), s.amplitudes(n).imag()});
    return {{"n_max", s.n_max()},
            {"amplitudes", amps},
            {"norm_deficit", s.norm_deficit},
            {"alpha", {s.alpha.real(), s.alpha.imag()}}};
}

namespace {

cplx complex_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError(std::string("state file: '") + what + "' must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

PolaritonState state_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("state file: top level must be an object");
    for (const char* key : {"n_max", "amplitudes", "norm_deficit", "alpha"})
        if (!j.contains(key)) throw FormatError(std::string("state file: missing field '") + key + "'");
    if (!j["n_max"].is_number_integer()) throw FormatError("state file: 'n_max' must be an integer");
    if (!j["amplitudes"].is_array()) throw FormatError("state file: 'amplitudes' must be an array");
    if (!j["norm_deficit"].is_number()) throw FormatError("state file: 'norm_deficit' must be a number");
    const int n_max = j["n_max"].get<int>();
    const auto& amps = j["amplitudes"];
    if (n_max < 0 || amps.size() != static_cast<std::size_t>(n_max) + 1)
        throw FormatError("state file: 'amplitudes' length must be n_max + 1");

    PolaritonState s;
    s.amplitudes.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) s.amplitudes(n) = complex_from(amps[n], "amplitudes[]");
    s.alpha = complex_from(j["alpha"], "alpha");
    s.norm_deficit = j["norm_deficit"].get<double>();
    if (!(s.norm_deficit >= 0.0)) throw FormatError("state file: 'norm_deficit' must be non-negative");
    return s;
}

PolaritonState read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open state file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw FormatError("state file '" + path + "' is not valid JSON: " + e.what());
    }
    return state_from_json(j);
}

void write_state_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

void write_integrals_csv(std::ostream& os, std::span<const PairIntegrals> rows) {
    os << kIntegralsCsvHeader << '\n';
    const double nan = std::nan("");
    for (const auto& r : rows) {
        const cplx j3 = r.j3.value_or(cplx(nan, nan));
        const cplx i3 = r.i3.value_or(cplx(nan, nan));
        const double err = r.method == IntegralMethod::MonteCarlo ? r.stat_error : 0.0;
        os << fmt::format("{},{},{},{},{},{},{},{},{}\n", format_number(r.t), format_number(r.i2.real()),
                          format_number(r.i2.imag()), format_number(j3.real()), format_number(j3.imag()),
                          format_number(i3.real()), format_number(i3.imag()), to_string(r.method),
                          format_number(err));
    }
}

void write_un_csv(std::ostream& os, std::span<const UnCurve> curves) {
    os << kUnCsvHeader << '\n';
    for (const auto& c : curves)
        for (const auto& p : c.points)
            os << fmt::format("{},{},{},{},{},{},{}\n", format_number(p.t), c.n, format_number(p.value.real()),
                              format_number(p.value.imag()), format_number(std::abs(p.value)), to_string(c.method),
                              format_number(p.stat_error));
}

void write_wigner_csv(std::ostream& os, const WignerGrid& w) {
    os << kWignerCsvHeader << '\n';
    for (Eigen::Index i = 0; i < w.q_axis.size(); ++i)
        for (Eigen::Index j = 0; j < w.p_axis.size(); ++j)
            os << format_number(w.q_axis(i)) << ',' << format_number(w.p_axis(j)) << ','
               << format_number(w.values(i, j)) << '\n';
}

void write_blockade_csv(std::ostream& os, std::span<const BlockadeCorrection> rows) {
    os << kBlockadeCsvHeader << '\n';
    for (const auto& r : rows)
        os << fmt::format("{},{},{},{}\n", format_number(r.tau), format_number(r.interaction_time),
                          format_number(r.c), format_number(r.ratio.imag()));
}

WignerSummary summarize(const FockDensityMatrix& rho, const WignerGrid& w, std::complex<double> alpha) {
    const auto neg = negativity(w);
    return {neg.min_value, neg.negative_volume, purity(rho), fidelity_to_truncated(rho, alpha), rho.trace()};
}

json summary_to_json(const WignerSummary& s) {
    return {{"min_w", s.min_w},
            {"negative_volume", s.negative_volume},
            {"purity", s.purity},
            {"fidelity", s.fidelity},
            {"trace", s.trace}};
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& item : split_list(text)) {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("not an integer: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

namespace {

double parse_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

}  // namespace

std::vector<double> parse_time_grid(const std::string& text, bool log_scale) {
    const auto first = text.find(':');
    if (first == std::string::npos) return {parse_double(text)};
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos) throw std::invalid_argument("grid must be 'lo:hi:points'");
    const double lo = parse_double(text.substr(0, first));
    const double hi = parse_double(text.substr(first + 1, second - first - 1));
    std::size_t used = 0;
    const std::string count_text = text.substr(second + 1);
    const long points = std::stol(count_text, &used);
    if (used != count_text.size() || points < 1) throw std::invalid_argument("grid point count must be >= 1");
    if (hi < lo) throw std::invalid_argument("grid upper bound below lower bound");
    if (log_scale && !(lo > 0.0)) throw std::invalid_argument("log grid requires a positive lower bound");
    std::vector<double> out(points);
    for (long k = 0; k < points; ++k) {
        const double f = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
        out[k] = log_scale ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
    out.back() = points == 1 ? lo : hi;
    return out;
}

}  // namespace rydpol
