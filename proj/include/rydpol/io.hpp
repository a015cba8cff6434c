#ifndef RYDPOL_IO_HPP
#define RYDPOL_IO_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rydpol/blockade.hpp"
#include "rydpol/evolution.hpp"
#include "rydpol/integrals.hpp"
#include "rydpol/state.hpp"
#include "rydpol/wigner.hpp"

namespace rydpol {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest round-trippable-enough decimal used in every artifact (%.15g).
std::string format_number(double x);

/// {"n_max", "amplitudes": [[re, im], ...], "norm_deficit", "alpha": [re, im]}
nlohmann::json state_to_json(const PolaritonState& s);
/// Throws FormatError on missing fields, wrong types or length mismatch.
PolaritonState state_from_json(const nlohmann::json& j);

PolaritonState read_state_file(const std::string& path);
void write_state_file(const std::string& path, const nlohmann::json& j);

inline constexpr const char* kIntegralsCsvHeader = "t,re_I2,im_I2,re_J3,im_J3,re_I3,im_I3,method,stat_err";
inline constexpr const char* kUnCsvHeader = "t,n,re_U,im_U,abs_U,method,stat_err";
inline constexpr const char* kWignerCsvHeader = "q,p,w";
inline constexpr const char* kBlockadeCsvHeader = "tau,T,c_real,c_imag_ratio";

/// Absent J3/I3 are written as "nan".
void write_integrals_csv(std::ostream& os, std::span<const PairIntegrals> rows);
void write_un_csv(std::ostream& os, std::span<const UnCurve> curves);
void write_wigner_csv(std::ostream& os, const WignerGrid& w);
void write_blockade_csv(std::ostream& os, std::span<const BlockadeCorrection> rows);

struct WignerSummary {
    double min_w = 0.0;
    double negative_volume = 0.0;
    double purity = 0.0;
    double fidelity = 0.0;
    double trace = 0.0;
};

WignerSummary summarize(const FockDensityMatrix& rho, const WignerGrid& w, std::complex<double> alpha);
nlohmann::json summary_to_json(const WignerSummary& s);

/// Parses "v" or "lo:hi:points" into a grid; `log_scale` spaces points
/// geometrically (requires lo > 0).
std::vector<double> parse_time_grid(const std::string& text, bool log_scale = false);
std::vector<int> parse_int_list(const std::string& text);
std::vector<std::string> split_list(const std::string& text);

}  // namespace rydpol

#endif  // RYDPOL_IO_HPP
