#pragma once

#include "qes/conditions.hpp"
#include "qes/hamiltonian.hpp"
#include "qes/multimode.hpp"
#include "qes/oracle.hpp"
#include "qes/scan.hpp"
#include "qes/spectra.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qes {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficients are written as exact rational strings ("6", "-5", "1/3") and
// read from strings or JSON numbers; a JSON number is read through its
// shortest decimal form, so 0.4 becomes 2/5.
Rational rational_from_json(const json& j);

/// Object with q, eps, A (list of {s, k, value}), s0, k0 and constant.
/// Reading accepts a missing s0/k0 (inferred from A) and constant.
json spec_to_json(const HamiltonianSpec& spec);
HamiltonianSpec spec_from_json(const json& j);

json sector_to_json(const SectorBasis& sector);
SectorBasis sector_from_json(const json& j, int default_q);

struct ScanSettings {
  ScanVariable variable;
  Rational from;
  Rational to;
  int steps = 11;
  ScanMode mode = ScanMode::Scale;
};

struct RunConfig {
  std::optional<HamiltonianSpec> spec;
  std::optional<CouplingShape> shape;  // explicit "shape" block, for conditions
  int q = 2;
  std::vector<SectorBasis> sectors;
  std::optional<int> n_max;
  std::optional<double> tol;
  std::optional<ScanSettings> scan;
  std::optional<ProductHamiltonian> product;
  std::optional<int> n_max_a;
  std::optional<int> n_max_b;
};

/// The Hamiltonian may sit under "hamiltonian" or at the top level.
RunConfig config_from_json(const json& j);
RunConfig load_config(const std::string& path);

// Output documents.

json spectrum_to_json(const SpectrumResult& result, const SectorBasis* sector);
json match_report_to_json(const MatchReport& report);
json cutoff_report_to_json(const CutoffSystem& system, const FeasibilityReport& feasibility,
                           const std::vector<std::vector<Rational>>& nullspace);

/// %.17g.
std::string format_double(double v);

struct LevelRow {
  double eigenvalue = 0.0;
  double residual = 0.0;
};

/// "index,eigenvalue,residual" header plus one line per level.
std::string levels_csv(const std::vector<LevelRow>& rows);

struct ScanRow {
  double parameter = 0.0;
  std::vector<double> levels;
};

/// "parameter,E0,E1,..." header plus one line per sweep point.
std::string scan_csv(const std::vector<ScanRow>& rows);

/// 800x600 line plot, one polyline per level.
std::string scan_svg(const std::vector<ScanRow>& rows, const std::string& x_label);

std::string match_table(const MatchReport& report);

void write_text(const std::string& path, const std::string& text);

}  // namespace qes
