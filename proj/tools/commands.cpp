#include "commands.hpp"

#include "qes/conditions.hpp"
#include "qes/hamiltonian.hpp"
#include "qes/io.hpp"
#include "qes/multimode.hpp"
#include "qes/oracle.hpp"
#include "qes/scan.hpp"
#include "qes/spectra.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace qes::cli {

namespace {

struct Options {
  std::string config;
  std::string sector = "both";
  std::optional<int> n_max;
  std::optional<double> tol;
  std::string out;
  std::string svg;
};

struct Failure {
  int code;
  std::string message;
};

std::string strip_extension(const std::string& path)
{
  for (const char* ext : {".csv", ".json"}) {
    const std::string e(ext);
    if (path.size() > e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0) {
      return path.substr(0, path.size() - e.size());
    }
  }
  return path;
}

std::vector<SectorBasis> selected_sectors(const RunConfig& cfg, const Options& opt)
{
  if (cfg.sectors.empty()) throw ConfigError("config lists no 'sectors'");
  std::vector<SectorBasis> out;
  for (const auto& s : cfg.sectors) {
    if (opt.sector == "both" || (opt.sector == "even" && s.r == 0) || (opt.sector == "odd" && s.r == 1)) {
      out.push_back(s);
    }
  }
  if (out.empty()) throw ConfigError("no configured sector matches --sector " + opt.sector);
  return out;
}

const HamiltonianSpec& require_spec(const RunConfig& cfg)
{
  if (!cfg.spec) throw ConfigError("config has no Hamiltonian (eps / A / q)");
  return *cfg.spec;
}

struct SectorSpectrum {
  SectorBasis sector;
  SpectrumResult result;
};

std::vector<SectorSpectrum> solve_sectors(const HamiltonianSpec& spec, const std::vector<SectorBasis>& sectors,
                                          double tol)
{
  std::vector<SectorSpectrum> out;
  for (const auto& sector : sectors) {
    const auto band = build_subspace_matrix(spec, sector);
    out.push_back({sector, eigen_general(band, tol)});
  }
  return out;
}

std::vector<LevelRow> merged_levels(const std::vector<SectorSpectrum>& spectra)
{
  std::vector<LevelRow> rows;
  for (const auto& s : spectra) {
    for (std::size_t i = 0; i < s.result.eigenvalues.size(); ++i) {
      rows.push_back({s.result.eigenvalues[i], s.result.residuals[i]});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.eigenvalue < b.eigenvalue; });
  return rows;
}

int cmd_validate(const Options& opt, std::ostream& out)
{
  const auto cfg = load_config(opt.config);
  const auto v = validate_ground_state(require_spec(cfg));
  out << to_string(v.status) << ": " << v.message << "\n";
  if (!opt.out.empty()) {
    write_text(strip_extension(opt.out) + ".json",
               json{{"status", to_string(v.status)}, {"message", v.message}}.dump(2) + "\n");
  }
  return v.status == GroundState::IllDefined ? 2 : 0;
}

int cmd_conditions(const Options& opt, std::ostream& out)
{
  const auto cfg = load_config(opt.config);
  CouplingShape shape;
  if (cfg.shape) {
    shape = *cfg.shape;
  } else if (cfg.spec) {
    shape = cfg.spec->shape();
  } else {
    throw ConfigError("conditions needs a 'shape' block or a Hamiltonian");
  }
  const auto sectors = selected_sectors(cfg, opt);
  CutoffSystem sys = build_cutoff_system(shape, sectors.front());
  for (std::size_t i = 1; i < sectors.size(); ++i) sys = combine(sys, build_cutoff_system(shape, sectors[i]));
  const auto report = cutoff_report_to_json(sys, feasibility(shape), solve_cutoff_system(sys));
  out << report.dump(2) << "\n";
  if (!opt.out.empty()) write_text(strip_extension(opt.out) + ".json", report.dump(2) + "\n");
  return 0;
}

json spectrum_document(const HamiltonianSpec& spec, const std::vector<SectorSpectrum>& spectra, double tol)
{
  json sectors = json::array();
  json per_sector = json::array();
  for (const auto& s : spectra) {
    sectors.push_back(sector_to_json(s.sector));
    per_sector.push_back(spectrum_to_json(s.result, &s.sector));
  }
  json levels = json::array();
  for (const auto& row : merged_levels(spectra)) levels.push_back(row.eigenvalue);
  return {{"hamiltonian", spec_to_json(spec)}, {"sectors", sectors}, {"tol", tol}, {"spectra", per_sector},
          {"levels", levels}};
}

int cmd_spectrum(const Options& opt, std::ostream& out)
{
  const auto cfg = load_config(opt.config);
  const auto& spec = require_spec(cfg);
  const double tol = opt.tol.value_or(cfg.tol.value_or(1e-12));
  const auto spectra = solve_sectors(spec, selected_sectors(cfg, opt), tol);
  const auto rows = merged_levels(spectra);
  const std::string csv = levels_csv(rows);
  out << csv;
  if (!opt.out.empty()) {
    const auto base = strip_extension(opt.out);
    write_text(base + ".csv", csv);
    write_text(base + ".json", spectrum_document(spec, spectra, tol).dump(2) + "\n");
  }
  return 0;
}

int cmd_oracle(const Options& opt, std::ostream& out)
{
  const auto cfg = load_config(opt.config);
  const auto& spec = require_spec(cfg);
  const double tol = opt.tol.value_or(cfg.tol.value_or(1e-10));
  const auto spectra = solve_sectors(spec, selected_sectors(cfg, opt), 1e-12);

  bool all_ok = true;
  json reports = json::array();
  for (const auto& s : spectra) {
    const int n_max = opt.n_max.value_or(cfg.n_max.value_or(default_n_max(s.sector)));
    const auto report = match_spectra(s.result, spec, s.sector, n_max, tol);
    const bool decoupled = n_max > s.sector.particles(s.sector.top) ? block_decoupling_check(spec, s.sector, n_max)
                                                                      : true;
    all_ok = all_ok && report.ok() && decoupled;
    out << "sector q=" << s.sector.q << " r=" << s.sector.r << " N=" << s.sector.top << ", n_max=" << n_max
        << ", block decoupled: " << (decoupled ? "yes" : "NO") << "\n";
    out << match_table(report);
    auto j = match_report_to_json(report);
    j["sector"] = sector_to_json(s.sector);
    j["n_max"] = n_max;
    j["decoupled"] = decoupled;
    reports.push_back(std::move(j));
  }
  if (!opt.out.empty()) {
    write_text(strip_extension(opt.out) + ".json",
               json{{"hamiltonian", spec_to_json(spec)}, {"reports", reports}, {"ok", all_ok}}.dump(2) + "\n");
  }
  return all_ok ? 0 : 2;
}

int cmd_scan(const Options& opt, std::ostream& out)
{
  const auto cfg = load_config(opt.config);
  const auto& spec = require_spec(cfg);
  if (!cfg.scan) throw ConfigError("config has no 'scan' block");
  const auto& scan = *cfg.scan;
  const auto feas = feasibility(spec.shape());
  if (!feas.feasible && spec.has_couplings()) {
    throw Failure{2, "infeasible shape: n2=" + std::to_string(feas.n2) + " is not larger than n1=" +
                         std::to_string(feas.n1)};
  }
  const double tol = opt.tol.value_or(cfg.tol.value_or(1e-12));
  const auto sectors = selected_sectors(cfg, opt);

  std::vector<ScanRow> rows;
  for (const auto& value : scan_grid(scan.from, scan.to, scan.steps)) {
    const auto point = scan_point(spec, sectors, scan.variable, value, scan.mode);
    ScanRow row{to_double(value), {}};
    for (const auto& lr : merged_levels(solve_sectors(point, sectors, tol))) row.levels.push_back(lr.eigenvalue);
    rows.push_back(std::move(row));
  }
  const std::string csv = scan_csv(rows);
  out << csv;
  if (!opt.out.empty()) write_text(strip_extension(opt.out) + ".csv", csv);
  if (!opt.svg.empty()) write_text(opt.svg, scan_svg(rows, scan.variable.label()));
  return 0;
}

int cmd_multimode(const Options& opt, std::ostream& out)
{
  const auto cfg = load_config(opt.config);
  if (!cfg.product) throw ConfigError("config has no 'modes'/'terms' block");
  const auto& ph = *cfg.product;
  if (!check_product_invariance(ph)) throw Failure{2, "a product factor does not preserve its sector"};

  const auto result = product_spectrum(ph);
  const double tol = opt.tol.value_or(cfg.tol.value_or(1e-10));
  const int na = cfg.n_max_a.value_or(opt.n_max.value_or(default_n_max(ph.sector_a)));
  const int nb = cfg.n_max_b.value_or(opt.n_max.value_or(default_n_max(ph.sector_b)));
  const auto report = match_product_oracle(result, ph, na, nb, tol);

  std::vector<LevelRow> rows;
  for (std::size_t i = 0; i < result.eigenvalues.size(); ++i) rows.push_back({result.eigenvalues[i], result.residuals[i]});
  const std::string csv = levels_csv(rows);
  out << csv;
  out << "two-mode oracle (n_max_a=" << na << ", n_max_b=" << nb << ")\n" << match_table(report);
  if (!opt.out.empty()) {
    const auto base = strip_extension(opt.out);
    write_text(base + ".csv", csv);
    json doc = spectrum_to_json(result, nullptr);
    doc["oracle"] = match_report_to_json(report);
    write_text(base + ".json", doc.dump(2) + "\n");
  }
  return report.ok() ? 0 : 2;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Quasi-exactly solvable sectors of anharmonic Bose Hamiltonians"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON config file")->required();
    sub->add_option("--sector", opt.sector, "even | odd | both")
        ->check(CLI::IsMember({"even", "odd", "both"}));
    sub->add_option("--n-max", opt.n_max, "particle-number truncation for the oracle")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", opt.tol, "eigensolver residual tolerance, or match tolerance for oracle/multimode")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out, "output path prefix (.csv / .json are appended)");
    sub->add_option("--svg", opt.svg, "SVG plot path (scan only)");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Options&, std::ostream&);
  };
  const Command commands[] = {
      {"validate", "ground-state validity of the Hamiltonian", cmd_validate},
      {"conditions", "cutoff system, feasibility count and exact nullspace", cmd_conditions},
      {"spectrum", "invariant-sector levels (CSV + JSON)", cmd_spectrum},
      {"oracle", "certify sector levels against the truncated Fock matrix", cmd_oracle},
      {"scan", "sweep one coefficient with the cutoff re-enforced", cmd_scan},
      {"multimode", "two-mode product Hamiltonian spectrum with oracle check", cmd_multimode},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    try {
      return cmd->fn(opt, out);
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    } catch (const Failure& f) {
      err << "error: " << f.message << "\n";
      return f.code;
    } catch (const InvariantSubspaceViolated& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return 1;
}

}  // namespace qes::cli
