#include "qes/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qes {

Rational rational_from_json(const json& j)
{
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer() || j.is_number_unsigned()) return parse_rational(j.dump());
    if (j.is_number_float()) {
      if (!std::isfinite(j.get<double>())) throw ConfigError("non-finite coefficient");
      return parse_rational(j.dump());
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad coefficient: ") + e.what());
  }
  throw ConfigError("coefficient must be a string or number, got " + j.dump());
}

namespace {

int int_field(const json& j, const char* key, int fallback)
{
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

json rational_list(const std::vector<Rational>& values)
{
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

}  // namespace

json spec_to_json(const HamiltonianSpec& spec)
{
  json a = json::array();
  for (int k = 1; k <= spec.k0(); ++k) {
    for (int s = 0; s <= spec.s0(); ++s) {
      const Rational v = spec.coupling(s, k);
      if (v != 0) a.push_back({{"s", s}, {"k", k}, {"value", to_string(v)}});
    }
  }
  json out = {{"q", spec.q()}, {"eps", rational_list(spec.eps_list())}, {"A", a}, {"s0", spec.s0()},
              {"k0", spec.k0()}};
  if (spec.constant() != 0) out["constant"] = to_string(spec.constant());
  return out;
}

HamiltonianSpec spec_from_json(const json& j)
{
  if (!j.is_object()) throw ConfigError("Hamiltonian must be a JSON object");
  const int q = int_field(j, "q", 2);
  if (q < 1) throw ConfigError("q must be >= 1");

  std::vector<Rational> eps;
  if (j.contains("eps")) {
    if (!j.at("eps").is_array()) throw ConfigError("'eps' must be a list (index 0 is eps_1)");
    for (const auto& e : j.at("eps")) eps.push_back(rational_from_json(e));
  }

  struct Entry {
    int s, k;
    Rational value;
  };
  std::vector<Entry> entries;
  int s0 = 0;
  int k0 = 1;
  if (j.contains("A")) {
    if (!j.at("A").is_array()) throw ConfigError("'A' must be a list of {s, k, value}");
    for (const auto& e : j.at("A")) {
      if (!e.is_object() || !e.contains("value")) throw ConfigError("each A entry needs s, k and value");
      Entry entry{int_field(e, "s", 0), int_field(e, "k", 1), rational_from_json(e.at("value"))};
      if (entry.s < 0 || entry.k < 1) throw ConfigError("A entries need s >= 0 and k >= 1");
      s0 = std::max(s0, entry.s);
      k0 = std::max(k0, entry.k);
      entries.push_back(std::move(entry));
    }
  }
  s0 = std::max(s0, int_field(j, "s0", 0));
  k0 = std::max(k0, int_field(j, "k0", 1));

  const CouplingShape shape{s0, k0};
  std::vector<Rational> table(static_cast<std::size_t>(shape.unknowns()), Rational(0));
  for (const auto& e : entries) table[static_cast<std::size_t>(shape.index(e.s, e.k))] += e.value;

  Rational constant = j.contains("constant") ? rational_from_json(j.at("constant")) : Rational(0);
  try {
    return HamiltonianSpec(q, std::move(eps), shape, std::move(table), std::move(constant));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

json sector_to_json(const SectorBasis& sector)
{
  return {{"q", sector.q}, {"r", sector.r}, {"N", sector.top}};
}

SectorBasis sector_from_json(const json& j, int default_q)
{
  if (!j.is_object()) throw ConfigError("sector must be an object {r, N}");
  SectorBasis s{int_field(j, "q", default_q), int_field(j, "r", 0), int_field(j, "N", 0)};
  try {
    check_sector(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

namespace {

ProductHamiltonian product_from_json(const json& j)
{
  const auto& modes = j.at("modes");
  if (!modes.is_array() || modes.size() != 2) throw ConfigError("'modes' must list exactly two modes");

  std::vector<std::vector<HamiltonianSpec>> specs(2);
  std::vector<SectorBasis> sectors;
  for (std::size_t m = 0; m < 2; ++m) {
    const auto& mode = modes[m];
    if (mode.contains("specs")) {
      for (const auto& s : mode.at("specs")) specs[m].push_back(spec_from_json(s));
    } else if (mode.contains("spec")) {
      specs[m].push_back(spec_from_json(mode.at("spec")));
    } else {
      throw ConfigError("each mode needs 'spec' or 'specs'");
    }
    if (!mode.contains("sector")) throw ConfigError("each mode needs a 'sector'");
    sectors.push_back(sector_from_json(mode.at("sector"), specs[m].front().q()));
  }

  ProductHamiltonian ph{{}, sectors[0], sectors[1]};
  if (!j.contains("terms") || !j.at("terms").is_array()) throw ConfigError("'terms' must list [i_a, i_b, weight]");
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() < 2 || t.size() > 3) throw ConfigError("each term is [i_a, i_b] or [i_a, i_b, weight]");
    const auto ia = t[0].get<std::size_t>();
    const auto ib = t[1].get<std::size_t>();
    if (ia >= specs[0].size() || ib >= specs[1].size()) throw ConfigError("term references a missing mode spec");
    Rational w = t.size() == 3 ? rational_from_json(t[2]) : Rational(1);
    ph.terms.push_back({specs[0][ia], specs[1][ib], std::move(w)});
  }
  return ph;
}

}  // namespace

RunConfig config_from_json(const json& j)
{
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  try {
    if (j.contains("hamiltonian")) {
      cfg.spec = spec_from_json(j.at("hamiltonian"));
    } else if (j.contains("eps") || j.contains("A")) {
      cfg.spec = spec_from_json(j);
    }
    cfg.q = cfg.spec ? cfg.spec->q() : int_field(j, "q", 2);

    if (j.contains("shape")) {
      const auto& s = j.at("shape");
      cfg.shape = CouplingShape{int_field(s, "s0", 0), int_field(s, "k0", 1)};
      if (cfg.shape->s0 < 0 || cfg.shape->k0 < 1) throw ConfigError("shape needs s0 >= 0 and k0 >= 1");
    }

    if (j.contains("sectors")) {
      if (!j.at("sectors").is_array()) throw ConfigError("'sectors' must be a list");
      for (const auto& s : j.at("sectors")) cfg.sectors.push_back(sector_from_json(s, cfg.q));
    }
    if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<int>();
    if (j.contains("tol")) {
      cfg.tol = j.at("tol").get<double>();
      if (!(*cfg.tol > 0) || !std::isfinite(*cfg.tol)) throw ConfigError("tol must be a positive number");
    }

    if (j.contains("scan")) {
      const auto& s = j.at("scan");
      ScanSettings scan;
      scan.variable = parse_scan_variable(s.at("variable").get<std::string>());
      scan.from = rational_from_json(s.at("from"));
      scan.to = rational_from_json(s.at("to"));
      scan.steps = int_field(s, "steps", 11);
      if (s.contains("mode")) scan.mode = parse_scan_mode(s.at("mode").get<std::string>());
      if (scan.steps < 2) throw ConfigError("scan needs steps >= 2");
      cfg.scan = std::move(scan);
    }

    if (j.contains("modes")) {
      cfg.product = product_from_json(j);
      const auto& modes = j.at("modes");
      if (modes[0].contains("n_max")) cfg.n_max_a = modes[0].at("n_max").get<int>();
      if (modes[1].contains("n_max")) cfg.n_max_b = modes[1].at("n_max").get<int>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

json spectrum_to_json(const SpectrumResult& result, const SectorBasis* sector)
{
  json out;
  if (sector) out["sector"] = sector_to_json(*sector);
  out["eigenvalues"] = result.eigenvalues;
  out["residuals"] = result.residuals;
  out["residual_max"] = result.residual_max;
  out["vectors_monomial"] = result.vectors_monomial;
  out["vectors_fock"] = result.vectors_fock;
  return out;
}

json match_report_to_json(const MatchReport& report)
{
  json matched = json::array();
  for (const auto& m : report.matched) matched.push_back({{"qes", m.qes}, {"oracle", m.oracle}, {"gap", m.gap}});
  return {{"matched", matched}, {"unmatched", report.unmatched}, {"tol", report.tol}, {"ok", report.ok()}};
}

json cutoff_report_to_json(const CutoffSystem& system, const FeasibilityReport& feasibility,
                           const std::vector<std::vector<Rational>>& nullspace)
{
  json ns = json::array();
  for (const auto& v : nullspace) ns.push_back(rational_list(v));
  json sectors = json::array();
  for (const auto& s : system.sectors) sectors.push_back(sector_to_json(s));
  return {{"n1", feasibility.n1},
          {"n2", feasibility.n2},
          {"feasible", feasibility.feasible},
          {"rows", system.rows.size()},
          {"rank", system.rank()},
          {"shape", {{"s0", system.shape.s0}, {"k0", system.shape.k0}}},
          {"sectors", sectors},
          {"nullspace", ns}};
}

std::string format_double(double v)
{
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string levels_csv(const std::vector<LevelRow>& rows)
{
  std::string out = "index,eigenvalue,residual\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += std::to_string(i) + "," + format_double(rows[i].eigenvalue) + "," + format_double(rows[i].residual) + "\n";
  }
  return out;
}

std::string scan_csv(const std::vector<ScanRow>& rows)
{
  std::size_t levels = 0;
  for (const auto& r : rows) levels = std::max(levels, r.levels.size());
  std::string out = "parameter";
  for (std::size_t i = 0; i < levels; ++i) out += ",E" + std::to_string(i);
  out += "\n";
  for (const auto& r : rows) {
    out += format_double(r.parameter);
    for (double e : r.levels) out += "," + format_double(e);
    out += "\n";
  }
  return out;
}

std::string scan_svg(const std::vector<ScanRow>& rows, const std::string& x_label)
{
  constexpr double width = 800, height = 600;
  constexpr double left = 70, right = 20, top = 20, bottom = 50;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  std::size_t levels = 0;
  if (!rows.empty()) {
    xmin = xmax = rows.front().parameter;
    ymin = std::numeric_limits<double>::infinity();
    ymax = -ymin;
    for (const auto& r : rows) {
      xmin = std::min(xmin, r.parameter);
      xmax = std::max(xmax, r.parameter);
      levels = std::max(levels, r.levels.size());
      for (double e : r.levels) {
        ymin = std::min(ymin, e);
        ymax = std::max(ymax, e);
      }
    }
    if (!std::isfinite(ymin)) ymin = 0, ymax = 1;
  }
  if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
  if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (width - left - right); };
  auto py = [&](double y) { return height - bottom - (y - ymin) / (ymax - ymin) * (height - top - bottom); };

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
     << height - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << left << "\" y=\"" << height - 15 << "\" font-size=\"12\">" << xmin << "</text>\n";
  os << "<text x=\"" << width - right << "\" y=\"" << height - 15 << "\" font-size=\"12\" text-anchor=\"end\">" << xmax
     << "</text>\n";
  os << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 15
     << "\" font-size=\"14\" text-anchor=\"middle\">" << x_label << "</text>\n";
  os << "<text x=\"5\" y=\"" << py(ymin) << "\" font-size=\"12\">" << ymin << "</text>\n";
  os << "<text x=\"5\" y=\"" << py(ymax) + 12 << "\" font-size=\"12\">" << ymax << "</text>\n";

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  for (std::size_t level = 0; level < levels; ++level) {
    os << "<polyline fill=\"none\" stroke=\"" << palette[level % 8] << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& r : rows) {
      if (level >= r.levels.size()) continue;
      if (!first) os << ' ';
      os << px(r.parameter) << ',' << py(r.levels[level]);
      first = false;
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string match_table(const MatchReport& report)
{
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-4s %24s %24s %12s\n", "#", "qes", "oracle", "gap");
  os << line;
  std::size_t i = 0;
  for (const auto& m : report.matched) {
    std::snprintf(line, sizeof line, "%-4zu %24.15g %24.15g %12.3e\n", i++, m.qes, m.oracle, m.gap);
    os << line;
  }
  for (double e : report.unmatched) {
    std::snprintf(line, sizeof line, "%-4zu %24.15g %24s %12s\n", i++, e, "UNMATCHED", "-");
    os << line;
  }
  std::snprintf(line, sizeof line, "matched %zu/%zu, max gap %.3e, tol %.1e (scaled by 1+|E|)\n", report.matched.size(),
                report.matched.size() + report.unmatched.size(), report.max_gap(), report.tol);
  os << line;
  return os.str();
}

void write_text(const std::string& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace qes
