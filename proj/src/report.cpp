#include "gribov/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "gribov/block_assembly.hpp"
#include "gribov/eigensolver.hpp"
#include "gribov/errors.hpp"
#include "gribov/spec_io.hpp"
#include "gribov/spectral_analysis.hpp"
#include "gribov/subordination.hpp"

namespace gribov::report {
namespace {

using nlohmann::json;

struct CommandName {
  Command command;
  const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::kSpectrum, "spectrum"},     {Command::kEnclosure, "enclosure"},
    {Command::kSubordination, "subordination"}, {Command::kConditions, "conditions"},
    {Command::kCounting, "counting"},     {Command::kRiesz, "riesz"},
    {Command::kExampleP6, "example-p6"},  {Command::kSchema, "schema"},
};

bool needs_spec(Command c) { return c != Command::kExampleP6 && c != Command::kSchema; }

void check_config(const RunConfig& c) {
  if (!needs_spec(c.command)) return;
  if (c.trunc < 3) throw Error(ErrorKind::kInvalidParameter, "--trunc must be >= 3");
  if (!(c.growth > 1.0)) throw Error(ErrorKind::kInvalidParameter, "--growth must be > 1");
  if (!(c.rel_tol > 0.0)) throw Error(ErrorKind::kInvalidParameter, "--rel-tol must be > 0");
  if (!(c.alpha_margin > 0.0)) throw Error(ErrorKind::kInvalidParameter, "--alpha-margin must be > 0");
  if (!(c.gap_factor > 0.0)) throw Error(ErrorKind::kInvalidParameter, "--gap-factor must be > 0");
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json header(const RunConfig& c, const BlockSpec* spec) {
  json h;
  h["tool"] = "gribov";
  h["version"] = GRIBOV_VERSION;
  h["command"] = command_name(c.command);
  h["spec"] = spec ? io::spec_to_json(*spec) : json(nullptr);
  h["truncation"] = {{"trunc", spec ? json(c.trunc) : json(nullptr)}};
  return h;
}

MatrixBuilder builder_for(const BlockSpec& spec) {
  return [spec](std::size_t n) { return assemble(spec, n); };
}

bool uniform_sign(const BlockSpec& spec) {
  const bool pos = spec.diag_couplings.front() > 0.0;
  for (double c : spec.diag_couplings) {
    if ((c > 0.0) != pos) return false;
  }
  return true;
}

json region_json(const EnclosureRegion& region, const SpectrumResult& spectrum) {
  std::size_t inside = 0;
  const auto stable = spectrum.stabilized_indices();
  for (std::size_t i : stable) inside += in_region(region, spectrum.eigenvalues[i]) ? 1 : 0;
  return {{"r0", region.r0},
          {"rays", region.rays},
          {"alpha", region.alpha},
          {"exponents", region.exponents},
          {"stabilized_count", stable.size()},
          {"inside_count", inside},
          {"membership", stable.empty() ? 1.0 : double(inside) / double(stable.size())}};
}

json eigenvalue_rows(const SpectrumResult& s, const EnclosureRegion* region) {
  json rows = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Complex z = s.eigenvalues[i];
    json row = {{"index", i + 1}, {"re", z.real()}, {"im", z.imag()},
                {"modulus", std::abs(z)}, {"stabilized", bool(s.stabilized[i])}};
    row["in_region"] = region ? json(in_region(*region, z)) : json(nullptr);
    rows.push_back(row);
  }
  return rows;
}

json spectrum_json(const SpectrumResult& s) {
  return {{"dimension", s.size()},
          {"reference_trunc", s.reference_trunc},
          {"hermitian", s.hermitian},
          {"iterations", s.iterations},
          {"residual_bound", s.residual_bound},
          {"stabilized_count", s.stabilized_indices().size()}};
}

ComplexMatrix hstack(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

json verification_json(const VerificationReport& r) {
  return {{"pass", r.pass},
          {"vectors_checked", r.vectors_checked},
          {"min_slack", r.min_slack},
          {"min_relative_slack", r.min_relative_slack},
          {"argmin_index", r.argmin_index},
          {"tolerance", r.tolerance}};
}

json certificate_json(const SubordinationCertificate& cert) {
  json terms = json::array();
  for (const auto& t : cert.terms) terms.push_back({{"p", t.p}, {"b", t.b}});
  return terms;
}

json spectrum_report(const RunConfig& c, const BlockSpec& spec) {
  json r = header(c, &spec);
  const SpectrumResult s = stabilized_spectrum(builder_for(spec), c.trunc, c.growth, c.rel_tol);
  r["truncation"]["reference_trunc"] = s.reference_trunc;
  r["spectrum"] = spectrum_json(s);
  std::optional<EnclosureRegion> region;
  if (uniform_sign(spec)) region = gribov_region(spec, c.alpha_margin, s);
  r["eigenvalues"] = eigenvalue_rows(s, region ? &*region : nullptr);
  return r;
}

json enclosure_report(const RunConfig& c, const BlockSpec& spec) {
  json r = header(c, &spec);
  const SpectrumResult s = stabilized_spectrum(builder_for(spec), c.trunc, c.growth, c.rel_tol);
  const SpectrumResult s2 =
      stabilized_spectrum(builder_for(spec), 2 * c.trunc, c.growth, c.rel_tol);
  r["truncation"]["reference_trunc"] = s.reference_trunc;
  r["truncation"]["doubled_trunc"] = 2 * c.trunc;

  json regions;
  for (auto [name, kind] : {std::pair{"beta_powers", SectorExponents::kBetaPowers},
                            std::pair{"certificate", SectorExponents::kCertificate}}) {
    const EnclosureRegion reg = gribov_region(spec, c.alpha_margin, s, kind);
    const EnclosureRegion reg2 = gribov_region(spec, c.alpha_margin, s2, kind);
    json j = region_json(reg, s);
    j["r0_doubled"] = reg2.r0;
    const double scale = std::max(reg.r0, reg2.r0);
    j["r0_relative_change"] = scale > 0.0 ? std::abs(reg2.r0 - reg.r0) / scale : 0.0;
    regions[name] = j;
  }
  r["regions"] = regions;
  r["bound_sum"] = gribov_certificate(spec, false).bound_sum();
  r["spectrum"] = spectrum_json(s);
  const EnclosureRegion primary = gribov_region(spec, c.alpha_margin, s);
  r["eigenvalues"] = eigenvalue_rows(s, &primary);
  return r;
}

json subordination_report(const RunConfig& c, const BlockSpec& spec) {
  json r = header(c, &spec);
  const std::size_t n = c.trunc;
  const auto leading = gribov_entry_certificates(spec, false);
  const auto full = gribov_entry_certificates(spec, true);
  const BandedComplexMatrix g = bargmann::build_g(n);

  json entries = json::array();
  std::uint64_t salt = 0;
  for (const auto& [ij, cert] : full) {
    const auto [i, j] = ij;
    const EntryParams e = spec.entry(i, j);
    const BandedComplexMatrix t = bargmann::build_scalar_gribov(n, entry_pomeron(e), true);
    const BandedComplexMatrix s = spec.diag_couplings[j - 1] * g;
    const ComplexMatrix trial =
        hstack(basis_trial_vectors(n), random_trial_vectors(n, c.trial_vectors, c.seed + ++salt));
    const EntryBounds b = entry_bounds(spec, i, j);
    entries.push_back({{"i", i},
                       {"j", j},
                       {"bounds", {{"b1", b.b1}, {"b2", b.b2}, {"b3", b.b3}}},
                       {"certificate", certificate_json(cert)},
                       {"verification", verification_json(verify_subordination(t, s, cert, trial))},
                       {"leading_terms_only",
                        verification_json(verify_subordination(t, s, leading.at(ij), trial))}});
  }
  r["entries"] = entries;

  const SubordinationCertificate merged = merge_certificates(full);
  const std::size_t dim = spec.n * n;
  const ComplexMatrix trial =
      hstack(basis_trial_vectors(dim), random_trial_vectors(dim, c.trial_vectors, c.seed));
  r["merged"] = {
      {"certificate", certificate_json(merged)},
      {"term_count", merged.terms.size()},
      {"verification", verification_json(verify_subordination(
                           assemble_remainder_image(spec, n), assemble_diagonal(spec, n), merged, trial))}};
  return r;
}

json conditions_report(const RunConfig& c, const BlockSpec& spec) {
  json r = header(c, &spec);
  const ConditionValue closed = closedness_margin(spec);
  const SelfAdjointCheck sa = selfadjointness_check(spec);
  r["closedness"] = {{"value", closed.value}, {"satisfied", closed.satisfied}};
  r["selfadjoint"] = {{"applicable", sa.applicable},
                      {"value", sa.value},
                      {"satisfied", sa.satisfied},
                      {"symmetric_blocks", sa.symmetric_blocks}};
  json bounds = json::array();
  double sum = 0.0;
  for (const auto& [i, j] : spec.off_diagonal_pairs()) {
    const EntryBounds b = entry_bounds(spec, i, j);
    sum += b.b1 + b.b2 + b.b3;
    bounds.push_back({{"i", i}, {"j", j}, {"b1", b.b1}, {"b2", b.b2}, {"b3", b.b3}});
  }
  r["entry_bounds"] = bounds;
  r["bound_sum"] = sum;
  return r;
}

struct CountingRow {
  std::size_t block;
  CountingSample sample;
  std::size_t count;
};

std::vector<CountingRow> counting_rows(const RunConfig& c, const BlockSpec& spec) {
  std::vector<CountingRow> rows;
  const BandedComplexMatrix g = bargmann::build_g(c.trunc);
  for (std::size_t j = 1; j <= spec.n; ++j) {
    const double lam = spec.diag_couplings[j - 1];
    const SpectrumResult block = eigenvalues(lam * g);
    for (const CountingSample& s : counting_asymptotics(std::abs(lam), c.trunc - 1)) {
      rows.push_back({j, s, counting(block, s.r)});
    }
  }
  return rows;
}

json counting_report(const RunConfig& c, const BlockSpec& spec) {
  json r = header(c, &spec);
  json blocks = json::array();
  const auto rows = counting_rows(c, spec);
  for (std::size_t j = 1; j <= spec.n; ++j) {
    const double lam = std::abs(spec.diag_couplings[j - 1]);
    json samples = json::array();
    bool consistent = true;
    double last_ratio = 0.0;
    for (const auto& row : rows) {
      if (row.block != j) continue;
      samples.push_back({{"k", row.sample.k},
                         {"r", row.sample.r},
                         {"ratio", row.sample.ratio},
                         {"count", row.count}});
      consistent = consistent && row.count == row.sample.k;
      last_ratio = row.sample.ratio;
    }
    const double limit = 1.0 / std::cbrt(lam);
    blocks.push_back({{"block", j},
                      {"lambda2", spec.diag_couplings[j - 1]},
                      {"limit", limit},
                      {"last_relative_error", std::abs(last_ratio - limit) / limit},
                      {"counts_consistent", consistent},
                      {"samples", samples}});
  }
  r["blocks"] = blocks;
  return r;
}

json riesz_report(const RunConfig& c, const BlockSpec& spec) {
  json r = header(c, &spec);
  const SpectrumResult s = stabilized_spectrum(builder_for(spec), c.trunc, c.growth, c.rel_tol);
  r["truncation"]["reference_trunc"] = s.reference_trunc;
  const double p = gribov_certificate(spec, false).max_exponent();
  const RieszDiagnostics d = riesz_diagnostics(assemble(spec, c.trunc).dense(), s, c.gap_factor, p);
  json clusters = json::array();
  for (const auto& cl : d.clusters) {
    json ids = json::array();
    for (std::size_t i : cl) ids.push_back(i + 1);
    clusters.push_back(ids);
  }
  r["exponent"] = p;
  r["gap_factor"] = c.gap_factor;
  r["eigvec_condition"] = finite_or_null(d.eigvec_condition);
  r["projector_condition"] = finite_or_null(d.projector_condition);
  r["defective_warning"] = d.defective_warning;
  r["cluster_count"] = d.clusters.size();
  r["clusters"] = clusters;
  r["spectrum"] = spectrum_json(s);
  return r;
}

json example_p6_report(const RunConfig& c) {
  json r = header(c, nullptr);
  const ExampleP6Result res = example_p6(c.p6_n, c.p6_a, c.p6_lambda2);
  r["parameters"] = {{"n", c.p6_n}, {"a", c.p6_a}, {"lambda2", c.p6_lambda2}};
  r["gamma"] = res.gamma;
  r["condition_sum"] = res.condition_sum;
  r["S"] = res.s;
  r["S_bound"] = finite_or_null(res.s_bound);
  r["S_below_7_18"] = res.s < 7.0 / 18.0;
  r["satisfied"] = res.satisfied;
  r["hypotheses_met"] = res.hypotheses_met;
  r["warnings"] = res.warnings;
  const SelfAdjointCheck sa = selfadjointness_check(example_p6_spec(c.p6_n, c.p6_a, c.p6_lambda2));
  r["selfadjoint"] = {{"applicable", sa.applicable},
                      {"value", sa.value},
                      {"satisfied", sa.satisfied},
                      {"symmetric_blocks", sa.symmetric_blocks}};
  return r;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& c : kCommands) {
    if (name == c.name) return c.command;
  }
  return std::nullopt;
}

const char* command_name(Command c) {
  for (const auto& entry : kCommands) {
    if (entry.command == c) return entry.name;
  }
  return "unknown";
}

json build_report(const RunConfig& config) {
  check_config(config);
  if (config.command == Command::kSchema) return io::spec_schema();
  if (config.command == Command::kExampleP6) return example_p6_report(config);

  const BlockSpec spec = io::load_spec(config.spec_path);
  switch (config.command) {
    case Command::kSpectrum: return spectrum_report(config, spec);
    case Command::kEnclosure: return enclosure_report(config, spec);
    case Command::kSubordination: return subordination_report(config, spec);
    case Command::kConditions: return conditions_report(config, spec);
    case Command::kCounting: return counting_report(config, spec);
    case Command::kRiesz: return riesz_report(config, spec);
    default: break;
  }
  throw Error(ErrorKind::kInvalidInput, "unhandled command");
}

std::string build_csv(const RunConfig& config) {
  check_config(config);
  std::ostringstream os;
  if (config.command == Command::kSpectrum || config.command == Command::kEnclosure) {
    const BlockSpec spec = io::load_spec(config.spec_path);
    const SpectrumResult s =
        stabilized_spectrum(builder_for(spec), config.trunc, config.growth, config.rel_tol);
    std::optional<EnclosureRegion> region;
    if (uniform_sign(spec)) region = gribov_region(spec, config.alpha_margin, s);
    os << "index,re,im,modulus,stabilized,in_region\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
      const Complex z = s.eigenvalues[i];
      os << i + 1 << ',' << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << fmt(std::abs(z))
         << ',' << (s.stabilized[i] ? 1 : 0) << ','
         << (region ? (in_region(*region, z) ? "1" : "0") : "na") << '\n';
    }
    return os.str();
  }
  if (config.command == Command::kCounting) {
    const BlockSpec spec = io::load_spec(config.spec_path);
    os << "block,k,r,ratio,count\n";
    for (const auto& row : counting_rows(config, spec)) {
      os << row.block << ',' << row.sample.k << ',' << fmt(row.sample.r) << ','
         << fmt(row.sample.ratio) << ',' << row.count << '\n';
    }
    return os.str();
  }
  throw Error(ErrorKind::kInvalidInput,
              std::string("csv output is only available for spectrum, enclosure and counting, not ") +
                  command_name(config.command));
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    if (config.format == Format::kCsv) {
      text = build_csv(config);
    } else {
      text = build_report(config).dump(2) + "\n";
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.is_numerical() ? kExitNumerical : kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  if (config.out_path.empty() || config.out_path == "-") {
    out << text;
    return kExitOk;
  }
  std::ofstream file(config.out_path, std::ios::binary);
  if (!file) {
    err << "error: cannot write report to '" << config.out_path.string() << "'\n";
    return kExitValidation;
  }
  file << text;
  return kExitOk;
}

}  // namespace gribov::report
