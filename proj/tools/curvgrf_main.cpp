// Copyright 2026 The curvgrf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.  Subcommands:
//   ops           dump the commutation/duplication operators as CSV
//   bundle        dump the covariance bundle matrices as CSV
//   sample-jets   draw (gradient, Hessian) jets to CSV
//   curvature     principal curvatures for jets read from CSV
//   pdf           tabulate a closed-form density on a grid
//   sample-field  synthesize field realizations and harvest curvatures
//   validate      run the statistical validation suite, emit a JSON report
//
// Exit codes: 0 success, 1 failed check or runtime error, 2 usage error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvgrf/covariance.hpp"
#include "curvgrf/csvio.hpp"
#include "curvgrf/curvature.hpp"
#include "curvgrf/density.hpp"
#include "curvgrf/ensemble.hpp"
#include "curvgrf/fieldgrid.hpp"
#include "curvgrf/matops.hpp"
#include "curvgrf/parallel.hpp"
#include "curvgrf/validate.hpp"

namespace {

struct ModelOptions {
  std::string kind = "gaussian";
  double lengthscale = 1.0;
  double variance = 1.0;
  double shape = 1.0;

  curvgrf::CorrelationModel build() const {
    if (kind == "gaussian") return curvgrf::CorrelationModel::gaussian(lengthscale, variance);
    if (kind == "rational_quadratic")
      return curvgrf::CorrelationModel::rational_quadratic(lengthscale, shape, variance);
    throw CLI::ValidationError("model.kind", "must be gaussian or rational_quadratic");
  }
};

// Registers the model flags; the same names (minus dashes) are the
// config-file keys.
void add_model_options(CLI::App* cmd, ModelOptions& opts) {
  cmd->add_option("--model.kind,--kind", opts.kind, "correlation family")
      ->check(CLI::IsMember({"gaussian", "rational_quadratic"}))
      ->capture_default_str();
  cmd->add_option("--model.lengthscale,--lengthscale", opts.lengthscale,
                  "correlation lengthscale")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--model.variance,--variance", opts.variance, "field variance sigma^2")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--model.shape,--shape", opts.shape,
                  "shape parameter of the rational quadratic family")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

// Plain key=value configuration file.  Known keys: model.kind,
// model.lengthscale, model.variance, model.shape.  Values apply only where
// the matching flag was not given, so the precedence is flags, then file,
// then defaults.  Unknown keys and malformed lines are usage errors.
void apply_config_file(const CLI::App& app, const std::string& path, ModelOptions& opts) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open config file: " + path);

  const auto was_given = [&app](const std::string& flag) {
    return app.get_option(flag)->count() > 0;
  };
  const auto parse_positive = [](const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--config", key + " has non-numeric value '" + text + "'");
    }
    if (used != text.size() || !(value > 0.0))
      throw CLI::ValidationError("--config", key + " must be a positive number, got '" + text + "'");
    return value;
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto strip = [](std::string s) {
      const auto begin = s.find_first_not_of(" \t\r");
      if (begin == std::string::npos) return std::string();
      const auto end = s.find_last_not_of(" \t\r");
      return s.substr(begin, end - begin + 1);
    };
    const std::string content = strip(line);
    if (content.empty() || content[0] == '#') continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--config",
                                 "line " + std::to_string(lineno) + " is not key=value");
    const std::string key = strip(content.substr(0, eq));
    const std::string value = strip(content.substr(eq + 1));

    if (key == "model.kind") {
      if (value != "gaussian" && value != "rational_quadratic")
        throw CLI::ValidationError("--config", "model.kind must be gaussian or rational_quadratic");
      if (!was_given("--model.kind")) opts.kind = value;
    } else if (key == "model.lengthscale") {
      const double v = parse_positive(key, value);
      if (!was_given("--model.lengthscale")) opts.lengthscale = v;
    } else if (key == "model.variance") {
      const double v = parse_positive(key, value);
      if (!was_given("--model.variance")) opts.variance = v;
    } else if (key == "model.shape") {
      const double v = parse_positive(key, value);
      if (!was_given("--model.shape")) opts.shape = v;
    } else {
      throw CLI::ValidationError("--config", "unknown key '" + key + "'");
    }
  }
}

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  const auto first = text.find(':');
  const auto second = text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw CLI::ValidationError("--grid", "expected start:stop:count");
  try {
    g.start = std::stod(text.substr(0, first));
    g.stop = std::stod(text.substr(first + 1, second - first - 1));
    g.count = std::stoi(text.substr(second + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--grid", "expected numeric start:stop:count");
  }
  if (g.count < 2 || !(g.stop > g.start))
    throw CLI::ValidationError("--grid", "need stop > start and count >= 2");
  return g;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

// Long-format matrix CSV: matrix,row,col,value.
void write_named_matrices(std::ostream& out,
                          const std::vector<std::pair<std::string, Eigen::MatrixXd>>& mats) {
  out << "matrix,row,col,value\n";
  for (const auto& [name, m] : mats)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        out << name << ',' << (i + 1) << ',' << (j + 1) << ','
            << curvgrf::format_double(m(i, j)) << '\n';
}

int run_ops(Eigen::Index n, const std::string& out_path) {
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  write_named_matrices(out, {{"commutation", curvgrf::commutation_matrix(n)},
                             {"duplication", curvgrf::duplication_matrix(n)},
                             {"duplication_pinv", curvgrf::dup_pinv(n)}});
  return 0;
}

int run_bundle(Eigen::Index n, const ModelOptions& model_opts, const std::string& out_path) {
  const curvgrf::CovarianceBundle b =
      curvgrf::build_bundle(n, curvgrf::constants(model_opts.build()));
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  write_named_matrices(out, {{"grad_cov", b.grad_cov},
                             {"cross_cov", b.cross_cov},
                             {"hess_cov", b.hess_cov},
                             {"sigma_n", b.sigma_n},
                             {"sigma_tilde", b.sigma_tilde},
                             {"sigma_det", Eigen::MatrixXd::Constant(1, 1, b.sigma_det)}});
  return 0;
}

int run_sample_jets(Eigen::Index n, std::uint64_t count, std::uint64_t seed,
                    const ModelOptions& model_opts, const std::string& out_path,
                    unsigned threads) {
  const curvgrf::JetSampler sampler(n, curvgrf::constants(model_opts.build()), seed);
  const std::vector<curvgrf::PointJet> jets = sampler.sample(count, 0, threads);
  std::vector<Eigen::VectorXd> rows;
  rows.reserve(jets.size());
  for (const auto& jet : jets) rows.push_back(curvgrf::jet_to_row(jet));
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  curvgrf::write_csv(out, curvgrf::jet_csv_header(n), rows);
  return 0;
}

int run_curvature(const std::string& jets_path, const std::string& out_path,
                  const ModelOptions& model_opts) {
  std::ifstream in(jets_path);
  if (!in) throw std::runtime_error("cannot open jets file: " + jets_path);
  const curvgrf::CsvTable table = curvgrf::read_csv(in);
  const Eigen::Index n = curvgrf::jet_dimension_from_columns(table.header.size());
  const double scale = std::sqrt(curvgrf::constants(model_opts.build()).grad_var());

  std::vector<Eigen::VectorXd> rows;
  rows.reserve(table.rows.size());
  std::uint64_t skipped = 0;
  for (const Eigen::VectorXd& row : table.rows) {
    try {
      rows.push_back(curvgrf::principal_curvatures(curvgrf::jet_from_row(row, n), scale).kappas);
    } catch (const curvgrf::DegenerateGradient&) {
      ++skipped;
    }
  }
  if (skipped > 0)
    std::cerr << "curvature: skipped " << skipped << " jets with degenerate gradient\n";

  std::vector<std::string> header;
  for (Eigen::Index i = 1; i < n; ++i) header.push_back("kappa_" + std::to_string(i));
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  curvgrf::write_csv(out, header, rows);
  return 0;
}

int run_pdf(const std::string& which, Eigen::Index n, const GridSpec& grid,
            const ModelOptions& model_opts, const std::string& out_path) {
  const curvgrf::DensitySpec spec(n, curvgrf::constants(model_opts.build()));

  Eigen::Index dim = 0;
  if (which == "curvature") {
    if (n < 2) throw CLI::ValidationError("--n", "curvature density needs n >= 2");
    dim = n - 1;
  } else if (which == "eig") {
    dim = n;
  } else {
    dim = 1;  // gradnorm
  }

  std::vector<double> points(grid.count);
  const double step = (grid.stop - grid.start) / (grid.count - 1);
  for (int i = 0; i < grid.count; ++i) points[i] = grid.start + step * i;
  if (which == "gradnorm" && grid.start < 0.0)
    throw CLI::ValidationError("--grid", "gradient norm grid must be nonnegative");

  std::vector<std::string> header;
  for (Eigen::Index i = 1; i <= dim; ++i) {
    const char* base = which == "curvature" ? "kappa_" : (which == "eig" ? "lambda_" : "u");
    header.push_back(dim == 1 && which == "gradnorm" ? std::string(base)
                                                     : base + std::to_string(i));
  }
  header.push_back("density");

  std::vector<Eigen::VectorXd> rows;
  std::vector<Eigen::Index> idx(dim, 0);
  while (true) {
    Eigen::VectorXd arg(dim);
    for (Eigen::Index a = 0; a < dim; ++a) arg[a] = points[idx[a]];
    double density = 0.0;
    if (which == "curvature")
      density = curvgrf::curvature_pdf(spec, arg);
    else if (which == "eig")
      density = curvgrf::eig_pdf(spec, arg);
    else
      density = curvgrf::gradnorm_pdf(spec, arg[0]);
    Eigen::VectorXd row(dim + 1);
    row.head(dim) = arg;
    row[dim] = density;
    rows.push_back(std::move(row));

    Eigen::Index a = dim;
    while (a-- > 0) {
      if (++idx[a] < static_cast<Eigen::Index>(points.size())) break;
      idx[a] = 0;
    }
    if (a < 0) break;
  }

  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  curvgrf::write_csv(out, header, rows);
  return 0;
}

int run_sample_field(Eigen::Index n, std::vector<Eigen::Index> shape, double spacing,
                     int realizations, std::uint64_t seed, const ModelOptions& model_opts,
                     const std::string& out_path, const std::string& dump_prefix,
                     unsigned threads) {
  const curvgrf::CorrelationModel model = model_opts.build();
  if (shape.empty()) throw CLI::ValidationError("--shape", "need at least one extent");
  if (static_cast<Eigen::Index>(shape.size()) == 1)
    shape.assign(static_cast<std::size_t>(n), shape[0]);
  if (static_cast<Eigen::Index>(shape.size()) != n)
    throw CLI::ValidationError("--shape", "give one extent or one per axis");

  std::vector<std::vector<Eigen::VectorXd>> per_realization(realizations);
  std::vector<std::uint64_t> skipped(realizations, 0);
  curvgrf::parallel_for(realizations, threads, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t r = begin; r < end; ++r) {
      const curvgrf::FieldGrid grid =
          curvgrf::synthesize(model, shape, spacing, seed, static_cast<std::uint32_t>(r));
      if (!dump_prefix.empty()) {
        const std::string base = dump_prefix + "_r" + std::to_string(r);
        std::ofstream bin(base + ".bin", std::ios::binary);
        bin.write(reinterpret_cast<const char*>(grid.values.data()),
                  static_cast<std::streamsize>(grid.values.size() * sizeof(double)));
        nlohmann::json meta{{"shape", grid.shape},
                            {"spacing", grid.spacing},
                            {"dtype", "float64"},
                            {"order", "C"},
                            {"endianness", "little"},
                            {"seed", grid.seed},
                            {"realization", grid.realization}};
        std::ofstream meta_out(base + ".json");
        meta_out << meta.dump(2) << '\n';
      }
      const curvgrf::GridJets harvest = curvgrf::jets_from_grid(grid);
      skipped[r] += harvest.skipped;
      auto& rows = per_realization[r];
      rows.reserve(harvest.jets.size());
      for (const curvgrf::PointJet& jet : harvest.jets)
        rows.push_back(curvgrf::principal_curvatures(jet).kappas);
    }
  });

  std::uint64_t total_skipped = 0;
  for (std::uint64_t s : skipped) total_skipped += s;
  if (total_skipped > 0)
    std::cerr << "sample-field: skipped " << total_skipped
              << " grid points with degenerate gradient\n";

  std::vector<std::string> header;
  for (Eigen::Index i = 1; i < n; ++i) header.push_back("kappa_" + std::to_string(i));
  std::vector<Eigen::VectorXd> rows;
  for (auto& chunk : per_realization)
    for (auto& row : chunk) rows.push_back(std::move(row));
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  curvgrf::write_csv(out, header, rows);
  return 0;
}

int run_validate(const std::string& profile, std::uint64_t seed, const std::string& out_path,
                 unsigned threads, bool fail_fast) {
  curvgrf::ValidationConfig config;
  config.profile = profile;
  config.seed = seed;
  config.threads = threads;
  config.fail_fast = fail_fast;
  const curvgrf::ValidationReport report = curvgrf::run_full_validation(config);

  for (const auto& check : report.checks)
    std::cerr << (check.pass ? "PASS " : "FAIL ") << check.name
              << "  statistic=" << check.statistic << " threshold=" << check.threshold
              << (check.comparison == curvgrf::Comparison::kLess ? " (<)" : " (>)") << '\n';

  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  out << nlohmann::json(report).dump(2) << '\n';
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-form curvature statistics of isotropic Gaussian random field isosurfaces"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "plain key=value config file (flags take precedence)");

  unsigned threads = 0;
  app.add_option("--threads", threads, "worker thread cap (default: all cores)")
      ->envname("CURVGRF_THREADS");

  ModelOptions model_opts;
  add_model_options(&app, model_opts);

  auto* ops = app.add_subcommand("ops", "dump commutation/duplication operators as CSV");
  Eigen::Index ops_n = 2;
  std::string ops_out;
  ops->add_option("--n", ops_n, "ambient dimension")->required()->check(CLI::PositiveNumber);
  ops->add_option("--out", ops_out, "output CSV path (default stdout)");

  auto* bundle = app.add_subcommand("bundle", "dump covariance bundle matrices as CSV");
  Eigen::Index bundle_n = 2;
  std::string bundle_out;
  bundle->add_option("--n", bundle_n, "ambient dimension")->required()->check(CLI::PositiveNumber);
  bundle->add_option("--out", bundle_out, "output CSV path (default stdout)");

  auto* sample_jets = app.add_subcommand("sample-jets", "draw derivative jets to CSV");
  Eigen::Index sj_n = 2;
  std::uint64_t sj_count = 1000, sj_seed = 0;
  std::string sj_out;
  sample_jets->add_option("--n", sj_n, "ambient dimension")->required()->check(CLI::PositiveNumber);
  sample_jets->add_option("--count", sj_count, "number of jets")->required();
  sample_jets->add_option("--seed", sj_seed, "RNG seed")->required();
  sample_jets->add_option("--out", sj_out, "output CSV path (default stdout)");

  auto* curvature = app.add_subcommand("curvature", "principal curvatures of jets from CSV");
  std::string cv_jets, cv_out;
  curvature->add_option("--jets", cv_jets, "input jets CSV")->required();
  curvature->add_option("--out", cv_out, "output CSV path (default stdout)");

  auto* pdf = app.add_subcommand("pdf", "tabulate a closed-form density on a grid");
  std::string pdf_which, pdf_grid, pdf_out;
  Eigen::Index pdf_n = 2;
  pdf->add_option("--which", pdf_which, "density to tabulate")
      ->required()
      ->check(CLI::IsMember({"curvature", "eig", "gradnorm"}));
  pdf->add_option("--n", pdf_n, "ambient dimension")->required()->check(CLI::PositiveNumber);
  pdf->add_option("--grid", pdf_grid, "grid as start:stop:count, applied per axis")->required();
  pdf->add_option("--out", pdf_out, "output CSV path (default stdout)");

  auto* sample_field = app.add_subcommand("sample-field",
                                          "synthesize field realizations, harvest curvatures");
  Eigen::Index sf_n = 2;
  std::vector<Eigen::Index> sf_shape;
  double sf_spacing = 0.125;
  int sf_reals = 1;
  std::uint64_t sf_seed = 0;
  std::string sf_out, sf_dump;
  sample_field->add_option("--n", sf_n, "ambient dimension (2 or 3)")
      ->required()
      ->check(CLI::Range(2, 3));
  sample_field->add_option("--shape", sf_shape, "grid extent (one value or one per axis)")
      ->required();
  sample_field->add_option("--spacing", sf_spacing, "grid spacing")
      ->required()
      ->check(CLI::PositiveNumber);
  sample_field->add_option("--reals", sf_reals, "number of realizations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sample_field->add_option("--seed", sf_seed, "RNG seed")->required();
  sample_field->add_option("--out", sf_out, "pooled curvature CSV path (default stdout)");
  sample_field->add_option("--dump-fields", sf_dump,
                           "also dump raw fields as <prefix>_rK.bin with JSON headers");

  auto* validate = app.add_subcommand("validate", "run the validation suite");
  std::string va_profile = "fast", va_out;
  std::uint64_t va_seed = 42;
  bool va_fail_fast = false;
  validate->add_option("--profile", va_profile, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}))
      ->capture_default_str();
  validate->add_option("--seed", va_seed, "RNG seed")->capture_default_str();
  validate->add_option("--out", va_out, "report JSON path (default stdout)");
  validate->add_flag("--fail-fast", va_fail_fast, "stop after the first failing check");

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) apply_config_file(app, config_path, model_opts);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (ops->parsed()) return run_ops(ops_n, ops_out);
    if (bundle->parsed()) return run_bundle(bundle_n, model_opts, bundle_out);
    if (sample_jets->parsed())
      return run_sample_jets(sj_n, sj_count, sj_seed, model_opts, sj_out, threads);
    if (curvature->parsed()) return run_curvature(cv_jets, cv_out, model_opts);
    if (pdf->parsed()) return run_pdf(pdf_which, pdf_n, parse_grid(pdf_grid), model_opts, pdf_out);
    if (sample_field->parsed())
      return run_sample_field(sf_n, sf_shape, sf_spacing, sf_reals, sf_seed, model_opts, sf_out,
                              sf_dump, threads);
    if (validate->parsed()) return run_validate(va_profile, va_seed, va_out, threads, va_fail_fast);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
