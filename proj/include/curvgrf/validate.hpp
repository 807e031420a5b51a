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

#ifndef CURVGRF_VALIDATE_HPP_
#define CURVGRF_VALIDATE_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "curvgrf/covariance.hpp"
#include "curvgrf/curvature.hpp"
#include "curvgrf/density.hpp"
#include "curvgrf/ensemble.hpp"
#include "curvgrf/fieldgrid.hpp"
#include "curvgrf/matops.hpp"
#include "curvgrf/quadrature.hpp"

namespace curvgrf {

// Statistical harness: goodness-of-fit primitives plus the standard suite of
// checks that ties the samplers to the closed-form laws.  Every check is
// deterministic given the seed; thresholds are pinned here.

// Sup-norm distance between the empirical CDF of sorted samples and cdf.
template <typename Cdf>
double ks_statistic(const std::vector<double>& sorted_samples, Cdf&& cdf) {
  const std::size_t n = sorted_samples.size();
  if (n < 10) throw std::invalid_argument("ks_statistic: need at least 10 samples");
  if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end()))
    throw std::invalid_argument("ks_statistic: samples must be sorted");
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sorted_samples[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

// Two-sample sup-norm distance between empirical CDFs of sorted samples.
inline double ks_statistic_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 10 || b.size() < 10)
    throw std::invalid_argument("ks_statistic_two_sample: need at least 10 samples each");
  if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end()))
    throw std::invalid_argument("ks_statistic_two_sample: samples must be sorted");
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

// Worst entry, in standard-error units, of the empirical second-moment matrix
// of stacked (gradient, vech Hessian) samples against the exact covariance
// block-diag(grad_cov, sigma_n) with a zero cross block.
inline double empirical_cov_check(const std::vector<PointJet>& jets, const CovarianceBundle& b) {
  if (jets.size() < 10000) throw std::invalid_argument("empirical_cov_check: need >= 1e4 jets");
  const Eigen::Index n = b.n;
  const Eigen::Index d = n + vech_size(n);
  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(d, d);
  target.topLeftCorner(n, n) = b.grad_cov;
  target.bottomRightCorner(vech_size(n), vech_size(n)) = b.sigma_n;

  Eigen::MatrixXd moment = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd y(d);
  for (const PointJet& jet : jets) {
    y.head(n) = jet.gradient;
    y.tail(vech_size(n)) = vech_of(jet.hessian);
    moment.noalias() += y * y.transpose();
  }
  moment /= static_cast<double>(jets.size());

  double worst = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double se = std::sqrt((target(i, i) * target(j, j) + target(i, j) * target(i, j)) /
                                  static_cast<double>(jets.size()));
      worst = std::max(worst, std::abs(moment(i, j) - target(i, j)) / se);
    }
  }
  return worst;
}

enum class Comparison { kLess, kGreater };

struct CheckRecord {
  std::string name;
  std::string law;  // what the check verifies, in plain words
  double statistic = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::kLess;
  bool pass = false;
  std::uint64_t sample_size = 0;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;
  double runtime_ceiling_seconds = 0.0;
};

struct ValidationReport {
  std::string profile;
  std::uint64_t seed = 0;
  bool all_pass = false;
  std::vector<CheckRecord> checks;  // ordered by name
};

inline void to_json(nlohmann::json& j, const CheckRecord& r) {
  j = nlohmann::json{{"name", r.name},
                     {"law", r.law},
                     {"statistic", r.statistic},
                     {"threshold", r.threshold},
                     {"comparison", r.comparison == Comparison::kLess ? "less" : "greater"},
                     {"pass", r.pass},
                     {"sample_size", r.sample_size},
                     {"seed", r.seed},
                     {"runtime_seconds", r.runtime_seconds},
                     {"runtime_ceiling_seconds", r.runtime_ceiling_seconds}};
}

inline void from_json(const nlohmann::json& j, CheckRecord& r) {
  j.at("name").get_to(r.name);
  j.at("law").get_to(r.law);
  j.at("statistic").get_to(r.statistic);
  j.at("threshold").get_to(r.threshold);
  r.comparison = j.at("comparison").get<std::string>() == "less" ? Comparison::kLess
                                                                 : Comparison::kGreater;
  j.at("pass").get_to(r.pass);
  j.at("sample_size").get_to(r.sample_size);
  j.at("seed").get_to(r.seed);
  j.at("runtime_seconds").get_to(r.runtime_seconds);
  j.at("runtime_ceiling_seconds").get_to(r.runtime_ceiling_seconds);
}

inline void to_json(nlohmann::json& j, const ValidationReport& report) {
  j = nlohmann::json{{"profile", report.profile},
                     {"seed", report.seed},
                     {"all_pass", report.all_pass},
                     {"checks", report.checks}};
}

inline void from_json(const nlohmann::json& j, ValidationReport& report) {
  j.at("profile").get_to(report.profile);
  j.at("seed").get_to(report.seed);
  j.at("all_pass").get_to(report.all_pass);
  j.at("checks").get_to(report.checks);
}

// Serialization with the wall-clock fields removed: this is the part of the
// report that is byte-identical across runs and thread counts.
inline std::string deterministic_json(const ValidationReport& report) {
  nlohmann::json j = report;
  for (auto& check : j.at("checks")) check.erase("runtime_seconds");
  return j.dump(2);
}

struct ValidationConfig {
  std::string profile = "fast";  // "fast" or "full"
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0: resolve from CURVGRF_THREADS / hardware
  bool fail_fast = false;
};

namespace detail {

class CheckTimer {
 public:
  CheckTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline CheckRecord make_record(std::string name, std::string law, double statistic,
                               double threshold, Comparison cmp, std::uint64_t sample_size,
                               std::uint64_t seed, double ceiling, const CheckTimer& timer) {
  CheckRecord r;
  r.name = std::move(name);
  r.law = std::move(law);
  r.statistic = statistic;
  r.threshold = threshold;
  r.comparison = cmp;
  r.pass = cmp == Comparison::kLess ? statistic < threshold : statistic > threshold;
  r.sample_size = sample_size;
  r.seed = seed;
  r.runtime_ceiling_seconds = ceiling;
  r.runtime_seconds = timer.seconds();
  return r;
}

inline Eigen::MatrixXd random_orthogonal(Eigen::Index n, NormalStream& stream) {
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = stream.next_normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // Fix the sign ambiguity so Q is a deterministic function of g.
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

inline std::vector<double> sorted_curvatures_2d(const JetSampler& sampler, std::uint64_t count,
                                                double gradient_scale, unsigned threads) {
  std::vector<double> kappas(count);
  parallel_for(count, threads, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i)
      kappas[i] = principal_curvatures(sampler(i), gradient_scale).kappas[0];
  });
  std::sort(kappas.begin(), kappas.end());
  return kappas;
}

}  // namespace detail

// Runs the standard suite.  The "fast" profile keeps every analytic check at
// full strength and shrinks the Monte Carlo sizes; "full" runs the fully
// sized ensembles plus the grid-realization checks.
inline ValidationReport run_full_validation(const ValidationConfig& config) {
  const bool full = config.profile == "full";
  if (!full && config.profile != "fast")
    throw std::invalid_argument("run_full_validation: profile must be 'fast' or 'full'");
  const std::uint64_t seed = config.seed;
  const unsigned threads = resolve_threads(config.threads);

  const CorrelationModel model = CorrelationModel::gaussian(1.0);
  const DerivedConstants consts = constants(model);
  const double grad_scale = std::sqrt(consts.grad_var());

  using CheckFn = std::function<std::vector<CheckRecord>()>;
  std::vector<CheckFn> suite;
  const auto single = [&suite](std::function<CheckRecord()> fn) {
    suite.push_back([fn = std::move(fn)] { return std::vector<CheckRecord>{fn()}; });
  };

  single([seed] {
    detail::CheckTimer timer;
    double worst = 0.0;
    for (Eigen::Index n = 1; n <= 6; ++n) {
      const Eigen::MatrixXd lhs = duplication_matrix(n) * dup_pinv(n);
      const Eigen::MatrixXd rhs = 0.5 * (Eigen::MatrixXd::Identity(n * n, n * n) +
                                         commutation_matrix(n));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return detail::make_record("operator-identity-duplication",
                               "D_n D_n^+ equals (I + C_n)/2 for n = 1..6", worst, 1e-14,
                               Comparison::kLess, 6, seed, 1.0, timer);
  });

  const std::uint64_t jet_count = full ? 100000 : 20000;
  for (Eigen::Index n : {Eigen::Index{2}, Eigen::Index{3}}) {
    single([seed, n, jet_count, &consts, threads] {
      detail::CheckTimer timer;
      const CovarianceBundle bundle = build_bundle(n, consts);
      const JetSampler sampler(n, consts, seed);
      const double worst = empirical_cov_check(sampler.sample(jet_count, 0, threads), bundle);
      return detail::make_record(
          "jet-covariance-mc-n" + std::to_string(n),
          "sampled (gradient, vech Hessian) covariance matches the exact lag-zero blocks", worst,
          5.0, Comparison::kLess, jet_count, seed, 30.0, timer);
    });
  }

  single([seed, &consts] {
    detail::CheckTimer timer;
    double worst = 0.0;
    for (Eigen::Index n = 1; n <= 5; ++n) {
      const CovarianceBundle b = build_bundle(n, consts);
      const Eigen::MatrixXd a = b.hess_cov;
      const Eigen::MatrixXd p = hess_cov_pinv(b);
      worst = std::max(worst, (a * p * a - a).cwiseAbs().maxCoeff());
      worst = std::max(worst, (p * a * p - p).cwiseAbs().maxCoeff());
      worst = std::max(worst, ((a * p) - (a * p).transpose()).cwiseAbs().maxCoeff());
      worst = std::max(worst, ((p * a) - (p * a).transpose()).cwiseAbs().maxCoeff());
    }
    return detail::make_record("hessian-pinv-moore-penrose",
                               "closed-form pseudoinverse of the Hessian covariance satisfies all "
                               "four Moore-Penrose conditions for n = 1..5",
                               worst, 1e-12, Comparison::kLess, 5, seed, 1.0, timer);
  });

  single([seed, &consts] {
    detail::CheckTimer timer;
    double worst = 0.0;
    for (Eigen::Index n = 1; n <= 5; ++n) {
      const CovarianceBundle b = build_bundle(n, consts);
      const double numeric = b.sigma_n.determinant();
      worst = std::max(worst, std::abs(numeric - b.sigma_det) / std::abs(b.sigma_det));
    }
    return detail::make_record("sigma-determinant",
                               "closed-form determinant of the vech-coordinate covariance matches "
                               "a numeric determinant for n = 1..5",
                               worst, 1e-9, Comparison::kLess, 5, seed, 1.0, timer);
  });

  single([seed, &consts] {
    detail::CheckTimer timer;
    double worst = 0.0;
    NormalStream stream(seed, 0, 101);
    for (Eigen::Index n : {Eigen::Index{2}, Eigen::Index{3}, Eigen::Index{4}}) {
      const CovarianceBundle b = build_bundle(n, consts);
      for (int trial = 0; trial < 100; ++trial) {
        const Eigen::MatrixXd r = detail::random_orthogonal(n, stream);
        Eigen::VectorXd lambda(n);
        for (Eigen::Index i = 0; i < n; ++i) lambda[i] = 2.0 * stream.next_normal();
        const auto [lhs, rhs] = quadratic_form_reduction(b, r, lambda);
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
      }
    }
    return detail::make_record("quadratic-form-reduction",
                               "vech-coordinate quadratic form reduces to the eigenvalue-space "
                               "quadratic form for orthogonal conjugations",
                               worst, 1e-9, Comparison::kLess, 300, seed, 5.0, timer);
  });

  single([seed, &consts] {
    detail::CheckTimer timer;
    const DensitySpec spec(1, consts);
    const double var = 3.0 * consts.hess_scale();
    double worst = 0.0;
    for (double x = -6.0; x <= 6.0; x += 0.25) {
      Eigen::VectorXd lambda(1);
      lambda << x;
      const double normal = std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * 3.141592653589793 * var);
      worst = std::max(worst, std::abs(eig_pdf(spec, lambda) - normal));
    }
    return detail::make_record("eig-density-m1-normal-collapse",
                               "one-dimensional eigenvalue density collapses to the normal law "
                               "with variance 3 sigma^2 rho4_0",
                               worst, 1e-12, Comparison::kLess, 49, seed, 1.0, timer);
  });

  single([seed, &consts] {
    detail::CheckTimer timer;
    const DensitySpec spec(2, consts);
    const auto inner = [&](double x) {
      return integrate_real_line_tan(
          [&](double y) {
            Eigen::VectorXd lambda(2);
            lambda << x, y;
            return eig_pdf(spec, lambda);
          },
          1e-9);
    };
    const double mass = integrate_real_line_tan(inner, 1e-8);
    return detail::make_record("eig-density-normalization-m2",
                               "two-dimensional eigenvalue density integrates to one", std::abs(mass - 1.0),
                               1e-6, Comparison::kLess, 0, seed, 10.0, timer);
  });

  single([seed, &consts] {
    detail::CheckTimer timer;
    const DensitySpec spec(2, consts);
    const double mass = integrate_real_line_tan(
        [&](double k) {
          Eigen::VectorXd kappa(1);
          kappa << k;
          return curvature_pdf(spec, kappa);
        },
        1e-10);
    return detail::make_record("curvature-density-normalization-n2",
                               "planar curvature density integrates to one", std::abs(mass - 1.0),
                               1e-8, Comparison::kLess, 0, seed, 10.0, timer);
  });

  single([seed, &consts] {
    detail::CheckTimer timer;
    const DensitySpec spec(3, consts);
    const auto inner = [&](double x) {
      return integrate_real_line_tan(
          [&](double y) {
            Eigen::VectorXd kappa(2);
            kappa << x, y;
            return curvature_pdf(spec, kappa);
          },
          1e-9);
    };
    const double mass = integrate_real_line_tan(inner, 1e-8);
    return detail::make_record("curvature-density-normalization-n3",
                               "surface curvature density integrates to one", std::abs(mass - 1.0),
                               1e-6, Comparison::kLess, 0, seed, 30.0, timer);
  });

  single([seed, &consts] {
    detail::CheckTimer timer;
    const DensitySpec spec(2, consts);
    const double alpha = consts.alpha;
    double worst = 0.0;
    for (double k = -8.0; k <= 8.0; k += 0.1) {
      Eigen::VectorXd kappa(1);
      kappa << k;
      const double reduced = std::sqrt(alpha / 6.0) *
                             std::pow(1.0 + (2.0 * alpha / 3.0) * k * k, -1.5);
      worst = std::max(worst, std::abs(curvature_pdf(spec, kappa) - reduced));
    }
    return detail::make_record("curvature-density-closed-form-n2",
                               "planar curvature density equals its hand-reduced form", worst,
                               1e-12, Comparison::kLess, 161, seed, 1.0, timer);
  });

  for (Eigen::Index n : {Eigen::Index{2}, Eigen::Index{3}}) {
    single([seed, n, &consts] {
      detail::CheckTimer timer;
      const DensitySpec spec(n, consts);
      double worst = 0.0;
      int points = 0;
      if (n == 2) {
        for (int i = 0; i < 100; ++i) {
          Eigen::VectorXd kappa(1);
          kappa << -6.0 + 12.0 * i / 99.0;
          const double closed = curvature_pdf(spec, kappa);
          const double numeric = ratio_integral_pdf(spec, kappa);
          worst = std::max(worst, std::abs(closed - numeric) / (1.0 + std::abs(numeric)));
          ++points;
        }
      } else {
        for (int i = 0; i < 10; ++i) {
          for (int j = 0; j < 10; ++j) {
            Eigen::VectorXd kappa(2);
            kappa << -4.0 + 8.0 * i / 9.0, -4.0 + 8.0 * j / 9.0;
            const double closed = curvature_pdf(spec, kappa);
            const double numeric = ratio_integral_pdf(spec, kappa);
            worst = std::max(worst, std::abs(closed - numeric) / (1.0 + std::abs(numeric)));
            ++points;
          }
        }
      }
      return detail::make_record(
          "curvature-vs-ratio-integral-n" + std::to_string(n),
          "closed-form curvature density matches the numeric gradient-norm ratio integral", worst,
          1e-6, Comparison::kLess, static_cast<std::uint64_t>(points), seed, 60.0, timer);
    });
  }

  const std::uint64_t ks_count = full ? 1000000 : 100000;
  const double ks_threshold = 2.0 * 1.63 / std::sqrt(static_cast<double>(ks_count));
  single([seed, ks_count, ks_threshold, &consts, grad_scale, threads] {
    detail::CheckTimer timer;
    const JetSampler sampler(2, consts, seed);
    const std::vector<double> kappas =
        detail::sorted_curvatures_2d(sampler, ks_count, grad_scale, threads);
    const DensitySpec spec(2, consts);
    const double stat = ks_statistic(kappas, [&](double k) { return curvature_cdf_1d(spec, k); });
    return detail::make_record("curvature-ks-n2",
                               "sampled planar curvatures match the closed-form CDF", stat,
                               ks_threshold, Comparison::kLess, ks_count, seed, 120.0, timer);
  });

  single([seed, ks_count, ks_threshold, &consts, grad_scale, threads] {
    detail::CheckTimer timer;
    const JetSampler sampler(2, consts, seed);
    const std::vector<double> kappas =
        detail::sorted_curvatures_2d(sampler, ks_count, grad_scale, threads);
    const DerivedConstants corrupted(consts.rho2_0 * 1.2, consts.rho4_0, consts.sigma2);
    const DensitySpec spec(2, corrupted);  // alpha inflated by 20%
    const double stat = ks_statistic(kappas, [&](double k) { return curvature_cdf_1d(spec, k); });
    return detail::make_record("curvature-ks-negative-control",
                               "the KS check has power: a 20% alpha perturbation is rejected",
                               stat, ks_threshold, Comparison::kGreater, ks_count, seed, 120.0,
                               timer);
  });

  single([seed] {
    detail::CheckTimer timer;
    double worst = 0.0;
    for (Eigen::Index n : {Eigen::Index{2}, Eigen::Index{3}}) {
      const DensitySpec low(n, constants(CorrelationModel::gaussian(1.0, 0.1)));
      const DensitySpec high(n, constants(CorrelationModel::gaussian(1.0, 10.0)));
      for (int i = 0; i < 50; ++i) {
        Eigen::VectorXd kappa(n - 1);
        for (Eigen::Index j = 0; j < n - 1; ++j)
          kappa[j] = -5.0 + 10.0 * ((i * (n - 1) + j) % 101) / 100.0;
        worst = std::max(worst, std::abs(curvature_pdf(low, kappa) - curvature_pdf(high, kappa)));
      }
    }
    return detail::make_record("sigma2-invariance-pointwise",
                               "curvature density is unchanged by the field variance", worst,
                               1e-12, Comparison::kLess, 100, seed, 1.0, timer);
  });

  const std::uint64_t two_sample_count = full ? 100000 : 20000;
  single([seed, two_sample_count, grad_scale, threads] {
    detail::CheckTimer timer;
    const DerivedConstants low = constants(CorrelationModel::gaussian(1.0, 0.1));
    const DerivedConstants high = constants(CorrelationModel::gaussian(1.0, 10.0));
    const JetSampler sampler_low(2, low, seed + 3);
    const JetSampler sampler_high(2, high, seed + 7);
    const std::vector<double> a = detail::sorted_curvatures_2d(
        sampler_low, two_sample_count, std::sqrt(low.grad_var()), threads);
    const std::vector<double> b = detail::sorted_curvatures_2d(
        sampler_high, two_sample_count, std::sqrt(high.grad_var()), threads);
    const double stat = ks_statistic_two_sample(a, b);
    const double threshold = 1.63 * std::sqrt(2.0 / static_cast<double>(two_sample_count));
    return detail::make_record("sigma2-invariance-two-sample-ks",
                               "sampled curvature distributions for different field variances "
                               "are indistinguishable",
                               stat, threshold, Comparison::kLess, 2 * two_sample_count, seed,
                               30.0, timer);
  });

  if (full) {
    suite.push_back([seed, &model, threads] {
      detail::CheckTimer timer;
      const DensitySpec spec(2, constants(model));
      const auto pooled_ks = [&](double spacing, Eigen::Index size) {
        constexpr int kRealizations = 20;
        std::vector<std::vector<double>> per_realization(kRealizations);
        parallel_for(kRealizations, threads, [&](std::uint64_t begin, std::uint64_t end) {
          for (std::uint64_t r = begin; r < end; ++r) {
            const FieldGrid grid = synthesize(model, {size, size}, spacing, seed,
                                              static_cast<std::uint32_t>(r));
            const GridJets harvest = jets_from_grid(grid);
            auto& out = per_realization[r];
            out.reserve(harvest.jets.size());
            for (const PointJet& jet : harvest.jets)
              out.push_back(principal_curvatures(jet).kappas[0]);
          }
        });
        std::vector<double> pooled;
        for (auto& chunk : per_realization)
          pooled.insert(pooled.end(), chunk.begin(), chunk.end());
        std::sort(pooled.begin(), pooled.end());
        return ks_statistic(pooled, [&](double k) { return curvature_cdf_1d(spec, k); });
      };

      std::vector<CheckRecord> records;
      const double headline = pooled_ks(model.lengthscale / 8.0, 256);
      records.push_back(detail::make_record(
          "grid-curvature-ks",
          "curvatures harvested from synthesized field realizations match the closed-form CDF",
          headline, 0.05, Comparison::kLess, 20ull * 256 * 256, seed, 600.0, timer));

      // Convergence direction on a coarse baseline where the stencil bias is
      // well above the Monte Carlo floor.  Halving the spacing keeps the
      // domain (and, by the wavevector-keyed noise, the realizations) fixed.
      const double coarse = pooled_ks(model.lengthscale, 128);
      const double fine = pooled_ks(model.lengthscale / 2.0, 256);
      records.push_back(detail::make_record(
          "grid-curvature-ks-refinement", "halving the grid spacing reduces the KS distance",
          fine - coarse, 0.0, Comparison::kLess, 20ull * (128 * 128 + 256 * 256), seed, 600.0,
          timer));
      return records;
    });
  }

  ValidationReport report;
  report.profile = config.profile;
  report.seed = seed;

  if (config.fail_fast) {
    for (auto& fn : suite) {
      auto records = fn();
      const bool failed = std::any_of(records.begin(), records.end(),
                                      [](const CheckRecord& r) { return !r.pass; });
      for (auto& r : records) report.checks.push_back(std::move(r));
      if (failed) break;
    }
  } else {
    std::vector<std::future<std::vector<CheckRecord>>> futures;
    futures.reserve(suite.size());
    for (auto& fn : suite) futures.push_back(std::async(std::launch::async, fn));
    for (auto& f : futures)
      for (auto& r : f.get()) report.checks.push_back(std::move(r));
  }

  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const CheckRecord& r) { return r.pass; });
  return report;
}

}  // namespace curvgrf

#endif  // CURVGRF_VALIDATE_HPP_
