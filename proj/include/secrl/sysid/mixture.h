// Copyright 2026 The Secrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SECRL_SYSID_MIXTURE_H_
#define SECRL_SYSID_MIXTURE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace secrl::sysid {

struct MixtureComponent {
  double weight = 1.0;
  double mean = 0.0;
  double stddev = 1.0;
};

// Univariate Gaussian mixture with an integer support [support_min,
// support_max] used for discretization.
struct MixtureModel {
  std::vector<MixtureComponent> components;
  int64_t support_min = 0;
  int64_t support_max = 0;

  double Density(double x) const;
  double LogDensity(double x) const;
  // Throws InvalidConfig when weights or stddevs are invalid.
  void Check() const;
};

struct GmmOptions {
  int max_iterations = 500;
  // Stops when the mean log-likelihood improves by less than this.
  double tolerance = 1e-10;
  // Component variances never fall below floor * (data variance).
  double variance_floor = 1e-6;
};

struct GmmFit {
  MixtureModel model;
  std::vector<double> log_likelihood;  // total, one entry per EM iteration
  std::vector<std::string> warnings;
  int iterations = 0;
  bool converged = false;
};

// Expectation-maximization with seeded k-means++ initialization. The model's
// support is set to the sample range.
GmmFit FitGmm(const std::vector<double>& samples, int k, uint64_t seed,
              const GmmOptions& options = {});

// Probability of integer v proportional to the mixture mass on
// [v - 0.5, v + 0.5), renormalized over the support.
std::vector<double> DiscretizeMixture(const MixtureModel& m);

// Same mass, aggregated into `bins` equal-width bins over the support; bin i
// covers integers [min + i*w, min + (i+1)*w) with w = ceil(range / bins).
std::vector<double> DiscretizeMixtureBinned(const MixtureModel& m, int bins);

// Which bin of DiscretizeMixtureBinned an integer observation falls into.
int BinOf(const MixtureModel& m, int bins, int64_t value);

nlohmann::json ToJson(const MixtureModel& m);
MixtureModel MixtureFromJson(const nlohmann::json& doc);

}  // namespace secrl::sysid

#endif  // SECRL_SYSID_MIXTURE_H_
