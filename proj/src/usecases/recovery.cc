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

#include "secrl/usecases/recovery.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "secrl/core/error.h"
#include "secrl/core/json_util.h"
#include "secrl/sysid/mixture.h"

namespace secrl::recovery {
namespace {

constexpr std::size_t kMaxObservationTable = 20000000;

void Require(bool ok, const std::string& what) {
  if (!ok) Fail(ErrorCode::kInvalidConfig, what);
}

std::string BitName(int x, int K) {
  std::string s;
  for (int l = 0; l < K; ++l) s.push_back(Bit(x, l) ? '1' : '0');
  return s;
}

}  // namespace

std::vector<std::vector<double>> Config::DefaultObservation() {
  // Alert-count shapes over 0..7: low counts when safe, shifted up when
  // compromised (implementer-chosen).
  sysid::MixtureModel safe{{{1.0, 2.0, 1.2}}, 0, 7};
  sysid::MixtureModel bad{{{1.0, 4.5, 1.5}}, 0, 7};
  return {sysid::DiscretizeMixture(safe), sysid::DiscretizeMixture(bad)};
}

Config Config::Default(int K) {
  Config c;
  c.K = K;
  for (int l = 0; l + 1 < K; ++l) c.edges.push_back({l, l + 1});
  c.obs_per_replica = DefaultObservation();
  return c;
}

void Config::Validate() const {
  Require(K >= 1, "K: must be >= 1");
  if (K > max_replicas) {
    Fail(ErrorCode::kDimensionCap, "K: " + std::to_string(K) + " exceeds the cap of " +
                                       std::to_string(max_replicas));
  }
  for (const auto& [u, v] : edges) {
    Require(u >= 0 && u < K && v >= 0 && v < K, "edges: endpoint out of range");
    Require(u != v, "edges: adjacency must be irreflexive");
  }
  Require(obs_per_replica.size() == 2 && !obs_per_replica[0].empty() &&
              obs_per_replica[0].size() == obs_per_replica[1].size(),
          "obs_per_replica: need two rows of equal, nonzero length");
  for (const auto& row : obs_per_replica) {
    double t = 0.0;
    for (double v : row) {
      Require(v >= 0.0, "obs_per_replica: entries must be nonnegative");
      t += v;
    }
    Require(std::abs(t - 1.0) <= 1e-9, "obs_per_replica: rows must sum to 1");
  }
  Require(gamma >= 0.0 && gamma < 1.0, "gamma: must lie in [0, 1)");
  const double no = std::pow(static_cast<double>(obs_per_replica[0].size()), K);
  if (no * std::ldexp(1.0, K) > kMaxObservationTable) {
    Fail(ErrorCode::kDimensionCap, "observation table too large");
  }
}

Config Config::FromJson(const nlohmann::json& doc) {
  JsonCheckKeys(doc, {"K", "edges", "obs_per_replica", "gamma", "max_replicas"});
  const int K = JsonGetOr<int>(doc, "K", 3);
  Config c = Default(std::max(K, 0));
  c.K = K;
  if (doc.is_object() && doc.contains("edges")) {
    c.edges = JsonGetOr<std::vector<std::pair<int, int>>>(doc, "edges", {});
  }
  c.obs_per_replica =
      JsonGetOr<std::vector<std::vector<double>>>(doc, "obs_per_replica", c.obs_per_replica);
  c.gamma = JsonGetOr<double>(doc, "gamma", c.gamma);
  c.max_replicas = JsonGetOr<int>(doc, "max_replicas", c.max_replicas);
  c.Validate();
  return c;
}

int CompromisedNeighbors(const Config& cfg, int s, int l) {
  // Symmetric closure of the edge list; duplicates count once.
  std::vector<char> seen(cfg.K, 0);
  int n = 0;
  for (const auto& [u, v] : cfg.edges) {
    int other = u == l ? v : (v == l ? u : -1);
    if (other < 0 || seen[other]) continue;
    seen[other] = 1;
    n += Bit(s, other);
  }
  return n;
}

double CompromiseProbability(int compromised_neighbors) {
  return std::min(0.2 * (1.0 + compromised_neighbors), 1.0);
}

double Reward(int K, int s, int a) {
  double r = 0.0;
  for (int l = 0; l < K; ++l) {
    const int sl = Bit(s, l), al = Bit(a, l);
    r -= 2.0 * sl * (1 - al) + al * (1 - sl);
  }
  return r;
}

ModelKernel Build(const Config& cfg) {
  cfg.Validate();
  const int K = cfg.K;
  const int ns = 1 << K;
  std::vector<std::string> names;
  for (int x = 0; x < ns; ++x) names.push_back(BitName(x, K));
  KernelBuilder b(names, names);
  for (int s = 0; s < ns; ++s) {
    std::vector<double> p(K);
    for (int l = 0; l < K; ++l) p[l] = CompromiseProbability(CompromisedNeighbors(cfg, s, l));
    for (int a = 0; a < ns; ++a) {
      // Product over replicas of independent per-replica outcomes.
      std::vector<Successor> row = {{0, 1.0}};
      for (int l = 0; l < K; ++l) {
        double p1;
        if (Bit(a, l)) {
          p1 = 0.0;
        } else if (Bit(s, l)) {
          p1 = 1.0;
        } else {
          p1 = p[l];
        }
        std::vector<Successor> next;
        for (const Successor& e : row) {
          if (p1 < 1.0) next.push_back({e.next, e.prob * (1.0 - p1)});
          if (p1 > 0.0) next.push_back({e.next | (1 << l), e.prob * p1});
        }
        row = std::move(next);
      }
      b.SetTransition(s, a, 0, std::move(row));
      b.SetReward(s, a, 0, Reward(K, s, a));
    }
  }
  const int per = static_cast<int>(cfg.obs_per_replica[0].size());
  int no = 1;
  for (int l = 0; l < K; ++l) no *= per;
  std::vector<std::string> onames;
  for (int o = 0; o < no; ++o) {
    std::string name;
    for (int l = 0; l < K; ++l) {
      if (l) name.push_back(',');
      name += std::to_string(ReplicaObservation(o, l, per));
    }
    onames.push_back(name);
  }
  std::vector<double> table(static_cast<std::size_t>(ns) * no);
  for (int s = 0; s < ns; ++s) {
    for (int o = 0; o < no; ++o) {
      double p = 1.0;
      for (int l = 0; l < K; ++l) p *= cfg.obs_per_replica[Bit(s, l)][ReplicaObservation(o, l, per)];
      table[static_cast<std::size_t>(s) * no + o] = p;
    }
  }
  b.SetObservations(onames, std::move(table));
  b.SetDiscount(cfg.gamma);
  std::vector<double> b1(ns, 0.0);
  b1[0] = 1.0;
  b.SetInitialBelief(b1);
  return b.Build();
}

}  // namespace secrl::recovery
