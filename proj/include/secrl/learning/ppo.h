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

#ifndef SECRL_LEARNING_PPO_H_
#define SECRL_LEARNING_PPO_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "json.hpp"
#include "secrl/core/kernel.h"
#include "secrl/core/strategy.h"

namespace secrl {

struct PgParams {
  double learning_rate = 5.148e-5;
  int hidden_layers = 1;
  int neurons_per_layer = 64;
  int steps_between_updates = 2048;
  int batch_size = 16;
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip_range = 0.2;
  double entropy_coef = 2e-4;
  double value_coef = 0.102;
  double max_grad_norm = 0.5;
  int epochs = 10;
  int updates = 50;
  int max_episode_steps = 200;
  int eval_episodes = 50;
  bool normalize_advantage = true;
  uint64_t seed = 0;

  void Validate() const;
  static PgParams FromJson(const nlohmann::json& doc);
};

// What the policy sees.
enum class FeatureKind { kStateOneHot, kBelief, kObservationOneHot };

// Fully connected tanh trunk with a softmax action head and a linear value
// head. Parameters live in one flat vector.
class PolicyNetwork {
 public:
  PolicyNetwork(int inputs, int actions, int hidden_layers, int neurons);

  int inputs() const { return inputs_; }
  int actions() const { return actions_; }
  std::size_t num_parameters() const { return size_; }
  std::vector<double> Initialize(uint64_t seed) const;

  // Action probabilities and value estimate for one feature vector.
  void Forward(std::span<const double> params, std::span<const double> x, std::span<double> probs,
               double* value) const;

  struct Batch {
    std::vector<double> features;  // row-major, inputs() per sample
    std::vector<int> actions;
    std::vector<double> old_log_probs;
    std::vector<double> advantages;
    std::vector<double> returns;
    int size() const { return static_cast<int>(actions.size()); }
  };

  // Mean over the batch of -clipped surrogate + value_coef * (V - R)^2 -
  // entropy_coef * H. Adds the gradient into `grad` when given.
  double Loss(std::span<const double> params, const Batch& batch, double clip_range,
              double value_coef, double entropy_coef, std::vector<double>* grad) const;

 private:
  struct Layer {
    int in, out;
    std::size_t w, b;  // offsets into the parameter vector
  };
  int inputs_, actions_;
  std::vector<Layer> hidden_;
  Layer policy_head_, value_head_;
  std::size_t size_ = 0;
};

// Stochastic policy backed by a trained network.
class ParametricPolicy final : public Strategy {
 public:
  ParametricPolicy(std::shared_ptr<const PolicyNetwork> net, std::vector<double> params,
                   FeatureKind features, int num_states, int num_observations);

  StrategyKind kind() const override { return StrategyKind::kParametricStochastic; }
  int num_actions() const override { return net_->actions(); }
  std::vector<double> parameters() const override { return params_; }
  void ActionProbabilities(const InfoState& info, std::span<double> out) const override;
  bool IsStateBased() const override { return features_ == FeatureKind::kStateOneHot; }
  bool NeedsBelief() const override { return features_ == FeatureKind::kBelief; }

  void Features(const InfoState& info, std::span<double> x) const;
  double Value(const InfoState& info) const;
  const PolicyNetwork& network() const { return *net_; }

 private:
  std::shared_ptr<const PolicyNetwork> net_;
  std::vector<double> params_;
  FeatureKind features_;
  int num_states_, num_observations_;
};

struct PgCurvePoint {
  int update;
  long long env_steps;
  double mean;
  double stddev;
};

struct PgResult {
  std::shared_ptr<ParametricPolicy> policy;
  std::vector<PgCurvePoint> curve;
};

// Clipped-surrogate policy gradient with GAE against a fixed attacker. The
// defender's features follow `features`; belief features use a Bayes filter
// with the attacker's state table (uniform when not state-based).
PgResult TrainPg(const ModelKernel& kernel, const Strategy& attacker, FeatureKind features,
                 const PgParams& params);

}  // namespace secrl

#endif  // SECRL_LEARNING_PPO_H_
