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

#include "secrl/learning/ppo.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "secrl/core/belief.h"
#include "secrl/core/error.h"
#include "secrl/core/json_util.h"
#include "secrl/core/random.h"
#include "secrl/core/simulate.h"

namespace secrl {
namespace {

void Softmax(std::span<const double> logits, std::span<double> probs) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double t = 0.0;
  for (std::size_t j = 0; j < logits.size(); ++j) t += (probs[j] = std::exp(logits[j] - m));
  for (double& p : probs) p /= t;
}

int FeatureDim(const ModelKernel& k, FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kStateOneHot:
    case FeatureKind::kBelief:
      return k.num_states();
    case FeatureKind::kObservationOneHot:
      return k.num_observations() + 1;
  }
  return 0;
}

}  // namespace

void PgParams::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) Fail(ErrorCode::kInvalidConfig, what);
  };
  require(learning_rate > 0.0, "pg.learning_rate: must be > 0");
  require(hidden_layers >= 1 && neurons_per_layer >= 1, "pg: network must have a hidden layer");
  require(steps_between_updates >= 1 && batch_size >= 1, "pg: batch sizes must be >= 1");
  require(gamma >= 0.0 && gamma < 1.0, "pg.gamma: must lie in [0, 1)");
  require(gae_lambda >= 0.0 && gae_lambda <= 1.0, "pg.gae_lambda: must lie in [0, 1]");
  require(clip_range > 0.0 && clip_range < 1.0, "pg.clip_range: must lie in (0, 1)");
  require(entropy_coef >= 0.0 && value_coef >= 0.0, "pg: coefficients must be >= 0");
  require(max_grad_norm > 0.0, "pg.max_grad_norm: must be > 0");
  require(epochs >= 1 && updates >= 0, "pg: epochs >= 1, updates >= 0");
  require(max_episode_steps >= 1 && eval_episodes >= 1, "pg: episode settings must be >= 1");
}

PgParams PgParams::FromJson(const nlohmann::json& doc) {
  JsonCheckKeys(doc, {"learning_rate", "hidden_layers", "neurons_per_layer",
                      "steps_between_updates", "batch_size", "gamma", "gae_lambda", "clip_range",
                      "entropy_coef", "value_coef", "max_grad_norm", "epochs", "updates",
                      "max_episode_steps", "eval_episodes", "normalize_advantage", "seed"});
  PgParams p;
  p.learning_rate = JsonGetOr<double>(doc, "learning_rate", p.learning_rate);
  p.hidden_layers = JsonGetOr<int>(doc, "hidden_layers", p.hidden_layers);
  p.neurons_per_layer = JsonGetOr<int>(doc, "neurons_per_layer", p.neurons_per_layer);
  p.steps_between_updates = JsonGetOr<int>(doc, "steps_between_updates", p.steps_between_updates);
  p.batch_size = JsonGetOr<int>(doc, "batch_size", p.batch_size);
  p.gamma = JsonGetOr<double>(doc, "gamma", p.gamma);
  p.gae_lambda = JsonGetOr<double>(doc, "gae_lambda", p.gae_lambda);
  p.clip_range = JsonGetOr<double>(doc, "clip_range", p.clip_range);
  p.entropy_coef = JsonGetOr<double>(doc, "entropy_coef", p.entropy_coef);
  p.value_coef = JsonGetOr<double>(doc, "value_coef", p.value_coef);
  p.max_grad_norm = JsonGetOr<double>(doc, "max_grad_norm", p.max_grad_norm);
  p.epochs = JsonGetOr<int>(doc, "epochs", p.epochs);
  p.updates = JsonGetOr<int>(doc, "updates", p.updates);
  p.max_episode_steps = JsonGetOr<int>(doc, "max_episode_steps", p.max_episode_steps);
  p.eval_episodes = JsonGetOr<int>(doc, "eval_episodes", p.eval_episodes);
  p.normalize_advantage = JsonGetOr<bool>(doc, "normalize_advantage", p.normalize_advantage);
  p.seed = JsonGetOr<uint64_t>(doc, "seed", p.seed);
  p.Validate();
  return p;
}

PolicyNetwork::PolicyNetwork(int inputs, int actions, int hidden_layers, int neurons)
    : inputs_(inputs), actions_(actions) {
  auto add = [this](int in, int out) {
    Layer l{in, out, size_, size_ + static_cast<std::size_t>(in) * out};
    size_ = l.b + out;
    return l;
  };
  int in = inputs;
  for (int h = 0; h < hidden_layers; ++h) {
    hidden_.push_back(add(in, neurons));
    in = neurons;
  }
  policy_head_ = add(in, actions);
  value_head_ = add(in, 1);
}

std::vector<double> PolicyNetwork::Initialize(uint64_t seed) const {
  Rng rng(DeriveSeed(seed, {0x1417}));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> p(size_, 0.0);
  auto fill = [&](const Layer& l, double gain) {
    const double scale = gain / std::sqrt(static_cast<double>(l.in));
    for (std::size_t i = 0; i < static_cast<std::size_t>(l.in) * l.out; ++i) {
      p[l.w + i] = scale * normal(rng);
    }
  };
  for (const Layer& l : hidden_) fill(l, 1.0);
  fill(policy_head_, 0.01);  // near-uniform initial policy
  fill(value_head_, 1.0);
  return p;
}

void PolicyNetwork::Forward(std::span<const double> params, std::span<const double> x,
                            std::span<double> probs, double* value) const {
  std::vector<double> a(x.begin(), x.end()), z;
  for (const Layer& l : hidden_) {
    z.assign(l.out, 0.0);
    for (int o = 0; o < l.out; ++o) {
      double acc = params[l.b + o];
      const double* w = &params[l.w + static_cast<std::size_t>(o) * l.in];
      for (int i = 0; i < l.in; ++i) acc += w[i] * a[i];
      z[o] = std::tanh(acc);
    }
    a.swap(z);
  }
  std::vector<double> logits(actions_);
  for (int o = 0; o < actions_; ++o) {
    double acc = params[policy_head_.b + o];
    const double* w = &params[policy_head_.w + static_cast<std::size_t>(o) * policy_head_.in];
    for (int i = 0; i < policy_head_.in; ++i) acc += w[i] * a[i];
    logits[o] = acc;
  }
  Softmax(logits, probs);
  if (value) {
    double acc = params[value_head_.b];
    for (int i = 0; i < value_head_.in; ++i) acc += params[value_head_.w + i] * a[i];
    *value = acc;
  }
}

double PolicyNetwork::Loss(std::span<const double> params, const Batch& batch, double clip_range,
                           double value_coef, double entropy_coef,
                           std::vector<double>* grad) const {
  const int n = batch.size();
  if (n == 0) return 0.0;
  if (grad && grad->size() != size_) grad->assign(size_, 0.0);
  const double inv_n = 1.0 / n;
  const int depth = static_cast<int>(hidden_.size());
  std::vector<std::vector<double>> acts(depth + 1);
  std::vector<double> logits(actions_), probs(actions_), dlogits(actions_);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    // Forward, keeping activations.
    acts[0].assign(batch.features.begin() + static_cast<std::ptrdiff_t>(i) * inputs_,
                   batch.features.begin() + static_cast<std::ptrdiff_t>(i + 1) * inputs_);
    for (int h = 0; h < depth; ++h) {
      const Layer& l = hidden_[h];
      acts[h + 1].assign(l.out, 0.0);
      for (int o = 0; o < l.out; ++o) {
        double acc = params[l.b + o];
        const double* w = &params[l.w + static_cast<std::size_t>(o) * l.in];
        for (int k = 0; k < l.in; ++k) acc += w[k] * acts[h][k];
        acts[h + 1][o] = std::tanh(acc);
      }
    }
    const std::vector<double>& top = acts[depth];
    for (int o = 0; o < actions_; ++o) {
      double acc = params[policy_head_.b + o];
      const double* w = &params[policy_head_.w + static_cast<std::size_t>(o) * policy_head_.in];
      for (int k = 0; k < policy_head_.in; ++k) acc += w[k] * top[k];
      logits[o] = acc;
    }
    double value = params[value_head_.b];
    for (int k = 0; k < value_head_.in; ++k) value += params[value_head_.w + k] * top[k];

    const double m = *std::max_element(logits.begin(), logits.end());
    double z = 0.0;
    for (int o = 0; o < actions_; ++o) z += std::exp(logits[o] - m);
    const double lse = m + std::log(z);
    double entropy = 0.0;
    for (int o = 0; o < actions_; ++o) {
      const double lp = logits[o] - lse;
      probs[o] = std::exp(lp);
      entropy -= probs[o] * lp;
    }
    const int a = batch.actions[i];
    const double log_prob = logits[a] - lse;
    const double ratio = std::exp(log_prob - batch.old_log_probs[i]);
    const double adv = batch.advantages[i];
    const double unclipped = ratio * adv;
    const double clipped = std::clamp(ratio, 1.0 - clip_range, 1.0 + clip_range) * adv;
    const double surrogate = std::min(unclipped, clipped);
    const double verr = value - batch.returns[i];
    total += (-surrogate + value_coef * verr * verr - entropy_coef * entropy) * inv_n;
    if (!grad) continue;

    // d/dlogits of the per-sample loss, scaled by 1/n.
    const double dsurr_dlogp = unclipped <= clipped ? unclipped : 0.0;
    for (int o = 0; o < actions_; ++o) {
      const double lp = logits[o] - lse;
      dlogits[o] = (-dsurr_dlogp * ((o == a ? 1.0 : 0.0) - probs[o]) +
                    entropy_coef * probs[o] * (lp + entropy)) *
                   inv_n;
    }
    const double dvalue = 2.0 * value_coef * verr * inv_n;

    std::vector<double>& g = *grad;
    std::vector<double> dtop(policy_head_.in, 0.0);
    for (int o = 0; o < actions_; ++o) {
      g[policy_head_.b + o] += dlogits[o];
      const std::size_t row = policy_head_.w + static_cast<std::size_t>(o) * policy_head_.in;
      for (int k = 0; k < policy_head_.in; ++k) {
        g[row + k] += dlogits[o] * top[k];
        dtop[k] += dlogits[o] * params[row + k];
      }
    }
    g[value_head_.b] += dvalue;
    for (int k = 0; k < value_head_.in; ++k) {
      g[value_head_.w + k] += dvalue * top[k];
      dtop[k] += dvalue * params[value_head_.w + k];
    }
    for (int h = depth - 1; h >= 0; --h) {
      const Layer& l = hidden_[h];
      std::vector<double> dprev(l.in, 0.0);
      for (int o = 0; o < l.out; ++o) {
        const double y = acts[h + 1][o];
        const double dz = dtop[o] * (1.0 - y * y);
        g[l.b + o] += dz;
        const std::size_t row = l.w + static_cast<std::size_t>(o) * l.in;
        for (int k = 0; k < l.in; ++k) {
          g[row + k] += dz * acts[h][k];
          dprev[k] += dz * params[row + k];
        }
      }
      dtop.swap(dprev);
    }
  }
  return total;
}

ParametricPolicy::ParametricPolicy(std::shared_ptr<const PolicyNetwork> net,
                                   std::vector<double> params, FeatureKind features,
                                   int num_states, int num_observations)
    : net_(std::move(net)),
      params_(std::move(params)),
      features_(features),
      num_states_(num_states),
      num_observations_(num_observations) {
  if (params_.size() != net_->num_parameters()) {
    Fail(ErrorCode::kShapeMismatch, "policy parameters do not match the network");
  }
}

void ParametricPolicy::Features(const InfoState& info, std::span<double> x) const {
  std::fill(x.begin(), x.end(), 0.0);
  switch (features_) {
    case FeatureKind::kStateOneHot:
      if (info.state < 0 || info.state >= num_states_) {
        Fail(ErrorCode::kInvalidStrategy, "state features need the state");
      }
      x[info.state] = 1.0;
      break;
    case FeatureKind::kBelief:
      if (info.belief.size() != x.size()) {
        Fail(ErrorCode::kInvalidStrategy, "belief features need the belief");
      }
      std::copy(info.belief.begin(), info.belief.end(), x.begin());
      break;
    case FeatureKind::kObservationOneHot:
      x[info.observation < 0 ? num_observations_ : info.observation] = 1.0;
      break;
  }
}

void ParametricPolicy::ActionProbabilities(const InfoState& info, std::span<double> out) const {
  std::vector<double> x(net_->inputs());
  Features(info, x);
  net_->Forward(params_, x, out, nullptr);
}

double ParametricPolicy::Value(const InfoState& info) const {
  std::vector<double> x(net_->inputs()), probs(net_->actions());
  Features(info, x);
  double v = 0.0;
  net_->Forward(params_, x, probs, &v);
  return v;
}

PgResult TrainPg(const ModelKernel& kernel, const Strategy& attacker, FeatureKind features,
                 const PgParams& params) {
  params.Validate();
  if (features == FeatureKind::kStateOneHot && !kernel.fully_observed()) {
    Fail(ErrorCode::kInvalidConfig, "pg: state features need a fully observed model");
  }
  const int nd = kernel.num_defender_actions();
  const int dim = FeatureDim(kernel, features);
  auto net = std::make_shared<const PolicyNetwork>(dim, nd, params.hidden_layers,
                                                   params.neurons_per_layer);
  std::vector<double> theta = net->Initialize(params.seed);
  const std::size_t np = theta.size();
  std::vector<double> adam_m(np, 0.0), adam_v(np, 0.0), grad(np);
  long long adam_t = 0;

  const bool track_belief = features == FeatureKind::kBelief && !kernel.fully_observed();
  const std::vector<double> filter =
      attacker.IsStateBased()
          ? StateActionTable(attacker, kernel.num_states())
          : std::vector<double>(static_cast<std::size_t>(kernel.num_states()) *
                                    kernel.num_attacker_actions(),
                                1.0 / kernel.num_attacker_actions());

  Rng rng(DeriveSeed(params.seed, {1}));
  // Episode state.
  int s = 0, obs = -1, ep_steps = 0;
  std::vector<double> belief;
  auto reset = [&] {
    s = SampleIndex(kernel.initial_belief(), rng);
    obs = -1;
    ep_steps = 0;
    belief = kernel.initial_belief();
    if (kernel.fully_observed()) {
      belief.assign(kernel.num_states(), 0.0);
      belief[s] = 1.0;
    }
  };
  auto info_now = [&] {
    InfoState info;
    info.state = kernel.fully_observed() ? s : -1;
    info.belief = belief;
    info.observation = obs;
    info.time = ep_steps + 1;
    return info;
  };
  reset();

  PgResult result;
  const int n = params.steps_between_updates;
  std::vector<double> feats(static_cast<std::size_t>(n) * dim), values(n), rewards(n), logps(n);
  std::vector<int> actions(n);
  std::vector<char> done(n);
  std::vector<double> x(dim), probs(nd), adv(n), rets(n);
  long long env_steps = 0;

  for (int update = 1; update <= params.updates; ++update) {
    ParametricPolicy current(net, theta, features, kernel.num_states(), kernel.num_observations());
    for (int t = 0; t < n; ++t) {
      const InfoState info = info_now();
      current.Features(info, x);
      double v = 0.0;
      net->Forward(theta, x, probs, &v);
      const int d = SampleIndex(probs, rng);
      InfoState att_info;
      att_info.state = s;
      const int a = SampleAction(attacker, att_info, rng);
      double r = kernel.Reward(s, d, a);
      const int next = kernel.SampleNextState(s, d, a, rng);
      std::copy(x.begin(), x.end(), feats.begin() + static_cast<std::ptrdiff_t>(t) * dim);
      actions[t] = d;
      logps[t] = std::log(std::max(probs[d], 1e-300));
      values[t] = v;
      s = next;
      ++ep_steps;
      if (!kernel.fully_observed()) {
        obs = kernel.SampleObservation(s, rng);
        if (track_belief) {
          std::vector<double> pred = PredictBelief(belief, d, kernel, filter);
          try {
            Belief post = ConditionBelief(pred, obs, kernel);
            belief.assign(post.probs().begin(), post.probs().end());
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kZeroLikelihood) throw;
            const double tot = std::accumulate(pred.begin(), pred.end(), 0.0);
            for (double& p : pred) p /= tot;
            belief = std::move(pred);
          }
        }
      } else {
        belief.assign(kernel.num_states(), 0.0);
        belief[s] = 1.0;
      }
      const bool terminal = kernel.IsTerminal(s);
      const bool truncated = !terminal && ep_steps >= params.max_episode_steps;
      if (truncated) {
        // Bootstrap the cut-off tail into the last reward.
        r += params.gamma * current.Value(info_now());
      }
      rewards[t] = r;
      done[t] = terminal || truncated;
      if (done[t]) reset();
    }
    env_steps += n;
    const double last_value = current.Value(info_now());
    double gae = 0.0;
    for (int t = n - 1; t >= 0; --t) {
      const double nonterminal = done[t] ? 0.0 : 1.0;
      const double next_v = t == n - 1 ? last_value : values[t + 1];
      const double delta = rewards[t] + params.gamma * next_v * nonterminal - values[t];
      gae = delta + params.gamma * params.gae_lambda * nonterminal * gae;
      adv[t] = gae;
      rets[t] = gae + values[t];
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      for (int start = 0; start < n; start += params.batch_size) {
        const int end = std::min(n, start + params.batch_size);
        PolicyNetwork::Batch batch;
        for (int j = start; j < end; ++j) {
          const int t = order[j];
          batch.features.insert(batch.features.end(),
                                feats.begin() + static_cast<std::ptrdiff_t>(t) * dim,
                                feats.begin() + static_cast<std::ptrdiff_t>(t + 1) * dim);
          batch.actions.push_back(actions[t]);
          batch.old_log_probs.push_back(logps[t]);
          batch.advantages.push_back(adv[t]);
          batch.returns.push_back(rets[t]);
        }
        if (params.normalize_advantage && batch.size() > 1) {
          const double mean =
              std::accumulate(batch.advantages.begin(), batch.advantages.end(), 0.0) /
              batch.size();
          double var = 0.0;
          for (double a : batch.advantages) var += (a - mean) * (a - mean);
          const double sd = std::sqrt(var / (batch.size() - 1));
          for (double& a : batch.advantages) a = (a - mean) / (sd + 1e-8);
        }
        std::fill(grad.begin(), grad.end(), 0.0);
        const double loss = net->Loss(theta, batch, params.clip_range, params.value_coef,
                                      params.entropy_coef, &grad);
        double norm = 0.0;
        for (double g : grad) norm += g * g;
        norm = std::sqrt(norm);
        if (!std::isfinite(loss) || !std::isfinite(norm)) {
          Fail(ErrorCode::kNonFiniteLoss, "update " + std::to_string(update));
        }
        const double scale = norm > params.max_grad_norm ? params.max_grad_norm / norm : 1.0;
        ++adam_t;
        const double b1 = 0.9, b2 = 0.999, eps = 1e-5;
        const double c1 = 1.0 - std::pow(b1, static_cast<double>(adam_t));
        const double c2 = 1.0 - std::pow(b2, static_cast<double>(adam_t));
        for (std::size_t i = 0; i < np; ++i) {
          const double g = grad[i] * scale;
          adam_m[i] = b1 * adam_m[i] + (1 - b1) * g;
          adam_v[i] = b2 * adam_v[i] + (1 - b2) * g * g;
          theta[i] -= params.learning_rate * (adam_m[i] / c1) / (std::sqrt(adam_v[i] / c2) + eps);
        }
      }
    }

    ParametricPolicy snapshot(net, theta, features, kernel.num_states(), kernel.num_observations());
    EpisodeOptions eval;
    eval.max_steps = params.max_episode_steps;
    const MonteCarloStats stats =
        EvaluateMonteCarlo(kernel, snapshot, attacker, params.eval_episodes,
                           DeriveSeed(params.seed, {2, static_cast<uint64_t>(update)}), eval);
    result.curve.push_back({update, env_steps, stats.mean, stats.stddev});
  }
  result.policy = std::make_shared<ParametricPolicy>(net, theta, features, kernel.num_states(),
                                                     kernel.num_observations());
  return result;
}

}  // namespace secrl
