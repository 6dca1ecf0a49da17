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

#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "httplib.h"
#include "secrl/core/belief.h"
#include "secrl/core/kernel_json.h"
#include "secrl/debugger/server.h"
#include "secrl/debugger/session.h"
#include "secrl/experiment/registry.h"
#include "secrl/usecases/flow.h"
#include "secrl/usecases/segmentation.h"

namespace secrl::debugger {
namespace {

using nlohmann::json;

json WithoutId(json snap) {
  snap.erase("id");
  return snap;
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kInvalidConfig;
}

TEST(Session, FreshFlowSessionStartsAtInitialBelief) {
  SessionManager m;
  const json snap = m.Create({{"model", "flow-pomdp"}, {"attacker", "uniform"}, {"seed", 7}});
  const ModelKernel k = flow::BuildPomdp(flow::PomdpConfig{});
  EXPECT_EQ(snap["belief"].get<std::vector<double>>(), k.initial_belief());
  EXPECT_EQ(snap["intrusion_mass"].get<double>(), 0.0);
  EXPECT_EQ(snap["t"], 1);
  EXPECT_TRUE(snap["history"].empty());
  EXPECT_FALSE(snap["done"].get<bool>());
  EXPECT_EQ(m.Snapshot(snap["id"]), snap);
}

TEST(Session, SameSpecAndSeedGiveIdenticalInitialSnapshots) {
  SessionManager m;
  const json spec = {{"model", "recovery-pomdp"}, {"seed", 11}};
  const json a = m.Create(spec), b = m.Create(spec);
  EXPECT_NE(a["id"], b["id"]);
  EXPECT_EQ(WithoutId(a), WithoutId(b));
}

TEST(Session, StopWithOneStopLeftTerminates) {
  SessionManager m;
  const json snap = m.Create({{"model", "flow-pomdp"}, {"model_params", {{"L", 1}}}, {"seed", 3}});
  const json after = m.Step(snap["id"], {{"defender_action", "stop"}});
  EXPECT_TRUE(after["done"].get<bool>());
  EXPECT_EQ(after["attacker_view"]["state_name"], "\xE2\x88\x85");
  EXPECT_TRUE(after["attacker_view"]["terminal"].get<bool>());
  EXPECT_EQ(after["history"].size(), 1u);
  EXPECT_EQ(CodeOf([&] { m.Step(snap["id"], {{"defender_action", 0}}); }),
            ErrorCode::kSessionDone);
}

TEST(Session, ContinueFromInitialBeliefGivesBayesPosterior) {
  const flow::PomdpConfig cfg;  // p = 0.01
  const ModelKernel k = flow::BuildPomdp(cfg);
  SessionManager m;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const json snap = m.Create({{"model", "flow-pomdp"}, {"seed", seed}});
    const json after = m.Step(snap["id"], {{"defender_action", "continue"}});
    const int o = after["observation"]["index"];
    // Hand enumeration: the intrusion starts with probability p, then o is
    // drawn from the new state's alert distribution.
    const double z0 = k.ObservationProb(flow::StateIndex(cfg.L, 0, cfg.L), o);
    const double z1 = k.ObservationProb(flow::StateIndex(cfg.L, 1, cfg.L), o);
    const double posterior = cfg.p * z1 / (cfg.p * z1 + (1.0 - cfg.p) * z0);
    EXPECT_NEAR(after["intrusion_mass"].get<double>(), posterior, 1e-12);
  }
}

TEST(Session, HistoryGrowsByOnePerStep) {
  SessionManager m;
  const json snap = m.Create({{"model", "replication-mdp"}, {"seed", 5}});
  const std::string id = snap["id"];
  for (int i = 0; i < 3; ++i) m.Step(id, {{"defender_action", i % 2}});
  const json s = m.Snapshot(id);
  EXPECT_EQ(s["history"].size(), 3u);
  EXPECT_EQ(s["t"], 4);
  EXPECT_EQ(m.Snapshot(id), s);
}

TEST(Session, ErrorsForUnknownIdsAndIllegalActions) {
  SessionManager m;
  EXPECT_EQ(CodeOf([&] { m.Snapshot("deadbeef"); }), ErrorCode::kUnknownSession);
  EXPECT_EQ(CodeOf([&] { m.Step("deadbeef", {{"defender_action", 0}}); }),
            ErrorCode::kUnknownSession);
  EXPECT_EQ(CodeOf([&] { m.Delete("deadbeef"); }), ErrorCode::kUnknownSession);
  const std::string id = m.Create({{"model", "flow-pomdp"}, {"seed", 1}})["id"];
  EXPECT_EQ(CodeOf([&] { m.Step(id, {{"defender_action", 2}}); }), ErrorCode::kIllegalAction);
  EXPECT_EQ(CodeOf([&] { m.Step(id, {{"defender_action", "bogus"}}); }),
            ErrorCode::kIllegalAction);
  EXPECT_EQ(CodeOf([&] { m.Step(id, json::object()); }), ErrorCode::kIllegalAction);
  EXPECT_EQ(m.Snapshot(id)["t"], 1);
  EXPECT_EQ(CodeOf([&] { m.Create({{"model", "nope"}}); }), ErrorCode::kUnknownModel);
  EXPECT_EQ(CodeOf([&] { m.Create({{"model", "flow-pomdp"}, {"attacker", "sometimes"}}); }),
            ErrorCode::kInvalidStrategy);
  m.Delete(id);
  EXPECT_EQ(CodeOf([&] { m.Snapshot(id); }), ErrorCode::kUnknownSession);
}

std::vector<json> PlayRandom(SessionManager& m, const json& spec, uint64_t action_seed,
                             int steps) {
  const json first = m.Create(spec);
  const std::string id = first["id"];
  const int nd = first["defender_actions"].size();
  std::mt19937_64 rng(action_seed);
  std::vector<json> snaps = {WithoutId(first)};
  for (int i = 0; i < steps && !snaps.back()["done"].get<bool>(); ++i) {
    snaps.push_back(WithoutId(m.Step(id, {{"defender_action", static_cast<int>(rng() % nd)}})));
  }
  return snaps;
}

TEST(Session, ReplayIsBitIdentical) {
  for (const char* model : {"flow-pomdp", "recovery-pomdp", "segmentation-game",
                            "replication-game", "flow-game"}) {
    SessionManager m;
    const json spec = {{"model", model}, {"seed", 42}};
    const auto a = PlayRandom(m, spec, 9, 40);
    const auto b = PlayRandom(m, spec, 9, 40);
    ASSERT_EQ(a.size(), b.size()) << model;
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].dump(), b[i].dump()) << model;
  }
}

TEST(Session, BeliefEqualsFilterFoldedOverHistory) {
  for (const char* model : {"flow-pomdp", "recovery-pomdp", "segmentation-game"}) {
    SessionManager m;
    const json spec = {{"model", model}, {"seed", 8}};
    const auto snaps = PlayRandom(m, spec, 2, 30);
    const auto inst = experiment::BuildModel(model, json::object());
    const ModelKernel& k = *inst.kernel;
    Belief b = Belief::Initial(k);
    for (std::size_t i = 1; i < snaps.size(); ++i) {
      const json& h = snaps[i]["history"].back();
      b = BeliefUpdate(b, h["defender_action"]["index"], h["observation"]["index"], k,
                       *inst.default_attacker);
      const auto got = snaps[i]["belief"].get<std::vector<double>>();
      for (int s = 0; s < k.num_states(); ++s) {
        ASSERT_NEAR(got[s], b[s], 1e-12) << model << " step " << i;
      }
    }
  }
}

TEST(Session, SegmentationAttackerRespectsGating) {
  SessionManager m;
  const auto inst = experiment::BuildModel("segmentation-game", json::object());
  const ModelKernel& k = *inst.kernel;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto snaps = PlayRandom(m, {{"model", "segmentation-game"}, {"seed", seed}}, seed, 30);
    for (std::size_t i = 1; i < snaps.size(); ++i) {
      const int s = snaps[i - 1]["attacker_view"]["state"];
      const int a = snaps[i]["history"].back()["attacker_action"]["index"];
      EXPECT_TRUE(k.AttackerFeasible(s, a));
    }
  }
  // A table putting mass on compromise of a clean node is rejected.
  std::vector<double> table(static_cast<std::size_t>(k.num_states()) * k.num_attacker_actions(),
                            0.0);
  for (int s = 0; s < k.num_states(); ++s) {
    table[static_cast<std::size_t>(s) * k.num_attacker_actions() +
          k.num_attacker_actions() - 1] = 1.0;
  }
  EXPECT_EQ(CodeOf([&] {
              m.Create({{"model", "segmentation-game"},
                        {"attacker", {{"type", "table"}, {"table", table}}}});
            }),
            ErrorCode::kInvalidStrategy);
}

TEST(Session, ConcurrentSessionsMatchSerialOnes) {
  SessionManager m;
  const json spec = {{"model", "recovery-pomdp"}, {"seed", 77}};
  const auto serial = PlayRandom(m, spec, 4, 25);
  std::vector<std::vector<json>> results(6);
  std::vector<std::thread> threads;
  for (int i = 0; i < 6; ++i) {
    threads.emplace_back([&, i] { results[i] = PlayRandom(m, spec, 4, 25); });
  }
  for (auto& t : threads) t.join();
  for (const auto& r : results) EXPECT_EQ(r, serial);
  // Unseeded sessions draw distinct streams.
  const json a = m.Create({{"model", "flow-pomdp"}});
  const json b = m.Create({{"model", "flow-pomdp"}});
  EXPECT_NE(a["seed"], b["seed"]);
}

TEST(Session, ConcurrentStepsOnOneSessionAreSerialized) {
  SessionManager m;
  const std::string id = m.Create({{"model", "replication-mdp"}, {"seed", 1}})["id"];
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&] {
      for (int j = 0; j < 25; ++j) m.Step(id, {{"defender_action", 0}});
    });
  }
  for (auto& t : threads) t.join();
  const json s = m.Snapshot(id);
  EXPECT_EQ(s["history"].size(), 100u);
  EXPECT_EQ(s["t"], 101);
}

TEST(Session, SuggestedActionComesFromLoadedStrategy) {
  SessionManager m;
  const json snap = m.Create({{"model", "flow-pomdp"},
                              {"seed", 2},
                              {"defender_strategy", {{"type", "threshold"}, {"alpha", 0.75}}}});
  EXPECT_EQ(snap["suggested"]["name"], "continue");
  const ThresholdStrategy thr = flow::MakeThresholdStrategy(0.75, 3);
  json s = snap;
  for (int i = 0; i < 60 && !s["done"].get<bool>(); ++i) {
    s = m.Step(snap["id"], {{"defender_action", "continue"}});
    if (s["done"].get<bool>()) break;
    const auto belief = s["belief"].get<std::vector<double>>();
    const std::string expected = thr.IntrusionMass(belief) > 0.75 ? "stop" : "continue";
    EXPECT_EQ(s["suggested"]["name"], expected);
  }
  const json none = m.Create({{"model", "flow-pomdp"}, {"seed", 2}});
  EXPECT_TRUE(none["suggested"].is_null());
  EXPECT_EQ(CodeOf([&] {
              m.Create({{"model", "flow-pomdp"},
                        {"defender_strategy", {{"type", "table"}, {"table", {1.0}}}}});
            }),
            ErrorCode::kInvalidStrategy);
}

TEST(Session, UploadedKernels) {
  SessionManager m;
  const ModelKernel k = flow::BuildPomdp(flow::PomdpConfig{});
  json doc = KernelToJson(k);
  const json ok = m.Create({{"kernel", doc}, {"seed", 4}});
  EXPECT_EQ(ok["model"], "uploaded");
  EXPECT_EQ(ok["belief"].get<std::vector<double>>(), k.initial_belief());

  doc["initial_belief"][0] = 0.5;  // no longer sums to one
  try {
    m.Create({{"kernel", doc}});
    ADD_FAILURE() << "expected rejection";
  } catch (const ReportError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownModel);
    EXPECT_FALSE(e.report().empty());
  }
}

TEST(Session, IdleSessionsExpire) {
  SessionManager m(std::chrono::seconds(0));
  m.Create({{"model", "flow-pomdp"}});
  std::this_thread::sleep_for(std::chrono::milliseconds(5));
  EXPECT_EQ(m.PurgeExpired(), 1u);
  EXPECT_EQ(m.size(), 0u);
}

class HttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = std::make_unique<DebuggerServer>(sessions_);
    port_ = server_->Bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->Serve(); });
    server_->WaitUntilReady();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    server_->Stop();
    if (thread_.joinable()) thread_.join();
  }
  static void ExpectErrorBody(const httplib::Result& r, int status, const std::string& code) {
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, status);
    const json body = json::parse(r->body);
    EXPECT_EQ(body["error"], code);
    EXPECT_TRUE(body["detail"].is_string());
  }

  SessionManager sessions_;
  std::unique_ptr<DebuggerServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(HttpTest, EndpointsRoundTrip) {
  auto models = client_->Get("/models");
  ASSERT_TRUE(models);
  EXPECT_EQ(models->status, 200);
  EXPECT_EQ(json::parse(models->body).size(), 6u);

  auto created = client_->Post(
      "/sessions", json({{"model", "flow-pomdp"}, {"model_params", {{"L", 1}}}, {"seed", 7}}).dump(),
      "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 201);
  const json snap = json::parse(created->body);
  const std::string id = snap["id"];
  EXPECT_EQ(snap, sessions_.Snapshot(id));

  auto got = client_->Get("/sessions/" + id);
  ASSERT_TRUE(got);
  EXPECT_EQ(json::parse(got->body), snap);

  ExpectErrorBody(client_->Post("/sessions/" + id + "/step",
                                R"({"defender_action": 9})", "application/json"),
                  422, "IllegalAction");
  auto stepped = client_->Post("/sessions/" + id + "/step", R"({"defender_action": "stop"})",
                               "application/json");
  ASSERT_TRUE(stepped);
  EXPECT_EQ(stepped->status, 200);
  EXPECT_TRUE(json::parse(stepped->body)["done"].get<bool>());
  ExpectErrorBody(client_->Post("/sessions/" + id + "/step", R"({"defender_action": 0})",
                                "application/json"),
                  409, "SessionDone");

  auto deleted = client_->Delete("/sessions/" + id);
  ASSERT_TRUE(deleted);
  EXPECT_EQ(deleted->status, 200);
  ExpectErrorBody(client_->Get("/sessions/" + id), 404, "UnknownSession");
  ExpectErrorBody(client_->Post("/sessions", R"({"model": "nope"})", "application/json"), 404,
                  "UnknownModel");
  auto bad = client_->Post("/sessions", "{not json", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
}

TEST_F(HttpTest, InvalidUploadedKernelReturnsReport) {
  json doc = KernelToJson(flow::BuildPomdp(flow::PomdpConfig{}));
  doc["initial_belief"][0] = 0.5;
  auto r = client_->Post("/sessions", json({{"kernel", doc}}).dump(), "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 422);
  const json body = json::parse(r->body);
  EXPECT_EQ(body["error"], "UnknownModel");
  EXPECT_FALSE(body["report"].empty());
}

}  // namespace
}  // namespace secrl::debugger
