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

#include "secrl/core/kernel_json.h"

#include <algorithm>
#include <fstream>

#include "secrl/core/error.h"

namespace secrl {
namespace {

using nlohmann::json;

const json& Field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) Fail(ErrorCode::kFileFormat, std::string("missing field '") + name + "'");
  return *it;
}

std::vector<std::string> Names(const json& doc, const char* name) {
  const json& f = Field(doc, name);
  if (!f.is_array() || f.empty()) {
    Fail(ErrorCode::kFileFormat, std::string("'") + name + "' must be a nonempty array");
  }
  std::vector<std::string> out;
  for (const json& e : f) {
    if (!e.is_string()) Fail(ErrorCode::kFileFormat, std::string("'") + name + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

const json& Sized(const json& v, std::size_t n, const std::string& what) {
  if (!v.is_array() || v.size() != n) {
    Fail(ErrorCode::kFileFormat, what + " must be an array of length " + std::to_string(n));
  }
  return v;
}

double Number(const json& v, const std::string& what) {
  if (!v.is_number()) Fail(ErrorCode::kFileFormat, what + " must be a number");
  return v.get<double>();
}

}  // namespace

json KernelToJson(const ModelKernel& k, std::size_t dense_limit) {
  const int ns = k.num_states(), nd = k.num_defender_actions(), na = k.num_attacker_actions();
  json doc;
  doc["format"] = "secrl-kernel";
  doc["version"] = 1;
  doc["states"] = k.state_names();
  doc["defender_actions"] = k.defender_action_names();
  doc["attacker_actions"] = k.attacker_action_names();
  doc["discount"] = k.discount();
  doc["initial_belief"] = k.initial_belief();
  json terminals = json::array();
  for (int s : k.terminal_states()) terminals.push_back(k.state_names()[s]);
  doc["terminal_states"] = terminals;

  const std::size_t dense_size = k.num_rows() * static_cast<std::size_t>(ns);
  if (dense_size <= dense_limit) {
    json t = json::array();
    for (int s = 0; s < ns; ++s) {
      json ts = json::array();
      for (int d = 0; d < nd; ++d) {
        json td = json::array();
        for (int a = 0; a < na; ++a) {
          std::vector<double> row(ns, 0.0);
          for (const Successor& e : k.Transitions(s, d, a)) row[e.next] += e.prob;
          td.push_back(row);
        }
        ts.push_back(td);
      }
      t.push_back(ts);
    }
    doc["transition"] = t;
  } else {
    json t = json::array();
    for (int s = 0; s < ns; ++s) {
      for (int d = 0; d < nd; ++d) {
        for (int a = 0; a < na; ++a) {
          json succ = json::array();
          for (const Successor& e : k.Transitions(s, d, a)) succ.push_back({e.next, e.prob});
          t.push_back({s, d, a, succ});
        }
      }
    }
    doc["transition_sparse"] = t;
  }
  json r = json::array();
  for (int s = 0; s < ns; ++s) {
    json rs = json::array();
    for (int d = 0; d < nd; ++d) {
      json rd = json::array();
      for (int a = 0; a < na; ++a) rd.push_back(k.Reward(s, d, a));
      rs.push_back(rd);
    }
    r.push_back(rs);
  }
  doc["reward"] = r;
  if (k.fully_observed()) {
    doc["fully_observed"] = true;
  } else {
    doc["observations"] = k.observation_names();
    json z = json::array();
    for (int s = 0; s < ns; ++s) {
      auto row = k.ObservationRow(s);
      z.push_back(std::vector<double>(row.begin(), row.end()));
    }
    doc["observation"] = z;
  }
  if (k.has_attacker_mask()) {
    json m = json::array();
    for (int s = 0; s < ns; ++s) {
      std::vector<int> row(na);
      for (int a = 0; a < na; ++a) row[a] = k.AttackerFeasible(s, a) ? 1 : 0;
      m.push_back(row);
    }
    doc["attacker_feasible"] = m;
  }
  return doc;
}

ModelKernel KernelFromJson(const json& doc) {
  if (!doc.is_object()) Fail(ErrorCode::kFileFormat, "kernel document must be an object");
  std::vector<std::string> states = Names(doc, "states");
  std::vector<std::string> dacts = Names(doc, "defender_actions");
  std::vector<std::string> aacts = doc.contains("attacker_actions")
                                       ? Names(doc, "attacker_actions")
                                       : std::vector<std::string>{"null"};
  const std::size_t ns = states.size(), nd = dacts.size(), na = aacts.size();
  KernelBuilder b(states, dacts, aacts);

  if (doc.contains("transition")) {
    const json& t = Sized(doc["transition"], ns, "transition");
    for (std::size_t s = 0; s < ns; ++s) {
      const json& ts = Sized(t[s], nd, "transition[s]");
      for (std::size_t d = 0; d < nd; ++d) {
        const json& td = Sized(ts[d], na, "transition[s][d]");
        for (std::size_t a = 0; a < na; ++a) {
          const json& row = Sized(td[a], ns, "transition[s][d][a]");
          std::vector<Successor> succ;
          for (std::size_t n = 0; n < ns; ++n) {
            const double p = Number(row[n], "transition entry");
            if (p != 0.0) succ.push_back({static_cast<int>(n), p});
          }
          b.SetTransition(static_cast<int>(s), static_cast<int>(d), static_cast<int>(a),
                          std::move(succ));
        }
      }
    }
  } else if (doc.contains("transition_sparse")) {
    const json& t = doc["transition_sparse"];
    if (!t.is_array()) Fail(ErrorCode::kFileFormat, "transition_sparse must be an array");
    for (const json& row : t) {
      if (!row.is_array() || row.size() != 4 || !row[3].is_array()) {
        Fail(ErrorCode::kFileFormat, "transition_sparse rows are [s, d, a, [[next, p], ...]]");
      }
      const int s = row[0].get<int>(), d = row[1].get<int>(), a = row[2].get<int>();
      if (s < 0 || s >= static_cast<int>(ns) || d < 0 || d >= static_cast<int>(nd) || a < 0 ||
          a >= static_cast<int>(na)) {
        Fail(ErrorCode::kFileFormat, "transition_sparse row index out of range");
      }
      std::vector<Successor> succ;
      for (const json& e : row[3]) {
        if (!e.is_array() || e.size() != 2) Fail(ErrorCode::kFileFormat, "bad sparse successor");
        const int next = e[0].get<int>();
        if (next < 0 || next >= static_cast<int>(ns)) {
          Fail(ErrorCode::kFileFormat, "sparse successor out of range");
        }
        succ.push_back({next, Number(e[1], "transition entry")});
      }
      b.SetTransition(s, d, a, std::move(succ));
    }
  } else {
    Fail(ErrorCode::kFileFormat, "missing field 'transition'");
  }

  const json& r = Sized(Field(doc, "reward"), ns, "reward");
  for (std::size_t s = 0; s < ns; ++s) {
    const json& rs = Sized(r[s], nd, "reward[s]");
    for (std::size_t d = 0; d < nd; ++d) {
      const json& rd = Sized(rs[d], na, "reward[s][d]");
      for (std::size_t a = 0; a < na; ++a) {
        b.SetReward(static_cast<int>(s), static_cast<int>(d), static_cast<int>(a),
                    Number(rd[a], "reward entry"));
      }
    }
  }

  if (doc.value("fully_observed", false) || !doc.contains("observation")) {
    b.SetFullyObserved();
  } else {
    std::vector<std::string> obs = Names(doc, "observations");
    const json& z = Sized(doc["observation"], ns, "observation");
    std::vector<double> table;
    table.reserve(ns * obs.size());
    for (std::size_t s = 0; s < ns; ++s) {
      const json& row = Sized(z[s], obs.size(), "observation[s]");
      for (const json& v : row) table.push_back(Number(v, "observation entry"));
    }
    b.SetObservations(std::move(obs), std::move(table));
  }

  b.SetDiscount(Number(Field(doc, "discount"), "discount"));
  if (doc.contains("initial_belief")) {
    const json& b1 = Sized(doc["initial_belief"], ns, "initial_belief");
    std::vector<double> v;
    for (const json& e : b1) v.push_back(Number(e, "initial_belief entry"));
    b.SetInitialBelief(std::move(v));
  }
  if (doc.contains("terminal_states")) {
    for (const json& name : doc["terminal_states"]) {
      auto it = std::find(states.begin(), states.end(), name.get<std::string>());
      if (it == states.end()) Fail(ErrorCode::kFileFormat, "unknown terminal state");
      b.MarkTerminal(static_cast<int>(it - states.begin()));
    }
  }
  if (doc.contains("attacker_feasible")) {
    const json& m = Sized(doc["attacker_feasible"], ns, "attacker_feasible");
    for (std::size_t s = 0; s < ns; ++s) {
      const json& row = Sized(m[s], na, "attacker_feasible[s]");
      for (std::size_t a = 0; a < na; ++a) {
        b.SetAttackerFeasible(static_cast<int>(s), static_cast<int>(a), row[a].get<int>() != 0);
      }
    }
  }
  return b.Build();
}

ModelKernel LoadKernel(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kFileFormat, "cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFileFormat, path + ": " + e.what());
  }
  try {
    return KernelFromJson(doc);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFileFormat, path + ": " + e.what());
  }
}

void SaveKernel(const ModelKernel& kernel, const std::string& path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kFileFormat, "cannot write " + path);
  out << KernelToJson(kernel).dump() << "\n";
}

}  // namespace secrl
