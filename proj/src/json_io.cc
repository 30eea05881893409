// Copyright 2026 The stabforms Authors
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

#include "stabforms/json_io.h"

namespace stabforms {

json clifford_to_json(const CliffordOp& c) {
  json j;
  j["n"] = c.num_qubits();
  j["rows"] = c.tableau_rows().to_strings();
  return j;
}

CliffordOp clifford_from_json(const json& j) {
  size_t n = j.at("n").get<size_t>();
  BitMatrix rows = BitMatrix::from_strings(j.at("rows").get<std::vector<std::string>>());
  if (rows.rows() != 2 * n + 2) throw std::invalid_argument("tableau row count does not match n");
  return CliffordOp::from_tableau_rows(rows);
}

json matrix_to_json(const BitMatrix& m) { return m.to_strings(); }

json code_to_json(const EncodingSpec& spec) {
  json j;
  j["n"] = spec.n;
  j["k"] = spec.k;
  j["C"] = clifford_to_json(spec.c);
  return j;
}

EncodingSpec code_from_json(const json& j) {
  EncodingSpec spec;
  spec.n = j.at("n").get<uint32_t>();
  spec.k = j.at("k").get<uint32_t>();
  spec.c = clifford_from_json(j.at("C"));
  if (spec.k > spec.n || spec.c.num_qubits() != spec.n)
    throw std::invalid_argument("code spec is inconsistent");
  return spec;
}

namespace {

json probabilities(const std::vector<bool>& p_half) {
  json out = json::array();
  for (bool h : p_half) out.push_back(h ? 0.5 : 1.0);
  return out;
}

}  // namespace

json specific_result_to_json(const SpecificResult& r) {
  json j;
  j["p"] = probabilities(r.p_half);
  j["v"] = r.v.str();
  j["Co"] = clifford_to_json(r.co);
  return j;
}

json complete_result_to_json(const CompleteResult& r) {
  json j;
  j["p"] = probabilities(r.p_half);
  j["Co"] = clifford_to_json(r.co);
  j["A"] = matrix_to_json(r.a);
  j["M"] = matrix_to_json(r.m);
  j["v0"] = r.v0.str();
  return j;
}

json general_form_to_json(const GeneralForm& g, const OutcomeMap& m) {
  json j;
  j["n_in"] = g.n_in;
  j["n_out"] = g.n_out;
  j["k"] = g.k;
  j["n_r"] = g.n_r;
  j["L"] = clifford_to_json(g.l);
  j["R"] = clifford_to_json(g.r);
  j["A"] = matrix_to_json(g.a);
  j["Ax"] = matrix_to_json(g.a_x);
  j["Az"] = matrix_to_json(g.a_z);
  j["M"] = matrix_to_json(m.m);
  j["v0"] = m.v0.str();
  return j;
}

namespace {

std::string correction_snippet(const Correction& corr) {
  std::string out = "# append to circuit 1\n";
  for (const StabOp& op : corr.ops) out += format_op(op) + "\n";
  return out;
}

}  // namespace

json verdict_to_json(const ComparisonVerdict& v) {
  json j;
  j["equivalent"] = v.equivalent;
  if (v.equivalent) {
    j["M1"] = matrix_to_json(v.m1);
    j["M2"] = matrix_to_json(v.m2);
    j["u1"] = v.u1.str();
    j["u2"] = v.u2.str();
  } else {
    j["stage"] = fail_stage_name(v.stage);
    j["reason"] = v.reason;
    if (v.correction) {
      j["correction"] = correction_snippet(*v.correction);
      j["correction_note"] = v.correction->note;
    }
  }
  return j;
}

json logical_action_to_json(const LogicalActionResult& r) {
  json j;
  j["logical"] = r.logical;
  if (!r.logical) {
    j["reason"] = not_logical_reason_name(r.reason);
    j["detail"] = r.detail;
    if (r.correction) {
      j["correction"] = correction_snippet(*r.correction);
      j["correction_note"] = r.correction->note;
    }
    return j;
  }
  OutcomeMap m{r.m_l, r.v_l0};
  j["general_form"] = general_form_to_json(r.gen, m);
  j["dAx"] = matrix_to_json(r.d_a_x);
  j["dAz"] = matrix_to_json(r.d_a_z);
  j["dA"] = matrix_to_json(r.d_a);
  j["dM"] = matrix_to_json(r.d_m);
  return j;
}

json basis_to_json(const CommonSymplecticBasis& b) {
  auto list = [](const std::vector<PauliOp>& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(format_pauli(p));
    return out;
  };
  json j;
  j["n"] = b.n;
  j["Zdelta"] = list(b.z_delta);
  j["Xdelta"] = list(b.x_delta);
  j["Zcap"] = list(b.z_cap);
  j["Xcap"] = list(b.x_cap);
  j["Zs"] = list(b.z_s);
  j["Xs"] = list(b.x_s);
  j["Zm"] = list(b.z_m);
  j["Xm"] = list(b.x_m);
  j["Z"] = list(b.z);
  j["X"] = list(b.x);
  return j;
}

}  // namespace stabforms
