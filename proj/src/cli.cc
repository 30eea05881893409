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

#include "stabforms/cli.h"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "stabforms/json_io.h"

namespace stabforms::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

StabCircuit load_circuit(const std::string& path) { return parse_circuit(read_file(path)); }

EncodingSpec load_code(const std::string& path) {
  return code_from_json(json::parse(read_file(path)));
}

StabilizerGroup load_group(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<SparsePauli> ps;
  uint32_t n = 0;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) continue;
    ps.push_back(parse_pauli(line));
    if (!ps.back().qubits.empty()) n = std::max(n, ps.back().max_qubit() + 1);
  }
  StabilizerGroup g;
  g.n = n;
  for (const auto& p : ps) g.gens.push_back(p.embed(n));
  g.validate();
  return g;
}

// Flat human-readable rendering of the same content as the JSON form.
void render_text(const json& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [key, val] : j.items()) {
      std::string p = prefix.empty() ? key : prefix + "." + key;
      render_text(val, out, p);
    }
  } else if (j.is_array()) {
    bool scalars = true;
    for (const auto& v : j)
      if (!v.is_primitive()) scalars = false;
    if (scalars) {
      out << prefix << ":";
      for (const auto& v : j) out << " " << (v.is_string() ? v.get<std::string>() : v.dump());
      out << "\n";
    } else {
      size_t i = 0;
      for (const auto& v : j) render_text(v, out, prefix + "[" + std::to_string(i++) + "]");
    }
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.find('\n') != std::string::npos) {
      out << prefix << ":\n";
      std::istringstream lines(s);
      std::string line;
      while (std::getline(lines, line)) out << "  " << line << "\n";
    } else {
      out << prefix << ": " << s << "\n";
    }
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

struct Emitter {
  std::string out_path;
  bool text = false;
  void operator()(const json& j, std::ostream& out) const {
    std::ostringstream buf;
    if (text)
      render_text(j, buf);
    else
      buf << j.dump(2) << "\n";
    if (out_path.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(out_path);
      if (!f) throw std::invalid_argument("cannot write file: " + out_path);
      f << buf.str();
    }
  }
};

void write_text(const std::string& text, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write file: " + path);
  f << text;
}

int run_or_rethrow(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_or_rethrow(args, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

namespace {

int run_or_rethrow(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stabilizer circuit characterization and verification"};
  app.require_subcommand(1);
  std::string out_path;
  std::string format = "json";
  bool verbose = false;
  app.add_option("-o,--output", out_path, "write output to a file instead of stdout");
  app.add_option("--format", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_flag("-v,--verbose", verbose, "trace progress on stderr");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "simulate a zero-input circuit");
  std::string sim_circuit, sim_outcomes;
  bool sim_complete = false, sim_via = false, sim_sample = false;
  uint64_t sim_seed = 0;
  sim_cmd->add_option("--circuit", sim_circuit, ".stab circuit file")->required();
  sim_cmd->add_option("--outcomes", sim_outcomes, "outcome selector bits for a specific run");
  sim_cmd->add_flag("--complete", sim_complete, "outcome-complete simulation");
  sim_cmd->add_flag("--via-specific", sim_via, "outcome-complete via repeated specific runs");
  sim_cmd->add_flag("--sample", sim_sample, "specific run with random outcome selector");
  sim_cmd->add_option("--seed", sim_seed, "seed for --sample");

  // general-form
  auto* gf_cmd = app.add_subcommand("general-form", "compute a general form circuit");
  std::string gf_circuit;
  bool gf_compress = false;
  gf_cmd->add_option("--circuit", gf_circuit, ".stab circuit file")->required();
  gf_cmd->add_flag("--compress", gf_compress, "apply randomness compression");

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "compare two circuits");
  std::string cmp_a, cmp_b, cmp_corr, cmp_batch;
  cmp_cmd->add_option("--circuit1", cmp_a, "first .stab circuit");
  cmp_cmd->add_option("--circuit2", cmp_b, "second .stab circuit");
  cmp_cmd->add_option("--emit-correction", cmp_corr, "write the correction snippet here");
  cmp_cmd->add_option("--batch", cmp_batch, "manifest with one 'a.stab b.stab' pair per line");

  // logical-action
  auto* la_cmd = app.add_subcommand("logical-action", "logical action of a circuit");
  std::string la_circuit, la_in, la_out;
  la_cmd->add_option("--circuit", la_circuit, ".stab circuit file")->required();
  la_cmd->add_option("--in-code", la_in, "input code JSON")->required();
  la_cmd->add_option("--out-code", la_out, "output code JSON")->required();

  // verify-logical
  auto* vl_cmd = app.add_subcommand("verify-logical", "verify a logical action against a reference");
  std::string vl_circuit, vl_in, vl_out, vl_ref;
  vl_cmd->add_option("--circuit", vl_circuit, ".stab circuit file")->required();
  vl_cmd->add_option("--in-code", vl_in, "input code JSON")->required();
  vl_cmd->add_option("--out-code", vl_out, "output code JSON")->required();
  vl_cmd->add_option("--reference", vl_ref, "reference .stab circuit")->required();

  // symplectic-basis
  auto* sb_cmd = app.add_subcommand("symplectic-basis", "common symplectic basis of two groups");
  std::string sb_s, sb_m;
  sb_cmd->add_option("--s", sb_s, "group file, one Pauli literal per line")->required();
  sb_cmd->add_option("--m", sb_m, "group file, one Pauli literal per line")->required();

  // surgery-demo
  auto* sd_cmd = app.add_subcommand("surgery-demo", "repetition-code lattice surgery demo");
  uint32_t sd_d = 2;
  sd_cmd->add_option("--d", sd_d, "code distance (>= 2)")->required();

  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  std::vector<std::string> argv = args;
  std::vector<const char*> cargv;
  cargv.push_back("stabforms");
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Emitter emit{out_path, format == "text"};
  auto trace = [&](const std::string& msg) {
    if (verbose) err << "[stabforms] " << msg << "\n";
  };

  if (sim_cmd->parsed()) {
    trace("loading " + sim_circuit);
    StabCircuit c = load_circuit(sim_circuit);
    CircuitInfo info = validate(c);
    if (sim_complete) {
      emit(complete_result_to_json(simulate_complete(c)), out);
    } else if (sim_via) {
      emit(complete_result_to_json(simulate_complete_via_specific(c)), out);
    } else {
      BitVec vt(info.n_outcomes);
      if (sim_sample) {
        std::mt19937_64 rng(sim_seed);
        for (size_t i = 0; i < vt.size(); ++i) vt.set(i, rng() & 1);
      } else if (!sim_outcomes.empty()) {
        vt = BitVec::from_string(sim_outcomes);
        if (vt.size() != info.n_outcomes)
          throw std::invalid_argument("--outcomes length must equal the outcome count");
      }
      emit(specific_result_to_json(simulate_specific(c, vt)), out);
    }
    return 0;
  }
  if (gf_cmd->parsed()) {
    auto [g, m] = general_form(load_circuit(gf_circuit));
    if (gf_compress) {
      Compression comp = compress(g);
      json j = general_form_to_json(comp.g, m);
      j["F_fwd"] = matrix_to_json(comp.fwd);
      j["F_bwd"] = matrix_to_json(comp.bwd);
      emit(j, out);
    } else {
      emit(general_form_to_json(g, m), out);
    }
    return 0;
  }
  if (cmp_cmd->parsed()) {
    if (!cmp_batch.empty()) {
      std::istringstream manifest(read_file(cmp_batch));
      std::string line;
      json results = json::array();
      bool all_eq = true;
      while (std::getline(manifest, line)) {
        std::istringstream ls(line);
        std::string fa, fb;
        if (!(ls >> fa >> fb)) continue;
        ComparisonVerdict v = compare_circuits(load_circuit(fa), load_circuit(fb));
        json j = verdict_to_json(v);
        j["pair"] = {fa, fb};
        results.push_back(std::move(j));
        all_eq = all_eq && v.equivalent;
      }
      emit(results, out);
      return all_eq ? 0 : 1;
    }
    if (cmp_a.empty() || cmp_b.empty())
      throw std::invalid_argument("compare needs --circuit1 and --circuit2 (or --batch)");
    ComparisonVerdict v = compare_circuits(load_circuit(cmp_a), load_circuit(cmp_b));
    emit(verdict_to_json(v), out);
    if (!v.equivalent && v.correction && !cmp_corr.empty()) {
      std::string snippet;
      for (const StabOp& op : v.correction->ops) snippet += format_op(op) + "\n";
      write_text(snippet, cmp_corr);
    }
    return v.equivalent ? 0 : 1;
  }
  if (la_cmd->parsed()) {
    LogicalActionResult r =
        logical_action(load_circuit(la_circuit), load_code(la_in), load_code(la_out));
    emit(logical_action_to_json(r), out);
    return r.logical ? 0 : 1;
  }
  if (vl_cmd->parsed()) {
    LogicalVerifyResult r = verify_logical(load_circuit(vl_circuit), load_code(vl_in),
                                           load_code(vl_out), load_circuit(vl_ref));
    json j;
    if (r.status == LogicalVerifyResult::Status::kNotLogical) {
      j["verdict"] = "not-logical";
      j["detail"] = logical_action_to_json(r.action);
    } else if (r.status == LogicalVerifyResult::Status::kNotEquivalent) {
      j["verdict"] = "not-equivalent";
      j["detail"] = verdict_to_json(r.cmp);
    } else {
      j["verdict"] = "true";
      j["M"] = matrix_to_json(r.m);
      j["M_ref"] = matrix_to_json(r.m_ref);
      j["u"] = r.u.str();
      j["u_ref"] = r.u_ref.str();
    }
    emit(j, out);
    return r.status == LogicalVerifyResult::Status::kTrue ? 0 : 1;
  }
  if (sb_cmd->parsed()) {
    StabilizerGroup s = load_group(sb_s), m = load_group(sb_m);
    uint32_t n = std::max(s.n, m.n);
    for (auto& g : s.gens) g = g.embed(n, 0);
    for (auto& g : m.gens) g = g.embed(n, 0);
    s.n = m.n = n;
    emit(basis_to_json(common_symplectic_basis(s, m)), out);
    return 0;
  }
  if (sd_cmd->parsed()) {
    SurgeryInstance inst = repetition_surgery(sd_d);
    LogicalVerifyResult r =
        verify_logical(inst.circuit, inst.code_s, inst.code_s, inst.reference);
    json j;
    j["d"] = sd_d;
    j["circuit"] = format_circuit(inst.circuit);
    j["code_s"] = code_to_json(inst.code_s);
    j["code_m"] = code_to_json(inst.code_m);
    j["reference"] = format_circuit(inst.reference);
    j["basis"] = basis_to_json(inst.basis_sm);
    j["verdict"] = r.status == LogicalVerifyResult::Status::kTrue ? "true" : "false";
    if (r.status == LogicalVerifyResult::Status::kTrue) {
      j["M"] = matrix_to_json(r.m);
      j["M_ref"] = matrix_to_json(r.m_ref);
      j["u"] = r.u.str();
      j["u_ref"] = r.u_ref.str();
    }
    emit(j, out);
    return r.status == LogicalVerifyResult::Status::kTrue ? 0 : 1;
  }
  return 2;
}

}  // namespace

}  // namespace stabforms::cli
