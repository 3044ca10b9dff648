// catembed: command-line front end. Exit status is 0 iff every check that
// the invocation asked for passed.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "catembed/companion.hpp"
#include "catembed/compilers.hpp"
#include "catembed/error.hpp"
#include "catembed/gatesets.hpp"
#include "catembed/sim.hpp"

using namespace catembed;

namespace {

struct Output {
  bool json_mode = false;
  json doc = json::object();
  std::ostringstream text;
};

// A path, or the JSON text itself when no such file exists.
json load_json(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    std::ifstream in(arg);
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::ParseError, arg + ": " + e.what());
    }
  }
  try {
    return json::parse(arg);
  } catch (const json::exception&) {
    throw Error(ErrorKind::InvalidArgument, "no such file, and not inline JSON: " + arg);
  }
}

std::string vector_text(const ExactMatrix& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.rows(); ++i) s += (i ? ", " : "") + v(i, 0).to_string();
  return s + ")";
}

std::string matrix_text(const ExactMatrix& m) {
  std::string s;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += "  [";
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? ", " : "") + m(r, c).to_string();
    s += "]\n";
  }
  return s;
}

json catalyst_bundle(const CatalogEntry& e) {
  json v = json::array();
  for (std::size_t i = 0; i < e.catalyst.rows(); ++i) v.push_back(cyc_to_json(e.catalyst(i, 0)));
  return {{"vector", v}, {"norm_sq", cyc_to_json(e.norm_sq)}, {"projector", matrix_to_json(e.embedding.projector)}};
}

// ---------------------------------------------------------------- verify-catalog

struct EntryCheck {
  std::string id;
  bool pass = true;
  std::vector<std::string> checks;
  std::string failure;
};

EntryCheck verify_entry(const json& j, const std::string& path) {
  EntryCheck out;
  out.id = j.value("id", "<no id>");
  try {
    const CatalogEntry e = entry_from_json(j);
    out.checks.push_back("pre-embedding, catalyst, norm and " + std::to_string(e.probes.size()) + " probes");
    try {
      const auto family = projector_family(e.embedding);
      for (const auto& t : family) {
        for (const auto& p : e.probes) {
          if (!twisted_check(e.embedding, t, p)) {
            throw Error(ErrorKind::InvalidArgument, "twisted action fails for tau = zeta -> zeta^" +
                                                        std::to_string(t.tau.exponent()));
          }
        }
      }
      for (const auto& p : e.probes) {
        if (trace_reconstruction(family, p) != phi_apply(e.embedding, p)) {
          throw Error(ErrorKind::InvalidArgument, "projector family does not reconstruct Phi");
        }
      }
      out.checks.push_back("projector family of " + std::to_string(family.size()));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::UnsupportedCase) throw;
      out.checks.push_back("projector family skipped (non-Galois orbit)");
    }
    if (e.concat_of) {
      verify_concat(e, path);
      out.checks.push_back("concatenation of " + e.concat_of->first + " and " + e.concat_of->second);
    }
  } catch (const Error& err) {
    out.pass = false;
    out.failure = err.what();
  }
  return out;
}

int cmd_verify_catalog(const std::string& path, Output& out) {
  const json cat = read_catalog(path);
  bool ok = true;
  json entries = json::array();
  for (const auto& j : cat) {
    const EntryCheck c = verify_entry(j, path);
    ok = ok && c.pass;
    json r = {{"id", c.id}, {"pass", c.pass}, {"checks", c.checks}};
    if (!c.pass) r["failure"] = c.failure;
    entries.push_back(r);
    out.text << (c.pass ? "PASS " : "FAIL ") << c.id;
    if (!c.pass) out.text << ": " << c.failure;
    out.text << "\n";
  }
  out.doc = {{"catalog", path}, {"entries", entries}, {"pass", ok}};
  if (cat.empty()) {
    out.doc["warning"] = "catalog is empty";
    out.text << "warning: catalog " << path << " is empty; nothing to verify\n";
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- embed

int cmd_embed(const std::string& id, const std::string& matrix_arg, const std::string& circuit_arg, Output& out) {
  const CatalogEntry e = catalog_get(id);
  const PreEmbedding& pe = e.embedding;
  out.doc = {{"embedding", id}, {"catalyst", catalyst_bundle(e)}};
  if (!matrix_arg.empty()) {
    const ExactMatrix m = matrix_from_json(load_json(matrix_arg));
    const ExactMatrix phi = phi_apply(pe, m);
    const bool ok = catalytic_check(pe, m);
    out.doc["phi"] = matrix_to_json(phi);
    out.doc["catalytic_check"] = ok;
    out.text << "Phi(M) under " << id << ":\n" << matrix_text(phi) << "catalyst " << vector_text(e.catalyst)
             << ", norm^2 " << e.norm_sq.to_string() << "\ncatalytic check: " << (ok ? "pass" : "FAIL") << "\n";
    return ok ? 0 : 1;
  }
  // Circuit mode: each gate G gets the target gate Phi[G] with evaluation
  // Phi(e(G)), and the circuit is lifted through the induced embedding.
  const json in = load_json(circuit_arg);
  GateSet source("input");
  if (in.at("gate_set").is_string()) {
    source = gateset_by_name(in["gate_set"].get<std::string>());
  } else {
    for (const auto& [name, m] : in["gate_set"].items()) source.add(name, matrix_from_json(m));
  }
  const Circuit c = circuit_from_any(in.at("circuit"), source);
  GateSet target("lifted:" + id);
  std::map<std::string, Circuit> templates;
  for (const auto& [name, g] : source.gates()) {
    const ExactMatrix phi = phi_apply(pe, g.evaluation);
    target.add("Phi[" + name + "]", phi);
    templates.emplace(name, Circuit::gate("Phi[" + name + "]", phi.rows()));
  }
  const CatalyticEmbedding emb = lift_gateset(pe, source, target, templates);
  const Circuit lifted = lift_circuit(emb, c);
  const ExactMatrix ec = evaluate(c, source);
  const ExactMatrix el = evaluate(lifted, target);
  const bool ok = catalytic_law(el, ec, pe.projector) && left_catalytic_law(el, ec, pe.projector);
  json gates = json::object();
  for (const auto& [name, g] : target.gates()) gates[name] = matrix_to_json(g.evaluation);
  out.doc["circuit"] = circuit_print(lifted);
  out.doc["target_gates"] = gates;
  out.doc["catalytic_check"] = ok;
  out.text << "lifted circuit: " << circuit_print(lifted) << "\ncatalyst " << vector_text(e.catalyst) << ", norm^2 "
           << e.norm_sq.to_string() << "\ncatalytic check: " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- programs

void describe_program(const CompiledProgram& p, Output& out, bool qasm) {
  out.doc["program"] = program_to_json(p);
  if (qasm) {
    out.doc["qasm"] = export_qasm(p);
    out.text << export_qasm(p);
    return;
  }
  out.text << p.source_description << ", " << total_wires(p) << " wires in total\n";
  out.text << "circuit: " << circuit_print(p.circuit) << "\n";
  for (const auto& c : p.catalysts) {
    out.text << "catalyst " << c.label << " on wire " << c.wires.front() << ": " << vector_text(c.vector)
             << ", norm^2 " << c.norm_sq.to_string() << "\n";
  }
  if (p.tcount) out.text << "T-count: " << *p.tcount << "\n";
}

int fold_report(const ActionReport& r, const std::string& key, Output& out) {
  out.doc[key] = report_to_json(r);
  std::size_t passed = 0;
  for (const auto& p : r.probes) passed += p.pass ? 1 : 0;
  out.text << key << ": " << (r.all_pass() ? "pass" : "FAIL") << " (" << passed << "/" << r.probes.size()
           << " probes)\n";
  for (const auto& p : r.probes) {
    if (!p.pass) out.text << "  probe " << p.index << ": " << p.detail << "\n";
  }
  return r.all_pass() ? 0 : 1;
}

std::size_t simulated_dimension(const CompiledProgram& p) {
  const std::size_t w = total_wires(p);
  if (w > 12) throw Error(ErrorKind::TooLarge, "simulation is capped at 12 wires, program has " + std::to_string(w));
  return pow2(p.data_qubits);
}

int cmd_qft(std::size_t n, bool inverse, bool expand, bool simulate, bool qasm, Output& out) {
  const CompiledProgram p = inverse ? compile_inverse_QFT(n, expand) : compile_QFT(n, expand);
  describe_program(p, out, qasm);
  if (!simulate) return 0;
  if (!p.source_evaluation) throw Error(ErrorKind::TooLarge, "no source evaluation at this size");
  const auto probes = computational_basis(simulated_dimension(p));
  int rc = fold_report(check_catalytic_action(p, *p.source_evaluation, probes), "simulation", out);
  if (inverse) {
    // The forward program with the conjugated catalysts is the same check,
    // stated as a Galois twist of the forward transform.
    const CompiledProgram fwd = compile_QFT(n, expand);
    const GaloisAutomorphism conj = GaloisAutomorphism::conjugation(std::max<Conductor>(pow2(n), 8));
    rc |= fold_report(check_galois_action(fwd, conj, p.catalysts, *p.source_evaluation, probes), "galois", out);
  }
  return rc;
}

int cmd_egate(bool optimized, bool simulate, bool qasm, Output& out) {
  const CompiledProgram p = compile_E(optimized);
  describe_program(p, out, qasm);
  if (!simulate) return 0;
  std::vector<ExactState> probes = computational_basis(2);
  probes.push_back(state_make({1, 1}));
  return fold_report(check_catalytic_action(p, *p.source_evaluation, probes), "simulation", out);
}

int cmd_simulate(const std::string& program_arg, const std::string& probes_arg, Output& out) {
  json doc = load_json(program_arg);
  // Accept the whole output of qft/egate --format json as well.
  if (doc.contains("program") && doc["program"].is_object()) doc = json(doc["program"]);
  const CompiledProgram p = program_from_json(doc);
  if (!p.source_evaluation) throw Error(ErrorKind::InvalidArgument, "program carries no source_evaluation");
  std::vector<ExactState> probes;
  if (probes_arg.empty()) {
    probes = computational_basis(simulated_dimension(p));
  } else {
    simulated_dimension(p);
    for (const auto& v : load_json(probes_arg)) {
      std::vector<CycElement> amps;
      for (const auto& a : v) amps.push_back(cyc_from_json(a));
      probes.push_back(state_make(amps));
    }
  }
  out.doc["program"] = p.source_description;
  return fold_report(check_catalytic_action(p, *p.source_evaluation, probes), "simulation", out);
}

// ---------------------------------------------------------------- cost, classify

int cmd_cost(const std::string& kind, std::size_t size, const std::string& eps, bool csv, Output& out) {
  const CostReport r = cost_model(kind, size, eps);
  out.doc = cost_to_json(r);
  if (csv) {
    out.text << cost_to_csv(r);
    return 0;
  }
  out.text << kind << " cost, size " << size << ", epsilon " << eps << "\n"
           << "  approximation T-count: " << r.approx_tcount << "\n"
           << "  catalytic T-count:     " << r.catalytic_tcount << "\n"
           << "  ratio:                 " << r.ratio << "\n"
           << "  reduction:             " << r.reduction << "\n";
  if (r.asymptotic_ratio) out.text << "  asymptotic ratio:      " << *r.asymptotic_ratio << "\n";
  for (const auto& n : r.notes) out.text << "  note: " << n << "\n";
  return 0;
}

int cmd_classify(const std::string& bundle_arg, std::size_t max_len, Output& out) {
  const json b = load_json(bundle_arg);
  GateSet gs("bundle");
  for (const auto& [name, m] : b.at("gates").items()) gs.add(name, matrix_from_json(m));
  std::map<std::string, ExactMatrix> images;
  for (const auto& [name, m] : b.at("images").items()) images.emplace(name, matrix_from_json(m));
  const ExactMatrix projector = matrix_from_json(b.at("projector"));
  const ClassificationReport r = classify(gs, images, projector, max_len);
  out.doc = {{"verdict", verdict_name(r.verdict)}, {"words_checked", r.words_checked}, {"detail", r.detail}};
  out.text << "verdict: " << verdict_name(r.verdict) << " (" << r.words_checked << " words up to length " << max_len
           << ")\n";
  if (r.verdict == Verdict::NotStrong) {
    out.doc["witness"] = {word_string(r.first), word_string(r.second)};
    out.text << "witness: e(" << word_string(r.first) << ") = e(" << word_string(r.second)
             << ") but their images differ\n";
  } else if (r.verdict == Verdict::StrongNotLinear) {
    json rel = json::array();
    out.text << "relation:";
    for (std::size_t i = 0; i < r.relation.size(); ++i) {
      const auto& [c, w] = r.relation[i];
      rel.push_back({{"coefficient", rational_string(c)}, {"word", word_string(w)}});
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      out.text << (neg ? " -" : (i ? " +" : "")) << (neg && i == 0 ? "" : " ");
      if (mag != 1) out.text << rational_string(mag) << "*";
      out.text << "e(" << word_string(w) << ")";
    }
    out.text << " = 0 at the source, nonzero for the images\n";
    out.doc["relation"] = rel;
  }
  if (!r.detail.empty()) out.text << r.detail << "\n";
  // A verdict is not a failure unless the bundle states what to expect.
  if (b.contains("expected")) {
    const json& want = b["expected"];
    bool ok = want.value("verdict", "") == verdict_name(r.verdict);
    if (ok && want.contains("first")) ok = want["first"] == word_string(r.first) && want["second"] == word_string(r.second);
    out.doc["matches_expected"] = ok;
    out.text << "expected " << want.dump() << ": " << (ok ? "match" : "MISMATCH") << "\n";
    return ok ? 0 : 1;
  }
  return 0;
}

int cmd_canonicalize(const std::string& in_path, const std::string& out_path, Output& out) {
  json canon = json::array();
  for (const auto& j : read_catalog(in_path)) canon.push_back(entry_to_json(entry_from_json(j)));
  const std::string text = canon.dump(2) + "\n";
  if (out_path.empty()) {
    out.text << text;
    out.doc = canon;
  } else {
    std::ofstream f(out_path);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + out_path);
    f << text;
    out.text << "wrote " << canon.size() << " entries to " << out_path << "\n";
    out.doc = {{"written", out_path}, {"entries", canon.size()}};
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catembed: exact catalytic embeddings of quantum circuits"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  std::string catalog;
  app.add_option("--catalog", catalog, "catalog file (default: $CATEMBED_CATALOG or the shipped catalog)");

  auto* verify = app.add_subcommand("verify-catalog", "verify every catalog entry");

  auto* embed = app.add_subcommand("embed", "apply a catalog embedding to a matrix or circuit");
  std::string embed_id;
  std::string matrix_arg;
  std::string circuit_arg;
  embed->add_option("id", embed_id, "catalog id")->required();
  auto* mopt = embed->add_option("--matrix", matrix_arg, "matrix JSON file or inline JSON");
  auto* copt = embed->add_option("--circuit", circuit_arg, "{gate_set, circuit} JSON file or inline JSON");
  mopt->excludes(copt);

  auto* qft = app.add_subcommand("qft", "compile the QFT over {H, X, CX, CCX}");
  std::size_t qft_n = 0;
  bool inverse = false;
  bool expand = false;
  bool simulate = false;
  bool qasm = false;
  qft->add_option("n", qft_n, "qubits")->required()->check(CLI::Range(1, 20));
  qft->add_flag("--inverse", inverse, "use X-conjugated catalysts (inverse QFT)");
  qft->add_flag("--expand", expand, "expand decrementers with k <= 3 into X, CX, CCX");
  qft->add_flag("--simulate", simulate, "check the catalytic action on all basis probes");
  qft->add_flag("--qasm", qasm, "emit the QASM-like listing");

  auto* egate = app.add_subcommand("egate", "compile E = diag(1, omega3) over Clifford+T");
  bool optimized = false;
  egate->add_flag("--optimized", optimized, "record the optimized T-count");
  egate->add_flag("--simulate", simulate, "check the catalytic action");
  egate->add_flag("--qasm", qasm, "emit the QASM-like listing");

  auto* cost = app.add_subcommand("cost", "T-count model: catalytic vs repeated approximation");
  std::string cost_kind;
  std::size_t size = 0;
  std::string epsilon = "1e-15";
  bool csv = false;
  cost->add_option("kind", cost_kind, "egate or qft")->required()->check(CLI::IsMember({"egate", "qft"}));
  auto* size_opt = cost->add_option("--m,--n,--size", size, "instance size")->required();
  size_opt->check(CLI::PositiveNumber);
  cost->add_option("--epsilon", epsilon, "target precision as a decimal string");
  cost->add_flag("--csv", csv, "CSV output");

  auto* cls = app.add_subcommand("classify", "classify a gate embedding bundle");
  std::string bundle;
  std::size_t max_len = 5;
  cls->add_option("bundle", bundle, "bundle JSON")->required();
  cls->add_option("--max-len", max_len, "maximum word length")->check(CLI::Range(1, 10));

  auto* sim = app.add_subcommand("simulate", "check a compiled program's catalytic action");
  std::string program_arg;
  std::string probes_arg;
  sim->add_option("program", program_arg, "program JSON (as emitted by qft/egate --format json)")->required();
  sim->add_option("--probes", probes_arg, "JSON array of probe vectors (default: all basis states)");

  auto* canon = app.add_subcommand("canonicalize", "rewrite a catalog source into canonical form");
  std::string canon_in;
  std::string canon_out;
  canon->add_option("input", canon_in, "catalog source")->required();
  canon->add_option("-o,--output", canon_out, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  Output out;
  out.json_mode = format == "json";
  int rc = 0;
  try {
    if (!catalog.empty()) setenv("CATEMBED_CATALOG", catalog.c_str(), 1);
    if (*verify) rc = cmd_verify_catalog(catalog_path(), out);
    if (*embed) {
      if (matrix_arg.empty() && circuit_arg.empty()) throw Error(ErrorKind::InvalidArgument, "embed needs --matrix or --circuit");
      rc = cmd_embed(embed_id, matrix_arg, circuit_arg, out);
    }
    if (*qft) rc = cmd_qft(qft_n, inverse, expand, simulate, qasm, out);
    if (*egate) rc = cmd_egate(optimized, simulate, qasm, out);
    if (*cost) rc = cmd_cost(cost_kind, size, epsilon, csv, out);
    if (*cls) rc = cmd_classify(bundle, max_len, out);
    if (*sim) rc = cmd_simulate(program_arg, probes_arg, out);
    if (*canon) rc = cmd_canonicalize(canon_in, canon_out, out);
  } catch (const Error& e) {
    if (out.json_mode) {
      std::cout << json{{"error", error_kind_name(e.kind())}, {"message", e.what()}}.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  }
  if (out.json_mode) {
    if (out.doc.is_object() && !out.doc.contains("pass")) out.doc["pass"] = rc == 0;
    std::cout << out.doc.dump(2) << "\n";
  } else {
    std::cout << out.text.str();
  }
  return rc;
}
