#pragma once

// Command line front end.  Subcommands:
//
//   algebra check   axioms of an algebra file (and its trace, when present)
//   env dim         dimension of the generated multiplication algebra
//   gns             quotient construction report for a state
//   eigen           eigendecomposition of a word operator
//   uncertainty     expectations, uncertainties, pairwise uncertainty products
//   evolve          Schroedinger trajectory -> CSV
//   demo octonion   canned nonassociative example with the headline numbers
//   demo jordan N   canned commutative-but-nonassociative example
//
// Global flags: --algebra FILE, --scenario FILE, --out FILE, --exact/--float,
// --tol X (env NAQM_TOL).  Exit codes: 0 ok, 2 invalid input, 1 internal bug.
//
// All JSON output goes through the canonical writer, so identical inputs give
// byte-identical bytes.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "naqm/eigen.hpp"
#include "naqm/io.hpp"

namespace naqm::cli {

struct Options {
  std::string algebra_path, scenario_path, out_path;
  bool exact = false;
  double tol = 1e-10;
  // evolve
  std::string hamiltonian_path, psi0_text;
  double t0 = 0.0, t1 = 1.0;
  int steps = 100;
  // demo
  std::string demo_which;
  int demo_n = 2;
};

inline void write_output(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(opt.out_path, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file: " + opt.out_path);
  f << text;
}

// --- scenario ----------------------------------------------------------------------

struct Scenario {
  nlohmann::json root;
  bool loaded = false;

  static Scenario load(const std::string& path) {
    Scenario s;
    if (!path.empty()) {
      s.root = load_json_file(path);
      if (!s.root.is_object()) throw ValidationError(path + ": scenario must be an object");
      s.loaded = true;
    }
    return s;
  }
};

template <class S>
State<S> scenario_state(const Scenario& sc, const TraceFunctional<S>& tr, double tol) {
  if (!sc.loaded || !sc.root.contains("state")) return tracial_state(tr);
  const auto& st = sc.root["state"];
  if (!st.is_object() || !st.contains("kind"))
    throw ValidationError("scenario state needs a \"kind\"");
  std::string kind = st["kind"].get<std::string>();
  auto parse_vec = [&](const nlohmann::json& jv) {
    if (!jv.is_array() || jv.size() != static_cast<size_t>(tr.alg->n))
      throw ValidationError("state vector needs n [re,im] pairs");
    Vec<S> v;
    for (const auto& e : jv) v.push_back(parse_complex_pair<S>(e, "state vector"));
    return Element<S>{tr.alg, v};
  };
  if (kind == "tracial") return tracial_state(tr);
  if (kind == "vector") {
    if (!st.contains("psi")) throw ValidationError("vector state needs \"psi\"");
    bool normalize = st.contains("normalize") && st["normalize"].get<bool>();
    return vector_state(tr, parse_vec(st["psi"]), normalize, tol);
  }
  if (kind == "mixed") {
    if (!st.contains("probs") || !st.contains("vectors"))
      throw ValidationError("mixed state needs \"probs\" and \"vectors\"");
    std::vector<S> probs;
    for (const auto& p : st["probs"])
      probs.push_back(ScalarTraits<S>::from_double(p.get<double>()));
    std::vector<Element<S>> psis;
    for (const auto& v : st["vectors"]) psis.push_back(parse_vec(v));
    return mixed_state(tr, probs, psis, tol);
  }
  throw ValidationError("unknown state kind: " + kind);
}

template <class S>
std::vector<std::pair<std::string, MultOp<S>>> scenario_observables(const Scenario& sc,
                                                                    const AlgebraPtr<S>& alg) {
  std::vector<std::pair<std::string, MultOp<S>>> out;
  if (!sc.loaded || !sc.root.contains("observables")) return out;
  for (const auto& o : sc.root["observables"]) {
    if (!o.is_object() || !o.contains("word"))
      throw ValidationError("each observable needs a \"word\"");
    std::string name = o.contains("name") ? o["name"].get<std::string>() : "O";
    out.emplace_back(name, word_op(alg, parse_word<S>(o["word"], alg->n, "observable word")));
  }
  return out;
}

// --- subcommand bodies ---------------------------------------------------------------

inline JsonValue axioms_to_json(const AxiomReport& rep) {
  JsonValue checks = JsonValue::array();
  for (const auto& c : rep.checks) {
    JsonValue j = JsonValue::object();
    j.set("name", JsonValue::string(c.name));
    j.set("pass", JsonValue::boolean(c.pass));
    j.set("residual", JsonValue::number(c.residual));
    checks.push(std::move(j));
  }
  return checks;
}

template <class S>
int run_algebra_check(const Options& opt, std::ostream& out) {
  LoadedAlgebra<S> la = load_algebra<S>(opt.algebra_path);
  AxiomReport rep = check_algebra_axioms(la.alg, opt.tol);
  JsonValue j = JsonValue::object();
  j.set("algebra", JsonValue::string(la.alg->label.empty() ? opt.algebra_path : la.alg->label));
  j.set("dim", JsonValue::integer(la.alg->n));
  j.set("checks", axioms_to_json(rep));
  bool ok = rep.all_pass();
  if (la.has_trace) {
    AxiomReport trep = check_trace_axioms(la.trace, opt.tol);
    j.set("trace_checks", axioms_to_json(trep));
    ok = ok && trep.all_pass();
  }
  j.set("pass", JsonValue::boolean(ok));
  write_output(opt, j.dump_string(), out);
  return ok ? 0 : 2;
}

template <class S>
int run_env_dim(const Options& opt, std::ostream& out) {
  LoadedAlgebra<S> la = load_algebra<S>(opt.algebra_path);
  GeneratedSubalgebra<S> sub = multiplication_algebra(la.alg);
  JsonValue j = JsonValue::object();
  j.set("label", JsonValue::string(la.alg->label.empty() ? opt.algebra_path : la.alg->label));
  j.set("generator_count", JsonValue::integer(2 * la.alg->n));
  j.set("dim", JsonValue::integer(sub.dim()));
  j.set("closed", JsonValue::boolean(sub.closed));
  write_output(opt, j.dump_string(), out);
  return 0;
}

inline int run_gns(const Options& opt, std::ostream& out) {
  LoadedAlgebra<Complex> la = load_algebra<Complex>(opt.algebra_path);
  if (!la.has_trace)
    throw ValidationError("gns needs a trace; the algebra file has none");
  Scenario sc = Scenario::load(opt.scenario_path);
  State<Complex> w = scenario_state(sc, la.trace, opt.tol);
  auto basis = std::make_shared<GeneratedSubalgebra<Complex>>(multiplication_algebra(la.alg));
  GnsSummary g = gns_summary(w, basis, std::max(opt.tol, 1e-12));
  JsonValue j = JsonValue::object();
  j.set("quotient_dim", JsonValue::integer(g.rep.H.dim()));
  JsonValue eigs = JsonValue::array();
  for (double l : g.rep.H.gram_eigenvalues) eigs.push(JsonValue::number(l));
  j.set("gram_eigenvalues", std::move(eigs));
  j.set("commutant_dim", JsonValue::integer(g.comm.dim));
  j.set("pure", JsonValue::boolean(g.pure));
  write_output(opt, j.dump_string(), out);
  return 0;
}

inline int run_eigen(const Options& opt, std::ostream& out) {
  LoadedAlgebra<Complex> la = load_algebra<Complex>(opt.algebra_path);
  Scenario sc = Scenario::load(opt.scenario_path);
  auto obs = scenario_observables(sc, la.alg);
  if (obs.size() != 1)
    throw ValidationError("eigen needs exactly one observable in the scenario");
  EigenDecomposition dec =
      operator_eigen(obs[0].second, la.has_trace ? &la.trace : nullptr, opt.tol);
  JsonValue j = JsonValue::array();
  for (const auto& p : dec.pairs) {
    JsonValue e = JsonValue::object();
    e.set("lambda", JsonValue::complex(p.lambda));
    e.set("residual", JsonValue::number(p.residual));
    e.set("vector", JsonValue::complex_vec(p.vec.v));
    if (p.suspect) e.set("suspect", JsonValue::boolean(true));
    j.push(std::move(e));
  }
  write_output(opt, j.dump_string(), out);
  return 0;
}

template <class S>
int run_uncertainty(const Options& opt, std::ostream& out) {
  LoadedAlgebra<S> la = load_algebra<S>(opt.algebra_path);
  if (!la.has_trace) throw ValidationError("uncertainty needs a trace in the algebra file");
  Scenario sc = Scenario::load(opt.scenario_path);
  State<S> w = scenario_state(sc, la.trace, opt.tol);
  auto obs = scenario_observables(sc, la.alg);
  if (obs.empty()) throw ValidationError("uncertainty needs observables in the scenario");
  JsonValue j = JsonValue::object();
  JsonValue names = JsonValue::array(), exps = JsonValue::array(), uncs = JsonValue::array();
  std::vector<double> deltas;
  for (const auto& [name, O] : obs) {
    names.push(JsonValue::string(name));
    exps.push(JsonValue::complex_s(w(O)));
    double d = uncertainty(w, O, opt.tol);
    deltas.push_back(d);
    uncs.push(JsonValue::number(d));
  }
  j.set("observables", std::move(names));
  j.set("expectations", std::move(exps));
  j.set("uncertainties", std::move(uncs));
  JsonValue pairs = JsonValue::array();
  for (size_t a = 0; a < obs.size(); ++a)
    for (size_t b = a + 1; b < obs.size(); ++b) {
      UncertaintyRelation rel = check_uncertainty_relation(w, obs[a].second, obs[b].second, opt.tol);
      JsonValue pj = JsonValue::object();
      pj.set("i", JsonValue::integer(static_cast<long long>(a)));
      pj.set("j", JsonValue::integer(static_cast<long long>(b)));
      pj.set("product", JsonValue::number(rel.lhs));
      pj.set("bound", JsonValue::number(rel.rhs));
      pj.set("slack", JsonValue::number(rel.slack));
      pj.set("holds", JsonValue::boolean(rel.holds));
      pairs.push(std::move(pj));
    }
  j.set("pairs", std::move(pairs));
  write_output(opt, j.dump_string(), out);
  return 0;
}

inline int run_evolve(const Options& opt, std::ostream& out) {
  LoadedAlgebra<Complex> la = load_algebra<Complex>(opt.algebra_path);
  if (!la.has_trace) throw ValidationError("evolve needs a trace in the algebra file");
  if (opt.hamiltonian_path.empty()) throw ValidationError("evolve needs --hamiltonian FILE");
  nlohmann::json hj = load_json_file(opt.hamiltonian_path);
  double hbar = 1.0;
  nlohmann::json word_json;
  std::vector<std::pair<std::string, MultOp<Complex>>> obs;
  if (hj.is_array()) {
    word_json = hj;
  } else if (hj.is_object() && hj.contains("word")) {
    word_json = hj["word"];
    if (hj.contains("hbar")) hbar = hj["hbar"].get<double>();
    if (hj.contains("observables"))
      for (const auto& o : hj["observables"])
        obs.emplace_back(o.contains("name") ? o["name"].get<std::string>() : "O",
                         word_op(la.alg, parse_word<Complex>(o["word"], la.alg->n, "observable")));
  } else {
    throw ValidationError(opt.hamiltonian_path + ": expected a word or {\"hbar\",\"word\"}");
  }
  MultOp<Complex> hop = word_op(la.alg, parse_word<Complex>(word_json, la.alg->n, "hamiltonian"));
  Hamiltonian<Complex> H = make_hamiltonian(hop, hbar, la.trace, std::max(opt.tol, 1e-10));

  if (opt.psi0_text.empty()) throw ValidationError("evolve needs --psi0");
  Vec<Complex> psi0v = parse_complex_list(opt.psi0_text);
  if (psi0v.size() != static_cast<size_t>(la.alg->n))
    throw ValidationError("--psi0 needs n coefficients");
  Element<Complex> psi0{la.alg, psi0v};
  double n2 = ScalarTraits<Complex>::real_to_double(trace_norm2(la.trace, psi0));
  if (std::abs(n2 - 1.0) > std::max(opt.tol, 1e-8))
    throw ValidationError("--psi0 must be normalized in the trace norm");

  auto traj = schrodinger_trajectory(H, psi0, opt.t0, opt.t1, opt.steps);

  std::string csv;
  std::vector<std::string> header{"t"};
  for (const auto& l : la.alg->labels) {
    header.push_back("re_" + l);
    header.push_back("im_" + l);
  }
  header.push_back("norm");
  for (const auto& [name, O] : obs) {
    header.push_back("exp_" + name + "_re");
    header.push_back("exp_" + name + "_im");
  }
  csv += csv_row(header);
  for (const auto& [t, psi] : traj) {
    std::vector<std::string> cells{fmt12(t)};
    for (const auto& z : psi.v) {
      cells.push_back(fmt12(z.real()));
      cells.push_back(fmt12(z.imag()));
    }
    cells.push_back(fmt12(ScalarTraits<Complex>::real_to_double(trace_norm2(la.trace, psi))));
    for (const auto& [name, O] : obs) {
      Complex e = la.trace(multiply(star(psi), act(O, psi)));
      cells.push_back(fmt12(e.real()));
      cells.push_back(fmt12(e.imag()));
    }
    csv += csv_row(cells);
  }
  write_output(opt, csv, out);
  return 0;
}

// --- demos ------------------------------------------------------------------------

inline int run_demo_octonion(const Options& opt, std::ostream& out) {
  Instance<Complex> inst = octonion_algebra<Complex>();
  JsonValue j = JsonValue::object();
  j.set("algebra", JsonValue::string("octonion"));
  j.set("dim", JsonValue::integer(8));

  // signed multiplication table
  JsonValue table = JsonValue::array();
  for (int a = 0; a < 8; ++a) {
    JsonValue row = JsonValue::array();
    for (int b = 0; b < 8; ++b) {
      Element<Complex> p = multiply(basis_element(inst.alg, a), basis_element(inst.alg, b));
      std::string cell = "0";
      for (int r = 0; r < 8; ++r) {
        double re = p.v[static_cast<size_t>(r)].real();
        if (std::abs(re) > 0.5)
          cell = (re < 0 ? "-" : "") + inst.alg->labels[static_cast<size_t>(r)];
      }
      row.push(JsonValue::string(cell));
    }
    table.push(std::move(row));
  }
  j.set("multiplication_table", std::move(table));

  j.set("algebra_checks", axioms_to_json(check_algebra_axioms(inst.alg, opt.tol)));
  j.set("trace_checks", axioms_to_json(check_trace_axioms(inst.trace, opt.tol)));

  GeneratedSubalgebra<Complex> sub = multiplication_algebra(inst.alg);
  j.set("operator_algebra_dim", JsonValue::integer(sub.dim()));

  // the canonical noncommuting observable pair
  MultOp<Complex> A = scale_op(Complex(0, 1), left_op(basis_element(inst.alg, 7)));
  MultOp<Complex> B = compose(left_op(basis_element(inst.alg, 1)),
                              compose(left_op(basis_element(inst.alg, 2)),
                                      left_op(basis_element(inst.alg, 4))));
  State<Complex> w = tracial_state(inst.trace);
  j.set("commutator_trace", JsonValue::complex(w(commutator_op(A, B))));
  UncertaintyRelation rel = check_uncertainty_relation(w, A, B, opt.tol);
  j.set("delta_a", JsonValue::number(rel.delta1));
  j.set("delta_b", JsonValue::number(rel.delta2));
  j.set("uncertainty_product", JsonValue::number(rel.lhs));
  j.set("uncertainty_bound", JsonValue::number(rel.rhs));
  j.set("uncertainty_slack", JsonValue::number(rel.slack));
  j.set("minimum_uncertainty_pair", JsonValue::boolean(std::abs(rel.slack) <= 1e-10));

  auto basis = std::make_shared<GeneratedSubalgebra<Complex>>(sub);
  GnsSummary g = gns_summary(w, basis, 1e-8);
  j.set("quotient_dim", JsonValue::integer(g.rep.H.dim()));
  j.set("commutant_dim", JsonValue::integer(g.comm.dim));
  j.set("pure", JsonValue::boolean(g.pure));

  write_output(opt, j.dump_string(), out);
  return 0;
}

inline int run_demo_jordan(const Options& opt, std::ostream& out) {
  const int m = opt.demo_n;
  if (m < 2 || m > 5) throw ValidationError("demo jordan N supports N in 2..5");
  Instance<Complex> inst = jordan_matrix_algebra<Complex>(m);
  JsonValue j = JsonValue::object();
  j.set("algebra", JsonValue::string(inst.alg->label));
  j.set("dim", JsonValue::integer(inst.alg->n));
  j.set("algebra_checks", axioms_to_json(check_algebra_axioms(inst.alg, opt.tol)));
  j.set("trace_checks", axioms_to_json(check_trace_axioms(inst.trace, opt.tol)));

  GeneratedSubalgebra<Complex> sub = multiplication_algebra(inst.alg);
  j.set("operator_algebra_dim", JsonValue::integer(sub.dim()));  // n^4 expected
  j.set("operator_algebra_dim_expected", JsonValue::integer(static_cast<long long>(m) * m * m * m));

  // spectral example: the rank-one projector e_11 has eigenvalue 1 with a
  // one-dimensional eigenspace; weight m makes the projector sum normalized
  Element<Complex> a = basis_element(inst.alg, 0);  // e_11
  Element<Complex> phi = jordan_spectral_eigen(inst, a, 1.0, {static_cast<double>(m)}, opt.tol);
  JsonValue spec = JsonValue::object();
  spec.set("element", JsonValue::string("e11"));
  spec.set("lambda", JsonValue::number(1.0));
  spec.set("weights", [&] {
    JsonValue ws = JsonValue::array();
    ws.push(JsonValue::number(static_cast<double>(m)));
    return ws;
  }());
  spec.set("phi", JsonValue::complex_vec(phi.v));
  Element<Complex> resid = multiply(a, phi) - Complex(1.0, 0.0) * phi;
  spec.set("eigen_residual", JsonValue::number(max_abs_vec(resid.v)));
  spec.set("norm", JsonValue::number(
                       ScalarTraits<Complex>::real_to_double(trace_norm2(inst.trace, phi))));
  j.set("spectral_example", std::move(spec));

  write_output(opt, j.dump_string(), out);
  return 0;
}

// --- entry point --------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"nonassociative operator algebra toolkit"};
  app.require_subcommand(1);

  bool flag_float = false;
  auto add_common = [&](CLI::App* sub, bool with_scenario = true) {
    sub->add_option("--algebra", opt.algebra_path, "algebra JSON file");
    if (with_scenario) sub->add_option("--scenario", opt.scenario_path, "scenario JSON file");
    sub->add_option("--out", opt.out_path, "write the report here instead of stdout");
    sub->add_flag("--exact", opt.exact, "exact rational arithmetic");
    sub->add_flag("--float", flag_float, "floating point arithmetic (default)");
    sub->add_option("--tol", opt.tol, "comparison tolerance")->envname("NAQM_TOL");
  };

  CLI::App* algebra = app.add_subcommand("algebra", "algebra file operations");
  CLI::App* algebra_check = algebra->add_subcommand("check", "validate the axioms");
  add_common(algebra_check, false);
  algebra_check->get_option("--algebra")->required();

  CLI::App* env = app.add_subcommand("env", "operator algebra operations");
  CLI::App* env_dim = env->add_subcommand("dim", "generated multiplication algebra dimension");
  add_common(env_dim, false);
  env_dim->get_option("--algebra")->required();

  CLI::App* gns = app.add_subcommand("gns", "quotient construction report");
  add_common(gns);
  gns->get_option("--algebra")->required();

  CLI::App* eigen = app.add_subcommand("eigen", "eigendecomposition of a word operator");
  add_common(eigen);
  eigen->get_option("--algebra")->required();
  eigen->get_option("--scenario")->required();

  CLI::App* unc = app.add_subcommand("uncertainty", "uncertainty report");
  add_common(unc);
  unc->get_option("--algebra")->required();
  unc->get_option("--scenario")->required();

  CLI::App* evolve = app.add_subcommand("evolve", "Schroedinger trajectory to CSV");
  add_common(evolve, false);
  evolve->get_option("--algebra")->required();
  evolve->add_option("--hamiltonian", opt.hamiltonian_path, "hamiltonian word file")->required();
  evolve->add_option("--psi0", opt.psi0_text, "initial vector, comma separated complex")->required();
  evolve->add_option("--t0", opt.t0, "start time");
  evolve->add_option("--t1", opt.t1, "end time");
  evolve->add_option("--steps", opt.steps, "number of steps");

  CLI::App* demo = app.add_subcommand("demo", "canned examples");
  demo->add_option("which", opt.demo_which, "octonion | jordan")->required();
  demo->add_option("N", opt.demo_n, "matrix size for jordan");
  add_common(demo, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (opt.exact && flag_float)
      throw ValidationError("--exact and --float are mutually exclusive");
    if (algebra_check->parsed())
      return opt.exact ? run_algebra_check<ExactComplex>(opt, out)
                       : run_algebra_check<Complex>(opt, out);
    if (env_dim->parsed())
      return opt.exact ? run_env_dim<ExactComplex>(opt, out) : run_env_dim<Complex>(opt, out);
    if (gns->parsed()) {
      if (opt.exact) throw ValidationError("gns needs float mode (spectral kernels)");
      return run_gns(opt, out);
    }
    if (eigen->parsed()) {
      if (opt.exact) throw ValidationError("eigen needs float mode");
      return run_eigen(opt, out);
    }
    if (unc->parsed())
      return opt.exact ? run_uncertainty<ExactComplex>(opt, out)
                       : run_uncertainty<Complex>(opt, out);
    if (evolve->parsed()) {
      if (opt.exact) throw ValidationError("evolve needs float mode (matrix exponentials)");
      return run_evolve(opt, out);
    }
    if (demo->parsed()) {
      if (opt.exact) throw ValidationError("demos run in float mode");
      if (opt.demo_which == "octonion") return run_demo_octonion(opt, out);
      if (opt.demo_which == "jordan") return run_demo_jordan(opt, out);
      throw ValidationError("unknown demo: " + opt.demo_which);
    }
    throw InternalError("no subcommand dispatched");
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedOperation& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> full{"naqm"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const auto& s : full) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace naqm::cli
