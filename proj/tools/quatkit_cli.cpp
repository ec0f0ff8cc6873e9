// quatkit: verify / classify / reduce / demo front end.
//
// Reports go to stdout as JSON, a short summary to stderr. Exit status is 0
// when every check passes, 1 when a check fails and 2 for usage or input
// errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "quatkit/dynamics.hpp"
#include "quatkit/io.hpp"
#include "quatkit/report.hpp"
#include "quatkit/verify.hpp"

using namespace quatkit;
using io::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 42;
  std::string dims = "2,3";
  std::size_t trials = 20;
  double tol = 1.0;
  std::size_t jobs = 1;
  std::string output;
  bool acceptance = false;
  std::string input;
  std::string axis = "e1";
  std::string demo;
};

std::vector<std::size_t> parse_dims(const std::string& csv) {
  std::vector<std::size_t> dims;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long d = 0;
    try {
      d = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--dims: '" + item + "' is not an integer");
    }
    if (used != item.size()) throw UsageError("--dims: '" + item + "' is not an integer");
    if (d < 1 || d > 8) throw UsageError("--dims: " + item + " is outside [1, 8]");
    dims.push_back(static_cast<std::size_t>(d));
  }
  if (dims.empty()) throw UsageError("--dims: empty list");
  return dims;
}

ImaginaryUnit parse_axis(const std::string& axis) {
  if (axis == "e1" || axis == "i") return ImaginaryUnit::e1();
  if (axis == "e2" || axis == "j") return ImaginaryUnit::e2();
  if (axis == "e3" || axis == "k") return ImaginaryUnit::e3();
  std::stringstream ss(axis);
  Vec3 v{};
  std::string item;
  for (std::size_t c = 0; c < 3; ++c) {
    if (!std::getline(ss, item, ',')) throw UsageError("--axis: expected e1|e2|e3 or x,y,z");
    try {
      v[c] = std::stod(item);
    } catch (const std::exception&) {
      throw UsageError("--axis: '" + item + "' is not a number");
    }
  }
  if (std::getline(ss, item, ',') || length(v) < 1e-12) {
    throw UsageError("--axis: expected a nonzero x,y,z triple");
  }
  return ImaginaryUnit::normalized(v);
}

double structure_residual(const QMatrix& x) {
  const QMatrix id = QMatrix::identity(x.size());
  return std::max(frobenius_norm(x + adjoint(x)), frobenius_norm(x * x + id));
}

double commutation_residual(const QMatrix& x, const StarAlgebra& a) {
  double worst = 0.0;
  for (const auto& g : a.generators())
    worst = std::max(worst, frobenius_norm(commutator(x, g)) / std::max(1.0, frobenius_norm(g)));
  return worst;
}

// ---------------------------------------------------------------- commands

Report cmd_verify(const Options& o) {
  if (o.trials < 1) throw UsageError("--trials must be at least 1");
  if (o.jobs < 1) throw UsageError("--jobs must be at least 1");
  const auto dims = parse_dims(o.dims);
  if (o.acceptance) {
    Report r;
    r.command = "verify";
    json rows = json::array();
    for (const auto& c : run_acceptance(o.seed)) {
      const std::string name = "criterion_" + std::to_string(c.id);
      r.add(name, c.residual, c.tolerance);
      r.add(name + "_runtime", c.seconds, c.time_limit);
      rows.push_back({{"id", c.id}, {"name", c.name}, {"detail", c.detail}, {"seconds", c.seconds}});
    }
    r.artifacts = {{"seed", o.seed}, {"criteria", std::move(rows)}};
    return r;
  }
  VerifyOptions v;
  v.seed = o.seed;
  v.dims = dims;
  v.trials = o.trials;
  v.jobs = o.jobs;
  return run_verify(v);
}

Report cmd_classify(const Options& o) {
  const auto system = io::system_from_json(io::read_json_file(o.input));
  const StarAlgebra& a = system.algebra;
  Report r;
  r.command = "classify";
  const auto irr = irreducibility(a);
  r.artifacts["commutant_dim"] = irr.commutant_dim;
  if (!irr.irreducible) {
    // Reducible: the witness is a projection in the commutant.
    const QMatrix& e = *irr.witness;
    r.add("irreducible", 1.0, 0.0);
    r.add("witness_projection", std::max(distance(e * e, e), distance(e, adjoint(e))), tol(1e-9));
    r.add("witness_commutes", commutation_residual(e, a), tol(1e-9));
    r.artifacts["witness"] = io::to_json(e);
    return r;
  }
  const Classification c = classify_irreducible(a);
  r.artifacts["classification"] = io::to_json(c);
  r.add("commutant_dim_in_1_2_4",
        (c.commutant_dim == 1 || c.commutant_dim == 2 || c.commutant_dim == 4) ? 0.0 : 1.0, 0.0);
  for (const auto& [name, op] : {std::pair{"I", c.I}, std::pair{"J", c.J}, std::pair{"K", c.K}}) {
    if (!op) continue;
    r.add(std::string(name) + "_unit_antiselfadjoint", structure_residual(*op), tol(1e-8));
    r.add(std::string(name) + "_commutes", commutation_residual(*op, a), tol(1e-8));
  }
  if (c.I && c.J && c.K) {
    r.add("IJ_anticommute", frobenius_norm(anticommutator(*c.I, *c.J)), tol(1e-8));
    r.add("K_equals_IJ", distance(*c.K, *c.I * *c.J), tol(1e-8));
  }
  return r;
}

Report cmd_reduce(const Options& o) {
  const auto system = io::system_from_json(io::read_json_file(o.input));
  const ImaginaryUnit i = parse_axis(o.axis);
  Report r;
  r.command = "reduce";
  std::optional<ReducedSystem> reduced;
  try {
    reduced = reduce_system(system.algebra, system.evolution, i);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotComplexInduced) throw;
    r.error = std::string(to_string(e.kind()));
    r.artifacts["message"] = e.what();
    return r;
  }
  const ReducedSystem& red = *reduced;
  for (const auto& c : red.certificates) r.add(c);
  json gens = json::array();
  for (const auto& g : red.generators) gens.push_back(io::to_json(g));
  json evo = json::array();
  for (const auto& u : red.evolution) evo.push_back(io::to_json(u));
  r.artifacts["classification"] = io::to_json(red.classification);
  r.artifacts["split"] = io::to_json(red.split);
  r.artifacts["complex_system"] = {
      {"n", red.split.dimension()}, {"generators", std::move(gens)}, {"evolution", std::move(evo)}};
  return r;
}

json probability_row(const std::string& label, const TransitionProbabilities& p) {
  return {{"pair", label}, {"pC", p.complex_part}, {"pS", p.symplectic_part}, {"pH", p.quaternionic}};
}

Report demo_adler(const Options& o) {
  constexpr std::size_t n = 4;
  Rng rng(derive_seed(o.seed, 7));
  const Frame f = Frame::standard();
  const QMatrix w = random_unitary(rng, n);
  const QMatrix J = w * QMatrix::scalar(n, f.i().quaternion()) * adjoint(w);
  const QMatrix h = w * extend_scalars(random_antihermitian(rng, n), f) * adjoint(w);
  const Hamiltonian ham(h, f);
  const Quaternion jq = f.j().quaternion();

  Report r;
  r.command = "demo adler";
  r.add("hamiltonian_commutes_with_J", frobenius_norm(commutator(h, J)), tol(1e-10));

  json full = json::array();
  double pair_residual = 0.0;
  for (int k = 0; k < 3; ++k) {
    const QVector v = random_unit_qvector(rng, n);
    const auto p = transition_probs(v, v * jq, f);
    pair_residual = std::max(pair_residual, std::abs(p.complex_part) +
                                                std::abs(p.symplectic_part - 1.0) +
                                                std::abs(p.quaternionic - 1.0));
    full.push_back(probability_row("(v" + std::to_string(k) + ", v" + std::to_string(k) + " j)", p));
    const QVector u = random_unit_qvector(rng, n);
    full.push_back(probability_row("(v" + std::to_string(k) + ", u" + std::to_string(k) + ")",
                                   transition_probs(v, u, f)));
  }
  r.add("v_vj_probabilities_0_1_1", pair_residual, tol(1e-12));

  const SplitSpace s = split_plus_minus(J, f);
  auto plus_vector = [&] {
    QVector v(n);
    for (const auto& b : s.plus_basis)
      v += b * f.embed(Complex(random_normal(rng), random_normal(rng)));
    return v * (1.0 / norm(v));
  };
  json plus = json::array();
  double ps = 0.0;
  double gap = 0.0;
  for (int k = 0; k < 6; ++k) {
    const QVector v = plus_vector();
    const QVector u = plus_vector();
    const auto p = transition_probs(v, u, f);
    ps = std::max(ps, p.symplectic_part);
    gap = std::max(gap, std::abs(p.quaternionic - p.complex_part));
    plus.push_back(probability_row("(a" + std::to_string(k) + ", b" + std::to_string(k) + ")", p));
  }
  r.add("plus_symplectic_part_zero", ps, tol(1e-12));
  r.add("plus_complex_equals_quaternionic", gap, tol(1e-12));

  // A state in H+ stays there under the J-commuting evolution.
  const QVector v0 = plus_vector();
  std::vector<double> times;
  std::vector<QVector> states;
  double drift = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double t = 0.5 * k;
    const QVector vt = evolve(ham, v0, t);
    drift = std::max(drift, norm(J * vt - vt * f.i().quaternion()));
    times.push_back(t);
    states.push_back(vt);
  }
  r.add("evolution_stays_in_plus", drift, tol(1e-8));
  r.artifacts = {{"seed", o.seed},
                 {"n", n},
                 {"table", std::move(full)},
                 {"plus_table", std::move(plus)},
                 {"trace", io::evolution_trace(times, states)}};
  return r;
}

Report demo_counitary(const Options& o) {
  constexpr std::size_t n = 3;
  Rng rng(derive_seed(o.seed, 9));
  std::vector<QMatrix> us;
  for (int k = 0; k < 3; ++k) us.push_back(random_unitary(rng, n));
  const Quaternion h = random_unit_quaternion(rng);
  const auto rep = counitary_demo(h, us, derive_seed(o.seed, 9, 1));
  Report r;
  r.command = "demo counitary";
  r.add("counitary_identities", rep.max_counitary_residual(), tol(1e-10));
  json pairs = json::array();
  for (const auto& p : rep.pairs) {
    // Shortfall below the 0.1 separation; zero when the candidates differ.
    r.add("left_action_gap_" + std::to_string(p.first) + "_" + std::to_string(p.second),
          std::max(0.0, 0.1 - p.distance), 0.0);
    pairs.push_back({{"first", p.first},
                     {"second", p.second},
                     {"distance", p.distance},
                     {"same_symmetry", p.same_symmetry}});
  }
  json cases = json::array();
  for (const auto& c : rep.cases)
    cases.push_back({{"linearity_residual", c.linearity_residual},
                     {"inner_residual", c.inner_residual},
                     {"identity_action", c.identity_action}});
  r.artifacts = {{"seed", o.seed},
                 {"h", io::to_json(h)},
                 {"cases", std::move(cases)},
                 {"pairs", std::move(pairs)},
                 {"non_unique", rep.non_unique()}};
  return r;
}

int emit(const Report& r, const Options& o) {
  const std::string text = r.to_json().dump(2);
  std::cout << text << '\n';
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    if (!out) {
      std::cerr << "error: cannot write " << o.output << '\n';
      return 2;
    }
    out << text << '\n';
  }
  std::cerr << r.summary();
  return exit_code(r.status());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quatkit: quaternionic operator algebra toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "master RNG seed");
    sub->add_option("--tol", o.tol, "multiplier applied to every default tolerance");
    sub->add_option("--output", o.output, "also write the report to this file");
  };

  auto* verify = app.add_subcommand("verify", "run the property suite");
  add_common(verify);
  verify->add_option("--dims", o.dims, "comma-separated quaternionic dimensions in [1, 8]");
  verify->add_option("--trials", o.trials, "random trials per property");
  verify->add_option("--jobs", o.jobs, "worker threads");
  verify->add_flag("--acceptance", o.acceptance, "run the nine acceptance criteria instead");

  auto* classify = app.add_subcommand("classify", "classify an irreducible *-algebra");
  add_common(classify);
  classify->add_option("input", o.input, "StarAlgebra JSON file")->required();

  auto* reduce = app.add_subcommand("reduce", "reduce a complex-induced system to H+");
  add_common(reduce);
  reduce->add_option("input", o.input, "StarAlgebra JSON file")->required();
  reduce->add_option("--axis", o.axis, "imaginary unit i: e1|e2|e3 or x,y,z");

  auto* demo = app.add_subcommand("demo", "adler | counitary");
  add_common(demo);
  demo->add_option("which", o.demo, "adler or counitary")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
    set_tolerance_scale(tolerance_scale() * o.tol);
    Report r;
    if (verify->parsed()) {
      r = cmd_verify(o);
    } else if (classify->parsed()) {
      r = cmd_classify(o);
    } else if (reduce->parsed()) {
      r = cmd_reduce(o);
    } else if (o.demo == "adler") {
      r = demo_adler(o);
    } else if (o.demo == "counitary") {
      r = demo_counitary(o);
    } else {
      throw UsageError("unknown demo '" + o.demo + "' (expected adler or counitary)");
    }
    return emit(r, o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    Report r;
    r.command = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
    r.error = e.what();
    r.artifacts["kind"] = std::string(to_string(e.kind()));
    emit(r, o);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
