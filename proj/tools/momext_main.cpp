#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "momext/cayley.hpp"
#include "momext/godic_lucenko.hpp"
#include "momext/json_io.hpp"
#include "momext/moment.hpp"

using namespace momext;

namespace {

double default_tol() {
  if (const char* env = std::getenv("MOMEXT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
  }
  return 1e-10;
}

cplx parse_z0(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::runtime_error("input error: --z0 expects RE,IM");
  }
  return cplx(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
}

int run_factorize(const std::string& input, const std::string& mode,
                  const std::string& output, double tol, std::uint64_t seed) {
  json in = load_json_file(input);
  if (!in.contains("unitaries") || !in.at("unitaries").is_array() ||
      in.at("unitaries").empty()) {
    throw std::runtime_error("input error: expected {\"unitaries\": [matrix, ...]}");
  }
  std::vector<ComplexMatrix> family;
  for (const auto& m : in.at("unitaries")) family.push_back(matrix_from_json(m));

  json out;
  if (mode == "right") {
    RightFactorization f = factor_common_right(family, tol, seed);
    out["C"] = conjugation_to_json(f.C);
    json js = json::array();
    for (std::size_t k = 0; k < family.size(); ++k) {
      js.push_back(conjugation_to_json(f.J[k]));
      const double res = (compose_JC(f.J[k], f.C) - family[k]).frobenius_norm();
      std::printf("U[%zu]: residual ||J_k o C - U_k||_F = %.3e\n", k, res);
    }
    out["J"] = std::move(js);
  } else {
    LeftFactorization f = factor_common_left(family, tol, seed);
    out["K"] = conjugation_to_json(f.K);
    json ls = json::array();
    for (std::size_t k = 0; k < family.size(); ++k) {
      ls.push_back(conjugation_to_json(f.L[k]));
      const double res = (compose_JC(f.K, f.L[k]) - family[k]).frobenius_norm();
      std::printf("U[%zu]: residual ||K o L_k - U_k||_F = %.3e\n", k, res);
    }
    out["L"] = std::move(ls);
  }
  write_json_file(output, out);
  return 0;
}

int run_extend(const std::string& input, const std::string& output,
               const std::string& z0_text, double tol, std::uint64_t seed) {
  CommutingTupleInstance t = tuple_from_json(load_json_file(input));
  if (!z0_text.empty()) t.z0 = parse_z0(z0_text);

  ExtensionResult ext = build_extension(t, tol, seed);
  std::printf("extension defect (max over domain basis): %.3e\n",
              ext.verification.extension_defect);
  std::printf("hermitian defect (relative): %.3e\n",
              ext.verification.hermitian_defect);
  for (const auto& [name, defect] : ext.verification.commutation_defects) {
    std::printf("commutation defect %s (relative): %.3e\n", name.c_str(), defect);
  }

  json out;
  out["A1_hat"] = matrix_to_json(ext.a1_hat);
  json verification;
  verification["extension_defect"] = ext.verification.extension_defect;
  verification["hermitian_defect"] = ext.verification.hermitian_defect;
  json comm = json::array();
  for (const auto& [name, defect] : ext.verification.commutation_defects) {
    comm.push_back({{"operator", name}, {"defect", defect}});
  }
  verification["commutation_defects"] = std::move(comm);
  json dims;
  dims["H1"] = ext.deficiency.h1.dim();
  dims["H2"] = ext.deficiency.h2.dim();
  dims["H3"] = ext.deficiency.h3.dim();
  dims["H4"] = ext.deficiency.h4.dim();
  verification["deficiency_dims"] = std::move(dims);
  out["verification"] = std::move(verification);
  write_json_file(output, out);
  return 0;
}

int run_gen_moments(const std::string& measure_path, std::vector<int> m_box,
                    std::vector<int> n_box, const std::string& output) {
  AtomicMeasure mu = measure_from_json(load_json_file(measure_path));
  if (m_box.size() != mu.r || n_box.size() != mu.l) {
    throw std::runtime_error(
        "input error: --m-box needs " + std::to_string(mu.r) +
        " entries and --n-box needs " + std::to_string(mu.l));
  }
  MomentTable table = moments_from_measure(mu, m_box, n_box);
  write_json_file(output, moment_table_to_json(table));
  std::printf("wrote %zu moments for %zu atoms\n", table.size(), mu.atom_count());
  return 0;
}

void print_monomial(const MonomialIndex& idx) {
  std::printf("m=(");
  for (std::size_t i = 0; i < idx.m.size(); ++i)
    std::printf(i ? ",%d" : "%d", idx.m[i]);
  std::printf(") n=(");
  for (std::size_t i = 0; i < idx.n.size(); ++i)
    std::printf(i ? ",%d" : "%d", idx.n[i]);
  std::printf(")");
}

int run_verify(const std::string& moments_path, std::size_t j0, double tol) {
  MomentTable table = moment_table_from_json(load_json_file(moments_path));
  table.validate();
  PositivityReport pos = check_positivity(table, tol);
  std::printf("positivity: %s (min eigenvalue %.6e, max eigenvalue %.6e)\n",
              pos.passed ? "pass" : "FAIL", pos.min_eigenvalue,
              pos.max_eigenvalue);
  if (!pos.passed) {
    std::printf("violation certificate (coefficients of box monomials):\n");
    for (const auto& [idx, coeff] : pos.certificate) {
      std::printf("  ");
      print_monomial(idx);
      std::printf("  %.6e%+.6ei\n", coeff.real(), coeff.imag());
    }
    throw MathError(ErrorCode::NotPSD, "positivity check failed");
  }
  if (table.r() >= 2) {
    ConditionBReport cb = check_condition_B(table, j0, tol);
    for (const auto& [j, c] : cb.constants) {
      std::printf("condition (B) on the truncated box: C_%zu = %.9e\n", j, c);
    }
    std::printf("condition (B): %s\n", cb.passed ? "pass" : "FAIL");
    if (!cb.passed) {
      throw MathError(ErrorCode::ConditionBFailed, "condition (B) failed");
    }
  } else {
    std::printf("condition (B): vacuous for r <= 1\n");
  }
  return 0;
}

int run_solve(const std::string& moments_path, const std::string& output,
              std::size_t j0, double tol, std::uint64_t seed) {
  MomentTable table = moment_table_from_json(load_json_file(moments_path));
  AtomicMeasure mu = solve(table, j0, tol, seed);
  SolutionReport rep = verify_solution(mu, table, std::max(tol * 100.0, 1e-8));
  std::printf("recovered %zu atoms, total mass %.12f\n", mu.atom_count(),
              mu.total_mass());
  std::printf("max moment deviation over the table: %.3e at ",
              rep.max_deviation);
  print_monomial(rep.worst_index);
  std::printf("\nverify_solution: %s\n", rep.passed ? "pass" : "FAIL");
  write_json_file(output, measure_to_json(mu));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momext: conjugation factorizations, commuting self-adjoint "
               "extensions, and power-trigonometric moment problems"};
  app.require_subcommand(1);
  app.fallthrough();  // --tol/--seed may follow the subcommand name

  double tol = default_tol();
  std::uint64_t seed = 12345;
  app.add_option("--tol", tol, "numerical tolerance (or env MOMEXT_TOL)");
  app.add_option("--seed", seed, "seed for randomized joint diagonalization");

  auto* factorize = app.add_subcommand(
      "factorize", "factor commuting unitaries into conjugation pairs");
  std::string fact_input, fact_mode = "right", fact_output;
  factorize->add_option("--input", fact_input, "family JSON file")->required();
  factorize->add_option("--mode", fact_mode, "right (U = J_k C) or left (U = K L_k)")
      ->check(CLI::IsMember({"right", "left"}));
  factorize->add_option("--output", fact_output, "output JSON file")->required();

  auto* extend = app.add_subcommand(
      "extend", "build the commuting self-adjoint extension of A1");
  std::string ext_input, ext_output, ext_z0;
  extend->add_option("--tuple", ext_input, "tuple JSON file")->required();
  extend->add_option("--z0", ext_z0, "Cayley shift as RE,IM (default 0,1)");
  extend->add_option("--output", ext_output, "output JSON file")->required();

  auto* gen = app.add_subcommand("gen-moments",
                                 "compute the moment table of an atomic measure");
  std::string gen_measure, gen_output;
  std::vector<int> gen_mbox, gen_nbox;
  gen->add_option("--measure", gen_measure, "measure JSON file")->required();
  gen->add_option("--m-box", gen_mbox, "power box, one entry per x coordinate")
      ->delimiter(',');
  gen->add_option("--n-box", gen_nbox, "frequency box, one entry per angle")
      ->delimiter(',');
  gen->add_option("--output", gen_output, "output JSON file")->required();

  auto* verify = app.add_subcommand(
      "verify", "check positivity and condition (B) of a moment table");
  std::string ver_moments;
  std::size_t ver_j0 = 1;
  verify->add_option("--moments", ver_moments, "moment table JSON")->required();
  verify->add_option("--j0", ver_j0, "distinguished power index (1-based)");

  auto* solve_cmd = app.add_subcommand(
      "solve", "recover an atomic representing measure from a moment table");
  std::string sol_moments, sol_output;
  std::size_t sol_j0 = 1;
  solve_cmd->add_option("--moments", sol_moments, "moment table JSON")->required();
  solve_cmd->add_option("--j0", sol_j0, "distinguished power index (1-based)");
  solve_cmd->add_option("--output", sol_output, "output JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (factorize->parsed()) {
      return run_factorize(fact_input, fact_mode, fact_output, tol, seed);
    }
    if (extend->parsed()) {
      return run_extend(ext_input, ext_output, ext_z0, tol, seed);
    }
    if (gen->parsed()) {
      return run_gen_moments(gen_measure, gen_mbox, gen_nbox, gen_output);
    }
    if (verify->parsed()) {
      return run_verify(ver_moments, ver_j0, tol);
    }
    if (solve_cmd->parsed()) {
      return run_solve(sol_moments, sol_output, sol_j0, tol, seed);
    }
  } catch (const MathError& err) {
    std::fprintf(stderr, "%s\n", err.what());
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "%s\n", err.what());
    return 1;
  }
  return 1;
}
