// SPDX-License-Identifier: Apache-2.0
// curlspec: command-line front end for the spectral Maxwell solvers.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "curlspec/bench.hpp"
#include "curlspec/eigensolve.hpp"
#include "curlspec/error.hpp"
#include "curlspec/oracle.hpp"
#include "curlspec/parallel.hpp"
#include "curlspec/presets.hpp"
#include "curlspec/solver2d.hpp"
#include "curlspec/solver3d.hpp"

using namespace curlspec;
using nlohmann::json;

namespace {

enum Exit { ok = 0, bad_args = 2, resonant = 3, not_converged = 4, failure = 1 };

struct Common {
  int threads = 0;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) raise(ErrorCode::invalid_argument, "cannot open " + path);
  os << text;
}

json tensor_json(const std::vector<Index>& shape, std::span<const double> data,
                 const std::string& sidecar, std::ofstream* bin, std::size_t& offset) {
  json j;
  j["shape"] = shape;
  j["order"] = "column-major";
  if (bin) {
    bin->write(reinterpret_cast<const char*>(data.data()),
               static_cast<std::streamsize>(data.size() * sizeof(double)));
    j["file"] = sidecar;
    j["offset"] = offset;
    j["dtype"] = "float64-le";
    offset += data.size() * sizeof(double);
  } else {
    j["data"] = std::vector<double>(data.begin(), data.end());
  }
  return j;
}

json field_json(const PresetSolve& s, const std::string& out, bool binary) {
  json j;
  std::ofstream bin;
  std::string sidecar;
  if (binary) {
    sidecar = out + ".bin";
    bin.open(sidecar, std::ios::binary);
    if (!bin) raise(ErrorCode::invalid_argument, "cannot open " + sidecar);
  }
  std::ofstream* b = binary ? &bin : nullptr;
  std::size_t offset = 0;
  if (s.field2) {
    const SpectralField2D& f = *s.field2;
    j["U"] = tensor_json({f.U.rows(), f.U.cols()}, f.U.values(), sidecar, b, offset);
    j["V"] = tensor_json({f.V.rows(), f.V.cols()}, f.V.values(), sidecar, b, offset);
    if (f.P) j["P"] = tensor_json({f.P->rows(), f.P->cols()}, f.P->values(), sidecar, b, offset);
  } else {
    const SpectralField3D& f = *s.field3;
    auto dims = [](const Tensor3& t) {
      return std::vector<Index>{t.dim(0), t.dim(1), t.dim(2)};
    };
    j["U"] = tensor_json(dims(f.U), f.U.values(), sidecar, b, offset);
    j["V"] = tensor_json(dims(f.V), f.V.values(), sidecar, b, offset);
    j["W"] = tensor_json(dims(f.W), f.W.values(), sidecar, b, offset);
    if (f.P) j["P"] = tensor_json(dims(*f.P), f.P->values(), sidecar, b, offset);
  }
  if (s.lift) {
    j["lift"] = {{"b1", s.lift->b1}, {"b2", s.lift->b2}, {"b3", s.lift->b3}, {"b4", s.lift->b4}};
  }
  return j;
}

std::vector<Index> parse_list(const std::string& text) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v < 2) raise(ErrorCode::invalid_argument, "bad N list entry: " + item);
    out.push_back(static_cast<Index>(v));
  }
  if (out.empty()) raise(ErrorCode::invalid_argument, "empty N list");
  return out;
}

Preset checked_preset(const std::string& name, int dim) {
  Preset p = get_preset(name);
  if (dim != 0 && p.dim != 0 && p.dim != dim)
    raise(ErrorCode::invalid_argument,
          "preset " + name + " is " + std::to_string(p.dim) + "D, --dim is " + std::to_string(dim));
  return p;
}

MatmulStrategy parse_strategy(const std::string& name, Index cutoff) {
  if (name == "classical") return MatmulStrategy::classical();
  if (name == "strassen") return MatmulStrategy::strassen(cutoff);
  raise(ErrorCode::invalid_argument, "unknown strategy: " + name);
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
  int dim = 0;  ///< 0 takes the preset's dimension
  Index N = 16;
  std::optional<double> kappa;
  std::string preset;
  std::string out;
  bool errors = false;
  bool binary = false;
  std::string strategy = "classical";
};

int run_solve(const SolveArgs& a) {
  const Preset p = checked_preset(a.preset, a.dim);
  PresetParams params;
  params.N = a.N;
  params.kappa = a.kappa;
  const PresetSolve s = solve_preset(p, params, {parse_strategy(a.strategy, 64)});
  std::printf("preset=%s dim=%d N=%td kappa=%.17g\n", p.name.c_str(), s.dim, s.N, s.kappa);
  if (p.kind == PresetKind::variable_coefficient)
    std::printf("gmres_iterations=%td converged=%d\n", s.iterations, s.converged ? 1 : 0);
  else
    std::printf("gauss_residual_relative=%.6e\n", s.gauss_residual_relative);
  std::printf("wall_time_s=%.6f\n", s.wall_time_s);
  if (a.errors) {
    if (auto e = preset_error(p, s)) {
      std::printf("l2_error=%.6e\n", e->l2);
      std::printf("hcurl_error=%.6e\n", e->hcurl());
    } else {
      std::fprintf(stderr, "preset %s has no exact solution; errors not reported\n",
                   p.name.c_str());
    }
  }
  if (!a.out.empty()) {
    json j;
    j["preset"] = p.name;
    j["dim"] = s.dim;
    j["N"] = s.N;
    j["kappa"] = s.kappa;
    j["field"] = field_json(s, a.out, a.binary);
    std::ofstream os(a.out);
    if (!os) raise(ErrorCode::invalid_argument, "cannot open " + a.out);
    os << j.dump(1) << '\n';
  }
  return s.converged ? ok : not_converged;
}

// ---- eig -----------------------------------------------------------------

struct EigArgs {
  int dim = 2;
  Index N = 16;
  Index first = 0;
  bool scaled = false;
  bool trusted = false;
  std::optional<double> threshold;
};

int run_eig(const EigArgs& a) {
  require(a.dim == 2 || a.dim == 3, ErrorCode::invalid_argument, "--dim must be 2 or 3");
  const MassDecomp dec = decompose_mass(build_mass_matrix(a.N), EigenvectorPolicy::skip);
  if (a.trusted) {
    const double t = a.threshold.value_or(1.0 / static_cast<double>(a.N));
    std::printf("trusted_fraction=%.6f\n", trusted_fraction_modes(a.dim, dec, t));
  }
  const std::vector<double> values =
      a.dim == 2 ? nonzero_eigenvalues_2d(dec) : nonzero_eigenvalues_3d(dec);
  if (a.trusted) {
    const double t = a.threshold.value_or(1.0 / static_cast<double>(a.N));
    const std::vector<double> exact = exact_spectrum(a.dim, static_cast<Index>(values.size()));
    std::printf("trusted_fraction_sorted=%.6f\n", trusted_fraction(values, exact, t));
    if (a.first == 0) return ok;
  }
  const Index count =
      a.first > 0 ? std::min<Index>(a.first, static_cast<Index>(values.size()))
                  : static_cast<Index>(values.size());
  const double scale = a.scaled ? 4.0 / (std::numbers::pi * std::numbers::pi) : 1.0;
  for (Index i = 0; i < count; ++i) std::printf("%.15f\n", scale * values[i]);
  return ok;
}

// ---- convergence ---------------------------------------------------------

struct ConvergenceArgs {
  std::string preset;
  std::optional<double> kappa;
  std::string n_list;
  std::string out;
  Index reference_N = 0;
};

int run_convergence(const ConvergenceArgs& a) {
  const Preset p = get_preset(a.preset);
  const std::vector<Index> Ns = parse_list(a.n_list);
  std::ostringstream os;
  os.precision(9);
  os << "N,dofs,l2_error,hcurl_error,iterations\n";
  std::optional<PresetSolve> reference;
  if (p.reference == ReferencePolicy::self_convergence) {
    const Index ref = a.reference_N > 0 ? a.reference_N : p.reference_N;
    reference = solve_preset(p, PresetParams::at(ref, a.kappa));
  } else if (p.reference != ReferencePolicy::exact) {
    raise(ErrorCode::invalid_argument, "preset " + p.name + " has no convergence reference");
  }
  bool all_converged = true;
  for (Index N : Ns) {
    const PresetSolve s = solve_preset(p, PresetParams::at(N, a.kappa));
    all_converged = all_converged && s.converged;
    const FieldError e = reference ? preset_difference(s, *reference) : *preset_error(p, s);
    os << N << ',' << bench::dofs(s.dim, N) << ',' << e.l2 << ',' << e.hcurl() << ','
       << s.iterations << '\n';
  }
  write_text(a.out, os.str());
  return all_converged ? ok : not_converged;
}

// ---- bench ---------------------------------------------------------------

struct BenchArgs {
  int dim = 2;
  std::string n_list;
  std::string strategy = "classical";
  Index cutoff = 64;
  int repeats = 3;
  double kappa = 1.0;
  std::string out;
};

int run_bench_cmd(const BenchArgs& a) {
  const std::vector<Index> Ns = parse_list(a.n_list);
  const auto rows = bench::run_bench(a.dim, Ns, a.kappa, parse_strategy(a.strategy, a.cutoff),
                                     a.repeats);
  write_text(a.out, bench::to_csv(rows));
  if (rows.size() >= 3) std::fprintf(stderr, "slope=%.4f\n", bench::fit_slope(rows));
  return ok;
}

// ---- varcoef -------------------------------------------------------------

struct VarcoefArgs {
  std::string preset = "ex5_3";
  Index N = 64;
  double tol = 1e-10;
  Index restart = 50;
  Index max_iterations = 1000;
  std::string out;
};

int run_varcoef(const VarcoefArgs& a) {
  const Preset p = get_preset(a.preset);
  require(p.kind == PresetKind::variable_coefficient, ErrorCode::invalid_argument,
          "varcoef needs a variable-coefficient preset");
  KrylovConfig cfg;
  cfg.tolerance = a.tol;
  cfg.restart = a.restart;
  cfg.max_iterations = a.max_iterations;
  const PresetSolve s = solve_preset(p, PresetParams::at(a.N), {}, cfg);
  std::ostringstream os;
  os.precision(9);
  os << "iteration,relative_residual\n";
  for (std::size_t i = 0; i < s.residual_history.size(); ++i)
    os << i << ',' << s.residual_history[i] << '\n';
  write_text(a.out, os.str());
  std::fprintf(stderr, "iterations=%td converged=%d\n", s.iterations, s.converged ? 1 : 0);
  return s.converged ? ok : not_converged;
}

// ---- oracle-check --------------------------------------------------------

struct OracleArgs {
  int dim = 2;
  Index N = 5;
  double kappa = 1.0;
  int samples = 5;
};

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
    s = std::max(s, std::abs(b[i]));
  }
  return s > 0.0 ? d / s : d;
}

int run_oracle(const OracleArgs& a) {
  require(a.dim == 2 || a.dim == 3, ErrorCode::invalid_argument, "--dim must be 2 or 3");
  const MassDecomp dec = decompose_mass(build_mass_matrix(a.N));
  const oracle::DensePencil sys =
      a.dim == 2 ? oracle::assemble_dense_2d(a.kappa, a.N) : oracle::assemble_dense_3d(a.kappa, a.N);
  double worst = 0.0;
  for (int s = 0; s < a.samples; ++s) {
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(s);
    std::vector<double> fast, rhs;
    if (a.dim == 2) {
      const SourceData2D src = bench::random_source_2d(a.N, seed);
      fast = stack(solve_source_2d(src, a.kappa, dec).field);
      rhs = stack(src);
    } else {
      const SourceData3D src = bench::random_source_3d(a.N, seed);
      fast = stack(solve_source_3d(src, a.kappa, dec).field);
      rhs = stack(src);
    }
    worst = std::max(worst, max_rel_diff(fast, oracle::dense_solve(sys, rhs)));
  }
  std::printf("max_relative_difference=%.6e\n", worst);
  return ok;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::resonant_kappa: return resonant;
    case ErrorCode::not_converged: return not_converged;
    case ErrorCode::invalid_argument:
    case ErrorCode::unknown_preset:
    case ErrorCode::cap_exceeded:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::index_out_of_range:
    case ErrorCode::insufficient_data: return bad_args;
    default: return failure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Legendre spectral solvers for Maxwell double-curl problems"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (default: CURLSPEC_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve a preset source problem");
  solve->add_option("--dim", sa.dim)->check(CLI::IsMember({2, 3}));
  solve->add_option("--N", sa.N, "Polynomial order")->check(CLI::Range(Index{2}, Index{1} << 20));
  solve->add_option("--kappa", sa.kappa);
  solve->add_option("--preset", sa.preset)->required();
  solve->add_option("--out", sa.out, "Coefficient dump (JSON)");
  solve->add_flag("--binary", sa.binary, "Write coefficients to a float64 sidecar");
  solve->add_flag("--errors", sa.errors, "Report L2 and H(curl) errors");
  solve->add_option("--strategy", sa.strategy)->check(CLI::IsMember({"classical", "strassen"}));

  EigArgs ea;
  auto* eig = app.add_subcommand("eig", "Discrete Maxwell eigenvalues");
  eig->add_option("--dim", ea.dim)->check(CLI::IsMember({2, 3}));
  eig->add_option("--N", ea.N)->check(CLI::Range(Index{2}, Index{1} << 20));
  eig->add_option("--first", ea.first)->check(CLI::NonNegativeNumber);
  eig->add_flag("--scaled", ea.scaled, "Print 4λ/π²");
  eig->add_flag("--trusted", ea.trusted, "Report the trusted fraction");
  eig->add_option("--threshold", ea.threshold, "Relative error threshold (default 1/N)");

  ConvergenceArgs ca;
  auto* conv = app.add_subcommand("convergence", "Error versus N for a preset");
  conv->add_option("--preset", ca.preset)->required();
  conv->add_option("--kappa", ca.kappa);
  conv->add_option("--N-list", ca.n_list)->required();
  conv->add_option("--reference-N", ca.reference_N);
  conv->add_option("--out", ca.out);

  BenchArgs ba;
  auto* bch = app.add_subcommand("bench", "Time fast solves");
  bch->add_option("--dim", ba.dim)->check(CLI::IsMember({2, 3}));
  bch->add_option("--N-list", ba.n_list)->required();
  bch->add_option("--strategy", ba.strategy)->check(CLI::IsMember({"classical", "strassen"}));
  bch->add_option("--cutoff", ba.cutoff)->check(CLI::PositiveNumber);
  bch->add_option("--repeats", ba.repeats)->check(CLI::Range(3, 1000));
  bch->add_option("--kappa", ba.kappa);
  bch->add_option("--out", ba.out);

  VarcoefArgs va;
  auto* var = app.add_subcommand("varcoef", "Preconditioned GMRES for variable coefficients");
  var->add_option("--preset", va.preset);
  var->add_option("--N", va.N)->check(CLI::Range(Index{2}, Index{1} << 16));
  var->add_option("--tol", va.tol)->check(CLI::PositiveNumber);
  var->add_option("--restart", va.restart)->check(CLI::PositiveNumber);
  var->add_option("--max-iterations", va.max_iterations)->check(CLI::PositiveNumber);
  var->add_option("--out", va.out);

  OracleArgs oa;
  auto* orc = app.add_subcommand("oracle-check", "Compare the fast solver with dense LU");
  orc->add_option("--dim", oa.dim)->check(CLI::IsMember({2, 3}));
  orc->add_option("--N", oa.N)->check(CLI::Range(Index{2}, Index{64}));
  orc->add_option("--kappa", oa.kappa);
  orc->add_option("--samples", oa.samples)->check(CLI::Range(1, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : bad_args;
  }
  if (common.threads > 0) set_num_threads(common.threads);

  try {
    if (*solve) return run_solve(sa);
    if (*eig) return run_eig(ea);
    if (*conv) return run_convergence(ca);
    if (*bch) return run_bench_cmd(ba);
    if (*var) return run_varcoef(va);
    if (*orc) return run_oracle(oa);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return failure;
  }
  return bad_args;
}
