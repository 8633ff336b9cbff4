// kgr: command-line front end for the k-graph toolkit.  Every command
// loads a k-graph document, runs its checks, prints a structured JSON
// report to stdout and a human summary to stderr.  Exit codes: 0 all
// checks pass, 1 a check failed, 2 input or usage error.

#include <chrono>
#include <fstream>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgr/ck.hpp"
#include "kgr/fractal.hpp"
#include "kgr/kms.hpp"
#include "kgr/measure.hpp"
#include "kgr/morphism.hpp"
#include "kgr/report.hpp"
#include "kgr/spectral.hpp"
#include "kgr/wavelets.hpp"

using nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ordered_json results_json(const std::vector<kgr::CheckResult>& results) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : results) {
    ordered_json e;
    e["name"] = r.name;
    e["instances"] = r.instances;
    e["max_residual"] = r.max_residual;
    e["pass"] = r.pass;
    if (!r.witness.empty()) e["witness"] = r.witness;
    arr.push_back(e);
  }
  return arr;
}

bool all_pass(const std::vector<kgr::CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

void human_summary(const std::vector<kgr::CheckResult>& results) {
  for (const auto& r : results) {
    std::cerr << (r.pass ? "  ok   " : "  FAIL ") << r.name << "  (instances " << r.instances
              << ", max residual " << r.max_residual << ")";
    if (!r.pass && !r.witness.empty()) std::cerr << "  witness: " << r.witness;
    std::cerr << "\n";
  }
}

int emit(ordered_json& doc, const std::vector<kgr::CheckResult>& results,
         const std::vector<std::pair<std::string, double>>& timing) {
  doc["pass"] = all_pass(results);
  ordered_json t;
  for (const auto& [phase, secs] : timing) t[phase] = secs;
  doc["timing"] = t;
  std::cout << doc.dump(2) << "\n";
  human_summary(results);
  return all_pass(results) ? 0 : 1;
}

ordered_json report_head(const std::string& command, const std::string& file) {
  ordered_json doc;
  doc["command"] = command;
  doc["inputs"] = {{"file", file}, {"digest", kgr::digest_file(file)}};
  return doc;
}

kgr::Degree parse_degree(const std::string& text, int k) {
  std::vector<int> comps;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) comps.push_back(std::stoi(part));
  if (static_cast<int>(comps.size()) == 1 && k > 1) comps.assign(k, comps[0]);
  if (static_cast<int>(comps.size()) != k)
    throw kgr::DomainError("degree spec '" + text + "' needs " + std::to_string(k) +
                           " components");
  for (int c : comps)
    if (c < 0) throw kgr::DomainError("degree components must be nonnegative");
  return kgr::Degree(comps);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CommonArgs {
  std::string file;
  bool force_float = false;
};

int cmd_validate(const CommonArgs& args, int probe_depth) {
  auto t0 = Clock::now();
  ordered_json doc = report_head("validate", args.file);
  std::vector<kgr::CheckResult> results;

  kgr::KGraph g = kgr::load_kgraph_file(args.file);  // throws on any invariant failure
  double t_load = seconds_since(t0);

  kgr::CheckResult loaded;
  loaded.name = "document-and-invariants";
  loaded.instances = 1;
  results.push_back(loaded);

  kgr::CheckResult conn;
  conn.name = "strongly-connected";
  conn.instances = 1;
  conn.pass = kgr::is_strongly_connected(g);
  if (!conn.pass) conn.witness = "some ordered vertex pair is not joined by a path";
  results.push_back(conn);

  kgr::CheckResult probe;
  probe.name = "aperiodicity-probe";
  probe.instances = 1;
  if (conn.pass) {
    kgr::AperiodicityResult r = kgr::aperiodicity_probe(g, probe_depth);
    // informational: a witness certifies periodicity, absence is evidence only
    probe.witness = r.periodic
                        ? "PeriodicWitness(" + g.vertices[r.vertex] + ", " + r.m.str() + ", " +
                              r.n.str() + ")"
                        : "NoPeriodicityUpToDepth(" + std::to_string(probe_depth) + ")";
  } else {
    probe.witness = "skipped: not strongly connected";
  }
  results.push_back(probe);

  doc["results"] = results_json(results);
  return emit(doc, results, {{"load", t_load}, {"total", seconds_since(t0)}});
}

int cmd_eigen(const CommonArgs& args, double tol, int max_iter) {
  auto t0 = Clock::now();
  ordered_json doc = report_head("eigen", args.file);
  kgr::KGraph g = kgr::load_kgraph_file(args.file);
  kgr::PFData pf = kgr::perron_frobenius(g, tol, max_iter);

  std::vector<kgr::CheckResult> results;
  kgr::CheckResult res;
  res.name = "eigenvector-residual";
  for (int c = 0; c < g.k; ++c) res.record(pf.residual[c], tol, "A" + std::to_string(c + 1));
  results.push_back(res);

  ordered_json data;
  data["rho"] = pf.rho;
  data["x"] = pf.x;
  data["residual"] = pf.residual;
  data["exact"] = pf.exact;
  if (pf.exact) {
    data["rho_exact"] = pf.rho_int;
    ordered_json xs = ordered_json::array();
    for (const auto& q : pf.x_exact) xs.push_back(q.str());
    data["x_exact"] = xs;
  }
  doc["results"] = results_json(results);
  doc["data"] = data;
  return emit(doc, results, {{"total", seconds_since(t0)}});
}

int cmd_measure(const CommonArgs& args, const std::string& path_spec) {
  auto t0 = Clock::now();
  ordered_json doc = report_head("measure", args.file);
  kgr::KGraph g = kgr::load_kgraph_file(args.file);
  kgr::PFData pf = kgr::perron_frobenius(g);

  std::vector<kgr::Morphism> paths;
  if (path_spec.find_first_not_of("0123456789,") == std::string::npos) {
    paths = kgr::enumerate_paths(g, parse_degree(path_spec, g.k));
  } else {
    paths.push_back(kgr::parse_path_id(g, path_spec));
  }

  bool exact = pf.exact && !args.force_float;
  ordered_json values = ordered_json::array();
  for (const kgr::Morphism& m : paths) {
    ordered_json e;
    e["path"] = kgr::path_id(g, m);
    e["degree"] = kgr::degree_of(g, m).str();
    e["range"] = g.vertices[m.range];
    e["source"] = g.vertices[kgr::source_of(g, m)];
    e["measure"] = kgr::cylinder_measure(g, pf, m);
    if (exact) e["measure_exact"] = kgr::cylinder_measure_exact(g, pf, m).str();
    values.push_back(e);
  }
  doc["mode"] = exact ? "exact" : "float";
  doc["values"] = values;
  std::vector<kgr::CheckResult> none;
  return emit(doc, none, {{"total", seconds_since(t0)}});
}

int cmd_ck_check(const CommonArgs& args, int depth) {
  auto t0 = Clock::now();
  ordered_json doc = report_head("ck-check", args.file);
  kgr::KGraph g = kgr::load_kgraph_file(args.file);
  kgr::PFData pf = kgr::perron_frobenius(g);

  bool exact = pf.exact && !args.force_float;
  std::vector<kgr::CheckResult> results;
  if (exact) {
    kgr::ExactCtx ctx(g, pf);
    results = kgr::verify_ck(ctx, depth, 0.0);
  } else {
    kgr::FloatCtx ctx(g, pf);
    results = kgr::verify_ck(ctx, depth, 1e-12);
  }
  results.push_back(kgr::check_additivity(g, pf, depth));

  doc["mode"] = exact ? "exact" : "float";
  doc["results"] = results_json(results);
  return emit(doc, results, {{"total", seconds_since(t0)}});
}

int cmd_kms_check(const CommonArgs& args, double beta, const std::string& dynamics,
                  const std::string& bound_spec) {
  auto t0 = Clock::now();
  ordered_json doc = report_head("kms-check", args.file);
  kgr::KGraph g = kgr::load_kgraph_file(args.file);
  kgr::PFData pf = kgr::perron_frobenius(g);
  kgr::Degree bound = parse_degree(bound_spec, g.k);

  std::vector<kgr::CheckResult> results;
  if (dynamics == "preferred") {
    results.push_back(kgr::kms_check(g, pf, kgr::preferred_dynamics(pf), beta, bound));
  } else if (dynamics == "hausdorff") {
    results.push_back(kgr::hausdorff_kms_check(g, pf, beta, bound));
  } else if (dynamics.rfind("custom:", 0) == 0) {
    kgr::Dynamics dyn;
    std::stringstream ss(dynamics.substr(7));
    std::string part;
    while (std::getline(ss, part, ',')) dyn.r.push_back(std::stod(part));
    results.push_back(kgr::kms_check(g, pf, dyn, beta, bound));
  } else {
    throw kgr::DomainError("unknown dynamics '" + dynamics +
                           "' (expected preferred|hausdorff|custom:<r>)");
  }
  doc["beta"] = beta;
  doc["dynamics"] = dynamics;
  doc["results"] = results_json(results);
  return emit(doc, results, {{"total", seconds_since(t0)}});
}

int cmd_dimension(const CommonArgs& args, int box_depth, double slope_tol) {
  auto t0 = Clock::now();
  ordered_json doc = report_head("dimension", args.file);
  kgr::KGraph g = kgr::load_kgraph_file(args.file);
  kgr::PFData pf = kgr::perron_frobenius(g);

  std::vector<kgr::CheckResult> results;
  kgr::CheckResult zo = kgr::validate_zero_one(g);
  results.push_back(zo);
  ordered_json data;
  if (zo.pass) {
    double formula = kgr::hausdorff_dimension(g, pf);
    double estimate = kgr::box_counting_estimate(g, box_depth);
    kgr::CheckResult gap;
    gap.name = "box-counting-agreement";
    gap.record(std::abs(estimate - formula), slope_tol,
               "estimate " + fmt_double(estimate) + " vs formula " + fmt_double(formula));
    results.push_back(gap);
    data["formula"] = formula;
    data["estimate"] = estimate;
    data["gap"] = std::abs(estimate - formula);
  }
  doc["results"] = results_json(results);
  doc["data"] = data;
  return emit(doc, results, {{"total", seconds_since(t0)}});
}

int cmd_embed(const CommonArgs& args, int depth, const std::string& out_path) {
  auto t0 = Clock::now();
  ordered_json doc = report_head("embed", args.file);
  kgr::KGraph g = kgr::load_kgraph_file(args.file);
  kgr::PFData pf = kgr::perron_frobenius(g);
  kgr::export_pointcloud_file(g, pf, depth, out_path);

  std::vector<kgr::CheckResult> results;
  kgr::CheckResult rec;
  rec.name = "pointcloud-written";
  rec.instances = static_cast<std::size_t>(kgr::count_paths(g, kgr::Degree::constant(g.k, depth)));
  results.push_back(rec);
  doc["out"] = out_path;
  doc["results"] = results_json(results);
  return emit(doc, results, {{"total", seconds_since(t0)}});
}

int cmd_wavelets(const CommonArgs& args, int levels, const std::string& out_path) {
  auto t0 = Clock::now();
  ordered_json doc = report_head("wavelets", args.file);
  kgr::KGraph g = kgr::load_kgraph_file(args.file);
  kgr::PFData pf = kgr::perron_frobenius(g);

  bool exact = pf.exact && !args.force_float;
  std::vector<kgr::CheckResult> results;
  std::string basis_doc;
  if (exact) {
    kgr::ExactCtx ctx(g, pf);
    results = kgr::verify_decomposition(ctx, levels, 0.0);
    basis_doc = kgr::basis_export_json(ctx, kgr::build_basis(ctx, levels));
  } else {
    kgr::FloatCtx ctx(g, pf);
    results = kgr::verify_decomposition(ctx, levels, 1e-10);
    basis_doc = kgr::basis_export_json(ctx, kgr::build_basis(ctx, levels));
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw kgr::DomainError("cannot open '" + out_path + "' for writing");
    out << basis_doc << "\n";
  }
  doc["mode"] = exact ? "exact" : "float";
  if (!out_path.empty()) doc["out"] = out_path;
  doc["results"] = results_json(results);
  return emit(doc, results, {{"total", seconds_since(t0)}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-graph spectral data, Cuntz-Krieger relations, KMS states, "
               "fractal embedding and wavelets"};
  app.require_subcommand(1);

  CommonArgs common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", common.file, "k-graph document")->required();
    sub->add_flag("--float", common.force_float, "force float mode even when exact data exists");
  };

  int probe_depth = 2;
  auto* validate = app.add_subcommand("validate", "load and check all graph invariants");
  add_common(validate);
  validate->add_option("--probe-depth", probe_depth, "aperiodicity probe bound")
      ->check(CLI::PositiveNumber);

  double tol = 1e-12;
  int max_iter = 100000;
  auto* eigen = app.add_subcommand("eigen", "Perron-Frobenius radii and eigenvector");
  add_common(eigen);
  eigen->add_option("--tol", tol, "residual tolerance");
  eigen->add_option("--max-iter", max_iter, "iteration budget");

  std::string path_spec;
  auto* measure = app.add_subcommand("measure", "cylinder-set measures");
  add_common(measure);
  measure->add_option("--path", path_spec, "path id (edges joined by '.') or degree spec 'a,b'")
      ->required();

  int ck_depth = 2;
  auto* ck = app.add_subcommand("ck-check", "verify the Cuntz-Krieger relations");
  add_common(ck);
  ck->add_option("--depth", ck_depth, "square basis depth")->check(CLI::PositiveNumber);

  double beta = 1.0;
  std::string dynamics = "preferred";
  std::string bound_spec = "1";
  auto* kms = app.add_subcommand("kms-check", "verify the KMS identity on spanning pairs");
  add_common(kms);
  kms->add_option("--beta", beta, "inverse temperature");
  kms->add_option("--dynamics", dynamics, "preferred|hausdorff|custom:<r1,...,rk>");
  kms->add_option("--bound", bound_spec, "componentwise degree bound 'a,b' or a single value");

  int box_depth = 8;
  double slope_tol = 0.05;
  auto* dim = app.add_subcommand("dimension", "Hausdorff dimension formula and box estimate");
  add_common(dim);
  dim->add_option("--box-depth", box_depth, "box-counting depth")->check(CLI::Range(2, 24));
  dim->add_option("--slope-tol", slope_tol, "allowed |estimate - formula|");

  int embed_depth = 2;
  std::string out_path;
  auto* embed = app.add_subcommand("embed", "export the N-adic point cloud");
  add_common(embed);
  embed->add_option("--depth", embed_depth, "square truncation depth")->check(CLI::Range(0, 16));
  embed->add_option("--out", out_path, "output CSV path")->required();

  int levels = 2;
  std::string wavelet_out;
  auto* wav = app.add_subcommand("wavelets", "build and verify the wavelet decomposition");
  add_common(wav);
  wav->add_option("--levels", levels, "truncation depth n (V0, W0..W_{n-1})")
      ->check(CLI::PositiveNumber);
  wav->add_option("--out", wavelet_out, "basis export path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(common, probe_depth);
    if (eigen->parsed()) return cmd_eigen(common, tol, max_iter);
    if (measure->parsed()) return cmd_measure(common, path_spec);
    if (ck->parsed()) return cmd_ck_check(common, ck_depth);
    if (kms->parsed()) return cmd_kms_check(common, beta, dynamics, bound_spec);
    if (dim->parsed()) return cmd_dimension(common, box_depth, slope_tol);
    if (embed->parsed()) return cmd_embed(common, embed_depth, out_path);
    if (wav->parsed()) return cmd_wavelets(common, levels, wavelet_out);
  } catch (const std::exception& e) {
    ordered_json err;
    err["error"] = e.what();
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
