// Command-line front end; all real work happens behind the C API.

#include "clo/clo.h"

#include "CLI11.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace {

int exit_code(clo_status st) {
  if (st == CLO_OK) return 0;
  if (st == CLO_E_VERIFY_FAIL) return 1;
  return 2;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int write_out(const char* text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text, stdout);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (out) out << text;
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for monotone clique circuits with rectangle oracles"};
  app.require_subcommand(1);

  std::string name, bundle_path, rects_path, out_path;
  std::string mode = "exact", fmt = "json";
  std::string m_str, mu_str, eps_str;
  std::uint64_t n = 0, k = 0, ell = 0, d = 0, p = 0;
  std::uint64_t samples = 100000, seed = 1;
  std::uint32_t workers = 1;

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write the report to this file instead of stdout");
  };
  auto add_bundle = [&](CLI::App* cmd) {
    cmd->add_option("--bundle", bundle_path, "circuit bundle file")->required();
    cmd->add_option("--rects", rects_path,
                    "rectangle family file, for bundles that do not embed one");
    add_out(cmd);
  };

  CLI::App* cmd_construct = app.add_subcommand("construct", "emit a reference bundle");
  cmd_construct->add_option("--name", name, "single, triangle, trivial-dnf or lex")->required();
  cmd_construct->add_option("--n", n, "number of vertices")->required();
  cmd_construct->add_option("--k", k, "clique size");
  cmd_construct->add_option("--ell", ell, "prefix length (lex only)");
  add_out(cmd_construct);

  CLI::App* cmd_verify = app.add_subcommand("verify", "check the separation property");
  add_bundle(cmd_verify);

  CLI::App* cmd_locality = app.add_subcommand("locality", "rectangle locality of a bundle");
  add_bundle(cmd_locality);
  cmd_locality->add_option("--mode", mode, "exact or mc")
      ->check(CLI::IsMember({"exact", "mc"}));
  cmd_locality->add_option("--samples", samples, "sample count for mc mode");
  cmd_locality->add_option("--seed", seed, "sampling seed");
  cmd_locality->add_option("--workers", workers, "worker threads for mc mode");

  CLI::App* cmd_overlap = app.add_subcommand("overlap", "largest clique-side cover count");
  add_bundle(cmd_overlap);

  CLI::App* cmd_nf = app.add_subcommand("normal-form", "rewrite as an OR over oracle subsets");
  add_bundle(cmd_nf);
  cmd_nf->add_option("--d", d, "subset size cap")->required();

  CLI::App* cmd_approx = app.add_subcommand("approx", "approximate a bundle entry by entry");
  add_bundle(cmd_approx);
  cmd_approx->add_option("--d", d, "subset size cap")->required();
  cmd_approx->add_option("--ell", ell, "indicator size cap (default from n, k)");
  cmd_approx->add_option("--p", p, "sunflower petal count (default from n, k)");
  cmd_approx->add_option("--m", m_str, "indicator count cap, decimal (default (p-1)^ell ell!)");

  CLI::App* cmd_errors = app.add_subcommand("errors", "approximation errors of an oracle-free bundle");
  add_bundle(cmd_errors);
  cmd_errors->add_option("--ell", ell, "indicator size cap (default from n, k)");
  cmd_errors->add_option("--p", p, "sunflower petal count (default from n, k)");
  cmd_errors->add_option("--m", m_str, "indicator count cap, decimal (default (p-1)^ell ell!)");

  CLI::App* cmd_dich = app.add_subcommand("dichotomy", "error measures of a flat bundle");
  add_bundle(cmd_dich);
  cmd_dich->add_option("--mu-threshold", mu_str, "locality threshold fraction (default 1/16)");

  CLI::App* cmd_phase = app.add_subcommand("phase-report", "reference constructions at k = 3");
  cmd_phase->add_option("--n", n, "number of vertices")->required();
  cmd_phase->add_option("--eps", eps_str, "regime margin fraction (default 1/10)");
  cmd_phase->add_option("--format", fmt, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_out(cmd_phase);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (cmd_construct->parsed()) {
    clo_bundle* b = nullptr;
    clo_status st = clo_bundle_construct(name.c_str(), n, k, ell, &b);
    if (st != CLO_OK) {
      std::fprintf(stderr, "error: %s\n", clo_last_error());
      return exit_code(st);
    }
    char* text = nullptr;
    st = clo_bundle_emit(b, &text);
    clo_bundle_free(b);
    if (st != CLO_OK) {
      std::fprintf(stderr, "error: %s\n", clo_last_error());
      return exit_code(st);
    }
    int rc = write_out(text, out_path);
    clo_string_free(text);
    return rc;
  }

  if (cmd_phase->parsed()) {
    char* report = nullptr;
    clo_status st = clo_phase_report(n, eps_str.empty() ? nullptr : eps_str.c_str(),
                                     fmt == "csv" ? 1 : 0, &report);
    if (st != CLO_OK) {
      std::fprintf(stderr, "error: %s\n", clo_last_error());
      return exit_code(st);
    }
    int rc = write_out(report, out_path);
    clo_string_free(report);
    return rc;
  }

  // Everything else consumes a bundle.
  std::string bundle_text, rects_text;
  try {
    bundle_text = read_file(bundle_path);
    if (!rects_path.empty()) rects_text = read_file(rects_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  clo_bundle* b = nullptr;
  clo_status st =
      clo_bundle_parse(bundle_text.c_str(), rects_path.empty() ? nullptr : rects_text.c_str(), &b);
  if (st != CLO_OK) {
    std::fprintf(stderr, "error: %s\n", clo_last_error());
    return exit_code(st);
  }

  char* report = nullptr;
  if (cmd_verify->parsed()) {
    st = clo_verify(b, &report);
  } else if (cmd_locality->parsed()) {
    st = mode == "exact" ? clo_locality_exact(b, &report)
                         : clo_locality_mc(b, samples, seed, workers, &report);
  } else if (cmd_overlap->parsed()) {
    st = clo_max_overlap(b, &report);
  } else if (cmd_nf->parsed()) {
    st = clo_normal_form(b, d, &report);
  } else if (cmd_approx->parsed()) {
    st = clo_approximate(b, d, ell, p, m_str.empty() ? nullptr : m_str.c_str(), &report);
  } else if (cmd_errors->parsed()) {
    st = clo_count_errors(b, ell, p, m_str.empty() ? nullptr : m_str.c_str(), &report);
  } else if (cmd_dich->parsed()) {
    st = clo_dichotomy(b, mu_str.empty() ? nullptr : mu_str.c_str(), &report);
  }
  std::string err = st != CLO_OK ? clo_last_error() : "";
  clo_bundle_free(b);

  int rc = exit_code(st);
  if (!err.empty()) std::fprintf(stderr, "error: %s\n", err.c_str());
  if (report) {
    int wrc = write_out(report, out_path);
    clo_string_free(report);
    if (rc == 0) rc = wrc;
  }
  return rc;
}
