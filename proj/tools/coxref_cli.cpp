#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "coxref/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int parse_label(const std::string& s) {
  if (s == "inf" || s == "oo") return coxref::kInf;
  return std::stoi(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter group reflection length toolkit"};
  app.require_subcommand(1);
  coxref::RunConfig cfg;
  std::string inline_matrix, input_path, out_path, p_label = "2", q_label = "3";

  auto add_matrix = [&](CLI::App* sub) {
    sub->add_option("--inline", inline_matrix, "Coxeter matrix, e.g. \"rank 3; m12=3 m13=3 m23=4\"");
    sub->add_option("--input", input_path, "File holding a Coxeter matrix (text grammar or JSON)");
    sub->add_option("--node-cap", cfg.node_cap, "Largest Cayley ball size")->capture_default_str();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)");
  };

  auto* classify = app.add_subcommand("classify", "Spherical / affine / non-affine verdict and Gram signature");
  add_matrix(classify);
  auto* subgroups = app.add_subcommand("subgroups", "Minimal non-affine special subgroups");
  add_matrix(subgroups);
  auto* reflen = app.add_subcommand("reflen", "Reflection length over a Cayley ball, or of one element");
  add_matrix(reflen);
  reflen->add_option("--L", cfg.L, "Ball radius in standard length")->capture_default_str();
  reflen->add_option("--D", cfg.D, "Reflection depth")->capture_default_str();
  reflen->add_option("--word", cfg.word, "Single element, e.g. \"1 2 3\"");
  auto* growth = app.add_subcommand("growth", "Reflection length of g^k for k = 1..K");
  add_matrix(growth);
  growth->add_option("--word", cfg.word, "Base element g")->required();
  growth->add_option("--K", cfg.K, "Largest power")->capture_default_str();
  growth->add_option("--D", cfg.D, "Depth cap for the reflection search")->capture_default_str();
  growth->add_option("--pattern", cfg.pattern, "Quasimorphism pattern used as a lower-bound certificate");
  growth->add_option("--window", cfg.window, "Defect window (0: 3|w|)");
  auto* affine = app.add_subcommand("affine-bound", "Maximum reflection length on a ball of an affine group");
  add_matrix(affine);
  affine->add_option("--L", cfg.L, "Ball radius")->capture_default_str();
  affine->add_option("--D", cfg.D, "Reflection depth")->capture_default_str();
  auto* qm = app.add_subcommand("qm-certify", "Counting quasimorphism certificate on W_k");
  qm->add_option("--k", cfg.k, "Number of generators")->capture_default_str();
  qm->add_option("--pattern", cfg.pattern, "Pattern word, e.g. abc")->required();
  qm->add_option("--g", cfg.g, "Element whose powers are bounded");
  qm->add_option("--K", cfg.K, "Largest power")->capture_default_str();
  qm->add_option("--window", cfg.window, "Defect window (0: 3|w|)");
  auto* filling = app.add_subcommand("filling", "Congruence quotient and 2pi certificate for a cusped triangle group");
  filling->add_option("--p", p_label, "Label m12")->capture_default_str();
  filling->add_option("--q", q_label, "Label m13")->capture_default_str();
  filling->set_help_flag("--help", "Print this help message and exit");
  filling->add_option("--h", cfg.h, "Horoball height (rational)")->capture_default_str();
  filling->add_option("--prime-cap", cfg.prime_cap, "Largest prime tried")->capture_default_str();
  filling->add_option("--grid", cfg.grid, "Warp profile grid size")->capture_default_str();
  auto* warp = app.add_subcommand("warp", "Warping function samples");
  warp->add_option("--L", cfg.warp_L, "Boundary geodesic length (> 2pi)")->capture_default_str();
  warp->add_option("--r-T", cfg.r_T, "Apex position in (-L/2pi, -1) (default: midpoint)");
  warp->add_option("--grid", cfg.grid, "Grid size")->capture_default_str();
  for (auto* sub : {classify, subgroups, reflen, growth, affine, qm, filling, warp}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!input_path.empty()) {
      cfg.matrix = read_file(input_path);
    } else {
      cfg.matrix = inline_matrix;
    }
    const bool needs_matrix = cfg.command == "classify" || cfg.command == "subgroups" || cfg.command == "reflen" ||
                              cfg.command == "growth" || cfg.command == "affine-bound";
    if (needs_matrix && cfg.matrix.empty()) throw std::invalid_argument("a Coxeter matrix is required (--inline or --input)");
    cfg.p = parse_label(p_label);
    cfg.q = parse_label(q_label);
    if (cfg.format.empty()) cfg.format = coxref::default_format(cfg.command);
    const auto report = coxref::dispatch(cfg);
    const std::string text = report.render(cfg.format);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
      out << text;
      if (!out) throw std::runtime_error("write to '" + out_path + "' failed");
      std::cerr << report.summary << "\n";
    }
    return 0;
  } catch (const coxref::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 2;
  } catch (const coxref::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
