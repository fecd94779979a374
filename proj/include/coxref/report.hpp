#pragma once

// Deterministic reports for each command of the command-line tool. A report is
// a JSON document with sorted keys, optionally with a CSV table. Thread count is
// an execution parameter and is left out of the embedded configuration so that
// reports are byte-identical across thread counts.

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxref/catalog.hpp"
#include "coxref/classify.hpp"
#include "coxref/coxeter_matrix.hpp"
#include "coxref/errors.hpp"
#include "coxref/filling.hpp"
#include "coxref/free_coxeter.hpp"
#include "coxref/gram.hpp"
#include "coxref/interval.hpp"
#include "coxref/quasi_cert.hpp"
#include "coxref/reflength.hpp"
#include "coxref/warp.hpp"

namespace coxref {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunConfig {
  std::string command;
  std::string matrix;  // Coxeter matrix in the text grammar or JSON
  std::string word;
  int L = 8;
  int D = 6;
  int K = 6;
  int window = 0;  // 0: 3|w|
  std::string h = "1";
  std::int64_t prime_cap = 100;
  int grid = 512;
  int k = 3;
  std::string pattern;
  std::string g;
  int p = 2, q = 3;
  double warp_L = 6.5;
  std::optional<double> r_T;
  int threads = 1;
  std::size_t node_cap = 5'000'000;
  std::string format;  // csv | json; empty: command default

  nlohmann::json provenance() const {
    nlohmann::json c;
    c["command"] = command;
    if (!matrix.empty()) c["matrix"] = matrix;
    if (!word.empty()) c["word"] = word;
    if (command == "reflen" || command == "affine-bound") c["L"] = L;
    if (command == "reflen" || command == "affine-bound" || command == "growth") c["node_cap"] = node_cap;
    if (command == "reflen" || command == "affine-bound" || command == "growth") c["D"] = D;
    if (command == "growth" || command == "qm-certify") c["K"] = K;
    if (command == "qm-certify") {
      c["k"] = k;
      c["pattern"] = pattern;
      c["g"] = g;
      c["window"] = window;
    }
    if (command == "filling") {
      c["p"] = label_string(p);
      c["q"] = label_string(q);
      c["h"] = h;
      c["prime_cap"] = prime_cap;
    }
    if (command == "filling" || command == "warp") c["grid"] = grid;
    if (command == "warp") {
      c["L"] = format15(warp_L);
      if (r_T) c["r_T"] = format15(*r_T);
    }
    return c;
  }
};

struct Report {
  nlohmann::json data;
  std::string summary;
  std::string csv_header;
  std::vector<std::string> csv_rows;

  bool has_csv() const { return !csv_header.empty(); }

  std::string render(const std::string& format) const {
    if (format == "json") return data.dump(2) + "\n";
    if (format != "csv") throw std::invalid_argument("unknown format '" + format + "'");
    if (!has_csv()) throw std::invalid_argument("this command has no CSV report; use --format json");
    std::string out = "# coxref " + std::string(kToolVersion) + "\n";
    out += "# config " + data["config"].dump() + "\n";
    if (!summary.empty()) out += "# " + summary + "\n";
    out += csv_header + "\n";
    for (const auto& r : csv_rows) out += r + "\n";
    return out;
  }
};

inline Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t pos = 0;
    if (slash == std::string::npos) {
      const long long n = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return Rational(n);
    }
    const long long n = std::stoll(s.substr(0, slash), &pos);
    if (pos != slash) throw std::invalid_argument(s);
    const std::string ds = s.substr(slash + 1);
    const long long d = std::stoll(ds, &pos);
    if (pos != ds.size() || d == 0) throw std::invalid_argument(s);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

/// Text grammar, or JSON when the input starts with '{' or '['.
inline CoxeterMatrix read_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return coxeter_matrix_from_json(j);
  }
  return parse_coxeter_matrix(text);
}

namespace detail {

inline nlohmann::json subset_json(const Subset& s) {
  nlohmann::json a = nlohmann::json::array();
  for (int x : s) a.push_back(x + 1);
  return a;
}

inline nlohmann::json inertia_json(const Inertia& in) { return {in.positive, in.negative, in.zero}; }

inline std::string inertia_str(const Inertia& in) {
  return "(" + std::to_string(in.positive) + "," + std::to_string(in.negative) + "," + std::to_string(in.zero) + ")";
}

inline std::string word_key(const Word& w) { return w.empty() ? "e" : word_to_string(w); }

inline std::string opt_str(const std::optional<int>& v) { return v ? std::to_string(*v) : "inf"; }

inline nlohmann::json interval_json(const RationalInterval& iv) {
  return {{"lo", format15(iv.lo.to_double())}, {"hi", format15(iv.hi.to_double())}, {"lo_exact", iv.lo.str()},
          {"hi_exact", iv.hi.str()}};
}

inline Report base_report(const RunConfig& cfg) {
  Report r;
  r.data["tool"] = "coxref";
  r.data["version"] = kToolVersion;
  r.data["config"] = cfg.provenance();
  return r;
}

inline ReflLenOptions reflen_options(const RunConfig& cfg) {
  ReflLenOptions o;
  o.threads = cfg.threads;
  o.node_cap = cfg.node_cap;
  return o;
}

}  // namespace detail

inline Report classify_report(const RunConfig& cfg) {
  const auto cm = read_matrix(cfg.matrix);
  const auto v = classify_group(cm);
  const auto sig = gram_signature(gram_matrix(cm));
  Report r = detail::base_report(cfg);
  r.data["kind"] = to_string(v.kind);
  r.data["minimal_nonaffine"] = v.minimal_nonaffine;
  r.data["signature"] = detail::inertia_json(sig);
  r.data["rank"] = cm.rank();
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : v.components) {
    nlohmann::json cj{{"generators", detail::subset_json(c.generators)}, {"kind", to_string(c.kind)}};
    if (auto e = lookup_catalog(cm.restrict(c.generators))) cj["catalog"] = e->name;
    comps.push_back(cj);
  }
  r.data["components"] = comps;
  r.summary = to_string(v.kind);
  if (v.minimal_nonaffine) r.summary += ", minimal non-affine";
  r.summary += ", signature " + detail::inertia_str(sig);
  r.data["summary"] = r.summary;
  return r;
}

inline Report subgroups_report(const RunConfig& cfg) {
  const auto cm = read_matrix(cfg.matrix);
  const auto subsets = minimal_nonaffine_subsets(cm);
  const GramMatrix gm(cm);
  Report r = detail::base_report(cfg);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : subsets)
    arr.push_back({{"generators", detail::subset_json(s)}, {"signature", detail::inertia_json(gram_signature(gm, s))}});
  r.data["minimal_nonaffine"] = arr;
  r.summary = std::to_string(subsets.size()) + " minimal non-affine special subgroups";
  r.data["summary"] = r.summary;
  return r;
}

inline Report reflen_report(const RunConfig& cfg) {
  const auto cm = read_matrix(cfg.matrix);
  const TitsRepresentation rep(cm);
  Report r = detail::base_report(cfg);
  r.csv_header = "key,len_S,upper,lower,status";
  if (!cfg.word.empty()) {
    ReflLenProtocol proto;
    proto.options = detail::reflen_options(cfg);
    const auto res = reflen_element(rep, parse_word(cfg.word, cm.rank()), proto);
    r.csv_rows.push_back(detail::word_key(res.reduced) + "," + std::to_string(res.standard_length) + "," +
                         detail::opt_str(res.upper) + "," + std::to_string(res.lower) + "," + to_string(res.status));
    nlohmann::json wit = nlohmann::json::array();
    for (const auto& w : res.witness) wit.push_back(word_to_string(w));
    r.data["element"] = {{"reduced", detail::word_key(res.reduced)}, {"standard_length", res.standard_length},
                         {"upper", detail::opt_str(res.upper)}, {"lower", res.lower},
                         {"status", to_string(res.status)}, {"lower_source", res.lower_source},
                         {"depth_used", res.depth_used}, {"witness", wit}};
    r.summary = "reflection length of " + detail::word_key(res.reduced) + ": " + detail::opt_str(res.upper) +
                (res.status == ReflStatus::Exact ? " (Exact)" : " (lower " + std::to_string(res.lower) + ")");
    r.data["summary"] = r.summary;
    return r;
  }
  const auto ball = reflen_ball(rep, cfg.L, cfg.D, detail::reflen_options(cfg));
  if (ball.capped()) throw ResourceCapError("reflen: node cap reached");
  std::size_t exact = 0;
  for (const auto& res : ball.results) {
    if (res.status == ReflStatus::Exact) ++exact;
    r.csv_rows.push_back(detail::word_key(res.reduced) + "," + std::to_string(res.standard_length) + "," +
                         detail::opt_str(res.upper) + "," + std::to_string(res.lower) + "," + to_string(res.status));
  }
  r.data["elements"] = ball.results.size();
  r.data["exact"] = exact;
  r.data["reflections"] = ball.reflections.size();
  r.summary = std::to_string(ball.results.size()) + " elements, " + std::to_string(exact) + " Exact";
  r.data["summary"] = r.summary;
  return r;
}

inline Report growth_report(const RunConfig& cfg) {
  const auto cm = read_matrix(cfg.matrix);
  if (cfg.word.empty()) throw std::invalid_argument("growth: --word is required");
  const TitsRepresentation rep(cm);
  ReflLenProtocol proto;
  proto.d_cap = cfg.D;
  proto.options = detail::reflen_options(cfg);
  if (!cfg.pattern.empty()) {
    if (!is_free_coxeter(cm)) throw DomainError("growth: --pattern needs a free Coxeter group (all labels inf)");
    auto cert = build_certificate(parse_free_word(cfg.pattern, cm.rank()), cfg.window, {cfg.threads});
    proto.options.certificates.push_back(as_reflength_certificate(cert));
  }
  const auto rec = growth_profile(rep, parse_word(cfg.word, cm.rank()), cfg.K, proto);
  Report r = detail::base_report(cfg);
  r.csv_header = "k,upper,lower,status";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [k, res] : rec.powers) {
    r.csv_rows.push_back(std::to_string(k) + "," + detail::opt_str(res.upper) + "," + std::to_string(res.lower) + "," +
                         to_string(res.status));
    rows.push_back({{"k", k}, {"upper", detail::opt_str(res.upper)}, {"lower", res.lower},
                    {"status", to_string(res.status)}, {"lower_source", res.lower_source}});
  }
  r.data["powers"] = rows;
  r.data["lower_envelope"] = rec.lower_envelope();
  r.summary = "growth of " + cfg.word + " for k = 1.." + std::to_string(cfg.K);
  r.data["summary"] = r.summary;
  return r;
}

inline Report affine_bound_report(const RunConfig& cfg) {
  const auto cm = read_matrix(cfg.matrix);
  const auto a = affine_bound_experiment(TitsRepresentation(cm), cfg.L, cfg.D, detail::reflen_options(cfg));
  Report r = detail::base_report(cfg);
  r.data["n"] = a.n;
  r.data["two_n"] = a.two_n;
  r.data["max_exact"] = a.max_exact;
  r.data["attained"] = a.attained;
  r.data["elements"] = a.elements;
  r.data["exact"] = a.exact;
  nlohmann::json mx = nlohmann::json::array();
  for (const auto& w : a.maximizers) mx.push_back(detail::word_key(w));
  r.data["maximizers"] = mx;
  r.summary = "max reflection length " + std::to_string(a.max_exact) + (a.attained ? " = " : " < ") + "2n" +
              (a.attained ? ", attained" : ", not attained");
  r.data["summary"] = r.summary;
  return r;
}

inline Report qm_certify_report(const RunConfig& cfg) {
  if (cfg.pattern.empty()) throw std::invalid_argument("qm-certify: --pattern is required");
  const auto w = parse_free_word(cfg.pattern, cfg.k);
  const auto cert = build_certificate(w, cfg.window, {cfg.threads});
  Report r = detail::base_report(cfg);
  r.data["pattern"] = to_string(cert.pattern);
  r.data["raw_defect"] = cert.raw_defect;
  r.data["defect_phi"] = cert.defect_phi.str();
  r.data["generator_max"] = cert.generator_max.str();
  r.data["constant"] = cert.constant.str();
  r.data["window"] = cert.window;
  r.data["per_window"] = cert.defect.per_window;
  r.data["stabilized"] = cert.stabilized;
  r.data["certified"] = cert.certified;
  r.data["attaining_pair"] = {to_string(cert.defect.g), to_string(cert.defect.h)};
  r.csv_header = "k,lower";
  if (!cfg.g.empty()) {
    const auto g = parse_free_word(cfg.g, cfg.k);
    const auto b = certify_lower_bound(cert, g, cfg.K);
    r.data["g"] = to_string(g);
    r.data["phi"] = b.phi.str();
    r.data["vacuous"] = b.vacuous;
    nlohmann::json bounds = nlohmann::json::array();
    for (const auto& [k, lb] : b.bounds) {
      bounds.push_back({{"k", k}, {"lower", lb}});
      r.csv_rows.push_back(std::to_string(k) + "," + std::to_string(lb));
    }
    r.data["bounds"] = bounds;
  }
  r.summary = "C = " + cert.constant.str() + ", D_phi = " + cert.defect_phi.str() +
              (cert.certified ? ", certified" : ", not certified");
  r.data["summary"] = r.summary;
  return r;
}

namespace detail {

inline void warp_rows(Report& r, const WarpProfile& w) {
  r.csv_header = "r,f,fp,fpp";
  for (const auto& s : w.grid)
    r.csv_rows.push_back(format15(s.r) + "," + format15(s.f) + "," + format15(s.fp) + "," + format15(s.fpp));
}

inline nlohmann::json warp_json(const WarpProfile& w) {
  return {{"L", format15(w.L)},         {"r_T", format15(w.r_T)},      {"r_a", format15(w.r_a)},
          {"r_b", format15(w.r_b)},     {"bridge", to_string(w.kind)}, {"grid", w.grid.size()},
          {"min_second_difference", format15(w.min_fpp_fd)}, {"max_f", format15(w.max_abs_f)}};
}

}  // namespace detail

inline Report filling_report(const RunConfig& cfg) {
  const auto model = build_triangle_model(cfg.p, cfg.q);
  const auto cusps = model_cusps(model, parse_rational(cfg.h));
  const auto cert = congruence_search(model, cusps, cfg.prime_cap);
  Report r = detail::base_report(cfg);
  r.data["prime"] = cert.prime;
  nlohmann::json rejected = nlohmann::json::array();
  for (const auto& [p, why] : cert.rejected) rejected.push_back({{"prime", p}, {"reason", why}});
  r.data["rejected"] = rejected;
  nlohmann::json par = nlohmann::json::array();
  for (const auto& pc : cert.parabolics)
    par.push_back({{"generators", detail::subset_json(pc.generators)}, {"order", pc.order}, {"injective", pc.injective}});
  r.data["parabolics"] = par;
  nlohmann::json cj = nlohmann::json::array();
  Rational shortest;
  for (std::size_t i = 0; i < cusps.size(); ++i) {
    const auto m = two_pi_certificate(model, cert, static_cast<int>(i));
    if (i == 0 || m.displacement < shortest) shortest = m.displacement;
    const auto& c = cusps[i];
    cj.push_back({{"opposite", c.s + 1},
                  {"vertex", c.vertex ? c.vertex->str() : "inf"},
                  {"tau", {c.left.str(), c.right.str()}},
                  {"width", c.width.str()},
                  {"As_size", cert.As[i].size()},
                  {"translation_order", m.translation_order},
                  {"kernel_displacement", m.displacement.str()},
                  {"shortest_kernel_word", detail::word_key(m.shortest.word)},
                  {"margin", detail::interval_json(m.margin)}});
  }
  r.data["cusps"] = cj;
  // Cross-section length entering the warp profile: the shortest kernel displacement.
  WarpOptions wo;
  wo.grid = cfg.grid;
  const double L = shortest.to_double();
  const auto w = warp_profile(L, WarpProfileCache::midpoint_r_T(L), wo);
  r.data["warp"] = detail::warp_json(w);
  detail::warp_rows(r, w);
  r.summary = "prime " + std::to_string(cert.prime) + ", shortest kernel displacement " + shortest.str();
  r.data["summary"] = r.summary;
  return r;
}

inline Report warp_report(const RunConfig& cfg) {
  WarpOptions wo;
  wo.grid = cfg.grid;
  const double r_T = cfg.r_T ? *cfg.r_T : WarpProfileCache::midpoint_r_T(cfg.warp_L);
  const auto w = warp_profile(cfg.warp_L, r_T, wo);
  Report r = detail::base_report(cfg);
  r.data["warp"] = detail::warp_json(w);
  detail::warp_rows(r, w);
  r.summary = "warp profile L=" + format15(w.L) + " r_T=" + format15(w.r_T) + " bridge=" + to_string(w.kind);
  r.data["summary"] = r.summary;
  return r;
}

inline std::string default_format(const std::string& command) {
  return command == "reflen" || command == "growth" || command == "warp" ? "csv" : "json";
}

inline Report dispatch(const RunConfig& cfg) {
  const auto& c = cfg.command;
  if (c == "classify") return classify_report(cfg);
  if (c == "subgroups") return subgroups_report(cfg);
  if (c == "reflen") return reflen_report(cfg);
  if (c == "growth") return growth_report(cfg);
  if (c == "affine-bound") return affine_bound_report(cfg);
  if (c == "qm-certify") return qm_certify_report(cfg);
  if (c == "filling") return filling_report(cfg);
  if (c == "warp") return warp_report(cfg);
  throw std::invalid_argument("unknown command '" + c + "'");
}

}  // namespace coxref
