#pragma once

// Command-line front end. Exit codes: 0 success, 2 input validation error,
// 3 resource budget exceeded.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nslattice/corpus.hpp"
#include "nslattice/cremona.hpp"
#include "nslattice/forms.hpp"
#include "nslattice/isometry.hpp"
#include "nslattice/json_io.hpp"
#include "nslattice/lattice.hpp"
#include "nslattice/spectral.hpp"

namespace nslattice::cli {

using io::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBudget = 3;

struct Report {
  json data;
  std::string text;
};

struct CommonOptions {
  std::string input;
  std::string out;
  std::string format = "text";
};

struct LatticeOptions {
  std::optional<int> k;
  std::optional<long> a;
  std::optional<long> kappa;
  std::optional<int> l;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::optional<json> load_input(const CommonOptions& common) {
  if (common.input.empty()) return std::nullopt;
  return io::parse_document(read_file(common.input), common.input);
}

/// From --input when present (the document itself, or its "lattice" member);
/// command-line flags override individual fields.
inline BlowupLattice resolve_lattice(const std::optional<json>& doc, const LatticeOptions& flags) {
  json j = json::object();
  if (doc) j = doc->contains("lattice") ? (*doc)["lattice"] : *doc;
  if (flags.k) j["k"] = *flags.k;
  if (flags.a) j["a"] = *flags.a;
  if (flags.l) j["l"] = *flags.l;
  if (flags.kappa) j["kappa"] = *flags.kappa;
  if (!j.contains("a") && !doc) j["a"] = 1;
  if (!j.contains("l") && !doc) j["l"] = 0;
  if (!j.contains("kappa") && !doc && j.contains("k") && j["k"].is_number_integer())
    j["kappa"] = -(j["k"].get<long>() + 1);  // P^k
  return io::lattice_from_json(j);
}

inline void add_lattice_flags(CLI::App* app, LatticeOptions& o) {
  app->add_option("--k", o.k, "dimension of the base variety");
  app->add_option("--a", o.a, "degree a = e0^k (default 1)");
  app->add_option("--kappa", o.kappa, "K_V = kappa e0 (default -(k+1))");
  app->add_option("--l", o.l, "number of blown-up points (default 0)");
}

inline void add_common_flags(CLI::App* app, CommonOptions& o) {
  app->add_option("--input", o.input, "JSON input document");
  app->add_option("--out", o.out, "write the report to this file");
  app->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

inline std::string join_classes(const std::vector<NSClass>& cs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < cs.size(); ++i) out << (i ? ", " : "") << io::to_json(cs[i]).dump();
  return out.str();
}

// lattice eval

inline Report lattice_eval(const CommonOptions& common, const LatticeOptions& lflags, std::optional<int> d_flag,
                           const std::string& classes_flag) {
  auto doc = load_input(common);
  BlowupLattice lat = resolve_lattice(doc, lflags);
  json classes_json;
  if (!classes_flag.empty())
    classes_json = io::parse_document(classes_flag, "--classes");
  else if (doc && doc->contains("classes"))
    classes_json = (*doc)["classes"];
  else
    throw ValidationError("lattice eval: no classes given (use --classes or an input field 'classes')");
  io::array(classes_json, "classes");
  std::vector<NSClass> classes;
  for (std::size_t i = 0; i < classes_json.size(); ++i) {
    classes.push_back(io::class_from_json(classes_json[i], io::idx("classes", i)));
    require_class_of(lat, classes.back());
  }
  int d = d_flag ? *d_flag : (doc && doc->contains("d") ? static_cast<int>(io::small_int_from_json((*doc)["d"], "d"))
                                                          : static_cast<int>(classes.size()));
  Integer value = q_d(lat, d, std::span<const NSClass>(classes));
  Report r;
  json cj = json::array();
  for (const auto& c : classes) cj.push_back(io::to_json(c));
  r.data = json{{"lattice", io::to_json(lat)}, {"d", d}, {"classes", cj}, {"value", io::integer_to_json(value)}};
  r.text = "Q_" + std::to_string(d) + "(" + join_classes(classes) + ") = " + value.get_str();
  return r;
}

// lattice wd

inline Report lattice_wd(const CommonOptions& common, const LatticeOptions& lflags, std::optional<int> d_flag,
                         long height) {
  auto doc = load_input(common);
  BlowupLattice lat = resolve_lattice(doc, lflags);
  int d = d_flag ? *d_flag : (doc && doc->contains("d") ? static_cast<int>(io::small_int_from_json((*doc)["d"], "d")) : lat.k);
  SymmetricForm f = w_d_polynomial(lat, d);
  Report r;
  r.data = json{{"lattice", io::to_json(lat)}, {"d", d}, {"form", io::to_json(f)}, {"polynomial", f.to_string()}};
  std::string smooth_text;
  if (f.is_diagonal()) {
    bool smooth = is_smooth_diagonal(f);
    r.data["smooth"] = smooth;
    r.data["method"] = "diagonal";
    smooth_text = smooth ? "true" : "false";
  } else {
    auto search = singular_point_search(f, height);
    r.data["method"] = "singular_point_search";
    r.data["search"] = search.verdict();
    if (search.witness) {
      r.data["smooth"] = false;
      r.data["witness"] = io::to_json(NSClass(*search.witness));
      smooth_text = "false";
    } else {
      r.data["smooth"] = nullptr;
      smooth_text = "undecided";
    }
  }
  bool smooth = r.data["smooth"].is_boolean() && r.data["smooth"].get<bool>();
  r.data["finiteness"] = (d >= 3 && smooth) ? "W_d smooth with d >= 3: Aut(X)* finite" : "theorem inapplicable";
  r.text = f.to_string() + ", smooth: " + smooth_text;
  return r;
}

// isometry enum

inline Report isometry_enum(const CommonOptions& common, const LatticeOptions& lflags, long bound, bool fix_canonical,
                            std::size_t cap, std::optional<long> budget_flag) {
  auto doc = load_input(common);
  BlowupLattice lat = resolve_lattice(doc, lflags);
  EnumerationOptions opt;
  opt.entry_bound = bound;
  opt.fix_canonical = fix_canonical;
  opt.node_budget = budget_flag ? *budget_flag : node_budget_from_env();
  if (opt.node_budget <= 0) throw ValidationError("--node-budget must be positive");
  auto result = enumerate_isometries(lat, opt);

  const NSClass kx = canonical_class(lat);
  json mats = json::array(), orders = json::array();
  std::size_t fixing = 0, finite = 0;
  for (const auto& m : result.matrices) {
    mats.push_back(io::to_json(m));
    auto fo = finite_order_report(m);
    if (fo.finite()) {
      orders.push_back(*fo.order);
      ++finite;
    } else {
      orders.push_back(nullptr);
    }
    if (m * kx == kx) ++fixing;
  }
  ClosureResult closure = group_closure_probe(result.matrices, cap);
  Report r;
  r.data = json{{"lattice", io::to_json(lat)},
                {"bound", bound},
                {"fix_canonical", fix_canonical},
                {"count", result.matrices.size()},
                {"matrices", mats},
                {"orders", orders},
                {"canonical_fixing_count", fixing},
                {"finite_order_count", finite},
                {"nodes", result.nodes},
                {"closure", json{{"closed", closure.closed}, {"size", closure.size}, {"cap", cap}}}};
  std::ostringstream t;
  t << result.matrices.size() << " isometries with entries in [-" << bound << ", " << bound << "]"
    << (fix_canonical ? " fixing K_X" : "") << "; " << fixing << " fix K_X; " << finite
    << " of finite order; generated group " << closure.describe();
  r.text = t.str();
  return r;
}

// cremona analyze

inline json analyze_map(const MonomialMap& f, int iterations) {
  TheoremCheck tc = theorem_1_1_check(f);
  MonomialMap g = inverse(f);
  json identities = json::array();
  for (int l = 1; l <= f.k() - 1; ++l) identities.push_back(json{{"l", l}, {"holds", degree_identity_check(f, l)}});
  DegreeSequence seq = degree_sequence(f, iterations);
  return json{{"k", f.k()},
              {"map", io::to_json(f)},
              {"inverse", io::to_json(g)},
              {"deg", tc.degree},
              {"deg_inv", tc.degree_inverse},
              {"indDim", tc.ind_dim},
              {"indDimInv", tc.ind_dim_inverse},
              {"theorem", tc.verdict()},
              {"conclusion", tc.conclusion()},
              {"consistent", tc.consistent},
              {"degree_identity", identities},
              {"degree_sequence", seq.degrees},
              {"growth_estimate", seq.growth_estimate},
              {"growth_estimate_n", seq.n}};
}

inline std::string analyze_text(const std::string& name, const json& a) {
  std::ostringstream t;
  t << name << ": deg=" << a["deg"] << " deg_inv=" << a["deg_inv"] << " indDim=" << a["indDim"]
    << " indDimInv=" << a["indDimInv"] << " theorem: " << a["theorem"].get<std::string>() << " ("
    << a["conclusion"].get<std::string>() << ") degrees=" << a["degree_sequence"].dump();
  return t.str();
}

inline Report cremona_analyze(const CommonOptions& common, const std::string& name, int iterations) {
  const Corpus& corpus = Corpus::builtin();
  Report r;
  if (name == "all") {
    r.data = json::object();
    std::ostringstream t;
    for (const auto& [n, f] : corpus.maps()) {
      r.data[n] = analyze_map(f, iterations);
      t << analyze_text(n, r.data[n]) << "\n";
    }
    r.text = t.str();
    if (!r.text.empty()) r.text.pop_back();
    return r;
  }
  auto doc = load_input(common);
  if (!name.empty() && doc) throw ValidationError("cremona analyze: give either --map or --input, not both");
  MonomialMap f = doc ? io::map_from_json(doc->contains("map") ? (*doc)["map"] : *doc)
                      : (name.empty() ? throw ValidationError("cremona analyze: --map or --input required")
                                      : corpus.map(name));
  r.data = analyze_map(f, iterations);
  if (!name.empty()) r.data["name"] = name;
  r.text = analyze_text(name.empty() ? f.to_string() : name, r.data);
  return r;
}

// spectral radius

inline Rational parse_rational(const std::string& s, const std::string& what) {
  try {
    if (s.find_first_of("eE.") != std::string::npos) {
      // decimal or scientific: exact value of the decimal expansion
      std::string mant = s, exp_part;
      if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mant = s.substr(0, e);
        exp_part = s.substr(e + 1);
      }
      long exp10 = exp_part.empty() ? 0 : std::stol(exp_part);
      std::string digits;
      bool neg = false;
      for (char ch : mant) {
        if (ch == '-') {
          neg = true;
        } else if (ch == '.') {
          continue;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
          digits += ch;
        } else {
          throw ValidationError(what + ": not a number");
        }
      }
      if (auto dot = mant.find('.'); dot != std::string::npos) exp10 -= static_cast<long>(mant.size() - dot - 1);
      if (digits.empty()) throw ValidationError(what + ": not a number");
      Rational q(Integer(digits), 1);
      if (exp10 >= 0)
        q *= Rational(ipow(10, static_cast<unsigned long>(exp10)));
      else
        q /= Rational(ipow(10, static_cast<unsigned long>(-exp10)));
      q.canonicalize();
      return neg ? Rational(-q) : q;
    }
    Rational q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ValidationError(what + ": not a rational number '" + s + "'");
  }
}

inline std::string decimal(const Rational& q, int digits = 12) {
  std::ostringstream out;
  out.precision(digits);
  out << q.get_d();
  return out.str();
}

inline Report spectral_radius_report(const CommonOptions& common, const std::string& name, const std::string& tol_s) {
  auto doc = load_input(common);
  if (!name.empty() && doc) throw ValidationError("spectral radius: give either --matrix or --input, not both");
  IntegerMatrix m;
  if (doc) {
    m = io::matrix_from_json(doc->is_object() && doc->contains("matrix") ? (*doc)["matrix"] : *doc);
  } else if (!name.empty()) {
    m = Corpus::builtin().matrix(name).matrix;
  } else {
    throw ValidationError("spectral radius: --matrix or --input required");
  }
  Rational tol = parse_rational(tol_s, "--tol");
  if (tol <= 0) throw ValidationError("--tol must be positive");
  RadiusInterval ri = spectral_radius(m, tol);
  FiniteOrderReport fo = finite_order_report(m);
  auto [e_lo, e_hi] = ri.entropy();
  Report r;
  r.data = json{{"matrix", io::to_json(m)},
                {"char_poly", io::to_json(ri.char_poly)},
                {"char_poly_text", ri.char_poly.to_string()},
                {"radius_lo", io::rational_to_json(ri.lo)},
                {"radius_hi", io::rational_to_json(ri.hi)},
                {"radius_interval", json::array({ri.lo_double(), ri.hi_double()})},
                {"entropy_interval", json::array({e_lo, e_hi})},
                {"finite_order", fo.finite()},
                {"order", fo.order ? json(*fo.order) : json(nullptr)},
                {"tol", io::rational_to_json(tol)}};
  if (!name.empty()) r.data["name"] = name;
  std::ostringstream t;
  t.precision(12);
  t << "char poly " << ri.char_poly.to_string() << "; spectral radius in [" << ri.lo_double() << ", " << ri.hi_double()
    << "]; entropy in [" << e_lo << ", " << e_hi << "]; finite order: " << (fo.finite() ? "yes" : "no");
  if (fo.order) t << " (order " << *fo.order << ")";
  r.text = t.str();
  return r;
}

// corollary check

inline Report corollary_report(const CommonOptions& common, std::optional<int> k_flag, std::optional<int> r_flag) {
  auto doc = load_input(common);
  auto pick = [&](std::optional<int> flag, const char* name) -> int {
    if (flag) return *flag;
    if (doc && doc->contains(name)) return static_cast<int>(io::small_int_from_json((*doc)[name], name));
    throw ValidationError(std::string("corollary check: --") + name + " required");
  };
  CorollaryBound b = corollary_bound_check(pick(k_flag, "k"), pick(r_flag, "r"));
  Report r;
  r.data = json{{"k", b.k},
                {"r", b.r},
                {"holds", b.holds},
                {"threshold", b.threshold},
                {"min_evading_dimension", b.min_evading_dimension}};
  r.text = b.text();
  return r;
}

inline void emit(const Report& r, const CommonOptions& common, std::ostream& out) {
  std::string body = common.format == "json" ? r.data.dump(2) + "\n" : r.text + "\n";
  if (common.out.empty()) {
    out << body;
    return;
  }
  std::ofstream f(common.out, std::ios::binary);
  if (!f) throw ValidationError("cannot write output file '" + common.out + "'");
  f << body;
}

/// Runs one command; args exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nslattice: Neron-Severi lattices, invariant forms, isometries and monomial Cremona maps"};
  app.require_subcommand(1);

  CommonOptions common;
  LatticeOptions lat;
  std::optional<int> d;
  std::string classes;
  long height = 3;
  long bound = 1;
  bool fix_canonical = true;
  std::size_t cap = 10000;
  std::optional<long> node_budget;
  std::string map_name;
  int iterations = 6;
  std::string matrix_name;
  std::string tol = "1/1000000000";
  std::optional<int> ck, cr;
  std::function<Report()> action;

  auto* lattice = app.add_subcommand("lattice", "lattice computations")->require_subcommand(1);
  auto* eval = lattice->add_subcommand("eval", "evaluate Q_d on classes");
  add_common_flags(eval, common);
  add_lattice_flags(eval, lat);
  eval->add_option("--d", d, "form degree (default: number of classes)");
  eval->add_option("--classes", classes, "JSON array of classes, e.g. [[1,0,0],[1,0,0]]");
  eval->callback([&] { action = [&] { return lattice_eval(common, lat, d, classes); }; });

  auto* wd = lattice->add_subcommand("wd", "W_d polynomial and smoothness verdict");
  add_common_flags(wd, common);
  add_lattice_flags(wd, lat);
  wd->add_option("--d", d, "form degree (default k)");
  wd->add_option("--height", height, "height bound for the singular point search on non-diagonal forms");
  wd->callback([&] { action = [&] { return lattice_wd(common, lat, d, height); }; });

  auto* iso = app.add_subcommand("isometry", "lattice isometries")->require_subcommand(1);
  auto* en = iso->add_subcommand("enum", "bounded isometry enumeration with group probe");
  add_common_flags(en, common);
  add_lattice_flags(en, lat);
  en->add_option("--bound", bound, "entry bound");
  en->add_option("--fix-canonical", fix_canonical, "require M K_X = K_X (default true)");
  en->add_option("--cap", cap, "group closure cap");
  en->add_option("--node-budget", node_budget, "search node budget (default NSLATTICE_NODE_BUDGET or 1e7)");
  en->callback([&] { action = [&] { return isometry_enum(common, lat, bound, fix_canonical, cap, node_budget); }; });

  auto* cre = app.add_subcommand("cremona", "monomial Cremona maps")->require_subcommand(1);
  auto* an = cre->add_subcommand("analyze", "degrees, indeterminacy, hypothesis check, degree sequence");
  add_common_flags(an, common);
  an->add_option("--map", map_name, "corpus map name, or 'all'");
  an->add_option("--iterations", iterations, "length of the degree sequence")->check(CLI::Range(1, 64));
  an->callback([&] { action = [&] { return cremona_analyze(common, map_name, iterations); }; });

  auto* spectral = app.add_subcommand("spectral", "spectral computations")->require_subcommand(1);
  auto* rad = spectral->add_subcommand("radius", "char poly, certified spectral radius, entropy interval");
  add_common_flags(rad, common);
  rad->add_option("--matrix", matrix_name, "corpus matrix name");
  rad->add_option("--tol", tol, "interval width (rational or decimal)");
  rad->callback([&] { action = [&] { return spectral_radius_report(common, matrix_name, tol); }; });

  auto* cor = app.add_subcommand("corollary", "blow-up dimension bound")->require_subcommand(1);
  auto* chk = cor->add_subcommand("check", "k > 2r + 2");
  add_common_flags(chk, common);
  chk->add_option("--k", ck, "dimension of the base");
  chk->add_option("--r", cr, "maximal center dimension");
  chk->callback([&] { action = [&] { return corollary_report(common, ck, cr); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (!action) throw ValidationError("no command given");
    emit(action(), common, out);
    return kExitOk;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace nslattice::cli
