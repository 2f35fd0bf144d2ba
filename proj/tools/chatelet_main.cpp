// chatelet: exact local-global analysis of Chatelet surfaces.
//
// Subcommands: hilbert, analyze, construct, split-primes, fibration-check,
// verify-paper. Exit codes: 0 success, 2 input error, 3 unsupported request,
// 4 partial result, 5 internal cap exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "chatelet/construct.hpp"
#include "chatelet/fibration.hpp"
#include "chatelet/manifest.hpp"
#include "chatelet/report.hpp"
#include "chatelet/surface.hpp"

namespace {

using namespace chatelet;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitPartial = 4;
constexpr int kExitCap = 5;

QPlace parse_place(const std::string& s) {
  if (s == "inf" || s == "oo" || s == "real") return QPlace::inf();
  for (char ch : s)
    if (!isdigit(static_cast<unsigned char>(ch))) throw invalid_input("not a place: " + s);
  Int p(s.c_str());
  if (p < 2 || !is_probable_prime(p))
    throw unsupported_place("not a prime, so not a finite place: " + s);
  return QPlace::prime(p);
}

ordered_json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open " + path);
  return ordered_json::parse(in);
}

long ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

// "-a=-15" arrives from the parser as "=-15"; accept both spellings
std::string strip_eq(std::string s) {
  if (!s.empty() && s[0] == '=') s.erase(0, 1);
  return s;
}

int cmd_hilbert(const std::string& a_s, const std::string& b_s, const std::string& p_s) {
  Rat a = parse_rat(strip_eq(a_s)), b = parse_rat(strip_eq(b_s));
  QPlace v = parse_place(strip_eq(p_s));
  if (a == 0 || b == 0) throw invalid_input("arguments must be nonzero");
  int s = hilbert_symbol(a, b, v);
  std::cout << (s > 0 ? "+1" : "-1") << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& surface_path, const std::string& extension_path,
                const std::string& out_path, bool text) {
  auto t0 = std::chrono::steady_clock::now();
  ChateletSurface V = surface_from_json(load_json(surface_path));
  ordered_json rep;
  bool partial = false;
  if (extension_path.empty()) {
    Verdict verdict = global_analysis(V);
    partial = verdict.partial;
    rep = report_of_verdict(V, verdict, ms_since(t0));
  } else {
    NumberFieldPtr L = field_from_json(load_json(extension_path));
    ExtensionAnalysis ext = analyze_over_extension(V, L);
    rep = report_of_extension(V, L, ext, ms_since(t0));
  }
  std::string dumped = rep.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << dumped;
  }
  if (text) {
    std::cout << "equation: " << V.equation() << "\n";
    for (const auto& row : rep["places"]) {
      std::cout << "  " << row["place"].get<std::string>() << ": "
                << (row["solvable"].get<bool>() ? "solvable" : "no local point");
      if (!row["invariants"].is_null()) {
        std::cout << "  inv {";
        bool first = true;
        for (const auto& i : row["invariants"]) {
          std::cout << (first ? "" : ", ") << i.get<std::string>();
          first = false;
        }
        std::cout << "}";
      }
      std::cout << "\n";
    }
    if (rep.contains("verdict"))
      std::cout << "verdict: " << rep["verdict"].get<std::string>() << "\n";
    for (const auto& n : rep["notes"]) std::cout << "note: " << n.get<std::string>() << "\n";
  } else {
    std::cout << dumped;
  }
  return partial ? kExitPartial : kExitOk;
}

int cmd_construct(const std::string& recipe_s, const std::string& field_s,
                  const std::vector<std::string>& places, const std::string& out_prefix) {
  Recipe recipe;
  if (recipe_s == "insolvable")
    recipe = Recipe::InsolvableOnS;
  else if (recipe_s == "two-valued")
    recipe = Recipe::TwoValuedOnS;
  else if (recipe_s == "forced-half")
    recipe = Recipe::ForcedHalfOnS;
  else
    throw invalid_input("recipe must be insolvable | two-valued | forced-half");
  NumberFieldPtr L = field_from_json(ordered_json::parse(field_s));
  std::vector<QPlace> S;
  for (const auto& s : places) S.push_back(parse_place(s));
  Construction cons = construct(recipe, L, S);
  ordered_json sj = surface_to_json(cons.surface);
  ordered_json tj = trace_to_json(cons.trace);
  if (!out_prefix.empty()) {
    std::ofstream(out_prefix + ".surface.json") << sj.dump(2) << "\n";
    std::ofstream(out_prefix + ".trace.json") << tj.dump(2) << "\n";
  }
  ordered_json both;
  both["surface"] = sj;
  both["trace"] = tj;
  std::cout << both.dump(2) << "\n";
  return kExitOk;
}

int cmd_split_primes(const std::string& field_s, int count, long lower) {
  NumberFieldPtr L = field_from_json(ordered_json::parse(field_s));
  auto ps = find_split_primes(L, count, Int(lower));
  for (size_t i = 0; i < ps.size(); ++i)
    std::cout << (i ? " " : "") << ps[i].get_str();
  std::cout << "\n";
  return kExitOk;
}

BundleSpec bundle_from_json(const ordered_json& j) {
  auto poly = [](const ordered_json& a) {
    std::vector<Rat> c;
    for (const auto& e : a)
      c.push_back(e.is_string() ? parse_rat(e.get<std::string>())
                                : Rat(static_cast<long>(e.get<long long>())));
    return RatPoly(std::move(c));
  };
  BundleSpec s;
  s.Pinf = poly(j.at("P_inf"));
  s.P0 = poly(j.at("P_0"));
  s.w_inf = poly(j.at("w_inf"));
  s.w_0 = poly(j.at("w_0"));
  s.gamma_branch = poly(j.at("gamma_branch"));
  if (j.contains("gamma_branch_at_infinity"))
    s.gamma_branch_at_infinity = j.at("gamma_branch_at_infinity").get<bool>();
  s.curve_field = NumberField::rationals();
  return s;
}

int cmd_fibration_check(const std::string& path) {
  BundleSpec s = bundle_from_json(load_json(path));
  s.validate();
  BranchLocus R = branch_locus_u(s);
  ordered_json j;
  j["schema"] = kReportSchema;
  j["resultant_nonzero"] = resultant(s.Pinf, s.P0) != 0;
  j["branch_locus_u"] = R.poly.to_string("u");
  j["degenerate"] = R.degenerate;
  j["branch_at_infinity"] = R.at_infinity;
  j["branch_disjoint"] = branch_disjoint(s);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify_paper(const std::string& id) {
  auto entries = select_entries(id);
  if (entries.empty()) {
    std::cerr << "no manifest entry matches '" << id << "'\n";
    return kExitInput;
  }
  bool all_pass = true;
  for (const auto* e : entries) {
    std::cout << e->id << "  [" << e->ref << "]  " << e->description << "\n";
    for (const auto& c : e->run()) {
      std::cout << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
      if (!c.pass && !c.detail.empty()) std::cout << "  (" << c.detail << ")";
      std::cout << "\n";
      all_pass = all_pass && c.pass;
    }
  }
  return all_pass ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact local-global analysis of Chatelet surfaces y^2 - a z^2 = P(x)"};
  app.require_subcommand(1);

  std::string a_s, b_s, p_s = "inf";
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert symbol (a,b)_v");
  hilbert->add_option("-a", a_s, "first argument (rational, e.g. -15 or 3/7)")->required();
  hilbert->add_option("-b", b_s, "second argument")->required();
  hilbert->add_option("-p", p_s, "place: a prime or 'inf'");

  std::string surface_path, extension_path, out_path;
  bool text = false;
  auto* analyze = app.add_subcommand("analyze", "analyze a surface file");
  analyze->add_option("surface", surface_path, "surface JSON file")->required();
  analyze->add_option("--extension", extension_path, "number field JSON file");
  analyze->add_option("-o,--out", out_path, "write the JSON report here");
  analyze->add_flag("--text", text, "human-readable summary instead of JSON");

  std::string recipe_s, field_s = "null", out_prefix;
  std::vector<std::string> places;
  auto* cons = app.add_subcommand("construct", "run a construction recipe");
  cons->add_option("recipe", recipe_s, "insolvable | two-valued | forced-half")->required();
  cons->add_option("--field", field_s,
                   "defining polynomial of L as a JSON integer list, e.g. [-3,0,1]");
  cons->add_option("--place", places, "places of S (primes or 'inf'), repeatable");
  cons->add_option("-o,--out", out_prefix, "write <prefix>.surface.json and <prefix>.trace.json");

  std::string sp_field = "null";
  int sp_count = 4;
  long sp_lower = 2;
  auto* sp = app.add_subcommand("split-primes", "smallest completely split primes");
  sp->add_option("--field", sp_field, "defining polynomial as JSON list")->required();
  sp->add_option("--count", sp_count, "how many");
  sp->add_option("--lower", sp_lower, "strict lower bound");

  std::string fib_path;
  auto* fib = app.add_subcommand("fibration-check", "branch locus checks for a pencil");
  fib->add_option("spec", fib_path, "bundle spec JSON file")->required();

  std::string verify_id = "all";
  auto* ver = app.add_subcommand("verify-paper", "run the bundled example manifest");
  ver->add_option("id", verify_id, "manifest id, suffix, or 'all'");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*hilbert) return cmd_hilbert(a_s, b_s, p_s);
    if (*analyze) return cmd_analyze(surface_path, extension_path, out_path, text);
    if (*cons) return cmd_construct(recipe_s, field_s, places, out_prefix);
    if (*sp) return cmd_split_primes(sp_field, sp_count, sp_lower);
    if (*fib) return cmd_fibration_check(fib_path);
    if (*ver) return cmd_verify_paper(verify_id);
  } catch (const invalid_input& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const unsupported_place& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const missing_factorization& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const precision_cap_exceeded& e) {
    std::cerr << "internal cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const search_exhausted& e) {
    std::cerr << "internal cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const unsatisfiable& e) {
    std::cerr << "unsatisfiable: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
