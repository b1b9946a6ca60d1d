// zsurf: catalog listing, fibre analysis, Frobenius polynomials, Picard
// certificates, congruent pairs and table verification, as JSON reports.

#include <zsurf/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace zsurf;
using nlohmann::json;

namespace {

constexpr int kReportSchemaVersion = 1;

struct Flags {
  std::string surface;
  std::vector<unsigned> primes;
  int r_max = 6;
  unsigned workers = 1;
  std::string cache_dir;
  std::uint64_t seed = 2024;
  std::uint64_t bsgs_above = kSurfaceBsgsThreshold;
  double time_budget = 0;
  std::string scope = "default";
  std::string json_out;
  std::string case2n = "6,5";
  std::string t0;
  int count = 1;
};

json model_json(const WModel<QRatFunc>& W) {
  return json{{"a1", W.a1.str("T")}, {"a2", W.a2.str("T")}, {"a3", W.a3.str("T")}, {"a4", W.a4.str("T")}, {"a6", W.a6.str("T")}};
}

json curve_json(const WModel<Rat>& W) { return json::array({to_string(W.a1), to_string(W.a2), to_string(W.a3), to_string(W.a4), to_string(W.a6)}); }

json entry_json(const SurfaceEntry& E) {
  return json{{"id", E.id()},
              {"kind", E.kind == SurfaceKind::K3 ? "K3" : "properly-elliptic"},
              {"weierstrass", model_json(E.model_ratfunc())},
              {"fibers", E.fibers},
              {"torsion", E.torsion},
              {"rank_q", E.rank_q},
              {"rank_qbar", E.rank_qbar},
              {"rho", E.rho},
              {"moduli_route", E.moduli_route}};
}

template <class K>
json fibers_json(const SurfaceAnalysis<K>& S) {
  json a = json::array();
  for (auto& F : S.fibers)
    a.push_back({{"place", F.place.str()}, {"degree", F.degree()}, {"symbol", F.symbol.str()}, {"m_t", F.m_t}, {"c_t", F.c_t}, {"e_t", F.e_t}});
  return a;
}

json form_json(const BinaryForm& f) { return json{{"a", to_string(f.a)}, {"b", to_string(f.b)}, {"c", to_string(f.c)}, {"text", f.str()}}; }

json prime_json(const SurfaceEntry& E, const PrimeRecord& r) {
  json counts = json::object(), methods = json::object();
  for (auto& [k, n] : r.counts.n) counts[std::to_string(k)] = n.get_str();
  for (auto& [k, m] : r.counts.method) methods[std::to_string(k)] = m;
  json cyc = json::array();
  for (auto& [d, e] : r.frob.split.factors) cyc.push_back({{"d", d}, {"multiplicity", e}});
  json j{{"p", r.p},
         {"f", r.frob.f.str("x")},
         {"sign", r.frob.sign},
         {"cyclotomic_part", r.frob.split.g.str("x")},
         {"cyclotomic_factors", cyc},
         {"remaining_factor", r.frob.split.h.str("x")},
         {"rho_p", r.rho_p},
         {"trivial_rank", r.trivial_rank},
         {"sections_plus", r.sections_plus},
         {"sections_minus", r.sections_minus},
         {"mw_bound", r.mw_bound},
         {"same_fibres", r.same_fibres},
         {"delta_kl", r.delta_kl.factored()},
         {"delta_bsd", r.delta_bsd ? json(r.delta_bsd->factored()) : json(nullptr)},
         {"generators", r.generators},
         {"counts", counts},
         {"count_methods", methods}};
  if (r.pencil_form) {
    j["pencil_form"] = form_json(*r.pencil_form);
    j["pencil_y_elided"] = r.pencil_y_elided;
  }
  if (auto* fr = E.frob_at(r.p)) j["matches_table"] = r.frob.f == parse_qpoly(fr->f, 'x');
  return j;
}

json certificate_json(const SurfaceEntry& E, const PicardCertificate& c) {
  json steps = json::array(), primes = json::array();
  for (auto& s : c.steps) steps.push_back({{"method", s.method}, {"bound", s.bound}, {"detail", s.detail}});
  for (auto& r : c.primes) primes.push_back(prime_json(E, r));
  json j{{"surface", c.surface},  {"hodge_bound", c.hodge_bound}, {"trivial_rank", c.trivial_rank}, {"mw_rank_lower", c.mw_rank_lower},
         {"lower_bound", c.lower_bound}, {"steps", steps},           {"primes", primes},                 {"closed", c.closed()},
         {"rho", c.closed() ? json(c.rho) : json(nullptr)}};
  if (c.refinement) j["refinement"] = {{"bound", c.refinement->bound}, {"witness", c.refinement->witness.str()}};
  return j;
}

json pair_json(const CongruencePair& cp) {
  return json{{"E1", curve_json(cp.E1)},
              {"E2", curve_json(cp.E2)},
              {"N", cp.N},
              {"eps_class", eps_class(cp.N, cp.eps)},
              {"checked_primes", cp.evidence.checked},
              {"bound", cp.evidence.bound},
              {"traces_congruent", cp.evidence.ok},
              {"disc_ratio_class", square_class(cp.disc_ratio).factored()},
              {"disc_ratio_square", cp.disc_ratio_square},
              {"j1", to_string(cp.j1)},
              {"j2", to_string(cp.j2)}};
}

FrobeniusOptions frob_options(const Flags& f) {
  FrobeniusOptions o;
  o.r_max = f.r_max;
  o.workers = std::max(1u, f.workers);
  o.cache_dir = f.cache_dir;
  o.bsgs_above = f.bsgs_above;
  o.time_budget = f.time_budget;
  o.log = [](const std::string& s) { std::cerr << s << "\n"; };
  return o;
}

int emit(const Flags& f, json report, int code) {
  report["schema_version"] = kReportSchemaVersion;
  std::string text = report.dump(2) + "\n";
  if (f.json_out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(f.json_out);
    if (!out) {
      std::cerr << "cannot write " << f.json_out << "\n";
      return 2;
    }
    out << text;
  }
  return code;
}

int cmd_catalog(const Flags& f) {
  json a = json::array();
  for (auto& E : catalog()) a.push_back(entry_json(E));
  return emit(f, json{{"command", "catalog"}, {"surfaces", a}}, 0);
}

int cmd_analyze(const Flags& f) {
  const SurfaceEntry& E = find_surface(f.surface);
  auto S = analyze_fibers(E.model());
  TorsionInfo T = torsion_order(S.model);
  int rq = rank_lower_bound(E, false), rqbar = rank_lower_bound(E, true);
  json diff = json::object();
  if (fiber_multiset(S) != E.fibers) diff["fibers"] = {{"computed", fiber_multiset(S)}, {"table", E.fibers}};
  if (T.order != E.torsion) diff["torsion"] = {{"computed", T.order}, {"table", E.torsion}};
  if (rq != E.rank_q) diff["rank_q"] = {{"computed", rq}, {"table", E.rank_q}};
  if (rqbar != E.rank_qbar) diff["rank_qbar"] = {{"computed", rqbar}, {"table", E.rank_qbar}};
  json j{{"command", "analyze"},
         {"surface", entry_json(E)},
         {"m", S.m},
         {"euler_total", S.euler_total},
         {"trivial_rank", S.trivial_rank},
         {"fibers", fibers_json(S)},
         {"fiber_multiset", fiber_multiset(S)},
         {"torsion", {{"lower", T.lower}, {"upper", T.upper}, {"order", T.order}}},
         {"rank_lower_bound_q", rq},
         {"rank_lower_bound_qbar", rqbar},
         {"matches_table", diff.empty()},
         {"diff", diff}};
  return emit(f, j, diff.empty() ? 0 : 1);
}

std::vector<unsigned> primes_for(const SurfaceEntry& E, const Flags& f) {
  if (!f.primes.empty()) return f.primes;
  std::vector<unsigned> ps;
  for (auto& fr : E.frob)
    if (!fr.large_scope || f.scope == "table5-large" || f.scope == "all") ps.push_back(fr.p);
  return ps;
}

int cmd_frobenius(const Flags& f) {
  const SurfaceEntry& E = find_surface(f.surface);
  auto ps = primes_for(E, f);
  if (ps.empty()) throw AlgebraError("no primes: pass -p or --scope table5-large");
  for (unsigned p : ps)
    if (p < 5 || !good_prime_test(E.model(), p)) throw AlgebraError(E.id() + ": p = " + std::to_string(p) + " is not a prime of good reduction");
  json a = json::array();
  int code = 0;
  for (unsigned p : ps) {
    try {
      PrimeRecord r = frobenius_at(E, p, frob_options(f));
      a.push_back(prime_json(E, r));
      if (a.back().contains("matches_table") && !a.back()["matches_table"].get<bool>()) code = 1;
    } catch (const BudgetExceeded& e) {
      a.push_back({{"p", p}, {"error", e.what()}, {"counted_up_to", e.counted_up_to}, {"partial", true}});
      code = 3;
    }
  }
  return emit(f, json{{"command", "frobenius"}, {"surface", E.id()}, {"primes", a}}, code);
}

int cmd_picard(const Flags& f) {
  const SurfaceEntry& E = find_surface(f.surface);
  PicardOptions o;
  o.frob = frob_options(f);
  o.large_scope = f.scope != "table5-small";
  PicardCertificate c = certify_picard(E, o);
  int code = c.closed() ? 0 : 1;
  json j = certificate_json(E, c);
  j["command"] = "picard";
  if (!c.closed()) j["failing_bound"] = {{"upper", c.steps.back().bound}, {"lower", c.lower_bound}};
  return emit(f, j, code);
}

int cmd_pair(const Flags& f) {
  auto comma = f.case2n.find(',');
  if (comma == std::string::npos) throw AlgebraError("--case must look like 6,5");
  int N2 = std::stoi(f.case2n.substr(0, comma)), eps = std::stoi(f.case2n.substr(comma + 1));
  json pairs = json::array();
  if (!f.t0.empty()) {
    Rat T0(f.t0);
    T0.canonicalize();
    TangentFibre F = tangent_fibration(N2, eps, T0);
    for (auto& P : fibre_points(F, 80, 16)) {
      auto cp = end_to_end_pair(F, P, 500);
      if (!cp || !cp->evidence.ok || !cp->disc_ratio_square || cp->j1 == cp->j2) continue;
      json j = pair_json(*cp);
      j["T0"] = to_string(T0);
      j["point"] = {to_string(P.u), to_string(P.v), to_string(P.w), to_string(P.y)};
      pairs.push_back(j);
      if (static_cast<int>(pairs.size()) >= f.count) break;
    }
  } else {
    for (auto& fp : find_congruent_pairs(N2, eps, static_cast<std::size_t>(f.count))) {
      json j = pair_json(fp.pair);
      j["T0"] = to_string(fp.T0);
      j["point"] = {to_string(fp.point.u), to_string(fp.point.v), to_string(fp.point.w), to_string(fp.point.y)};
      pairs.push_back(j);
    }
  }
  int code = pairs.empty() ? 1 : 0;
  json j{{"command", "pair"}, {"case", f.case2n}, {"pairs", pairs}};
  if (pairs.empty()) j["error"] = "no nondegenerate rational point with a rational sheet found on this fibre";
  return emit(f, j, code);
}

int cmd_verify(const Flags& f) {
  verify::config().workers = std::max(1u, f.workers);
  verify::config().seed = f.seed;
  verify::config().cache_dir = f.cache_dir;
  std::string scope = f.scope == "default" ? "tables-12" : f.scope;
  auto ids = verify::scope_criteria(scope);
  json a = json::array();
  bool ok = true;
  for (auto& c : verify::criteria()) {
    if (std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    auto r = verify::run(c);
    std::cerr << verify::line(r) << "\n";
    ok = ok && r.pass;
    a.push_back({{"criterion", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  return emit(f, json{{"command", "verify-tables"}, {"scope", scope}, {"results", a}, {"pass", ok}}, ok ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic surfaces parametrising congruent elliptic curves"};
  app.require_subcommand(1);
  Flags f;
  auto common = [&](CLI::App* s) {
    s->add_option("--workers", f.workers, "counting threads")->check(CLI::PositiveNumber);
    s->add_option("--cache-dir", f.cache_dir, "point-count cache directory");
    s->add_option("--seed", f.seed, "seed for randomised checks");
    s->add_option("--json-out", f.json_out, "write the report here instead of stdout");
  };
  auto* c_cat = app.add_subcommand("catalog", "list the surfaces");
  common(c_cat);
  auto* c_an = app.add_subcommand("analyze", "fibres, torsion and rank bounds against the catalog");
  c_an->add_option("surface", f.surface, "surface id, e.g. 6,5")->required();
  common(c_an);
  auto* c_fr = app.add_subcommand("frobenius", "characteristic polynomial of Frobenius on H^2");
  c_fr->add_option("surface", f.surface)->required();
  c_fr->add_option("-p", f.primes, "primes (default: the tabulated ones in scope)");
  c_fr->add_option("--r-max", f.r_max, "largest extension degree to count over")->check(CLI::Range(1, 12));
  c_fr->add_option("--bsgs-above", f.bsgs_above, "use BSGS on fibres over fields larger than this");
  c_fr->add_option("--time-budget", f.time_budget, "seconds; stop between counts when spent");
  c_fr->add_option("--scope", f.scope, "default | table5-large | all");
  common(c_fr);
  auto* c_pi = app.add_subcommand("picard", "certify the geometric Picard number");
  c_pi->add_option("surface", f.surface)->required();
  c_pi->add_option("--r-max", f.r_max)->check(CLI::Range(1, 12));
  c_pi->add_option("--bsgs-above", f.bsgs_above);
  c_pi->add_option("--time-budget", f.time_budget);
  c_pi->add_option("--scope", f.scope, "table5-small skips the large primes");
  common(c_pi);
  auto* c_pa = app.add_subcommand("pair", "pairs of curves congruent mod 2N from a tangent-line fibre");
  c_pa->add_option("--case", f.case2n, "6,5 | 10,1 | 10,3");
  c_pa->add_option("--t0", f.t0, "fibre parameter, e.g. 2 or -2/3 (default: search)");
  c_pa->add_option("--count", f.count, "number of pairs")->check(CLI::PositiveNumber);
  common(c_pa);
  auto* c_ve = app.add_subcommand("verify-tables", "rerun acceptance checks");
  c_ve->add_option("--scope", f.scope, "tables-12 | table5-small | table5-large | section4 | section3 | all");
  common(c_ve);

  CLI11_PARSE(app, argc, argv);
  try {
    if (c_cat->parsed()) return cmd_catalog(f);
    if (c_an->parsed()) return cmd_analyze(f);
    if (c_fr->parsed()) return cmd_frobenius(f);
    if (c_pi->parsed()) return cmd_picard(f);
    if (c_pa->parsed()) return cmd_pair(f);
    if (c_ve->parsed()) return cmd_verify(f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
