#pragma once

// The ten acceptance checks against the published tables, shared by the
// acceptance binary and `zsurf verify-tables`.

#include <zsurf/moduli/congruence.hpp>
#include <zsurf/zeta/picard.hpp>

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace zsurf::verify {

struct Outcome {
  bool pass;
  std::string detail;
};

// runtime budgets in seconds, per criterion

struct Config {
  unsigned workers = 4;
  std::uint64_t seed = 2024;
  std::string cache_dir;
};

inline Config& config() {
  static Config c;
  return c;
}

inline const PrimeRecord& record(const std::string& id, unsigned p) {
  static std::map<std::pair<std::string, unsigned>, PrimeRecord> records;
  auto key = std::make_pair(id, p);
  auto it = records.find(key);
  if (it == records.end()) {
    FrobeniusOptions o;
    o.workers = config().workers;
    o.cache_dir = config().cache_dir;
    it = records.emplace(key, frobenius_at(find_surface(id), p, o)).first;
  }
  return it->second;
}

inline Outcome catalog_fidelity() {
  std::ostringstream bad;
  for (auto& E : catalog()) {
    auto S = analyze_fibers(E.model());
    TorsionInfo T = torsion_order(S.model);
    if (fiber_multiset(S) != E.fibers) bad << " " << E.id() << ":fibres";
    if (S.euler_total != (E.kind == SurfaceKind::K3 ? 24 : 36)) bad << " " << E.id() << ":euler";
    if (T.order != E.torsion) bad << " " << E.id() << ":torsion";
  }
  std::string b = bad.str();
  return {b.empty(), b.empty() ? std::to_string(catalog().size()) + " surfaces" : "mismatch" + b};
}

inline Outcome section_tables() {
  std::ostringstream bad;
  for (auto& E : catalog()) {
    auto S = analyze_fibers(E.model());
    HeightPairing<Rat> H(S);
    auto q = rational_sections(E, S.model);
    auto all = q;
    auto g = geometric_sections(E, S.model);
    all.insert(all.end(), g.begin(), g.end());
    if (sgn(regulator(H, q)) == 0 || static_cast<int>(q.size()) != E.rank_q) bad << " " << E.id() << ":Q";
    if (sgn(regulator(H, all)) == 0 || static_cast<int>(all.size()) != E.rank_qbar) bad << " " << E.id() << ":Qbar";
  }
  std::string b = bad.str();
  return {b.empty(), b.empty() ? "all lifts, nonzero regulators" : "failed" + b};
}

inline Outcome frobenius_rows(const std::vector<std::pair<std::string, unsigned>>& rows) {
  std::ostringstream bad;
  for (auto& [id, p] : rows) {
    const PrimeRecord& r = record(id, p);
    if (r.frob.f != parse_qpoly(find_surface(id).frob_at(p)->f, 'x')) bad << " " << id << "@" << p;
  }
  std::string b = bad.str();
  return {b.empty(), b.empty() ? std::to_string(rows.size()) + " rows exact" : "mismatch" + b};
}

inline Outcome square_classes() {
  // (surface, p, |Delta_p| as printed)
  const std::vector<std::tuple<std::string, unsigned, long>> rows = {
      {"9,1", 5, 51},  {"9,1", 7, 6},       {"12,1", 5, 1},  {"12,1", 11, 7},    {"9,2", 7, 2},       {"9,2", 13, 17},
      {"10,1", 7, 1}, {"10,1", 17, 118}, {"10,3", 31, 10}, {"10,3", 37, 1}, {"11,1", 23, 2002}, {"11,1", 53, 1441}};
  std::ostringstream bad;
  int both = 0;
  for (auto& [id, p, d] : rows) {
    const PrimeRecord& r = record(id, p);
    if (r.delta_kl != square_class(Rat(d))) bad << " " << id << "@" << p << "=" << r.delta_kl.factored();
    if (r.delta_bsd) {
      ++both;
      if (*r.delta_bsd != r.delta_kl) bad << " " << id << "@" << p << ":routes";
    }
  }
  std::string b = bad.str();
  return {b.empty(), b.empty() ? "12 classes exact, both routes agree at " + std::to_string(both) : "mismatch" + b};
}

inline Outcome regulator_forms() {
  std::ostringstream bad, note;
  int n = 0;
  for (auto& E : catalog())
    for (auto& f : E.forms) {
      const PrimeRecord& r = record(E.id(), f.p);
      ++n;
      if (!r.pencil_form) {
        bad << " " << E.id() << "@" << f.p << ":missing";
        continue;
      }
      const BinaryForm& F = *r.pencil_form;
      Rat a = f.scale * f.a, b = f.scale * f.b, c = f.scale * f.c;
      bool b_ok = F.b == b || (r.pencil_y_elided && F.b == -b);
      if (F.a != a || F.c != c || !b_ok) bad << " " << E.id() << "@" << f.p;
      if (F.b != b) note << " " << E.id() << "@" << f.p;
    }
  std::string s = bad.str();
  std::string d = std::to_string(n) + " forms exact";
  if (!note.str().empty()) d += "; b up to the sign of a point with unprinted y at" + note.str();
  return {s.empty() && n == 6, s.empty() ? d : "mismatch" + s};
}

inline Outcome picard() {
  const std::map<std::string, std::string> closing = {{"9,1", "van_luijk"}, {"12,1", "van_luijk"}, {"9,2", "van_luijk"},
                                                      {"10,1", "rank4_form"}, {"10,3", "rank4_form"}, {"11,1", "rank4_form"}};
  PicardOptions o;
  o.frob.workers = config().workers;
  o.frob.cache_dir = config().cache_dir;
  std::ostringstream bad, rhos;
  for (auto& E : catalog()) {
    PicardCertificate c = certify_picard(E, o);
    rhos << " " << E.id() << ":" << c.rho;
    if (!c.closed() || c.rho != E.rho) bad << " " << E.id() << ":rho";
    auto it = closing.find(E.id());
    if (it != closing.end() && c.steps.back().method != it->second) bad << " " << E.id() << ":" << c.steps.back().method;
    if (E.insoluble_at && (!c.refinement || c.refinement->witness != place_prime(E.insoluble_at))) bad << " " << E.id() << ":witness";
  }
  std::string b = bad.str();
  return {b.empty(), b.empty() ? "rho" + rhos.str() : "failed" + b};
}

inline Outcome moduli_chain() {
  std::ostringstream bad, got;
  for (auto [N2, eps] : std::vector<std::pair<int, int>>{{6, 5}, {10, 1}, {10, 3}}) {
    auto found = find_congruent_pairs(N2, eps, 10, 12, 80, 500);
    got << " (" << N2 << "," << eps << "):" << found.size();
    if (found.size() < 10) bad << " (" << N2 << "," << eps << ")";
    for (auto& f : found)
      if (!f.pair.evidence.ok || f.pair.evidence.bound != 500 || !f.pair.disc_ratio_square || f.pair.j1 == f.pair.j2) bad << " bad pair";
  }
  std::string b = bad.str();
  return {b.empty(), (b.empty() ? "pairs" : "short of 10 pairs at") + (b.empty() ? got.str() : b + ";" + got.str())};
}

inline Outcome identities() {
  std::mt19937 rng(static_cast<unsigned>(config().seed));
  std::uniform_int_distribution<int> num(-50, 50), den(1, 9);
  auto rnd = [&] {
    Rat r(num(rng), den(rng));
    r.canonicalize();
    return r;
  };
  int checked = 0;
  std::ostringstream bad;
  for (auto c : {KleinCase::C32, KleinCase::C51, KleinCase::C52})
    for (int i = 0; i < 20;) {
      Rat a = rnd(), b = rnd(), x = rnd();
      if (sgn(Rat(4) * a * a * a + Rat(27) * b * b) == 0) continue;
      ++i;
      try {
        KleinData K = klein_covariants(c, a, b);  // throws unless the syzygy holds
        AuxPolys P = aux_polys(a, b);             // throws unless j^2 = -4h^3 - 27 Delta f^2
        QPoly three = QPoly::constant(Rat(3)), t27 = QPoly::constant(Rat(27));
        if (!(P.fx.pow(3) - t27 * P.f * P.f == P.j - three * P.fx * P.h)) bad << " D32";
        QPoly D = klein_D_dehomogenised(c, P);
        for (int t = -3; t <= 3; ++t)
          if (K.D.eval(std::vector<Rat>{Rat(t), Rat(1)}) != D(Rat(t))) bad << " D" << case_name(c);
        forward_map(c, a, b, x);  // throws unless the model relation holds
        ++checked;
      } catch (const AlgebraError& e) {
        bad << " " << e.what();
      }
    }
  std::string b = bad.str();
  return {b.empty(), b.empty() ? std::to_string(checked) + " random points" : "failed" + b};
}

inline Outcome counting() {
  std::ostringstream bad, note;
  int curves = 0;
  for (auto [p, r] : std::vector<std::pair<unsigned, int>>{{521, 1}, {5, 4}, {7, 3}}) {
    auto k = build_extension(p, r);
    std::mt19937_64 rng(config().seed + p * 100 + static_cast<unsigned>(r));
    for (int i = 0; i < 200;) {
      FqElem a{k.get(), static_cast<std::uint32_t>(rng() % k->q())}, b{k.get(), static_cast<std::uint32_t>(rng() % k->q())};
      auto W = WModel<FqElem>::short_model(a, b);
      if (zsurf::is_zero(W.short_disc())) continue;
      ++i;
      ++curves;
      bool naive = true;
      Int nb = count_points_bsgs(W, 0, static_cast<std::uint64_t>(i) + 1, &naive);
      if (naive || nb != count_points_naive(W)) bad << " q=" << k->q() << "#" << i;
    }
  }
  // n_1, n_2 from the catalog f_p rows via n_r = 1 + p^(2r) + p^r tr(Frob^r)
  auto table_count = [](const std::string& id, unsigned p, int r) {
    QPoly f = parse_qpoly(find_surface(id).frob_at(p)->f, 'x');
    return count_from_trace(p, r, root_power_sums(f, r)[static_cast<std::size_t>(r)]);
  };
  auto k5 = prime_field(5);
  auto SA = analyze_mod_p(find_surface("9,1").model(), *k5), SB = analyze_mod_p(find_surface("12,1").model(), *k5);
  Int a1 = count_surface(SA, 1), a2 = count_surface(SA, 2), b1 = count_surface(SB, 1);
  if (a1 != table_count("9,1", 5, 1) || a2 != table_count("9,1", 5, 2) || b1 != table_count("12,1", 5, 1)) bad << " surface counts";
  note << curves << " curves naive = BSGS; n1(9,1) = " << a1 << ", n2(9,1) = " << a2 << ", n1(12,1) = " << b1
       << " (the catalog f_5 rows give 84, 1050, 80; the quoted 684 and 680 add p^4 instead of p^2)";
  std::string b = bad.str();
  return {b.empty(), b.empty() ? note.str() : "failed" + b};
}

struct Criterion {
  int id;
  std::string name;
  double budget;  // seconds
  std::function<Outcome()> run;
};

inline std::vector<Criterion> criteria() {
  return {
      {1, "catalog fidelity", 60, catalog_fidelity},
      {2, "section tables", 300, section_tables},
      {3, "Frobenius small scope", 1800,
       [] { return frobenius_rows({{"9,1", 5}, {"9,1", 7}, {"12,1", 5}, {"12,1", 11}, {"9,2", 7}, {"9,2", 13}, {"10,1", 7}}); }},
      {4, "Frobenius large scope", 7200, [] { return frobenius_rows({{"10,1", 17}, {"10,3", 31}, {"10,3", 37}, {"11,1", 23}, {"11,1", 53}}); }},
      {5, "square classes", 1800, square_classes},
      {6, "regulator forms", 300, regulator_forms},
      {7, "Picard certification", 9000, picard},
      {8, "moduli chain", 600, moduli_chain},
      {9, "identity suite", 60, identities},
      {10, "counting cross-checks", 600, counting},
  };
}

/// Criterion ids per verify-tables scope; "all" runs everything.
inline std::vector<int> scope_criteria(const std::string& scope) {
  if (scope == "tables-12") return {1, 2};
  if (scope == "table5-small") return {3, 10};
  if (scope == "table5-large") return {4};
  if (scope == "section4") return {5, 6, 7};
  if (scope == "section3") return {8, 9};
  if (scope == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  throw AlgebraError("unknown scope: " + scope);
}

struct Result {
  int id;
  std::string name;
  bool pass;
  double seconds;
  std::string detail;
};

inline Result run(const Criterion& c) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > c.budget) {
    o.pass = false;
    o.detail += "; over budget";
  }
  return {c.id, c.name, o.pass, dt, o.detail};
}

inline std::string line(const Result& r) {
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << r.seconds;
  return "criterion " + std::to_string(r.id) + ": " + (r.pass ? "PASS" : "FAIL") + " " + r.name + " (" + t.str() + " s) " + r.detail;
}

}  // namespace zsurf::verify
