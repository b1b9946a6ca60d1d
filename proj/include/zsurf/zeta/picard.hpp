#pragma once

// Picard numbers of the catalog surfaces: Frobenius polynomials at the
// tabulated primes, discriminant square classes by both routes, van Luijk's
// comparison and the rank-4 refinement by local insolubility.

#include <zsurf/algebra/qform.hpp>
#include <zsurf/surface/catalog_sections.hpp>
#include <zsurf/zeta/charpoly.hpp>
#include <zsurf/zeta/counting.hpp>

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>

namespace zsurf {

constexpr int kCacheSchemaVersion = 1;
constexpr const char* kCodeVersion = "zsurf-1";

// --- count cache ----------------------------------------------------------

/// One JSON document per (surface, p) under cache_dir/<slug>/<p>.json.
class CountCache {
 public:
  explicit CountCache(std::string dir = "") : dir_(std::move(dir)) {}
  bool enabled() const { return !dir_.empty(); }

  std::filesystem::path path(const std::string& slug, unsigned p) const {
    return std::filesystem::path(dir_) / slug / (std::to_string(p) + ".json");
  }

  PointCounts load(const std::string& slug, unsigned p) const {
    PointCounts pc;
    pc.p = p;
    if (!enabled()) return pc;
    std::ifstream in(path(slug, p));
    if (!in) return pc;
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception&) {
      return pc;
    }
    if (j.value("schema_version", 0) != kCacheSchemaVersion || j.value("code_version", "") != kCodeVersion) return pc;
    for (auto& [r, n] : j["counts"].items()) {
      pc.n[std::stoi(r)] = Int(n.get<std::string>());
      pc.method[std::stoi(r)] = "cache";
    }
    return pc;
  }

  void store(const std::string& slug, const PointCounts& pc) const {
    if (!enabled()) return;
    auto file = path(slug, pc.p);
    std::filesystem::create_directories(file.parent_path());
    nlohmann::json j;
    j["schema_version"] = kCacheSchemaVersion;
    j["code_version"] = kCodeVersion;
    j["surface"] = slug;
    j["p"] = pc.p;
    for (auto& [r, n] : pc.n) {
      j["counts"][std::to_string(r)] = n.get_str();
      auto it = pc.method.find(r);
      j["method"][std::to_string(r)] = it == pc.method.end() ? "unknown" : it->second;
    }
    std::ofstream out(file);
    out << j.dump(2) << "\n";
  }

 private:
  std::string dir_;
};

// --- Frobenius at one prime -----------------------------------------------

struct FrobeniusOptions {
  int r_max = 6;
  unsigned workers = 1;
  std::uint64_t bsgs_above = kSurfaceBsgsThreshold;
  bool use_sections = true;
  std::string cache_dir;
  double time_budget = 0;  // seconds; 0 for none
  std::function<void(const std::string&)> log;
};

/// Greedy maximal independent subset under the height pairing.
template <class K>
std::vector<MWSection<K>> independent_subset(const HeightPairing<K>& H, const std::vector<MWSection<K>>& P) {
  std::vector<MWSection<K>> basis;
  for (auto& s : P) {
    basis.push_back(s);
    if (sgn(regulator(H, basis)) == 0) basis.pop_back();
  }
  return basis;
}

/// Product of c_t over the geometric bad fibres.
template <class K>
Int component_product(const SurfaceAnalysis<K>& S) {
  Int c = 1;
  for (auto& F : S.fibers)
    for (int i = 0; i < F.degree(); ++i) c *= F.c_t;
  return c;
}

/// |prod c_t * Reg| up to squares, from a basis of a finite-index subgroup.
template <class K>
SquareClass delta_p_bsd(const SurfaceAnalysis<K>& S, const RatMatrix& gram) {
  Rat det = determinant(gram);
  if (sgn(det) == 0) throw AlgebraError("delta_p_bsd: dependent generators");
  return square_class(abs(Rat(component_product(S)) * det));
}

/// Raised between counts once the time budget is spent; the counts made so
/// far stay in the cache.
struct BudgetExceeded : AlgebraError {
  int counted_up_to;
  BudgetExceeded(const std::string& what, int r) : AlgebraError(what), counted_up_to(r) {}
};

struct PrimeRecord {
  unsigned p = 0;
  FrobCharPoly frob;
  PointCounts counts;
  bool same_fibres = true;
  int trivial_rank = 0;
  int sections_plus = 0, sections_minus = 0;  // independent known sections
  int rho_p = 0;
  int mw_bound = 0;
  SquareClass delta_kl;
  std::optional<SquareClass> delta_bsd;
  std::vector<std::string> generators;  // basis used for delta_bsd
  std::optional<BinaryForm> pencil_form;
  bool pencil_y_elided = false;
  bool assumes_tate = true;  // delta_kl is the discriminant only when rho_p = deg g_p
};

inline PrimeRecord frobenius_at(const SurfaceEntry& E, unsigned p, const FrobeniusOptions& opt = {}) {
  auto log = [&](const std::string& s) {
    if (opt.log) opt.log(s);
  };
  PolyModel<Rat> W = E.model();
  if (!good_prime_test(W, p)) throw AlgebraError(E.id() + ": p = " + std::to_string(p) + " is not a prime of good reduction");
  auto k = prime_field(p);
  SurfaceAnalysis<FqElem> Sp = analyze_mod_p(W, *k);
  PrimeRecord rec;
  rec.p = p;
  rec.trivial_rank = Sp.trivial_rank;
  rec.same_fibres = same_fiber_configuration(analyze_fibers(W), Sp);

  HeightPairing<FqElem> H(Sp);
  std::vector<MWSection<FqElem>> basis;
  std::optional<ModPSections> ms;
  if (opt.use_sections) {
    try {
      ms = mod_p_sections(E, Sp.model);
      auto plus = ms->fixed;
      plus.insert(plus.end(), ms->pencil.begin(), ms->pencil.end());
      auto bp = independent_subset(H, plus), bm = independent_subset(H, ms->twisted);
      rec.sections_plus = static_cast<int>(bp.size());
      rec.sections_minus = static_cast<int>(bm.size());
      basis = bp;
      basis.insert(basis.end(), bm.begin(), bm.end());
    } catch (const AlgebraError& e) {
      log("sections unavailable mod " + std::to_string(p) + ": " + e.what());
      ms.reset();
      rec.sections_plus = rec.sections_minus = 0;
    }
  }
  QPoly known = trivial_lattice_charpoly(Sp, rec.sections_plus, rec.sections_minus);

  CountCache cache(opt.cache_dir);
  rec.counts = cache.load(E.slug(), p);
  bool done = false;
  auto start = std::chrono::steady_clock::now();
  for (int r = 1; r <= opt.r_max && !done; ++r) {
    if (!rec.counts.n.count(r)) {
      double spent = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (opt.time_budget > 0 && spent > opt.time_budget)
        throw BudgetExceeded(E.id() + ": time budget spent before n_" + std::to_string(r) + " mod " + std::to_string(p), r - 1);
      rec.counts.n[r] = count_surface(Sp, r, opt.workers, opt.bsgs_above);
      Int q = 1;
      for (int i = 0; i < r; ++i) q *= p;
      rec.counts.method[r] = q <= opt.bsgs_above ? "naive" : "bsgs";
      cache.store(E.slug(), rec.counts);
    }
    log(E.id() + " p=" + std::to_string(p) + " n_" + std::to_string(r) + " = " + to_string(rec.counts.n[r]));
    std::map<int, Int> upto;
    for (auto& [rr, n] : rec.counts.n)
      if (rr <= r) upto[rr] = n;
    try {
      rec.frob = charpoly_from_counts(p, upto, known, Sp.b2());
      done = true;
    } catch (const InsufficientData&) {
    }
  }
  if (!done) throw AlgebraError(E.id() + ": f_" + std::to_string(p) + " undetermined with r <= " + std::to_string(opt.r_max));
  rec.rho_p = rho_p_upper(rec.frob);
  rec.delta_kl = delta_p_kl(rec.frob);
  rec.mw_bound = geometric_mw_bound(Sp, rec.rho_p);
  if (!basis.empty() && static_cast<int>(basis.size()) == rec.mw_bound) {
    rec.delta_bsd = delta_p_bsd(Sp, gram_matrix(H, basis));
    for (auto& s : basis) rec.generators.push_back(s.label);
  }
  if (ms && ms->pencil.size() == 2) {
    rec.pencil_form = regulator_form(H, ms->fixed, ms->pencil[0], ms->pencil[1]);
    rec.pencil_y_elided = ms->pencil_y_elided[0] || ms->pencil_y_elided[1];
  }
  return rec;
}

// --- bounds ------------------------------------------------------------

/// rho <= rho_p - 1 when two primes give the same even rho_p bound but
/// different discriminant classes.
inline std::optional<int> van_luijk(const PrimeRecord& a, const PrimeRecord& b) {
  if (a.rho_p != b.rho_p || a.rho_p % 2 != 0) return std::nullopt;
  if (a.delta_kl == b.delta_kl) return std::nullopt;
  return a.rho_p - 1;
}

struct Refinement {
  int bound;
  QPlace witness;
  QForm form;
};

/// If rho were rho_p - 1 at both primes, NS(X) would be a common sublattice
/// and the two pencil regulators would represent a common value.  An
/// anisotropic difference rules this out.
inline std::optional<Refinement> refine_by_two(const QForm& fp, const QForm& fq, int rho_p) {
  QForm g = fp.minus(fq);
  auto res = is_isotropic_over_Q(g);
  if (res.isotropic) return std::nullopt;
  return Refinement{rho_p - 2, *res.witness, g};
}

inline QForm to_qform(const BinaryForm& f) { return QForm({{f.a, f.b / 2}, {f.b / 2, f.c}}); }

struct BoundStep {
  std::string method;  // "hodge", "frobenius", "van_luijk", "rank4_form"
  int bound;
  std::string detail;
};

struct PicardCertificate {
  std::string surface;
  int hodge_bound = 0;
  int trivial_rank = 0;
  int mw_rank_lower = 0;
  int lower_bound = 0;
  std::vector<PrimeRecord> primes;
  std::vector<BoundStep> steps;
  std::optional<Refinement> refinement;
  int rho = -1;
  bool closed() const { return rho >= 0; }
};

/// Independent sections over Q(T) (field = Q) or over Qbar(T) (the geometric sections added).
inline int rank_lower_bound(const SurfaceEntry& E, bool over_qbar) {
  auto S = analyze_fibers(E.model());
  HeightPairing<Rat> H(S);
  auto P = rational_sections(E, S.model);
  if (over_qbar) {
    auto G = geometric_sections(E, S.model);
    P.insert(P.end(), G.begin(), G.end());
  }
  return independent_rank(H, P);
}

struct PicardOptions {
  FrobeniusOptions frob;
  bool large_scope = true;  // allow the primes marked as large
};

inline PicardCertificate certify_picard(const SurfaceEntry& E, const PicardOptions& opt = {}) {
  PicardCertificate c;
  c.surface = E.id();
  auto SQ = analyze_fibers(E.model());
  c.hodge_bound = SQ.hodge_bound();
  c.trivial_rank = SQ.trivial_rank;
  c.mw_rank_lower = rank_lower_bound(E, true);
  c.lower_bound = shioda_tate_ns_rank(SQ, c.mw_rank_lower);
  int upper = c.hodge_bound;
  c.steps.push_back({"hodge", upper, "h^{1,1} = 10m"});
  auto finish = [&]() {
    if (upper == c.lower_bound) c.rho = upper;
    return c.closed();
  };
  if (finish()) return c;

  for (auto& fr : E.frob) {
    if (fr.large_scope && !opt.large_scope) continue;
    c.primes.push_back(frobenius_at(E, fr.p, opt.frob));
    auto& rec = c.primes.back();
    if (rec.rho_p < upper) {
      upper = rec.rho_p;
      c.steps.push_back({"frobenius", upper, "rho_" + std::to_string(rec.p) + " <= deg g_p"});
    }
  }
  if (finish()) return c;
  if (c.primes.size() < 2) return c;

  const PrimeRecord &a = c.primes[0], &b = c.primes[1];
  auto vl = van_luijk(a, b);
  if (vl && *vl < upper) {
    upper = *vl;
    c.steps.push_back({"van_luijk", upper, "Delta_" + std::to_string(a.p) + " = " + a.delta_kl.factored() + " != Delta_" + std::to_string(b.p) + " = " + b.delta_kl.factored()});
  }
  if (finish()) return c;

  // rho = rho_p - 1 would force MW rank mw_bound - 1 at both primes, with
  // NS(X) meeting each pencil in a line; compare the regulators on the pencils
  if (vl && a.pencil_form && b.pencil_form) {
    auto ref = refine_by_two(to_qform(*a.pencil_form), to_qform(*b.pencil_form), a.rho_p);
    if (ref && ref->bound < upper) {
      upper = ref->bound;
      c.refinement = ref;
      c.steps.push_back({"rank4_form", upper, "anisotropic at " + ref->witness.str()});
    }
  }
  finish();
  return c;
}

}  // namespace zsurf
