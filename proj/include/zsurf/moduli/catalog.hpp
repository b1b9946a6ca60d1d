#pragma once

// The twelve elliptic surfaces Z(N, eps) over Q(T), with their published
// fibre data, sections, Frobenius polynomials and auxiliary points mod p.
// Long Weierstrass models y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6.

#include <zsurf/algebra/parse.hpp>
#include <zsurf/surface/model.hpp>

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

namespace zsurf {

enum class SurfaceKind { K3, ProperlyElliptic };

struct GeomSectionData {
  long d;
  std::string x;
  std::optional<std::string> y;  // the coefficient of sqrt(d) in y, when printed
};

/// A point over F_p(T) given in the long model; y absent when not printed.
struct ModPPoint {
  std::string name;
  std::string x;
  std::optional<std::string> y;
};

struct FrobRecord {
  unsigned p;
  std::string f;        // in the variable x
  std::string delta;    // square class of the Neron-Severi discriminant, as a product
  long delta_value;
  std::vector<ModPPoint> extra_points;
  bool large_scope;
};

struct PencilForm {
  unsigned p;
  // Reg(fixed, u A + v B) = scale (a u^2 + b u v + c v^2)
  Rat scale;
  long a, b, c;
};

struct SurfaceEntry {
  int N, eps;
  SurfaceKind kind;
  std::string a1, a2, a3, a4, a6;

  // the published row of the fibre table
  std::vector<std::string> fibers;  // bracketed, sorted
  int torsion, rank_q, rank_qbar, rho;

  std::vector<std::string> rational_x;
  std::vector<GeomSectionData> geometric;

  std::vector<FrobRecord> frob;
  std::vector<PencilForm> forms;  // two entries when the rank-4 refinement is used
  long insoluble_at = 0;
  std::string moduli_route = "external";

  std::string id() const { return std::to_string(N) + "," + std::to_string(eps); }
  std::string slug() const { return "Z" + std::to_string(N) + "_" + std::to_string(eps); }
  int m() const { return kind == SurfaceKind::K3 ? 2 : 3; }
  int b2() const { return 12 * m() - 2; }

  WModel<QRatFunc> model_ratfunc() const {
    auto p = [](const std::string& s) { return s.empty() ? QRatFunc::constant_from(Rat(0)) : parse_ratfunc(s); };
    return WModel<QRatFunc>{p(a1), p(a2), p(a3), p(a4), p(a6)};
  }
  PolyModel<Rat> model() const { return poly_model(model_ratfunc()); }
  const FrobRecord* frob_at(unsigned p) const {
    for (auto& f : frob)
      if (f.p == p) return &f;
    return nullptr;
  }
};

namespace detail {

inline std::vector<std::string> bracket(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline std::vector<SurfaceEntry> build_catalog() {
  using K = SurfaceKind;
  std::vector<SurfaceEntry> c;
  {
    SurfaceEntry e{6, 5, K::K3, "3 T (T - 2)", "-6 (T - 1) (T^3 - 2)", "2 (T - 1) (T + 2)^2 (T^3 - 2)", "", "", {}, 1, 2, 2, 20, {}, {}, {}, {}, 0, "theorem3-chain"};
    e.fibers = bracket({"(I2,I2)", "I3", "(I3,I3,I3)", "I4", "I4"});
    e.rational_x = {"0", "2 T^4 - 4 T"};
    c.push_back(e);
  }
  {
    SurfaceEntry e{7, 3, K::K3, "", "4 T^4 + 4 T^3 - 51 T^2 - 2 T - 50", "", "(6 T + 25) (52 T^2 - 4 T + 25)", "", {}, 2, 2, 2, 20, {}, {}, {}, {}, 0, "external"};
    e.fibers = bracket({"I1", "I2", "(I2,I2)", "(I2,I2)", "I3", "I10"});
    e.rational_x = {"4 T^2 + 20 T + 25", "6 T + 25"};
    c.push_back(e);
  }
  {
    SurfaceEntry e{8, 3, K::K3, "", "-(3 T^2 - 7)", "", "-4 T^2 (4 T^4 - 15)", "4 T^2 (53 T^4 + 81 T^2 + 162)", {}, 1, 4, 5, 20, {}, {}, {}, {}, 0, "external"};
    e.fibers = bracket({"(I1,I1)", "I2", "(I2,I2)", "(I2,I2)", "(I3,I3)", "I0*"});
    e.rational_x = {"-7", "-T^2 + 9", "-4 T^2 - 6 T", "(4 T^5 - 2 T^4 + 10 T^3 + 6 T^2 + 18 T)/(T - 1)^2"};
    e.geometric = {{-2, "-2 T^4 - 5 T^2 - 9", std::string("2 T^6 + 5 T^4 + 20 T^2 + 9")}};
    c.push_back(e);
  }
  {
    SurfaceEntry e{8, 5, K::K3, "", "-2 (T^2 + 19)", "", "-(4 T^2 - 49) (T^4 - 6 T^2 + 25)", "", {}, 2, 2, 4, 20, {}, {}, {}, {}, 0, "external"};
    e.fibers = bracket({"I2", "I2", "(I2,I2)", "(I2,I2)", "(I3,I3)", "I0*"});
    e.rational_x = {"-4 T^2 + 49", "2 T^3 + 19 T^2 + 60 T + 63"};
    e.geometric = {{-3, "-2 T^3 + T^2 + 18 T - 35", std::string("12 T^3 - 6 T^2 - 108 T + 210")},
                {-1, "16 T^2 - 196", std::string("8 T^4 - 346 T^2 + 3038")}};
    c.push_back(e);
  }
  {
    SurfaceEntry e{9, 1, K::K3, "6 T^2 + 3 T + 2", "-(16 T^4 + 12 T^3 + 9 T^2 + 6 T + 1)", "T^2 (T + 1) (4 T^3 + 9 T + 9)", "", "", {}, 1, 3, 4, 19, {}, {}, {}, {}, 0, "external"};
    e.fibers = bracket({"(I1,I1,I1)", "I2", "(I2,I2,I2)", "I3", "I4", "I0*"});
    e.rational_x = {"0", "4 T^4 + 2 T^3 - 2 T^2", "4 T^4 + 4 T^3 + 9 T^2 + 18 T + 9"};
    e.geometric = {{-3, "-(19/3) T^4 - 15 T^3 - 9 T^2", std::nullopt}};
    e.frob = {{5, "(x - 1)^16 (x + 1)^2 (x^2 + x + 1) (x^2 + (7/5) x + 1)", "3*17", 51, {}, false},
              {7, "(x - 1)^18 (x + 1)^2 (x^2 + (10/7) x + 1)", "2*3", 6, {}, false}};
    c.push_back(e);
  }
  {
    SurfaceEntry e{12, 1, K::K3, "2 (5 T^2 + 9)", "(T^2 + 3) (11 T^2 + 1)", "96 (T^2 + 3) (T^2 + 1)^2", "", "", {}, 1, 3, 5, 19, {}, {}, {}, {}, 0, "external"};
    e.fibers = bracket({"(I1,I1,I1,I1,I1,I1,I1,I1)", "(I4,I4)", "(I4,I4)"});
    e.rational_x = {"0", "-12 T^4 - 24 T^2 - 12", "4 T^6 + 12 T^4 - 4 T^2 - 12"};
    e.geometric = {{-3, "-12 T^4 - 40 T^2 - 12", std::nullopt}, {-1, "-16 T^4 - 64 T^2 - 48", std::nullopt}};
    e.frob = {{5, "(x - 1)^16 (x + 1)^4 (x^2 + (6/5) x + 1)", "1", 1, {}, false},
              {11, "(x - 1)^12 (x + 1)^8 (x^2 + (6/11) x + 1)", "7", 7, {}, false}};
    c.push_back(e);
  }
  {
    SurfaceEntry e{8, 7, K::ProperlyElliptic, "", "2 (4 T^6 - 15 T^4 + 14 T^2 - 1)", "", "(T^2 - 1)^4 (16 T^4 - 24 T^2 + 1)", "", {}, 2, 1, 2, 30, {}, {}, {}, {}, 0, "external"};
    e.fibers = bracket({"I2", "(I2,I2)", "(I2,I2)", "(I3,I3)", "I4", "I8", "I8"});
    e.rational_x = {"4 T^6 + 4 T^5 - 9 T^4 - 10 T^3 + 4 T^2 + 6 T + 1"};
    e.geometric = {{-3, "-4 T^6 - 20 T^5 - 39 T^4 - 36 T^3 - 14 T^2 + 1", std::nullopt}};
    c.push_back(e);
  }
  {
    SurfaceEntry e{9, 2, K::ProperlyElliptic, "3 (4 T^3 + T^2 - 2)", "-3 (T + 1) (T^3 - 1) (9 T^2 + 2 T + 1)", "(T - 1)^3 (T^3 - 1) (4 T^3 - 3 T - 7)", "", "", {}, 1, 2, 2, 29, {}, {}, {}, {}, 0, "external"};
    e.fibers = bracket({"(I2,I2,I2)", "(I3,I3)", "(I3,I3,I3)", "I9", "I0*"});
    e.rational_x = {"0", "2 T^5 - 8 T^3 + 4 T^2 + 6 T - 4"};
    e.frob = {{7, "(x - 1)^24 (x + 1)^2 (x^2 + x + 1)^2 (x^2 + (10/7) x + 1) (x^2 + (13/7) x + 1)", "2", 2,
               {{"Q", "5 T^5 + 6 T^4 + 4 T^2 + 6 T", std::string("T^7 + 3 T^6 + 6 T^3 + 2 T^2 + 2 T")}}, false},
              {13, "(x - 1)^24 (x^2 + x + 1)^3 (x^2 + (1/13) x + 1) (x^2 + (25/13) x + 1)", "17", 17,
               {{"Q", "4 T^6 + 8 T^5 + 3 T^4 + 7 T^3 + 5 T^2 + 10 T + 2", std::string("10 T^9 + 4 T^8 + 5 T^6 + 5 T^5 + 12 T^3 + 4 T^2 + 12")}}, false}};
    c.push_back(e);
  }
  {
    SurfaceEntry e{10, 1, K::ProperlyElliptic, "-(3 T - 2) (6 T^2 - 5 T - 2)", "T^2 (T - 1) (27 T^3 - 54 T^2 + 16 T + 12)", "-4 T^2 (T - 1)^2 (4 T^2 - 2 T - 1) (27 T^3 - 54 T^2 + 16 T + 12)", "", "", {}, 1, 1, 1, 28, {}, {}, {}, {}, 3, "theorem3-chain"};
    e.fibers = bracket({"(I2,I2)", "(I2,I2)", "(I3,I3,I3)", "I5", "I10", "IV"});
    e.rational_x = {"0"};
    e.frob = {{7, "(x - 1)^24 (x + 1)^2 (x^2 + x + 1)^2 (x^2 + (10/7) x + 1)^2", "1", 1,
               {{"Q1", "6 T^6 + 6 T^4 + 4 T^3 + 5 T^2", std::string("4 T^9 + 6 T^8 + 6 T^7 + T^6 + T^5 + 3 T^4")},
                {"Q2", "T^6 + 5 T^5 + 6 T^4 + 4 T^3 + 5 T^2", std::string("2 T^9 + 6 T^8 + 2 T^7 + T^6 + 3 T^4")}}, false},
              {17, "-(x - 1)^25 (x + 1)^5 (x^2 - (2/17) x + 1) (x^2 + (25/17) x + 1)", "2*59", 118,
               {{"R1", "16 T^6 + 13 T^5 + 6 T^4 + 4 T^3 + 12 T^2", std::string("4 T^9 + 2 T^8 + 5 T^7 + 8 T^5 + 15 T^4")},
                {"R2", "(6 T^8 + 8 T^7 + 2 T^6 + 5 T^5 + 8 T^4 + 4 T^3 + T^2)/(T + 6)^2", std::nullopt}}, true}};
    e.forms = {{7, make_rat(2, 75), 7, -12, 18}, {17, make_rat(1, 450), 139, 76, 316}};
    c.push_back(e);
  }
  {
    SurfaceEntry e{10, 3, K::ProperlyElliptic, "T^3 - 8 T^2 - 9 T - 8", "2 (3 T + 2) (T^3 - T^2 - 3 T - 3)", "2 T^2 (T^3 - T^2 - 3 T - 3) (7 T^2 + 2 T + 3)", "", "", {}, 1, 3, 4, 28, {}, {}, {}, {}, 3, "theorem3-chain"};
    e.fibers = bracket({"(I1,I1,I1)", "I2", "(I2,I2)", "(I2,I2)", "(I3,I3,I3)", "I4", "I4", "I6"});
    e.rational_x = {"0", "2 T^5 - 4 T^4 - 4 T^3 + 6 T", "4 T^5 - 2 T^4 - 14 T^3 - 18 T^2 - 6 T"};
    e.geometric = {{-3, "-7 T^6 - 23 T^5 - 30 T^4 - 15 T^3 - 9 T^2", std::nullopt}};
    e.frob = {{31, "(x - 1)^24 (x + 1)^2 (x^2 + x + 1)^2 (x^2 + (46/31) x + 1) (x^2 + (58/31) x + 1)", "2*5", 10,
               {{"Q1", "20 T^4 + 13 T^3 + 30 T^2 + 6 T", std::string("5 T^5 + 4 T^4 + 29 T^3 + 4 T^2 + 5 T")},
                {"Q2", "(7 T^6 + 12 T^5 + 9 T^4 + 19 T^2 + 13 T + 4)/(T + 29)^2", std::nullopt}}, true},
              {37, "(x - 1)^28 (x + 1)^2 (x^2 + (70/37) x + 1)^2", "1", 1,
               {{"R1", "36 T^4 + 11 T^3 + 4 T^2", std::string("26 T^5 + 34 T^4 + 2 T^3 + 15 T^2")},
                {"R2", "6 T^4 + 5 T^3 + T^2 + 26 T + 32", std::string("29 T^5 + 35 T^4 + 2 T^3 + 15 T^2 + 19 T + 10")}}, true}};
    e.forms = {{31, make_rat(5, 96), 25, -4, 52}, {37, make_rat(1, 8), 5, 0, 8}};
    c.push_back(e);
  }
  {
    SurfaceEntry e{11, 1, K::ProperlyElliptic, "T^3 + T", "-(4 T^5 - 17 T^4 + 30 T^3 - 18 T^2 + 4)", "", "T^2 (2 T - 1) (3 T^2 - 7 T + 5)^2", "", {}, 2, 2, 2, 28, {}, {}, {}, {}, 11, "external"};
    e.fibers = bracket({"(I1,I1,I1)", "I2", "(I2,I2,I2)", "I3", "I4", "(I4,I4)", "I10"});
    e.rational_x = {"T^4 + 4 T^2 + 4", "3 T^2 - 7 T + 5"};
    e.frob = {{23, "(x - 1)^28 (x + 1)^2 (x^2 + (42/23) x + 1) (x^2 + (45/23) x + 1)", "2*7*11*13", 2002,
               {{"Q1", "16 T^2 + 5 T + 5", std::string("21 T^3 + 15 T^2 + 3 T + 18")},
                {"Q2", "(18 T^6 + 5 T^5 + 5 T^4 + 22 T^3 + 9 T^2)/(T + 16)^2", std::nullopt}}, true},
              {53, "(x - 1)^28 (x^2 + x + 1) (x^2 + (25/53) x + 1) (x^2 + (70/53) x + 1)", "11*131", 1441,
               {{"R1", "28 T^5 + T^4 + 23 T^3 + 40 T^2 + 15 T", std::nullopt},
                {"R2", "(49 T^6 + 44 T^5 + 38 T^4)/(T^2 + 42 T + 5)^2", std::nullopt}}, true}};
    e.forms = {{23, make_rat(11, 480), 57, -46, 137}, {53, make_rat(1, 240), 541, -228, 1196}};
    c.push_back(e);
  }
  return c;
}

}  // namespace detail

inline const std::vector<SurfaceEntry>& catalog() {
  static const std::vector<SurfaceEntry> c = detail::build_catalog();
  return c;
}

/// Lookup by "N,eps", "N_eps" or "Z(N,eps)".
inline const SurfaceEntry& find_surface(std::string id) {
  std::string norm;
  for (char ch : id)
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == ',' || ch == '_') norm += ch == '_' ? ',' : ch;
  for (auto& e : catalog())
    if (e.id() == norm) return e;
  throw AlgebraError("unknown surface: " + id);
}

}  // namespace zsurf
