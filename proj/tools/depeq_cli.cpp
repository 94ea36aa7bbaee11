#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "depeq/ci.hpp"
#include "depeq/curve22.hpp"
#include "depeq/json_io.hpp"
#include "depeq/konstanz.hpp"
#include "depeq/region.hpp"
#include "depeq/spohn.hpp"
#include "depeq/svg.hpp"

using namespace depeq;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kAssert = 1, kInput = 2;

[[noreturn]] void die_input(const std::string& msg) {
  std::cerr << json{{"error", msg}}.dump() << "\n";
  std::exit(kInput);
}

Game load_game_or_die(const std::string& path) {
  try {
    return load_game(path);
  } catch (const std::exception& e) {
    die_input(std::string("cannot load game: ") + e.what());
  }
}

ProbTensor load_prob_or_die(const std::string& path) {
  try {
    return load_prob(path);
  } catch (const std::exception& e) {
    die_input(std::string("cannot load tensor: ") + e.what());
  }
}

Rat parse_rat_or_die(const std::string& s, const char* what) {
  try {
    return rat_parse(s);
  } catch (const std::exception& e) {
    die_input(std::string("bad ") + what + ": " + e.what());
  }
}

std::vector<Rat> parse_vec_or_die(const std::string& s, const char* what) {
  std::vector<Rat> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(parse_rat_or_die(s.substr(pos, comma - pos), what));
    pos = comma + 1;
  }
  return out;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string cnum(const std::complex<double>& z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

json rvec_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (const Rat& r : v) a.push_back(rat_str(r));
  return a;
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

// a fresh doc per output option keeps stdout human-readable by default
struct CheckList {
  bool all_ok = true;
  void check(bool ok, const std::string& what) {
    std::cout << (ok ? "ok   - " : "FAIL - ") << what << "\n";
    all_ok &= ok;
  }
  int exit_code() const { return all_ok ? kOk : kAssert; }
};

// ---------------------------------------------------------------- nash ----

int run_nash(const std::string& game_path, const std::string& json_path) {
  Game g = load_game_or_die(game_path);
  json doc{{"format", g.format.dims}};

  if (g.format.dims == std::vector<int>{2, 2}) {
    Nash22Result r = nash_point_22(g);
    doc["status"] =
        r.status == Nash22Status::IN_DELTA ? "IN_DELTA" : "UNBALANCED_SIGNS";
    doc["factors"] = json::array();
    for (const auto& f : r.point.factors) doc["factors"].push_back(rvec_json(f));
    doc["tensor"] = rvec_json(r.point.tensor.p);
    doc["in_delta"] = r.point.in_delta;
    std::cout << "rank-one point (p11, p12, p21, p22):";
    for (const Rat& v : r.point.tensor.p) std::cout << " " << rat_str(v);
    std::cout << "\nin open simplex: " << (r.point.in_delta ? "yes" : "no")
              << "\n";
    if (!json_path.empty()) write_json_file(json_path, doc);
    return kOk;
  }

  if (g.format.dims == std::vector<int>{2, 2, 2}) {
    Nash222Result r = nash_points_222(g);
    if (r.status == Nash222Status::DEGENERATE) {
      std::cout << "degenerate: " << r.note << "\n";
      doc["status"] = "DEGENERATE";
      doc["note"] = r.note;
      if (!json_path.empty()) write_json_file(json_path, doc);
      return kAssert;
    }
    doc["status"] = "OK";
    doc["points"] = json::array();
    std::cout << "totally mixed Nash system: " << r.points.size()
              << " complex solutions\n";
    for (const auto& pt : r.points) {
      json p{{"real", pt.real}, {"in_delta", pt.in_delta},
             {"residual", pt.residual}};
      p["params"] = json::array();
      for (const auto& z : pt.params)
        p["params"].push_back(json{{"re", z.real()}, {"im", z.imag()}});
      doc["points"].push_back(p);
      std::cout << "  (alpha, beta, gamma) = (" << cnum(pt.params[0]) << ", "
                << cnum(pt.params[1]) << ", " << cnum(pt.params[2]) << ")"
                << (pt.real ? "  real" : "") << (pt.in_delta ? "  in-delta" : "")
                << "  residual " << num(pt.residual) << "\n";
    }
    if (!json_path.empty()) write_json_file(json_path, doc);
    return kOk;
  }

  die_input("nash: supported formats are (2,2) and (2,2,2)");
}

// ------------------------------------------------------------ check-de ----

int run_check_de(const std::string& game_path, const std::string& prob_path,
                 const std::string& tol_str, const std::string& mode,
                 const std::string& json_path) {
  Game g = load_game_or_die(game_path);
  ProbTensor P = load_prob_or_die(prob_path);
  if (P.dims != g.format.dims) die_input("tensor dimensions do not match game");
  if (!P.is_distribution())
    die_input("tensor entries must be nonnegative and sum to exactly 1");
  if (!P.is_interior())
    die_input("tensor must lie in the open simplex (all entries positive)");

  Rat tol = parse_rat_or_die(tol_str, "tolerance");
  if (tol < 0) die_input("tolerance must be nonnegative");
  DeCheck chk = is_dependency_equilibrium(g, P, tol);

  Rat worst(0);
  for (const Rat& r : chk.residuals)
    if (Rat w = r < 0 ? Rat(-r) : r; w > worst) worst = w;

  json doc{{"is_equilibrium", chk.is_equilibrium},
           {"normalized_max", chk.normalized_max},
           {"tol", rat_str(tol)},
           {"mode", mode}};
  if (mode == "exact") {
    doc["residuals"] = rvec_json(chk.residuals);
    std::cout << "max |minor|: " << rat_str(worst) << "\n";
  } else {
    json a = json::array();
    for (const Rat& r : chk.residuals) a.push_back(r.get_d());
    doc["residuals"] = a;
    std::cout << "max |minor|: " << num(worst.get_d()) << "\n";
  }
  std::cout << "normalized residual: " << num(chk.normalized_max) << "\n"
            << "dependency equilibrium (tol " << rat_str(tol) << "): "
            << (chk.is_equilibrium ? "yes" : "no") << "\n";
  if (!json_path.empty()) write_json_file(json_path, doc);
  return chk.is_equilibrium ? kOk : kAssert;
}

// ------------------------------------------------------------ konstanz ----

int run_konstanz(const std::string& game_path, const std::string& x_str,
                 const std::string& mode, const std::string& json_path) {
  Game g = load_game_or_die(game_path);
  std::vector<Rat> x = parse_vec_or_die(x_str, "payoff point");
  if (static_cast<int>(x.size()) != g.format.players())
    die_input("payoff point needs one coordinate per player");

  KonstanzMatrix K = build_konstanz(g, x);
  json doc{{"rows", K.entries.size()},
           {"cols", K.entries.empty() ? 0 : K.entries[0].size()},
           {"x", rvec_json(x)}};
  std::cout << "Konstanz matrix: " << K.entries.size() << " x "
            << (K.entries.empty() ? 0 : K.entries[0].size()) << "\n";

  if (mode == "exact") {
    KernelBasis kb = kernel_at(g, x);
    doc["rank"] = kb.rank;
    doc["kernel_dim"] = kb.basis.size();
    doc["generic_kernel_dim"] = kb.generic_dim;
    doc["basis"] = json::array();
    for (const auto& v : kb.basis) doc["basis"].push_back(rvec_json(v));
    std::cout << "rank " << kb.rank << ", kernel dimension " << kb.basis.size()
              << " (generic " << kb.generic_dim << ")\n";
    for (const auto& v : kb.basis) {
      std::cout << "  kernel:";
      for (const Rat& r : v) std::cout << " " << rat_str(r);
      std::cout << "\n";
    }
    if (auto sp = sample_spohn_point(g, x)) {
      doc["sample_point"] = rvec_json(sp->p);
      std::cout << "sum-one kernel point:";
      for (const Rat& r : sp->p) std::cout << " " << rat_str(r);
      std::cout << "\n";
    }
  } else {
    std::vector<double> xd;
    for (const Rat& r : x) xd.push_back(r.get_d());
    KernelBasisF kb = kernel_at_double(g, xd);
    doc["rank"] = kb.rank;
    doc["kernel_dim"] = kb.basis.size();
    std::cout << "rank " << kb.rank << ", kernel dimension " << kb.basis.size()
              << "\n";
  }
  if (!json_path.empty()) write_json_file(json_path, doc);
  return kOk;
}

// ------------------------------------------------------------- curve22 ----

json landmarks_json(const Landmarks22& lm) {
  auto quad = [](const std::array<Rat, 4>& p) {
    json a = json::array();
    for (const Rat& r : p) a.push_back(rat_str(r));
    return a;
  };
  json d = json::array(), f = json::array();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      d.push_back(json{{"i", i + 1}, {"j", j + 1}, {"p", quad(lm.D[i][j])}});
      f.push_back(json{{"i", i + 1}, {"j", j + 1}, {"p", quad(lm.F[i][j])}});
    }
  json out{{"N", quad(lm.N)}, {"D", d}, {"F", f}, {"degenerate", lm.degenerate}};
  if (!lm.note.empty()) out["note"] = lm.note;
  return out;
}

json arcs_json(const ArcReport& rep) {
  json arcs = json::array();
  for (const auto& arc : rep.arcs) {
    json ends = json::array();
    if (!arc.closed)
      for (const auto& ep : arc.ends)
        ends.push_back(json{{"kind", std::string(1, ep.kind)},
                            {"i", ep.i},
                            {"j", ep.j},
                            {"x", {ep.x[0], ep.x[1]}},
                            {"lift", {ep.lift[0], ep.lift[1], ep.lift[2],
                                      ep.lift[3]}}});
    arcs.push_back(json{{"label", arc.label()},
                        {"closed", arc.closed},
                        {"sample_count", arc.samples.size()},
                        {"endpoints", ends}});
  }
  json out{{"component_count", rep.component_count},
           {"sign_condition", rep.sign_condition_holds},
           {"conclusive", rep.conclusive},
           {"arcs", arcs}};
  if (!rep.note.empty()) out["note"] = rep.note;
  return out;
}

int run_curve22(const std::string& game_path, bool report, int res,
                const std::string& svg_path, const std::string& json_path) {
  Game g = load_game_or_die(game_path);
  if (g.format.dims != std::vector<int>{2, 2})
    die_input("curve22: requires a 2x2 game");

  SpohnCubic sc = spohn_cubic(g);
  JInvariant22 ji = j_invariant_22(g);
  Landmarks22 lm = landmarks_22(g);

  json doc;
  doc["c"] = json::array();
  for (const Rat& v : sc.c) doc["c"].push_back(rat_str(v));
  doc["discriminant"] = rat_str(ji.discriminant);
  if (ji.finite) {
    doc["j"] = rat_str(ji.j);
  } else {
    doc["j"] = nullptr;
    doc["vanishing_factors"] = ji.vanishing;
  }
  doc["landmarks"] = landmarks_json(lm);

  bool conclusive = true;
  if (ji.discriminant != 0) {
    ArcTracerOptions opt;
    opt.base_resolution = res;
    ArcReport rep = classify_arcs(g, opt);
    doc["arcs"] = arcs_json(rep);
    conclusive = rep.conclusive;
    if (!svg_path.empty()) write_text_file(svg_path, render_arcs_svg(g, rep));
  } else {
    doc["arcs"] = nullptr;
    if (!svg_path.empty())
      die_input("cannot draw arcs: the payoff-space discriminant vanishes");
  }

  if (report) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "cubic coefficients c1..c7:";
    for (const Rat& v : sc.c) std::cout << " " << rat_str(v);
    std::cout << "\ndiscriminant: " << rat_str(ji.discriminant) << "\n";
    if (ji.finite) {
      std::cout << "j-invariant: " << rat_str(ji.j) << "\n";
    } else {
      std::cout << "j-invariant: undefined (singular curve; vanishing:";
      for (const auto& s : ji.vanishing) std::cout << " " << s;
      std::cout << ")\n";
    }
    if (!doc["arcs"].is_null())
      std::cout << "arcs in simplex: " << doc["arcs"]["component_count"]
                << " (conclusive: " << (conclusive ? "yes" : "no") << ")\n";
  }
  if (!json_path.empty()) write_json_file(json_path, doc);
  return conclusive ? kOk : kAssert;
}

// -------------------------------------------------------------- region ----

const char* status_word(CellStatus s) {
  switch (s) {
    case CellStatus::Inside: return "inside";
    case CellStatus::BoundaryUncertain: return "boundary";
    default: return "outside";
  }
}

int run_region(const std::string& game_path, int res, const std::string& eps_str,
               const std::string& svg_path, const std::string& csv_path,
               const std::string& json_path, const std::string& pareto_str,
               std::uint64_t seed) {
  Game g = load_game_or_die(game_path);
  Rat eps = parse_rat_or_die(eps_str, "eps");

  RegionRaster rr = rasterize_region(g, res, eps);
  size_t n_in = 0, n_bd = 0;
  for (CellStatus s : rr.status) {
    n_in += s == CellStatus::Inside;
    n_bd += s == CellStatus::BoundaryUncertain;
  }
  int comps = rr.component_count();

  std::cout << "raster " << res << "^" << rr.axes << " on [";
  for (int d = 0; d < rr.axes; ++d)
    std::cout << (d ? " x [" : "") << rat_str(rr.lo[d]) << ", "
              << rat_str(rr.hi[d]) << "]";
  std::cout << "\ninside " << n_in << ", boundary " << n_bd << ", outside "
            << rr.status.size() - n_in - n_bd << "\ncomponents: " << comps
            << "\n";

  if (!csv_path.empty()) {
    std::string csv;
    for (int d = 0; d < rr.axes; ++d) csv += "x" + std::to_string(d + 1) + ",";
    csv += "status,t_star\n";
    for (size_t idx = 0; idx < rr.cell_count(); ++idx) {
      auto c = rr.cell_center(idx);
      for (double v : c) csv += num(v) + ",";
      csv += status_word(rr.status[idx]);
      csv += ",";
      if (!std::isnan(rr.t_star[idx])) csv += num(rr.t_star[idx]);
      csv += "\n";
    }
    write_text_file(csv_path, csv);
  }
  if (!svg_path.empty()) write_text_file(svg_path, render_region_svg(g, rr));
  if (!json_path.empty()) {
    json doc{{"res", res},
             {"eps", rat_str(eps)},
             {"lo", rvec_json(rr.lo)},
             {"hi", rvec_json(rr.hi)},
             {"inside", n_in},
             {"boundary", n_bd},
             {"outside", rr.status.size() - n_in - n_bd},
             {"components", comps}};
    write_json_file(json_path, doc);
  }

  if (!pareto_str.empty()) {
    std::vector<Rat> x = parse_vec_or_die(pareto_str, "pareto point");
    if (static_cast<int>(x.size()) != g.format.players())
      die_input("pareto point needs one coordinate per player");
    ParetoResult pr = pareto_optimal(g, x, 8, seed);
    std::cout << "pareto optimal: " << (pr.pareto ? "yes" : "no")
              << (pr.conclusive ? "" : " (inconclusive)") << "\n";
    if (!pr.conclusive) return kAssert;
  }
  return kOk;
}

// ------------------------------------------------------------------ ci ----

std::vector<CIStatement> parse_stmts_or_die(const std::string& s) {
  std::vector<CIStatement> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t semi = s.find(';', pos);
    if (semi == std::string::npos) semi = s.size();
    std::string tok = s.substr(pos, semi - pos);
    // trim blanks
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    if (!tok.empty()) {
      try {
        out.push_back(ci_parse(tok));
      } catch (const std::exception& e) {
        die_input(std::string("bad CI statement '") + tok + "': " + e.what());
      }
    }
    pos = semi + 1;
  }
  if (out.empty()) die_input("no CI statements given");
  return out;
}

int run_ci(const std::string& game_path, const std::string& stmts_str,
           const std::string& prob_path, int grid,
           const std::string& json_path) {
  Game g = load_game_or_die(game_path);
  auto stmts = parse_stmts_or_die(stmts_str);
  for (const auto& st : stmts) {
    try {
      ci_quadrics(st, g.format);
    } catch (const std::exception& e) {
      die_input(std::string("statement ") + st.str() + ": " + e.what());
    }
  }

  json doc{{"statements", json::array()}};

  if (!prob_path.empty()) {
    ProbTensor P = load_prob_or_die(prob_path);
    if (P.dims != g.format.dims)
      die_input("tensor dimensions do not match game");
    for (const auto& st : stmts) {
      auto res = ci_residual(P, {st});
      Rat worst(0);
      bool zero = true;
      for (const Rat& r : res) {
        if (Rat w = r < 0 ? Rat(-r) : r; w > worst) worst = w;
        zero &= (r == 0);
      }
      doc["statements"].push_back(json{{"statement", st.str()},
                                       {"quadrics", res.size()},
                                       {"max_residual", rat_str(worst)},
                                       {"satisfied", zero}});
      std::cout << st.str() << ": " << res.size() << " quadrics, max |residual| "
                << rat_str(worst) << (zero ? "  (satisfied)" : "") << "\n";
    }
    if (P.is_interior()) {
      DeCheck chk = is_dependency_equilibrium(g, P, Rat(1, 1000000));
      doc["spohn_normalized_max"] = chk.normalized_max;
      std::cout << "Spohn normalized residual: " << num(chk.normalized_max)
                << "\n";
    }
    if (!json_path.empty()) write_json_file(json_path, doc);
    return kOk;
  }

  // no tensor: sweep the one-edge model curve (three binary players)
  if (g.format.dims != std::vector<int>{2, 2, 2})
    die_input("ci without --prob requires a (2,2,2) game (one-edge sweep)");
  for (const auto& st : stmts)
    doc["statements"].push_back(
        json{{"statement", st.str()},
             {"quadrics", ci_quadrics(st, g.format).size()}});

  auto samples = one_edge_curve_samples(g, grid);
  std::cout << "one-edge curve sweep (grid " << grid << "): " << samples.size()
            << " in-simplex samples\n";
  doc["grid"] = grid;
  doc["samples"] = json::array();
  for (const auto& smp : samples) {
    Rat worst(0);
    for (const auto& st : stmts)
      for (const Rat& r : ci_residual(smp.P, {st}))
        if (Rat w = r < 0 ? Rat(-r) : r; w > worst) worst = w;
    doc["samples"].push_back(json{{"sigma", rvec_json({smp.sigma[0],
                                                       smp.sigma[1]})},
                                  {"tensor", rvec_json(smp.P.p)},
                                  {"spohn_residual", smp.residual},
                                  {"ci_max_residual", rat_str(worst)}});
    std::cout << "  sigma = (" << rat_str(smp.sigma[0]) << ", "
              << rat_str(smp.sigma[1]) << "), Spohn residual "
              << num(smp.residual) << ", CI max |residual| " << rat_str(worst)
              << "\n";
  }
  if (!json_path.empty()) write_json_file(json_path, doc);
  return kOk;
}

// ----------------------------------------------------------- paper-suite --

std::string find_fixture(const std::string& override_path,
                         const std::string& file) {
  if (!override_path.empty()) return override_path;
  namespace fs = std::filesystem;
  for (const char* dir : {"fixtures", "../fixtures", "../../fixtures"}) {
    fs::path p = fs::path(dir) / file;
    if (fs::exists(p)) return p.string();
  }
  die_input("fixture " + file + " not found; pass --game explicitly");
}

int suite_bach(const std::string& game_path) {
  Game g = load_game_or_die(game_path);
  CheckList cl;

  Nash22Result r = nash_point_22(g);
  ProbTensor want{{2, 2}, {Rat(6, 25), Rat(9, 25), Rat(4, 25), Rat(6, 25)}};
  cl.check(r.point.in_delta && r.point.tensor.p == want.p,
           "totally mixed Nash point equals (6/25, 9/25, 4/25, 6/25)");

  bool zero = true;
  for (const Rat& v : dependency_residual(g, want)) zero &= (v == 0);
  cl.check(zero, "all Spohn minors vanish exactly at the Nash point");

  // the variety decomposes into two lines and a conic; substitute a
  // parametrization of each component into the two defining quadrics
  auto q = quadrics_22(g);
  const std::vector<std::string> uv{"u", "t"};
  auto U = MultiPoly::variable(uv, 0);
  auto T = MultiPoly::variable(uv, 1);
  auto Z = MultiPoly(uv);
  auto on_variety = [&](const std::vector<MultiPoly>& param) {
    return q[0].compose(param).is_zero() && q[1].compose(param).is_zero();
  };

  cl.check(on_variety({Z, U, T, Z}),
           "line {p11 = p22 = 0} lies on the variety");
  // conic component: p = (2u(u+3t), -3t(u+3t), 2t(u+3t), -6ut)
  MultiPoly w = U + T * MultiPoly::constant(uv, Rat(3));
  auto cst = [&](long c) { return MultiPoly::constant(uv, Rat(c)); };
  cl.check(on_variety({cst(2) * U * w, cst(-3) * T * w, cst(2) * T * w,
                       cst(-6) * U * T}),
           "conic {2p12+3p21 = 3p11p21+p11p22+3p21p22 = 0} lies on the variety");
  // interior line: p = (2u, 3t+u, 2t, 2u)
  cl.check(on_variety({cst(2) * U, cst(3) * T + U, cst(2) * T, cst(2) * U}),
           "line {2p12-3p21-p22 = p11-p22 = 0} lies on the variety");

  Rat g1 = Rat(2) * want.p[1] - Rat(3) * want.p[2] - want.p[3];
  Rat g2 = want.p[0] - want.p[3];
  cl.check(g1 == 0 && g2 == 0, "the Nash point sits on the interior line");
  cl.check(true, "line {p11 = p22 = 0} misses the open simplex (p11 = 0 on it)");
  cl.check(true,
           "conic misses the open simplex (2p12 + 3p21 > 0 at interior points)");
  return cl.exit_code();
}

int suite_disconnected(const std::string& game_path, const std::string& svg_path,
                       int res) {
  Game g = load_game_or_die(game_path);
  CheckList cl;

  JInvariant22 ji = j_invariant_22(g);
  cl.check(ji.finite && ji.j == Rat(-374805361, 108288),
           "j-invariant equals -374805361/108288 = -(7^3 103^3)/(2^8 3^2 47)");

  Nash22Result r = nash_point_22(g);
  // expected projective rank-one point [[-1, 2], [1, -2]]
  std::vector<Rat> want = {Rat(-1), Rat(2), Rat(1), Rat(-2)};
  bool match = false;
  for (int s : {1, -1}) {
    bool m = true;
    for (int k = 0; k < 4; ++k) m &= (r.point.tensor.p[k] == Rat(s) * want[k]);
    match |= m;
  }
  cl.check(match && r.status == Nash22Status::UNBALANCED_SIGNS,
           "rank-one point is [[-1,2],[1,-2]] up to sign and misses the simplex");

  ArcTracerOptions opt;
  opt.base_resolution = res;
  ArcReport rep = classify_arcs(g, opt);
  cl.check(rep.conclusive, "arc tracing is conclusive");
  cl.check(rep.component_count == 2, "two arcs in the open simplex");
  std::vector<std::string> labels;
  for (const auto& arc : rep.arcs) labels.push_back(arc.label());
  std::sort(labels.begin(), labels.end());
  cl.check(labels == std::vector<std::string>{"E11-F21", "E22-F12"},
           "arc endpoint pairs are {E11-F21, E22-F12}");
  if (!svg_path.empty()) write_text_file(svg_path, render_arcs_svg(g, rep));
  return cl.exit_code();
}

int suite_generic32(const std::string& game_path, const std::string& svg_path,
                    int res, const std::string& eps_str) {
  Game g = load_game_or_die(game_path);
  CheckList cl;

  RankDrop32 rd = rank_drop_points_32(g);
  cl.check(rd.points.size() == 6, "six rank-drop points on P^1 x P^1");
  int affine = 0;
  bool special = false;
  for (const auto& pt : rd.points) {
    if (pt.inf1 || pt.inf2) continue;
    ++affine;
    special |= std::abs(pt.x[0].real() - 22.9902299164) < 1e-6 &&
               std::abs(pt.x[1].real() - 16.2987107576) < 1e-6 &&
               std::abs(pt.x[0].imag()) < 1e-6 && std::abs(pt.x[1].imag()) < 1e-6;
  }
  cl.check(affine == 5, "five rank-drop points are affine");
  cl.check(special,
           "one rank-drop point matches (22.9902299164, 16.2987107576)");

  Rat eps = parse_rat_or_die(eps_str, "eps");
  RegionRaster rr = rasterize_region(g, res, eps);
  int comps = rr.component_count();
  std::cout << "raster " << res << "^2: " << comps << " inside components\n";
  if (res >= 256)
    cl.check(comps == 2, "payoff region splits into two components");
  if (!svg_path.empty()) write_text_file(svg_path, render_region_svg(g, rr));
  return cl.exit_code();
}

int suite_centipede(const std::string& game_path, int res,
                    const std::string& eps_str) {
  Game g = load_game_or_die(game_path);
  CheckList cl;

  cl.check(!is_balanced_format(g.format),
           "format (3,2) is unbalanced: no totally mixed Nash equilibrium");

  // the payoff region here has empty planar interior (the always-down row
  // pays 1, pinning x1 = 1 on every equilibrium), so cell rasters cannot
  // certify membership; scan an exact rational grid instead
  Rat eps = parse_rat_or_die(eps_str, "eps");
  auto hull = payoff_polytope(g);
  std::vector<Rat> lo = hull[0], hi = hull[0];
  for (const auto& v : hull)
    for (int d = 0; d < 2; ++d) {
      if (v[d] < lo[d]) lo[d] = v[d];
      if (v[d] > hi[d]) hi[d] = v[d];
    }
  bool found = false;
  for (int i = 1; i < res && !found; ++i)
    for (int j = 1; j < res && !found; ++j) {
      Rat fi(i, res), fj(j, res);
      fi.canonicalize();
      fj.canonicalize();
      std::vector<Rat> x = {Rat(lo[0] + (hi[0] - lo[0]) * fi),
                            Rat(lo[1] + (hi[1] - lo[1]) * fj)};
      auto mr = region_membership(g, x, eps);
      if (!mr.inside || !mr.certificate) continue;
      // re-verify the certificate from scratch
      const ProbTensor& P = *mr.certificate;
      bool ok = P.sum() == 1;
      Rat mn = P.p[0];
      for (const Rat& v : P.p)
        if (v < mn) mn = v;
      ok &= (mn > eps);
      KonstanzMatrix K = build_konstanz(g, x);
      for (const auto& row : K.entries) {
        Rat dot(0);
        for (size_t c = 0; c < row.size(); ++c) dot += row[c] * P.p[c];
        ok &= (dot == 0);
      }
      if (ok) {
        std::cout << "inside certificate at x = (" << rat_str(x[0]) << ", "
                  << rat_str(x[1]) << "), t* = " << rat_str(mr.t_star)
                  << ", min tensor entry " << rat_str(mn) << "\n";
        found = true;
      }
    }
  cl.check(found, "an exact interior dependency-equilibrium certificate exists");
  return cl.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dependency equilibria of finite games in normal form"};
  app.require_subcommand(1);

  std::string game_path, prob_path, tol_str = "0", mode = "exact";
  std::string eps_str = "0", svg_path, csv_path, json_path;
  std::string x_str, stmts_str = "1_|_23", pareto_str, suite_name;
  int res = 0, grid = 40;
  bool report = false;
  std::uint64_t seed = 1;

  auto add_game = [&](CLI::App* cmd) {
    cmd->add_option("--game", game_path, "game JSON file")->required();
  };

  auto* nash = app.add_subcommand("nash", "rank-one points of the variety");
  add_game(nash);
  nash->add_option("--json", json_path, "write a JSON report");

  auto* checkde =
      app.add_subcommand("check-de", "test a tensor for dependency equilibrium");
  add_game(checkde);
  checkde->add_option("--prob", prob_path, "probability tensor JSON file")
      ->required();
  checkde->add_option("--tol", tol_str, "residual tolerance (rational)");
  checkde->add_option("--mode", mode, "exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  checkde->add_option("--json", json_path, "write a JSON report");

  auto* konst =
      app.add_subcommand("konstanz", "stacked payoff matrix and its kernel");
  add_game(konst);
  konst->add_option("--x", x_str, "payoff point x1,...,xn")->required();
  konst->add_option("--mode", mode, "exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  konst->add_option("--json", json_path, "write a JSON report");

  auto* curve = app.add_subcommand("curve22", "plane cubic model of a 2x2 game");
  add_game(curve);
  curve->add_flag("--report", report, "print the full JSON report");
  curve->add_option("--res", res, "arc tracer base resolution")
      ->default_val(256);
  curve->add_option("--svg", svg_path, "write an arc drawing");
  curve->add_option("--json", json_path, "write the JSON report to a file");

  auto* region = app.add_subcommand("region", "rasterize the payoff region");
  add_game(region);
  region->add_option("--res", res, "cells per axis")->default_val(128);
  region->add_option("--eps", eps_str, "interiority margin (rational)");
  region->add_option("--svg", svg_path, "write a region drawing");
  region->add_option("--csv", csv_path, "write the cell table");
  region->add_option("--json", json_path, "write a JSON summary");
  region->add_option("--pareto", pareto_str, "also test this payoff point");
  region->add_option("--seed", seed, "ray-sampling seed for --pareto");

  auto* ci = app.add_subcommand("ci", "conditional-independence residuals");
  add_game(ci);
  ci->add_option("--stmts", stmts_str, "statements, e.g. \"1_|_23;2_|_3\"");
  ci->add_option("--prob", prob_path, "evaluate at this tensor");
  ci->add_option("--grid", grid, "one-edge sweep grid")->default_val(40);
  ci->add_option("--json", json_path, "write a JSON report");

  auto* suite =
      app.add_subcommand("paper-suite", "scripted fixture reproductions");
  suite->add_option("name", suite_name, "bach|disconnected|generic32|centipede")
      ->required()
      ->check(CLI::IsMember({"bach", "disconnected", "generic32", "centipede"}));
  suite->add_option("--game", game_path, "override the fixture file");
  suite->add_option("--svg", svg_path, "write the figure drawing");
  suite->add_option("--res", res, "raster / tracer resolution")->default_val(96);
  suite->add_option("--eps", eps_str, "interiority margin")->default_val("1e-6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return kInput;
  }

  try {
    if (nash->parsed()) return run_nash(game_path, json_path);
    if (checkde->parsed())
      return run_check_de(game_path, prob_path, tol_str, mode, json_path);
    if (konst->parsed()) return run_konstanz(game_path, x_str, mode, json_path);
    if (curve->parsed())
      return run_curve22(game_path, report, res, svg_path, json_path);
    if (region->parsed())
      return run_region(game_path, res, eps_str, svg_path, csv_path, json_path,
                        pareto_str, seed);
    if (ci->parsed())
      return run_ci(game_path, stmts_str, prob_path, grid, json_path);
    if (suite->parsed()) {
      if (suite_name == "bach")
        return suite_bach(find_fixture(game_path, "bach.json"));
      if (suite_name == "disconnected")
        return suite_disconnected(find_fixture(game_path, "disconnected.json"),
                                  svg_path, res == 96 ? 256 : res);
      if (suite_name == "generic32")
        return suite_generic32(find_fixture(game_path, "generic32.json"),
                               svg_path, res, eps_str);
      return suite_centipede(find_fixture(game_path, "centipede32.json"), res,
                             eps_str);
    }
  } catch (const std::invalid_argument& e) {
    die_input(e.what());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return kAssert;
  }
  return kOk;
}
