#include "ghpath/cli_app.hpp"

#include "ghpath/characteristics.hpp"
#include "ghpath/errors.hpp"
#include "ghpath/generators.hpp"
#include "ghpath/gh.hpp"
#include "ghpath/io.hpp"
#include "ghpath/sphere_paths.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

namespace ghpath {

namespace {

GhMode mode_from(const std::string& s) {
  if (s == "exhaustive") return GhMode::exhaustive;
  if (s == "bnb") return GhMode::branch_and_bound;
  return GhMode::automatic;
}

std::string fmt_witness(const Relation& R, const FiniteMetricSpace& X,
                        const FiniteMetricSpace& Y) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, j] : R.pairs) {
    if (!first) os << ' ';
    first = false;
    os << '(' << X.labels()[i] << ',' << Y.labels()[j] << ')';
  }
  return os.str();
}

void print_space_report(std::ostream& out, const FiniteMetricSpace& X) {
  out << "valid metric space\n";
  out << "points: " << X.size() << "\n";
  out << "diameter: " << to_string(X.diameter()) << "\n";
  if (X.size() == 1) {
    out << "single-point space\n";
    return;
  }
  out << "s: " << to_string(min_positive_distance(X)) << "\n";
  if (X.size() < 3) return;
  out << "t: " << to_string(min_triangle_slack(X)) << "\n";
  CharacteristicsOptions copts;
  if (X.size() <= copts.permutation_budget) {
    SpaceCharacteristics ch = characteristics(X, copts);
    out << "e: " << to_string(ch.e) << "\n";
    out << "generic: " << (ch.generic ? "yes" : "no") << "\n";
  } else {
    out << "e: skipped (permutation scan allows at most " << copts.permutation_budget
        << " points)\n";
  }
}

void print_curve_summary(std::ostream& out, const SampledCurve& curve,
                         const std::string& out_path) {
  out << "construction: " << curve.construction << "\n";
  out << "samples: " << curve.samples.size() << "\n";
  if (curve.sphere) out << "radius: " << to_string(curve.sphere->radius) << "\n";
  out << "lipschitz bound: " << to_string(curve.lipschitz) << "\n";
  out << "wrote: " << out_path << "\n";
}

struct CommonPathArgs {
  std::string a, b, center, radius, out_path, mode, tol = "1e-9";
  std::size_t samples = 33;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact Gromov-Hausdorff distances between finite metric spaces "
               "and certified curves on distance spheres"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  // validate ------------------------------------------------------------------
  std::string v_path;
  CLI::App* validate = app.add_subcommand("validate", "check a space file against the metric axioms");
  validate->add_option("path", v_path, "space file (JSON)")->required();

  // gh ------------------------------------------------------------------------
  std::string g_a, g_b, g_mode;
  bool g_all = false;
  CLI::App* gh_cmd = app.add_subcommand("gh", "exact distance between two spaces");
  gh_cmd->add_option("A", g_a, "first space file")->required();
  gh_cmd->add_option("B", g_b, "second space file")->required();
  gh_cmd->add_option("--mode", g_mode, "search mode")
      ->check(CLI::IsMember({"exhaustive", "bnb"}));
  gh_cmd->add_flag("--all-optimal", g_all, "list every optimal correspondence");

  // sphere-path ----------------------------------------------------------------
  CLI::App* sp = app.add_subcommand("sphere-path", "build a certified curve on a sphere");
  sp->require_subcommand(1);

  CommonPathArgs d1;
  CLI::App* sp_d1 = sp->add_subcommand("delta1", "curve on the sphere around the one-point space");
  sp_d1->add_option("A", d1.a, "first endpoint (space file)")->required();
  sp_d1->add_option("B", d1.b, "second endpoint (space file)")->required();
  sp_d1->add_option("--radius", d1.radius, "sphere radius")->required();
  sp_d1->add_option("--samples", d1.samples, "grid points on the curve (>= 2)");
  sp_d1->add_option("--mode", d1.mode, "search mode")->check(CLI::IsMember({"exhaustive", "bnb"}));
  sp_d1->add_option("-o,--out", d1.out_path, "output curve file")->required();

  CommonPathArgs lg;
  CLI::App* sp_lg = sp->add_subcommand("large", "curve on a sphere of radius above the center diameter");
  sp_lg->add_option("A", lg.a, "first endpoint (space file)")->required();
  sp_lg->add_option("B", lg.b, "second endpoint (space file)")->required();
  sp_lg->add_option("--center", lg.center, "center space file")->required();
  sp_lg->add_option("--radius", lg.radius, "sphere radius")->required();
  sp_lg->add_option("--samples", lg.samples, "grid points on the curve (>= 2)");
  sp_lg->add_option("--tol", lg.tol, "radius tolerance for bisection certificates");
  sp_lg->add_option("--mode", lg.mode, "search mode")->check(CLI::IsMember({"exhaustive", "bnb"}));
  sp_lg->add_option("-o,--out", lg.out_path, "output curve file")->required();

  CommonPathArgs sm;
  CLI::App* sp_sm = sp->add_subcommand("small", "curve on a small sphere around a generic center");
  sp_sm->add_option("X", sm.a, "endpoint on the sphere (space file)")->required();
  sp_sm->add_option("Y", sm.b, "optional second endpoint: connect X to Y");
  sp_sm->add_option("--center", sm.center, "generic center space file")->required();
  sp_sm->add_option("--radius", sm.radius, "sphere radius")->required();
  sp_sm->add_option("--samples", sm.samples, "grid points per deformation piece (>= 2)");
  sp_sm->add_option("--mode", sm.mode, "search mode")->check(CLI::IsMember({"exhaustive", "bnb"}));
  sp_sm->add_option("-o,--out", sm.out_path, "output curve file")->required();

  // verify ----------------------------------------------------------------------
  std::string vf_path;
  bool vf_recheck = false;
  CLI::App* verify = app.add_subcommand("verify", "re-check every certificate in a curve file");
  verify->add_option("curve", vf_path, "curve file (JSON)")->required();
  verify->add_flag("--recheck-gh", vf_recheck, "also recompute distances where budgets allow");

  // gen ---------------------------------------------------------------------------
  CLI::App* gen = app.add_subcommand("gen", "generate example spaces");
  gen->require_subcommand(1);

  std::size_t r_n = 4;
  std::uint64_t r_seed = 0;
  std::string r_eps = "1", r_out;
  CLI::App* gen_rand = gen->add_subcommand("random", "distinct random distances above a floor");
  gen_rand->add_option("--n", r_n, "number of points (>= 3)")->required();
  gen_rand->add_option("--seed", r_seed, "RNG seed");
  gen_rand->add_option("--eps", r_eps, "distance floor (> 0)");
  gen_rand->add_option("-o,--out", r_out, "output space file")->required();

  std::size_t w_n = 2;
  std::string w_eps = "1/10", w_out;
  CLI::App* gen_well = gen->add_subcommand("wellorder", "two-level graph metric with edge subdivisions");
  gen_well->add_option("--n", w_n, "base points (>= 2)")->required();
  gen_well->add_option("--eps", w_eps, "non-edge excess (0 < eps < 1)");
  gen_well->add_option("-o,--out", w_out, "output space file")->required();

  std::size_t p_n = 4;
  std::string p_q = "5", p_out;
  CLI::App* gen_geom = gen->add_subcommand("geomprog", "geometric progression line metric");
  gen_geom->add_option("--n", p_n, "number of points (>= 3)")->required();
  gen_geom->add_option("--q", p_q, "ratio (> 4)");
  gen_geom->add_option("-o,--out", p_out, "output space file")->required();

  std::string e_base, e_f = "0", e_out;
  CLI::App* gen_ext = gen->add_subcommand("extend", "add one far point to a generic space");
  gen_ext->add_option("--base", e_base, "space file to extend")->required();
  gen_ext->add_option("--f", e_f, "distance to the new point (> diameter)")->required();
  gen_ext->add_option("-o,--out", e_out, "output space file")->required();

  std::string s_center, s_radius, s_mode = "split", s_out;
  std::uint64_t s_seed = 0;
  CLI::App* gen_sp = gen->add_subcommand("sphere-point", "a space at exact distance r from a generic center");
  gen_sp->add_option("--center", s_center, "generic center space file")->required();
  gen_sp->add_option("--radius", s_radius, "sphere radius")->required();
  gen_sp->add_option("--mode", s_mode, "construction")->check(CLI::IsMember({"split", "excess", "deficit"}));
  gen_sp->add_option("--seed", s_seed, "which point to split");
  gen_sp->add_option("-o,--out", s_out, "output space file")->required();

  // parse -----------------------------------------------------------------------
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (validate->parsed()) {
      print_space_report(out, load_space(v_path));
      return 0;
    }

    if (gh_cmd->parsed()) {
      FiniteMetricSpace A = load_space(g_a);
      FiniteMetricSpace B = load_space(g_b);
      GhOptions opts;
      opts.mode = mode_from(g_mode);
      opts.want_all = g_all;
      GHResult r = gh_exact(A, B, opts);
      out << "gh: " << to_string(r.value) << "\n";
      out << "method: " << r.method << "\n";
      out << "witness: " << fmt_witness(r.witness, A, B) << "\n";
      if (g_all) {
        out << "optimal correspondences: " << r.all_optimal.size() << "\n";
        for (const Relation& w : r.all_optimal) out << "  " << fmt_witness(w, A, B) << "\n";
      }
      return 0;
    }

    if (sp_d1->parsed()) {
      SphereOptions so;
      so.gh.mode = mode_from(d1.mode);
      SampledCurve curve =
          path_delta1(load_space(d1.a), load_space(d1.b), parse_rat(d1.radius), d1.samples, so);
      save_curve(d1.out_path, curve);
      print_curve_summary(out, curve, d1.out_path);
      return 0;
    }

    if (sp_lg->parsed()) {
      SphereOptions so;
      so.gh.mode = mode_from(lg.mode);
      so.tolerance = parse_rat(lg.tol);
      SampledCurve curve = path_large_sphere(load_space(lg.center), load_space(lg.a),
                                             load_space(lg.b), parse_rat(lg.radius), lg.samples, so);
      save_curve(lg.out_path, curve);
      print_curve_summary(out, curve, lg.out_path);
      return 0;
    }

    if (sp_sm->parsed()) {
      SphereOptions so;
      so.gh.mode = mode_from(sm.mode);
      FiniteMetricSpace M = load_space(sm.center);
      FiniteMetricSpace X = load_space(sm.a);
      SampledCurve curve =
          sm.b.empty()
              ? path_small_sphere(M, X, parse_rat(sm.radius), sm.samples, so)
              : connect_on_small_sphere(M, X, load_space(sm.b), parse_rat(sm.radius), sm.samples, so);
      save_curve(sm.out_path, curve);
      print_curve_summary(out, curve, sm.out_path);
      return 0;
    }

    if (verify->parsed()) {
      SampledCurve curve = load_curve(vf_path);
      VerifyReport rep = verify_curve(curve, vf_recheck);
      out << "samples: " << curve.samples.size() << "\n";
      out << "certificates checked: " << rep.certificates_checked << "\n";
      out << "gh recomputations: " << rep.gh_recomputed << "\n";
      out << "lipschitz gaps checked: " << rep.lipschitz_gaps_checked << "\n";
      for (const VerifyIssue& issue : rep.issues) {
        if (issue.sample == static_cast<std::size_t>(-1))
          out << "issue: " << issue.what << "\n";
        else
          out << "issue at sample " << issue.sample << ": " << issue.what << "\n";
      }
      out << (rep.ok ? "ok\n" : "invalid\n");
      return rep.ok ? 0 : 4;
    }

    if (gen_rand->parsed()) {
      Rat eps = parse_rat(r_eps);
      FiniteMetricSpace X = gen_distinct_random(r_n, r_seed, eps);
      save_space(r_out, X, "random",
                 {{"kind", "random"},
                  {"n", std::to_string(r_n)},
                  {"seed", std::to_string(r_seed)},
                  {"eps", to_string(eps)}});
      out << "points: " << X.size() << "\n";
      out << "wrote: " << r_out << "\n";
      return 0;
    }

    if (gen_well->parsed()) {
      Rat eps = parse_rat(w_eps);
      FiniteMetricSpace X = gen_wellorder_graph(w_n, eps);
      save_space(w_out, X, "wellorder",
                 {{"kind", "wellorder"}, {"n", std::to_string(w_n)}, {"eps", to_string(eps)}});
      out << "points: " << X.size() << "\n";
      out << "wrote: " << w_out << "\n";
      return 0;
    }

    if (gen_geom->parsed()) {
      Rat q = parse_rat(p_q);
      FiniteMetricSpace X = gen_geometric_progression(p_n, q);
      save_space(p_out, X, "geomprog",
                 {{"kind", "geomprog"}, {"n", std::to_string(p_n)}, {"q", to_string(q)}});
      out << "points: " << X.size() << "\n";
      out << "wrote: " << p_out << "\n";
      return 0;
    }

    if (gen_ext->parsed()) {
      Rat f = parse_rat(e_f);
      FiniteMetricSpace X = extend_one_point(load_space(e_base), f);
      save_space(e_out, X, "extend",
                 {{"kind", "extend"}, {"base", e_base}, {"f", to_string(f)}});
      out << "points: " << X.size() << "\n";
      out << "wrote: " << e_out << "\n";
      return 0;
    }

    if (gen_sp->parsed()) {
      Rat r = parse_rat(s_radius);
      SpherePointMode mode = s_mode == "excess"    ? SpherePointMode::excess
                             : s_mode == "deficit" ? SpherePointMode::deficit
                                                   : SpherePointMode::split;
      FiniteMetricSpace X = gen_sphere_point(load_space(s_center), r, mode, s_seed);
      save_space(s_out, X, "sphere-point",
                 {{"kind", "sphere-point"},
                  {"center", s_center},
                  {"radius", to_string(r)},
                  {"mode", s_mode},
                  {"seed", std::to_string(s_seed)}});
      out << "points: " << X.size() << "\n";
      out << "wrote: " << s_out << "\n";
      return 0;
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case errc::validation: return 2;
      case errc::precondition: return 3;
      case errc::verification: return 4;
      case errc::budget: return 5;
    }
    return 2;
  }

  err << "error: no command selected\n";
  return 2;
}

}  // namespace ghpath
