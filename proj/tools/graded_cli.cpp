#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graded/errors.hpp"
#include "graded/families.hpp"
#include "graded/field.hpp"
#include "graded/fracops.hpp"
#include "graded/heat.hpp"
#include "graded/specfun.hpp"
#include "graded/squarefn.hpp"
#include "graded/strichartz.hpp"
#include "graded/suite.hpp"

using namespace graded;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNonConvergence = 2, kFail = 3 };

struct Globals {
  std::string config;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 1;
};

ExperimentConfig load_config(const Globals& g) {
  ExperimentConfig c;
  if (!g.config.empty()) {
    std::ifstream in(g.config);
    if (!in) throw ParseError("cannot open config '" + g.config + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    c = ExperimentConfig::parse(ss.str());
  }
  if (const char* env = std::getenv("GRADED_OUT_DIR"); env && *env) c.out_dir = env;
  if (!g.out_dir.empty()) c.out_dir = g.out_dir;
  if (g.seed_set) c.seed = g.seed;
  return c;
}

std::ofstream open_out(const ExperimentConfig& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  const std::string path = (fs::path(c.out_dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

// Input field: a file, or member k of the seeded bump family on the config grid.
SampledField input_field(const ExperimentConfig& c, const std::string& path, int member) {
  if (!path.empty()) return load_field(path);
  const std::vector<BumpField> fam = bump_family(c.group_ptr(), static_cast<std::size_t>(member) + 1, c.seed);
  return fam.back().sample(c.grid());
}

HeatModel model_for(const ExperimentConfig& c, const GroupPtr& g) {
  HeatModel m;
  m.group = g;
  m.cfg = c.quad;
  m.kind = g->abelian ? HeatKind::euclidean_explicit : parse_heat_kind(c.heat == "euclidean_explicit" ? "h1_quadrature" : c.heat);
  m.validate();
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat-kernel, fractional-power and square-function tools on graded groups"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "JSON experiment configuration");
  app.add_option("--out-dir", g.out_dir, "output directory (overrides GRADED_OUT_DIR and the config)");
  app.add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { g.seed = v, g.seed_set = true; },
                                         "family seed");
  app.add_option("--jobs", g.jobs, "worker bound (the computation runs sequentially)")->check(CLI::PositiveNumber);

  auto* kernel = app.add_subcommand("kernel", "heat kernel h_t sampled on the config grid");
  double k_t = 1.0;
  std::string k_kind;
  kernel->add_option("--t", k_t, "time")->check(CLI::PositiveNumber);
  kernel->add_option("--kind", k_kind, "euclidean_explicit | h1_quadrature | h1_pde");

  auto* fracpow = app.add_subcommand("fracpow", "fractional power R^alpha f");
  double fp_alpha = 0.5;
  std::string fp_route = "spectral", fp_field;
  int fp_member = 0;
  fracpow->add_option("--alpha", fp_alpha, "power");
  fracpow->add_option("--route", fp_route, "pointwise | balakrishnan | spectral");
  fracpow->add_option("--field", fp_field, "input field file (default: family member)");
  fracpow->add_option("--member", fp_member, "family member index")->check(CLI::NonNegativeNumber);

  auto* gfun = app.add_subcommand("gfun", "square functions g_alpha and G_s");
  std::string gf_kind = "g_alpha", gf_field;
  double gf_alpha = 0.5, gf_s = 0.5;
  int gf_member = 0;
  gfun->add_option("--kind", gf_kind, "g_alpha | G_s");
  gfun->add_option("--alpha", gf_alpha, "alpha for g_alpha");
  gfun->add_option("--s", gf_s, "s for G_s");
  gfun->add_option("--field", gf_field, "input field file (default: family member)");
  gfun->add_option("--member", gf_member, "family member index")->check(CLI::NonNegativeNumber);

  auto* stri = app.add_subcommand("strichartz", "Strichartz functional field and equivalence report");
  std::string st_route = "second";
  double st_s = 0.5, st_p = 2;
  std::vector<std::string> st_fields;
  int st_members = 6;
  std::size_t st_stride = 0;
  stri->add_option("--route", st_route, "first | second");
  stri->add_option("--s", st_s, "smoothness");
  stri->add_option("--p", st_p, "exponent");
  stri->add_option("--field", st_fields, "input field files (default: family)");
  stri->add_option("--members", st_members, "family size when no files are given")->check(CLI::PositiveNumber);
  stri->add_option("--stride", st_stride, "evaluate every stride-th node (0: at most 1024 points)");

  auto* figure = app.add_subcommand("figure", "phi_alpha profile on R^n");
  int fg_n = 1, fg_points = 201;
  double fg_alpha = 0.5, fg_rmax = 10;
  figure->add_option("--n", fg_n, "dimension")->check(CLI::Range(1, 6));
  figure->add_option("--alpha", fg_alpha, "power in (0,1)");
  figure->add_option("--rmax", fg_rmax, "largest radius")->check(CLI::PositiveNumber);
  figure->add_option("--points", fg_points, "number of radii")->check(CLI::Range(2, 1000000));

  auto* verify = app.add_subcommand("verify", "run named checks or 'all'");
  std::vector<std::string> v_names;
  bool v_list = false;
  verify->add_option("checks", v_names, "check names (default: all)");
  verify->add_flag("--list", v_list, "list the checks and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    const ExperimentConfig c = load_config(g);
    if (*kernel) {
      const GroupPtr grp = c.group_ptr();
      HeatModel m = model_for(c, grp);
      if (!k_kind.empty()) m.kind = parse_heat_kind(k_kind);
      m.validate();
      const SampledField f = SampledField::sample(
          grp, c.grid(), [&](const Point& x) { return heat_kernel(m, k_t, x); }, 0, 0.0);
      auto out = open_out(c, "kernel.csv");
      write_field_csv(out, f);
    } else if (*fracpow) {
      const SampledField f = input_field(c, fp_field, fp_member);
      const HeatModel m = model_for(c, f.group);
      SampledField r;
      if (fp_route == "pointwise") {
        if (f.grid.dim() == 1 && f.group->abelian) {
          r = frac_power_pointwise_grid(f, fp_alpha, c.quad);
        } else {
          r = SampledField::zeros(f.group, f.grid, 0);
          for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = frac_power_pointwise(m, f, fp_alpha, f.grid.node(i), c.quad);
        }
      } else if (fp_route == "balakrishnan") {
        r = frac_power_balakrishnan(m, f, fp_alpha, c.quad);
      } else if (fp_route == "spectral") {
        r = frac_power_spectral(f, fp_alpha, c.quad.pad_factor);
      } else {
        throw ParseError("unknown route '" + fp_route + "'");
      }
      auto out = open_out(c, "fracpow.csv");
      write_field_csv(out, r);
    } else if (*gfun) {
      const SampledField f = input_field(c, gf_field, gf_member);
      const HeatModel m = model_for(c, f.group);
      SquareFnResult r;
      if (gf_kind == "g_alpha") r = g_alpha(m, f, gf_alpha, c.quad);
      else if (gf_kind == "G_s") r = G_s(m, f, gf_s, c.quad);
      else throw ParseError("unknown square function '" + gf_kind + "'");
      auto out = open_out(c, "gfun.csv");
      write_field_csv(out, r.field);
      std::printf("%s L^%g norm %s\n", gf_kind.c_str(), r.p, fmt17(r.lp).c_str());
    } else if (*stri) {
      const StrichartzRoute route = parse_route(st_route);
      std::vector<SampledField> fam;
      for (const std::string& p : st_fields) fam.push_back(load_field(p));
      if (fam.empty())
        for (const BumpField& b : bump_family(c.group_ptr(), static_cast<std::size_t>(st_members), c.seed))
          fam.push_back(b.sample(c.grid()));
      const HeatModel m = model_for(c, fam.front().group);
      StrichartzParams prm;
      prm.s = st_s;
      prm.p = st_p;
      prm.ball_cfg = c.quad;
      std::size_t stride = st_stride;
      if (stride == 0) {
        stride = 1;
        const SampledField& f0 = fam.front();
        while (static_cast<double>(f0.grid.size()) / std::pow(static_cast<double>(stride), static_cast<double>(f0.grid.dim())) > 1024) ++stride;
      }
      {
        auto out = open_out(c, "strichartz_field.csv");
        write_field_csv(out, strichartz_field(*fam.front().group, fam.front(), prm, route == StrichartzRoute::second, stride));
      }
      const VerificationReport rep = equivalence_report(m, fam, st_s, st_p, route, 10.0, &prm);
      auto out = open_out(c, "strichartz_report.csv");
      out << "report,sample,ratio\n";
      for (std::size_t i = 0; i < rep.ratios.size(); ++i)
        out << csv_escape(rep.check_name) << ',' << csv_escape(rep.labels[i]) << ',' << fmt17(rep.ratios[i]) << '\n';
      std::printf("%s %s spread %s\n", rep.check_name.c_str(), rep.pass ? "PASS" : "FAIL",
                  fmt17(rep.max_ratio() / rep.min_ratio()).c_str());
      if (!rep.pass) return kFail;
    } else if (*figure) {
      // config params fill in options not given on the command line
      auto param = [&](const char* key, const char* flag, auto& v) {
        if (c.params.contains(key) && figure->count(flag) == 0) {
          try {
            v = c.params.at(key).get<std::decay_t<decltype(v)>>();
          } catch (const nlohmann::json::exception&) {
            throw ParseError(std::string("config key 'params.") + key + "' has the wrong type");
          }
        }
      };
      param("n", "--n", fg_n);
      param("alpha", "--alpha", fg_alpha);
      param("rmax", "--rmax", fg_rmax);
      param("points", "--points", fg_points);
      if (fg_n < 1 || fg_n > 6 || fg_points < 2 || !(fg_rmax > 0)) throw DomainError("figure: bad n, rmax or points");
      if (!(fg_alpha > 0 && fg_alpha < 1)) throw DomainError("figure: alpha must lie in (0,1)");
      auto out = open_out(c, "figure_phi_alpha.csv");
      out << "r,phi_kummer,phi_time_route\n";
      for (int i = 0; i < fg_points; ++i) {
        const double r = fg_rmax * i / (fg_points - 1);
        out << fmt17(r) << ',' << fmt17(phi_alpha_euclidean(fg_n, fg_alpha, r)) << ','
            << fmt17(phi_alpha_euclidean_time_route(fg_n, fg_alpha, r)) << '\n';
      }
    } else if (*verify) {
      if (v_list) {
        for (const SuiteCheck& k : suite_checks())
          std::printf("%-28s criterion %2d  %s\n", k.name.c_str(), k.criterion, k.description.c_str());
        return kOk;
      }
      SuiteSettings s = SuiteSettings::from_config(c);
      if (s.cache_dir.empty()) s.cache_dir = (fs::path(c.out_dir) / "cache").string();
      fs::create_directories(s.cache_dir);
      std::vector<std::string> names = v_names;
      if (names.empty() && c.params.contains("checks")) names = c.params.at("checks").get<std::vector<std::string>>();
      if (names.empty()) names = {"all"};
      const std::vector<CheckOutcome> res = run_checks(names, s, &std::cout);
      {
        auto out = open_out(c, "verify_rows.csv");
        write_rows_csv(out, res);
      }
      {
        auto out = open_out(c, "verify_summary.csv");
        write_summary_csv(out, res);
      }
      bool ok = true;
      std::printf("\n%-28s %-9s %s\n", "check", "criterion", "status");
      for (const CheckOutcome& o : res) {
        std::printf("%-28s %-9d %s\n", o.check.c_str(), o.criterion, o.pass() ? "PASS" : "FAIL");
        ok = ok && o.pass();
      }
      if (!ok) return kFail;
    }
  } catch (const NonConvergence& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNonConvergence;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kOk;
}
