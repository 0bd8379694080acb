// convexfn: command line driver for the counterexamples, the invariant suites
// and single computations on JSON inputs.

#include "convexfn/harness.hpp"
#include "convexfn/io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace convexfn;

namespace {

struct Globals {
  std::uint64_t seed = 7;
  int n = 2;
  double tol = 1e-9;
  int m = 128;
  std::string json_out, csv_out;
  bool timing = false;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw InputError("bad number in list: " + item);
    }
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

ConvZFunction read_convz(const std::string& path) { return ConvZFunction(pa_from_json(read_json_file(path))); }

void emit(const Globals& g, const std::vector<Report>& rs, const std::string& report_path) {
  for (const Report& r : rs) {
    std::cout << r.statement << ": " << to_string(r.verdict);
    if (!r.note.empty()) std::cout << " (" << r.note << ")";
    std::cout << '\n';
    for (const auto& [k, v] : r.quantities) std::cout << "  " << k << " = " << v << '\n';
  }
  const Json j = rs.size() == 1 ? to_json(rs.front(), g.timing) : to_json(rs, g.timing);
  for (const std::string& path : {g.json_out, report_path}) {
    if (path.empty()) continue;
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << '\n';
  }
  if (!g.csv_out.empty()) {
    std::ofstream out(g.csv_out);
    if (!out) throw InputError("cannot write " + g.csv_out);
    write_csv(out, rs);
  }
}

int single_exit(const Report& r) {
  switch (r.verdict) {
    case Verdict::Holds: return 0;
    case Verdict::Violated: return 1;
    case Verdict::HypothesisUnmet: return 2;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional intrinsic volumes, Wulff inequalities and symmetrization checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "base seed");
  app.add_option("--n", g.n, "dimension")->check(CLI::Range(1, 6));
  app.add_option("--tol", g.tol, "tolerance for identities");
  app.add_option("--m", g.m, "vertices of the polygonal ball")->check(CLI::PositiveNumber);
  app.add_option("--json", g.json_out, "write reports as JSON");
  app.add_option("--csv", g.csv_out, "write reports as long-format CSV");
  app.add_flag("--timing", g.timing, "include runtimes in JSON");

  std::function<int()> action;
  std::string report_path;

  auto* bm = app.add_subcommand("counterexample-bm", "Brunn-Minkowski failure for cone functions");
  int bm_j = 2;
  std::string bm_alpha = "0:1,1:0";
  double t1 = 0, t2 = 0.5;
  bm->add_option("--j", bm_j, "index");
  bm->add_option("--alpha", bm_alpha, "density as knot:value pairs");
  bm->add_option("--t1", t1);
  bm->add_option("--t2", t2);
  bm->callback([&] {
    action = [&] {
      const Report r = counterexample_bm(bm_j, parse_profile(bm_alpha), t1, t2, g.n, g.m, g.tol);
      emit(g, {r}, "");
      return single_exit(r);
    };
  });

  auto* iso = app.add_subcommand("counterexample-iso", "isoperimetric failure along a cone family");
  int iso_j = 1, iso_k = 2;
  std::string iso_alpha, iso_ts;
  iso->add_option("--j", iso_j);
  iso->add_option("--k", iso_k);
  iso->add_option("--alpha", iso_alpha, "density as knot:value pairs (default: ramp)");
  iso->add_option("--ts", iso_ts, "comma separated slopes (default: 1 - 2^-l, l = 1..10)");
  iso->callback([&] {
    action = [&] {
      const Profile a = iso_alpha.empty() ? ramp_density() : parse_profile(iso_alpha);
      const std::vector<double> ts = iso_ts.empty() ? halving_sequence(10) : parse_list(iso_ts);
      const Report r = counterexample_iso(iso_j, iso_k, a, ts, g.n, g.tol);
      emit(g, {r}, "");
      return single_exit(r);
    };
  });

  auto* suite = app.add_subcommand("suite", "run invariant suites over the random corpus");
  std::string suite_name = "all", suite_phi;
  std::vector<std::string> only;
  SuiteConfig cfg;
  bool serial = false;
  suite->add_option("name", suite_name, "all, lift, measures, functionals, wulff or symmetrization");
  suite->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
  suite->add_option("--directions", cfg.directions)->check(CLI::PositiveNumber);
  suite->add_option("--phi", suite_phi, "fixed integrand for wulff-inequality");
  suite->add_option("--only", only, "restrict to these check ids");
  suite->add_flag("--serial", serial, "run trials on one thread");
  suite->callback([&] {
    action = [&] {
      cfg.seed = g.seed;
      cfg.n = g.n;
      cfg.m = g.m;
      cfg.tol = g.tol;
      cfg.parallel = !serial;
      if (!suite_phi.empty()) cfg.phi = std::make_shared<const RecFunction>(rec_from_json(read_json_file(suite_phi)));
      const std::vector<Report> rs = run_suite(suite_name, cfg, only);
      emit(g, rs, "");
      return std::any_of(rs.begin(), rs.end(), [](const Report& r) { return r.verdict == Verdict::Violated; }) ? 1 : 0;
    };
  });

  auto* wulff = app.add_subcommand("wulff", "Wulff inequality for one integrand and one function");
  std::string w_phi, w_u;
  int w_dirs = 2000;
  wulff->add_option("--phi", w_phi)->required();
  wulff->add_option("--u", w_u)->required();
  wulff->add_option("--directions", w_dirs)->check(CLI::PositiveNumber);
  wulff->add_option("--report", report_path);
  wulff->callback([&] {
    action = [&] {
      const Report r = wulff_inequality_report(rec_from_json(read_json_file(w_phi)), read_convz(w_u), w_dirs, 1e-6, g.seed);
      emit(g, {r}, report_path);
      return single_exit(r);
    };
  });

  auto* ps = app.add_subcommand("ps-chain", "symmetrization chain for a pair (w, u)");
  std::string ps_w, ps_u;
  double ps_z = 0;
  int levels = 32;
  ps->add_option("--w", ps_w)->required();
  ps->add_option("--u", ps_u)->required();
  ps->add_option("--z", ps_z, "direction angle in radians");
  ps->add_option("--levels", levels, "extra rearrangement levels")->check(CLI::PositiveNumber);
  ps->add_option("--report", report_path);
  ps->callback([&] {
    action = [&] {
      const Report r =
          ps_chain_check(pa_from_json(read_json_file(ps_w)), read_convz(ps_u), angle_direction(ps_z), g.seed, levels);
      emit(g, {r}, report_path);
      return single_exit(r);
    };
  });

  auto* sym = app.add_subcommand("symmetrize", "Steiner symmetral or chord movement of a planar function");
  std::string s_u, s_out;
  double s_z = 0, s_t = 0.5;
  sym->add_option("--u", s_u)->required();
  sym->add_option("--z", s_z, "direction angle in radians");
  sym->add_option("--t", s_t, "chord movement parameter; 0.5 is the symmetral")->check(CLI::Range(0.0, 1.0));
  sym->add_option("--out", s_out, "write the result as function JSON");
  sym->callback([&] {
    action = [&] {
      const ConvZFunction u = read_convz(s_u);
      const ConvZFunction s = chord_movement_fn(u, angle_direction(s_z), s_t);
      Report r("steiner-volume", g.tol, g.seed);
      r.inputs_digest = Digest().add(u.fn().points()).add(u.fn().values()).add(s_z).add(s_t).hex();
      const double before = vbar_np1(u), after = vbar_np1(s);
      r.set("vbar", before).set("vbar_moved", after).set("min", u.fn().min_value()).set("min_moved", s.fn().min_value());
      r.set("error", std::abs(after - before) / std::max(1.0, before));
      r.require(r.at("error") <= g.tol, "chord movement changed the volume");
      r.require(std::abs(r.at("min") - r.at("min_moved")) <= g.tol, "chord movement changed the minimum");
      emit(g, {r}, "");
      if (!s_out.empty()) {
        std::ofstream out(s_out);
        if (!out) throw InputError("cannot write " + s_out);
        out << to_json(s.fn()).dump(2) << '\n';
      } else {
        std::cout << to_json(s.fn()).dump() << '\n';
      }
      return single_exit(r);
    };
  });

  auto* fiv = app.add_subcommand("fiv", "functional intrinsic volume of a radial or PA function");
  std::string f_u, f_alpha = "0:1,1:0";
  int f_j = 1;
  fiv->add_option("--u", f_u, "function JSON (radial if it has breakpoints)")->required();
  fiv->add_option("--alpha", f_alpha, "density as knot:value pairs");
  fiv->add_option("--j", f_j, "index")->check(CLI::PositiveNumber);
  fiv->callback([&] {
    action = [&] {
      const Json j = read_json_file(f_u);
      const Profile a = parse_profile(f_alpha);
      Report r("fiv-nonnegativity", g.tol, g.seed);
      if (j.contains("breakpoints")) {
        const RadialFunction u = radial_from_json(j);
        r.inputs_digest = Digest().add(u.radii()).add(u.values()).add(a.knots()).add(a.values()).hex();
        r.set("value", fiv_radial(f_j, a, u));
      } else {
        const PAFunction u = pa_from_json(j);
        r.inputs_digest = Digest().add(u.points()).add(u.values()).add(a.knots()).add(a.values()).hex();
        if (f_j == u.n()) {
          r.set("value", fiv_top(a, u));
        } else {
          const SteinerExtraction s = fiv_steiner_extraction(f_j, a, u, g.m);
          r.set("value", s.value).set("ball_deficit", s.ball_deficit);
        }
      }
      r.require(r.at("value") >= -g.tol, "negative intrinsic volume for a non-negative density");
      emit(g, {r}, "");
      return single_exit(r);
    };
  });

  auto* mixed = app.add_subcommand("mixed", "mixed volume of n+1 functions by lifting and by mixed measures");
  std::vector<std::string> m_us;
  mixed->add_option("--u", m_us, "n+1 function files")->required();
  mixed->callback([&] {
    action = [&] {
      std::vector<ConvZFunction> fs;
      for (const std::string& p : m_us) fs.push_back(read_convz(p));
      Report r = mixed_ma_inequality_check(fs, g.seed);
      const double lifted = vbar_mixed(fs), rep = vbar_mixed_rep(fs);
      r.set("vbar_mixed", lifted).set("vbar_mixed_rep", rep);
      r.set("representation_error", std::abs(lifted - rep) / std::max(1.0, std::abs(lifted)));
      r.require(r.at("representation_error") <= g.tol, "mixed measure representation differs from the lifted mixed volume");
      emit(g, {r}, "");
      return single_exit(r);
    };
  });

  try {
    app.parse(argc, argv);
    return action();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis not met: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 3;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << '\n';
    return 3;
  }
}
