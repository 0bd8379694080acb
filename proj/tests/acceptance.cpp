// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "convexfn/harness.hpp"

#include <chrono>
#include <cstdio>
#include <numbers>

using namespace convexfn;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::string detail;

  void need(bool cond, const std::string& why) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + why;
    }
  }
};

/// Every listed report holds with all its trials checked.
void need_all_hold(Outcome& o, const std::vector<Report>& rs, const std::vector<std::pair<std::string, int>>& expected) {
  for (const auto& [id, trials] : expected) {
    const auto it = std::find_if(rs.begin(), rs.end(), [&](const Report& r) { return r.statement == id; });
    if (it == rs.end()) {
      o.need(false, id + " missing");
      continue;
    }
    o.need(it->verdict == Verdict::Holds, id + " " + to_string(it->verdict) + (it->note.empty() ? "" : " (" + it->note + ")"));
    if (auto c = it->get("checked")) o.need(*c == trials, id + " checked " + std::to_string(static_cast<int>(*c)));
    o.detail += (o.detail.empty() ? "" : ", ") + id;
    if (auto w = it->get("worst_error")) {
      char buf[48];
      std::snprintf(buf, sizeof buf, " worst %.2e", *w);
      o.detail += buf;
    }
  }
}

std::vector<Report> run(const std::string& suite, int trials, const std::vector<std::string>& only) {
  SuiteConfig cfg;
  cfg.seed = 7;
  cfg.trials = trials;
  return run_suite(suite, cfg, only);
}

int failures = 0;

template <class F>
void criterion(int id, const char* title, double limit_seconds, F&& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.need(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.need(secs < limit_seconds, "runtime over " + std::to_string(limit_seconds) + " s");
  if (!o.ok) ++failures;
  std::printf("[%s] %d. %s (%.2f s) %s\n", o.ok ? "PASS" : "FAIL", id, title, secs, o.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "radial closed form, n = 2, 3, all j, 20 combinations", 10, [](Outcome& o) {
    need_all_hold(o, run("functionals", 20, {"radial-closed-form"}), {{"radial-closed-form", 20}});
  });

  criterion(2, "Brunn-Minkowski failure for cone functions", 1, [](Outcome& o) {
    const Report r = counterexample_bm(2, ramp_density(), 0.0, 0.5);
    const double rhs = pi * std::pow(1 + std::sqrt(0.5), 2);
    o.need(r.verdict == Verdict::Holds, std::string("verdict ") + to_string(r.verdict));
    o.need(std::abs(r.at("lhs") - 2.5 * pi) <= 1e-9 * 2.5 * pi, "lhs is not 2.5 pi");
    o.need(std::abs(r.at("rhs") - rhs) <= 1e-9 * rhs, "rhs is not pi (1 + sqrt 0.5)^2");
    o.need(r.at("gap") >= 0.41 * pi, "gap below 0.41 pi");
    o.need(std::abs(r.at("control_lhs") - r.at("control_rhs")) <= 1e-9, "j = 1 control not additive");
    char buf[128];
    std::snprintf(buf, sizeof buf, "lhs %.12f rhs %.12f gap/pi %.4f", r.at("lhs"), r.at("rhs"), r.at("gap") / pi);
    o.detail += buf;
  });

  criterion(3, "isoperimetric failure along t = 1 - 2^-l", 5, [](Outcome& o) {
    const Report r = counterexample_iso(1, 2, ramp_density(), halving_sequence(10));
    o.need(r.verdict == Verdict::Holds, std::string("verdict ") + to_string(r.verdict));
    o.need(r.at("members") == 10, "not all ten members evaluated");
    bool positive = true;
    for (int i = 0; i < 10; ++i) positive = positive && r.at("z_j_" + std::to_string(i)) > 0;
    o.need(positive, "non-positive value");
    o.need(r.at("decreasing") == 1, "not strictly decreasing");
    o.need(r.at("ratio") < 0.2, "last/first not below 0.2");
    o.need(r.at("constraint_error") <= 1e-9, "constraint off by more than 1e-9");
    char buf[96];
    std::snprintf(buf, sizeof buf, "ratio %.4f constraint error %.1e", r.at("ratio"), r.at("constraint_error"));
    o.detail += buf;
  });

  criterion(4, "lift coherence on 200 functions", 60, [](Outcome& o) {
    const std::vector<std::string> ids{"lift-volume", "lift-additivity", "lower-facet-transfer", "equator-boundary"};
    need_all_hold(o, run("lift", 200, ids), {{ids[0], 200}, {ids[1], 200}, {ids[2], 200}, {ids[3], 200}});
  });

  criterion(5, "conjugate Wulff volume and first variation", 120, [](Outcome& o) {
    need_all_hold(o, run("functionals", 200, {"conjugate-wulff-volume"}), {{"conjugate-wulff-volume", 200}});
    need_all_hold(o, run("wulff", 200, {"first-variation"}), {{"first-variation", 200}});
  });

  criterion(6, "Wulff inequality, equality cases and body version", 300, [](Outcome& o) {
    const std::vector<std::string> ids{"wulff-inequality", "wulff-equality", "body-wulff-inequality"};
    need_all_hold(o, run("wulff", 200, ids), {{ids[0], 200}, {ids[1], 200}, {ids[2], 200}});
  });

  criterion(7, "mixed functionals", 180, [](Outcome& o) {
    need_all_hold(o, run("functionals", 100, {"mixed-functional-representation"}), {{"mixed-functional-representation", 100}});
    const std::vector<std::string> ids{"mixed-functional-af", "mixed-ma-inequality"};
    need_all_hold(o, run("functionals", 200, ids), {{ids[0], 200}, {ids[1], 200}});
  });

  criterion(8, "symmetrization", 300, [](Outcome& o) {
    const std::vector<std::string> ids{"shadow-convexity", "symmetrization-chain", "gradient-mean-zero"};
    need_all_hold(o, run("symmetrization", 100, ids), {{ids[0], 100}, {ids[1], 100}, {ids[2], 100}});
  });

  criterion(9, "suite all, seed 7, 200 trials, zero violations", 1e9, [](Outcome& o) {
    const std::vector<Report> rs = run("all", 200, {});
    int violated = 0;
    for (const Report& r : rs) {
      if (r.verdict == Verdict::Violated) {
        ++violated;
        o.need(false, r.statement + " violated (" + r.note + ")");
      }
    }
    for (const char* id : {"biconjugation", "polarization-symmetry", "measure-totals", "direction-monotonicity"}) {
      const auto it = std::find_if(rs.begin(), rs.end(), [&](const Report& r) { return r.statement == id; });
      o.need(it != rs.end() && it->verdict == Verdict::Holds, std::string(id) + " did not hold");
    }
    if (o.ok) o.detail = std::to_string(rs.size()) + " reports, " + std::to_string(violated) + " violated";
  });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
