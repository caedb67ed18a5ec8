// randers-iso: isoperimetric checks on the Randers Poincare disc.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "randers/report.hpp"

namespace {

using namespace randers;

struct RunConfig {
  std::string command;
  double a = 0.5;
  double b = 0.3;
  std::string form = "bh";
  int n = QuadratureGrid::kDefaultNodes;
  std::uint64_t seed = 42;
  int trials = 200;
  double epsilon = 0.05;
  double tol = 1e-6;
  std::string output;
};

nlohmann::json echo(const RunConfig& rc) {
  return {{"command", rc.command}, {"a", rc.a},         {"b", rc.b},
          {"form", rc.form},       {"n", rc.n},         {"seed", rc.seed},
          {"trials", rc.trials},   {"epsilon", rc.epsilon}, {"tol", rc.tol}};
}

RandersConfig validated(const RunConfig& rc) {
  if (!(rc.a > 0.0 && rc.a < 1.0)) throw DomainError("--a must satisfy 0 < a < 1");
  if (!(rc.b >= 0.0 && rc.b < 1.0))
    throw DomainError("--b must satisfy 0 <= b < 1 (strong convexity needs b < 1)");
  const auto form = parse_volume_form(rc.form);
  if (!form) throw DomainError("--form must be one of bh, ht, max, min");
  QuadratureGrid{rc.n};  // throws on a bad node count
  if (rc.trials < 1) throw DomainError("--trials must be at least 1");
  if (!(rc.epsilon >= 0.0)) throw DomainError("--epsilon must be nonnegative");
  if (!(rc.tol > 0.0)) throw DomainError("--tol must be positive");
  return {rc.b, *form};
}

void emit(const RunConfig& rc, const std::string& content) {
  if (rc.output.empty())
    std::cout << content;
  else
    write_atomic(rc.output, content);
}

int cmd_certificate(const RunConfig& rc) {
  const RandersConfig cfg = validated(rc);
  CertificateOptions opts;
  opts.tol = rc.tol;
  opts.seed = rc.seed;
  const ExtremalityCertificate cert = build_certificate(rc.a, cfg, opts);
  nlohmann::json j = to_json(cert);
  j["config"] = echo(rc);
  emit(rc, j.dump(2) + "\n");
  return cert.pass ? 0 : 1;
}

int cmd_perturb(const RunConfig& rc) {
  const RandersConfig cfg = validated(rc);
  const PerturbationSpec spec{rc.seed, 4, rc.epsilon, rc.trials};
  const auto trials = run_trials(rc.a, cfg, spec, QuadratureGrid(rc.n));
  std::string csv = "# config: " + echo(rc).dump() + "\n" + trials_csv(trials);
  int violations = 0;
  for (const auto& t : trials) {
    if (t.ok()) continue;
    ++violations;
    csv += "# violation: index=" + std::to_string(t.index) +
           (t.error ? " error=" + *t.error : std::string()) + "\n";
  }
  emit(rc, csv);
  if (violations > 0) std::cerr << violations << " trial(s) violate the strict maximum\n";
  return violations == 0 ? 0 : 1;
}

int cmd_conjugate(const RunConfig& rc) {
  const RandersConfig cfg = validated(rc);
  const Circle<double> circle(rc.a);
  const LagrangeSystem sys{lambda_for_circle(rc.a, cfg), cfg};
  ConjugateScanOptions opts;
  opts.zero_tol = rc.tol;
  const ConjugateScanReport rep = conjugate_scan(circle, sys, opts);
  nlohmann::json j = to_json(rep, true);
  j["lambda"] = sys.lambda;
  j["config"] = echo(rc);
  emit(rc, j.dump(2) + "\n");
  return rep.zero_crossing ? 1 : 0;
}

int cmd_check_metric(const RunConfig& rc) {
  validated(rc);
  const MetricCheck check = check_metric(rc.b);
  nlohmann::json j = to_json(check);
  j["config"] = echo(rc);
  emit(rc, j.dump(2) + "\n");
  return check.pass ? 0 : 1;
}

int cmd_deficit_sweep(const RunConfig& rc) {
  validated(rc);
  std::vector<double> as;
  for (int i = 1; i <= 9; ++i) as.push_back(0.1 * i);
  const auto rows = deficit_sweep(as, rc.b, QuadratureGrid(rc.n));
  bool ok = true;
  for (const auto& r : rows) ok = ok && std::abs(r.deficit) <= rc.tol;
  emit(rc, "# config: " + echo(rc).dump() + "\n" + deficit_csv(rows));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isoperimetric verification on the Randers Poincare disc"};
  app.require_subcommand(1);
  RunConfig rc;

  auto add_common = [&rc](CLI::App* sub) {
    sub->add_option("--a", rc.a, "Euclidean radius of the circle, 0 < a < 1")->capture_default_str();
    sub->add_option("--b", rc.b, "alpha-norm of beta, 0 <= b < 1")->capture_default_str();
    sub->add_option("--form", rc.form, "volume form: bh, ht, max, min")->capture_default_str();
    sub->add_option("--n", rc.n, "quadrature nodes (power of two >= 256)")->capture_default_str();
    sub->add_option("--seed", rc.seed, "random seed")->capture_default_str();
    sub->add_option("--trials", rc.trials, "number of perturbation trials")->capture_default_str();
    sub->add_option("--epsilon", rc.epsilon, "perturbation scale")->capture_default_str();
    sub->add_option("--tol", rc.tol, "verification tolerance")->capture_default_str();
    sub->add_option("--output,-o", rc.output, "output file (default: stdout)");
  };

  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&);
  };
  const Entry entries[] = {
      {"certificate", "sufficiency certificate for a circle (JSON)", cmd_certificate},
      {"perturb", "length-matched perturbation trials (CSV)", cmd_perturb},
      {"conjugate", "Jacobi conjugate-point scan (JSON)", cmd_conjugate},
      {"check-metric", "beta norm, potential and Yasuda-Shimada checks (JSON)", cmd_check_metric},
      {"deficit-sweep", "isoperimetric deficit of circles over a radius grid (CSV)",
       cmd_deficit_sweep},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub);
    subs.emplace_back(sub, &e);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto& [sub, entry] : subs) {
    if (!sub->parsed()) continue;
    rc.command = entry->name;
    try {
      return entry->run(rc);
    } catch (const DomainError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "verification failed: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}
