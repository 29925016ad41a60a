// chamber_calc: exact and Monte Carlo evaluation of the beta_2 constants,
// identity verification and the three-term expansion model.
//
// Exit codes: 0 ok, 1 usage or other error, 2 failed check or incomparable
// inputs, 3 divergence or suspected infinite variance, 4 schema violation.

#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <regex>

#include "CLI11.hpp"

#include "chamber/beta.hpp"
#include "chamber/errors.hpp"
#include "chamber/expansion.hpp"
#include "chamber/mc.hpp"
#include "chamber/report_io.hpp"
#include "chamber/selberg.hpp"

using namespace chamber;

namespace {

enum class Format { Json, Csv };

struct Beta2Args {
  std::optional<int> m;
  std::string m_range;
  bool exact = false;
  bool mc = false;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::uint32_t batches = 100;
  int max_exact_m = 6;
  bool csv = false;
};

struct VerifyArgs {
  int m = 0;
  std::string identity = "all";
};

struct ExpandArgs {
  std::string input;
  bool override_bounds = false;
  std::optional<std::uint64_t> n_max;
  int max_exact_m = 6;
};

void emit(const std::vector<OutputEnvelope>& envs, Format format, bool as_array) {
  if (format == Format::Csv) {
    std::cout << csv_header() << '\n';
    for (const auto& e : envs) {
      for (const auto& row : csv_rows(e)) std::cout << to_csv_line(row) << '\n';
    }
    return;
  }
  if (as_array) {
    Json arr = Json::array();
    for (const auto& e : envs) arr.push_back(e.to_json());
    std::cout << arr.dump(2) << '\n';
  } else {
    std::cout << envs.front().to_json().dump(2) << '\n';
  }
}

std::pair<int, int> parse_range(const std::string& text) {
  static const std::regex re(R"(^\s*(\d+)\s*(?:\.\.|-|:)\s*(\d+)\s*$)");
  std::smatch match;
  if (!std::regex_match(text, match, re)) throw InvalidArgument("--m-range expects LO..HI, got '" + text + "'");
  const int lo = std::stoi(match[1]);
  const int hi = std::stoi(match[2]);
  if (lo < 1 || hi < lo) throw InvalidArgument("--m-range needs 1 <= LO <= HI");
  return {lo, hi};
}

int run_beta2(const Beta2Args& args) {
  std::vector<int> dims;
  if (args.m) dims.push_back(*args.m);
  if (!args.m_range.empty()) {
    const auto [lo, hi] = parse_range(args.m_range);
    for (int m = lo; m <= hi; ++m) dims.push_back(m);
  }
  if (dims.empty()) throw InvalidArgument("one of --m or --m-range is required");

  BetaOptions opts;
  opts.max_exact_m = args.mc ? 0 : args.max_exact_m;
  opts.exact.max_dimension = std::max(opts.exact.max_dimension, args.max_exact_m);
  opts.mc.samples = args.samples;
  opts.mc.seed = args.seed;
  opts.mc.batches = args.batches;

  std::vector<OutputEnvelope> envs;
  bool ok = true;
  for (int m : dims) {
    if (args.exact && m > args.max_exact_m) {
      throw DimensionCapExceeded("exact mode is capped at m <= " + std::to_string(args.max_exact_m) +
                                 " (raise --max-exact-m or use --mc)");
    }
    const BetaReport r = beta2_total(m, opts);
    for (const auto& c : r.crosschecks) {
      if (!c.passed) std::cerr << "check failed: " << c.name << ": " << c.lhs << " != " << c.rhs << '\n';
    }
    ok = ok && r.all_checks_passed();
    envs.push_back(beta_envelope(r));
  }
  emit(envs, args.csv ? Format::Csv : Format::Json, !args.m_range.empty());
  return ok ? 0 : 2;
}

CrossCheck identity_check(const IdentityResult& r) {
  CrossCheck c = CrossCheck::exact("identity " + to_string(r.id) + " at m=" + std::to_string(r.m), r.lhs, r.rhs);
  return c;
}

void verify_identities(const VerifyArgs& args, OutputEnvelope& env) {
  std::vector<Identity> ids;
  if (args.identity == "all") {
    ids = {Identity::H, Identity::J, Identity::L, Identity::I, Identity::K, Identity::K1};
  } else {
    ids = {parse_identity(args.identity)};
  }
  Json results = Json::object();
  for (Identity id : ids) {
    if (args.identity == "all" && args.m < identity_min_m(id)) {
      std::cerr << "skipping " << to_string(id) << ": needs m >= " << identity_min_m(id) << '\n';
      continue;
    }
    ExactOptions opts;
    opts.max_dimension = std::max(opts.max_dimension, args.m);
    try {
      const IdentityResult r = verify_identity(id, args.m, opts);
      results[to_string(id)] = {{"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)}, {"equal", true}};
      env.checks.push_back(identity_check(r));
    } catch (const IdentityFailure& e) {
      std::cerr << e.what() << "\n  lhs = " << e.lhs() << "\n  rhs = " << e.rhs() << '\n';
      results[to_string(id)] = {{"lhs", e.lhs()}, {"rhs", e.rhs()}, {"equal", false}};
      env.checks.push_back({std::string("identity ") + to_string(id), false, e.lhs(), e.rhs(), 0.0, 0.0});
    }
  }
  env.results["identities"] = results;
}

void verify_routes(const VerifyArgs& args, OutputEnvelope& env) {
  BetaOptions opts;
  opts.max_exact_m = std::max(opts.max_exact_m, args.m);
  opts.exact.max_dimension = std::max(opts.exact.max_dimension, args.m);
  const BetaReport r = beta2_total(args.m, opts);
  env.results = beta_envelope(r).results;
  env.checks = r.crosschecks;
}

void verify_selberg(const VerifyArgs& args, OutputEnvelope& env) {
  const int m = args.m;
  const Rational gamma(1, 2);
  Json rows = Json::array();
  auto push = [&](CrossCheck c) {
    if (!c.passed) std::cerr << "check failed: " << c.name << "\n  lhs = " << c.lhs << "\n  rhs = " << c.rhs << '\n';
    env.checks.push_back(std::move(c));
  };
  for (int alpha = 1; alpha <= 3; ++alpha) {
    std::vector<std::pair<int, int>> pairs{{0, 0}};
    for (int ell = 0; ell < m; ++ell) {
      for (int k = 0; k <= ell; ++k) {
        if (k != 0 || ell != 0) pairs.emplace_back(k, ell);
      }
    }
    for (const auto& [k, ell] : pairs) {
      const SelbergParams p{m, Rational(alpha), gamma, k, ell};
      const std::string tag =
          "alpha=" + std::to_string(alpha) + " k=" + std::to_string(k) + " ell=" + std::to_string(ell);
      const PiScaledRational closed = selberg_moment(p);
      const PiScaledRational brute = selberg_brute_force(p);
      rows.push_back({{"alpha", alpha}, {"k", k}, {"ell", ell}, {"closed", to_json(closed)}, {"brute", to_json(brute)}});
      push(CrossCheck::exact("selberg moment vs sector integration " + tag, closed, brute));
      if (k >= 1) {
        const PiScaledRational prev = selberg_moment({m, Rational(alpha), gamma, k - 1, ell});
        const Rational factor = gamma * ((Rational(alpha) + 1) / gamma + 2 * m - ell - k);
        push(CrossCheck::exact("k recurrence " + tag, closed, PiScaledRational(factor) * prev));
      } else if (ell >= 1) {
        const PiScaledRational prev = selberg_moment({m, Rational(alpha), gamma, 0, ell - 1});
        const Rational factor = gamma * (Rational(alpha) / gamma + m - ell);
        push(CrossCheck::exact("ell recurrence " + tag, closed, PiScaledRational(factor) * prev));
      }
    }
  }
  env.results["selberg"] = rows;
}

int run_verify(const VerifyArgs& args) {
  OutputEnvelope env;
  env.command = "verify";
  env.m = args.m;
  if (args.identity == "routes") {
    verify_routes(args, env);
  } else if (args.identity == "selberg") {
    verify_selberg(args, env);
  } else {
    verify_identities(args, env);
  }
  env.results["suite"] = args.identity;
  bool ok = true;
  for (const auto& c : env.checks) ok = ok && c.passed;
  emit({env}, Format::Json, false);
  return ok ? 0 : 2;
}

Json value_json(const ExpansionValue& v) {
  return {{"leading", v.leading}, {"subleading", v.subleading}, {"third", v.third}, {"total", v.total}};
}

int run_expand(const ExpandArgs& args) {
  std::ifstream in(args.input);
  if (!in) throw InvalidArgument("cannot open " + args.input);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  ExpansionRequest req = expansion_request_from_json(doc, args.override_bounds);
  if (args.n_max) req.n_max = *args.n_max;

  const int m = req.a.m;
  if (m > args.max_exact_m) {
    throw DimensionCapExceeded("beta2 is computed exactly only for m <= " + std::to_string(args.max_exact_m));
  }
  ExactOptions exact;
  exact.max_dimension = std::max(exact.max_dimension, args.max_exact_m);
  const PiScaledRational beta2 = beta2m_closed(m) + beta2_prime(m, PrimeRoute::DeltaReduced, exact);
  req.a.coeffs.beta2 = beta2;
  if (req.b) req.b->coeffs.beta2 = beta2m_closed(req.b->m) + beta2_prime(req.b->m, PrimeRoute::DeltaReduced, exact);

  OutputEnvelope env;
  env.command = "expand";
  env.m = m;
  env.exact = false;
  Json& res = env.results;
  res["label"] = "model";
  res["beta2"] = to_json(beta2);
  std::vector<std::string> warnings;
  const ExpansionValue va = evaluate_terms(req.a);
  warnings = va.warnings;
  res["a"] = value_json(va);
  if (req.b) {
    const ExpansionValue vb = evaluate_terms(req.b.value());
    for (const auto& w : vb.warnings) warnings.push_back("b: " + w);
    res["b"] = value_json(vb);
    const Comparison c = compare_metrics(req.a, *req.b, req.n_max);
    res["comparison"] = {{"winner", to_string(c.winner)},
                         {"crossover_N", c.crossover_N ? Json(*c.crossover_N) : Json(nullptr)},
                         {"resolved", c.resolved},
                         {"n_max", req.n_max}};
  }
  res["warnings"] = warnings;
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  emit({env}, Format::Json, false);
  return 0;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IdentityFailure*>(&e) || dynamic_cast<const IncomparableInputs*>(&e) ||
      dynamic_cast<const PositivityViolation*>(&e)) {
    return 2;
  }
  if (dynamic_cast<const DivergentIntegral*>(&e) || dynamic_cast<const InfiniteVarianceSuspected*>(&e) ||
      dynamic_cast<const UncancelledSingularity*>(&e)) {
    return 3;
  }
  if (dynamic_cast<const SchemaError*>(&e) || dynamic_cast<const MissingCoefficient*>(&e)) return 4;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte Carlo evaluation of the beta_2 constants"};
  app.set_version_flag("--version", std::string(CHAMBER_VERSION));
  app.require_subcommand(1);

  Beta2Args b;
  auto* beta2 = app.add_subcommand("beta2", "beta_2(m) with its per-index pieces and cross-checks");
  auto* m_opt = beta2->add_option("--m", b.m, "Dimension")->check(CLI::Range(1, 1000));
  auto* range_opt = beta2->add_option("--m-range", b.m_range, "Sweep LO..HI");
  m_opt->excludes(range_opt);
  auto* exact_flag = beta2->add_flag("--exact", b.exact, "Exact arithmetic only");
  auto* mc_flag = beta2->add_flag("--mc", b.mc, "Monte Carlo only");
  exact_flag->excludes(mc_flag);
  beta2->add_option("--samples", b.samples, "Monte Carlo samples")->capture_default_str()->check(CLI::Range(std::uint64_t{1000}, std::numeric_limits<std::uint64_t>::max()));
  beta2->add_option("--seed", b.seed, "Monte Carlo seed")->capture_default_str();
  beta2->add_option("--batches", b.batches, "Batches for the standard error")->capture_default_str();
  beta2->add_option("--max-exact-m", b.max_exact_m, "Largest m computed exactly")->capture_default_str();
  auto* json_flag = beta2->add_flag("--json", "JSON output (default)");
  auto* csv_flag = beta2->add_flag("--csv", b.csv, "CSV output");
  json_flag->excludes(csv_flag);

  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "Exact identity and route checks");
  verify->add_option("--m", v.m, "Dimension")->required()->check(CLI::Range(1, 1000));
  verify->add_option("--identity", v.identity, "all|H|J|L|I|K|K1|routes|selberg")
      ->check(CLI::IsMember({"all", "H", "J", "L", "I", "K", "K1", "routes", "selberg"}))
      ->capture_default_str();

  ExpandArgs e;
  auto* expand = app.add_subcommand("expand", "Evaluate or compare the three-term expansion model");
  expand->add_option("--input", e.input, "ExpansionInput JSON file")->required();
  expand->add_flag("--override", e.override_bounds, "Accept n_of_m outside the leading-coefficient bounds");
  expand->add_option("--n-max", e.n_max, "Largest N scanned when comparing");
  expand->add_option("--max-exact-m", e.max_exact_m, "Largest m for the exact beta_2")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    // help and version print and exit 0; every usage error is exit 1
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*beta2) return run_beta2(b);
    if (*verify) return run_verify(v);
    if (*expand) return run_expand(e);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return exit_code_for(err);
  }
  return 1;
}
