#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "json_out.hpp"
#include "lempert/covering.hpp"
#include "lempert/disc_domain.hpp"
#include "lempert/errors.hpp"
#include "lempert/interpolation.hpp"
#include "lempert/node_optimizer.hpp"
#include "lempert/product_engine.hpp"

namespace lempert::cli {
namespace {

using Clock = std::chrono::steady_clock;

struct Globals {
  int threads = 1;
  std::uint64_t seed = 0;
  bool csv = false;
};

Json certificate_json(const DiscExpr& e, const std::vector<Complex>& nodes) {
  return Json{{"expression", e.describe()}, {"nodes", complex_list_json(nodes)}};
}

PoleSet poles_in(const std::string& domain, const std::string& list) {
  return PoleSet(PlaneDomain::parse(domain), parse_complex_list(list));
}

// Options are kept as raw strings so that the echo reproduces the input.
struct Command {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> opts;
  std::function<Json(const Command&, const Globals&)> body;

  void add(const std::string& name, const std::string& help, const std::string& fallback = "",
           bool required = false) {
    opts[name] = fallback;
    auto* o = app->add_option("--" + name, opts[name], help);
    if (required) o->required();
  }
  [[nodiscard]] const std::string& get(const std::string& name) const { return opts.at(name); }
  [[nodiscard]] bool given(const std::string& name) const { return !opts.at(name).empty(); }
  [[nodiscard]] Complex point(const std::string& name) const { return parse_complex(get(name)); }
  [[nodiscard]] double real(const std::string& name) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(get(name), &used);
      if (used != get(name).size()) throw std::invalid_argument(name);
      return v;
    } catch (const std::logic_error&) {
      throw DomainError("--" + name + " expects a number, got '" + get(name) + "'");
    }
  }
  [[nodiscard]] int integer(const std::string& name) const {
    const double v = real(name);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw DomainError("--" + name + " expects an integer");
    return static_cast<int>(v);
  }
};

OptimizerSettings optimizer_settings(const Command& c, const Globals& g) {
  OptimizerSettings s;
  s.restarts = c.integer("restarts");
  s.seed = g.seed;
  s.threads = g.threads;
  s.max_nodes = static_cast<std::size_t>(c.integer("max-nodes"));
  s.max_iterations = c.integer("iterations");
  return s;
}

Json eval_cmd(const Command& c, const Globals&) {
  const auto domain = PlaneDomain::parse(c.get("domain"));
  const auto poles = PoleSet(domain, parse_complex_list(c.get("poles")));
  const Complex z = c.point("at");
  domain.require_interior(z, "evaluation point");
  Json out;
  if (c.given("green")) {
    out["kind"] = "green";
    if (domain.kind() == DomainKind::UnitDisc) {
      out["value"] = green_disc(poles, z);
      out["tail_bound"] = 0.0;
    } else {
      const auto g = green_poleset_plane(poles, z);
      out["value"] = g.value;
      out["tail_bound"] = g.tail_bound;
      out["lifts_used"] = g.lifts_used;
      out["bounds"] = Json{{"lower", g.value * (1 - g.tail_bound)}, {"upper", g.value * (1 + g.tail_bound)}};
    }
    return out;
  }
  EvalResult r;
  if (c.given("n")) {
    if (poles.size() != 1) throw DomainError("--n needs a single pole");
    out["kind"] = "lempert_n";
    out["n"] = c.integer("n");
    r = lempert_N_plane(domain, poles[0], z, c.integer("n"));
  } else {
    out["kind"] = "lempert";
    r = domain.kind() == DomainKind::UnitDisc ? lempert_disc(poles, z) : lempert_poleset_plane(poles, z);
  }
  out["value"] = r.value;
  out["error_bound"] = r.error_bound;
  out["bounds"] = Json{{"lower", r.value - r.error_bound}, {"upper", r.value + r.error_bound}};
  out["certificate"] = certificate_json(r.certificate, r.nodes);
  return out;
}

Json lemma4_cmd(const Command& c, const Globals&) {
  Lemma4Problem p{parse_complex_list(c.get("mu")), c.real("q")};
  const auto s = lemma4_solve(p);
  double res = std::abs(s.f.scalar(0.0));
  double prod = 1.0;
  for (std::size_t j = 0; j < s.eta.size(); ++j) {
    res = std::max(res, std::abs(s.f.scalar(s.eta[j]) - p.mu[j]));
    prod *= std::abs(s.eta[j]);
  }
  Json out;
  out["a"] = s.a;
  out["branch"] = s.branch == Branch::Small ? "small" : "large";
  out["reduction_alpha"] = s.reduction_alpha;
  out["product"] = prod;
  out["product_error"] = std::abs(prod - p.q);
  out["residual"] = res;
  out["certificate"] = certificate_json(s.f, s.eta);
  out["tolerances"] = Json{{"residual", 1e-9}, {"product", 1e-9}};
  return out;
}

Json bidisc_cmd(const Command& c, const Globals& g) {
  const auto A = PoleSet(PlaneDomain::unit_disc(), parse_complex_list(c.get("A")));
  const auto B = PoleSet(PlaneDomain::unit_disc(), parse_complex_list(c.get("B")));
  const Complex z = c.point("z");
  const Complex w = c.point("w");
  const auto r = bidisc_lempert(A, B, z, w, optimizer_settings(c, g));
  Json out;
  out["value"] = r.value;
  out["bounds"] = Json{{"lower", std::max(lempert_disc(A, z).value, lempert_disc(B, w).value)}, {"upper", r.value}};
  Json subset = Json::array();
  for (const auto& [k, l] : r.best.subset) subset.push_back(Json::array({k, l}));
  out["certificate"] = Json{{"subset", subset},
                            {"nodes", complex_list_json(r.best.nodes)},
                            {"first_targets", complex_list_json(r.best.first_targets)},
                            {"second_targets", complex_list_json(r.best.second_targets)},
                            {"first_min_eigenvalue", r.first_min_eigenvalue},
                            {"second_min_eigenvalue", r.second_min_eigenvalue}};
  out["search"] = Json{{"problems", r.problems},
                       {"pruned", r.pruned},
                       {"infeasible_runs", r.infeasible_runs},
                       {"best_restart", r.best_restart}};
  Json rot = nullptr;
  if (z == Complex(0.0) && w == Complex(0.0) && A.size() == 2 && B.size() == 2) {
    try {
      const auto d = theorem7_decide(A, B);
      rot = Json{{"rotation", d.rotation}, {"theta", d.rotation ? Json(d.theta) : Json(nullptr)},
                 {"value", d.rotation ? Json(d.value) : Json(nullptr)}};
    } catch (const DomainError& e) {
      rot = Json{{"rotation", nullptr}, {"reason", e.what()}};
    }
  }
  out["rotation"] = rot;
  return out;
}

Json bounds_json(const BoundsReport& r) {
  return Json{{"lower", r.lower},
              {"upper", r.upper},
              {"l_D", r.l_D},
              {"l_G", r.l_G},
              {"l_G_N", r.l_G_N},
              {"slack", r.slack},
              {"residual", r.residual},
              {"equality_flag", r.equality_flag}};
}

Json bounds_cmd(const Command& c, const Globals&) {
  const auto A = poles_in(c.get("D"), c.get("A"));
  const auto G = PlaneDomain::parse(c.get("G"));
  const auto r = theorem5_bounds(A, G, c.point("b"), c.point("z"), c.point("w"));
  Json out;
  out["bounds"] = bounds_json(r);
  out["value"] = r.upper;
  out["certificate"] = certificate_json(r.certificate.xi, r.certificate.eta);
  out["tolerances"] = Json{{"equality_flag", kEqualityFlagTol}, {"residual", kCertificateResidualTol}};
  return out;
}

Json prop10_json(const Prop10Report& r) {
  return Json{{"poles", complex_list_json(r.poles)},
              {"targets", r.targets},
              {"l_D_prefix", r.l_D_prefix},
              {"l_G_prefix", r.l_G_prefix},
              {"equality_residual", r.equality_residual},
              {"literal_margin", r.literal_margin},
              {"minimal_margin", r.minimal_margin},
              {"attempts", r.attempts},
              {"bounds", bounds_json(r.bounds)}};
}

Json counterexample_cmd(const Command& c, const Globals& g) {
  const std::string kind = c.get("kind");
  Json out;
  out["kind"] = kind;
  Prop10Settings ps;
  ps.seed = g.seed;
  ps.n = static_cast<std::size_t>(c.integer("n"));
  ps.lifts = static_cast<std::size_t>(c.integer("lifts"));
  if (kind == "equality") {
    const auto r = prop10_construct(PlaneDomain::parse(c.get("D")), PlaneDomain::parse(c.get("G")), c.point("z"),
                                    c.point("w"), c.point("b"), ps);
    out["value"] = r.equality_residual;
    out["report"] = prop10_json(r);
  } else if (kind == "gap") {
    std::optional<std::vector<Complex>> extra;
    if (c.given("extra")) extra = parse_complex_list(c.get("extra"));
    const auto r = prop11_construct(PlaneDomain::parse(c.get("D")), PlaneDomain::parse(c.get("G")), c.point("z"),
                                    c.point("w"), c.point("b"), extra, ps, optimizer_settings(c, g));
    out["value"] = r.q;
    out["report"] = Json{{"base", prop10_json(r.base)},
                         {"product_upper", r.product_upper},
                         {"q", r.q},
                         {"extra", complex_list_json(r.extra)},
                         {"l_D_extra", r.l_D_extra},
                         {"l_D_A2", r.l_D_A2},
                         {"l_G2", r.l_G2},
                         {"g_G", r.g_G},
                         {"l_D_union", r.l_D_union},
                         {"rhs", r.rhs},
                         {"chain_estimate", r.chain_estimate},
                         {"rhs_strict", r.rhs_strict},
                         {"strict", r.strict}};
  } else if (kind == "level") {
    const auto A = PoleSet(PlaneDomain::unit_disc(), parse_complex_list(c.get("A")));
    const auto B = PoleSet(PlaneDomain::unit_disc(), parse_complex_list(c.get("B")));
    const auto r = corollary8_sample(A, c.point("z"), B, static_cast<std::size_t>(c.integer("count")), g.seed,
                                     g.threads);
    Json samples = Json::array();
    for (const auto& s : r.samples) {
      samples.push_back(Json{{"ray", s.ray},
                             {"w", complex_json(s.w)},
                             {"level_residual", s.level_residual},
                             {"automorphic", s.automorphic}});
    }
    out["value"] = r.level;
    out["report"] = Json{{"level", r.level},
                         {"automorphic_points", complex_list_json(r.automorphic_points)},
                         {"samples", samples}};
  } else if (kind == "extension") {
    const auto A = poles_in(c.get("D"), c.get("A"));
    const auto B = poles_in(c.get("G"), c.get("B"));
    const Complex z = c.point("z");
    const Complex w = c.point("w");
    double q = 0.0;
    Json qsource;
    if (c.given("q")) {
      q = c.real("q");
      qsource = "given";
    } else {
      const auto upper = mixed_product_upper(A, B, z, w, optimizer_settings(c, g));
      const double base = std::max(A.domain().kind() == DomainKind::UnitDisc ? lempert_disc(A, z).value
                                                                              : lempert_poleset_plane(A, z).value,
                                   B.domain().kind() == DomainKind::UnitDisc ? lempert_disc(B, w).value
                                                                              : lempert_poleset_plane(B, w).value);
      q = base / upper.value;
      qsource = Json{{"product_upper", upper.value}, {"base_max", base}};
    }
    const auto r = prop9_extend(A, B, z, w, q, poles_in(c.get("D"), c.get("A1")), poles_in(c.get("G"), c.get("B1")));
    out["value"] = r.green_product;
    out["report"] = Json{{"q", r.q},
                         {"q_source", qsource},
                         {"l_D_A", r.l_D_A},
                         {"l_G_B", r.l_G_B},
                         {"base_max", r.base_max},
                         {"product_value", r.product_value},
                         {"g_D_A1", r.g_D_A1},
                         {"g_G_B1", r.g_G_B1},
                         {"green_product", r.green_product},
                         {"green_tail_bound", r.green_tail_bound},
                         {"condition3", r.condition3},
                         {"chain_lower", r.chain_lower},
                         {"extended_max", r.extended_max},
                         {"strict", r.strict}};
  } else {
    throw DomainError("--kind must be one of extension, equality, gap, level");
  }
  return out;
}

Json verify_cmd(const Command& c, const Globals& g, std::string& err, int& exit_code) {
  AcceptanceOptions o;
  o.only = select_criteria(c.get("only"));
  o.rotation_expected = c.real("rotation-expected");
  o.seed = g.seed;
  const auto results = run_acceptance(o);
  Json list = Json::array();
  bool all = true;
  for (const auto& r : results) {
    err += format_line(r) + "\n";
    all = all && r.pass;
    list.push_back(Json{{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"seconds", r.seconds},
                        {"metrics", r.metrics}});
  }
  exit_code = all ? 0 : 1;
  return Json{{"all_pass", all}, {"criteria", list}};
}

Json error_json(const std::string& kind, const std::string& message, int code) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}, {"exit_code", code}}}};
}

}  // namespace

Complex parse_complex(const std::string& text) {
  static const std::string num = R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))";
  static const std::regex full("^" + num + R"(([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$)");
  static const std::regex real_only("^" + num + "$");
  static const std::regex imag_only("^" + num + "i$");
  std::smatch m;
  if (std::regex_match(text, m, full)) return {std::stod(m[1].str()), std::stod(m[2].str())};
  if (std::regex_match(text, m, real_only)) return {std::stod(m[1].str()), 0.0};
  if (std::regex_match(text, m, imag_only)) return {0.0, std::stod(m[1].str())};
  throw DomainError("malformed complex literal '" + text + "' (expected RE+IMi)");
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  if (out.empty()) throw DomainError("empty point list");
  return out;
}

Outcome run(const std::vector<std::string>& args) {
  Outcome result;
  const auto start = Clock::now();
  CLI::App app{"Lempert functions with product pole sets", "lempert"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--threads", g.threads, "worker threads (results do not depend on it)")->check(CLI::Range(1, 256));
  app.add_option("--seed", g.seed, "random seed (default 0)");
  app.add_flag("--csv", g.csv, "print key,value rows instead of JSON");

  std::vector<std::unique_ptr<Command>> commands;
  auto make = [&](const std::string& name, const std::string& help) {
    commands.push_back(std::make_unique<Command>());
    commands.back()->app = app.add_subcommand(name, help);
    return commands.back().get();
  };
  auto optimizer_opts = [](Command* c) {
    c->add("restarts", "random restarts per subset", "200");
    c->add("max-nodes", "largest subset of pole pairs", "4");
    c->add("iterations", "simplex iterations per restart", "2000");
  };

  auto* ev = make("eval", "Lempert (or Green) function of a plane domain");
  ev->add("domain", "disc, punctured or annulus:R", "disc");
  ev->add("poles", "pole list", "", true);
  ev->add("at", "evaluation point", "", true);
  ev->add("n", "N-pole Lempert function of a single pole");
  ev->app->add_flag_callback("--green", [ev] { ev->opts["green"] = "true"; }, "Green function instead");
  ev->opts["green"] = "";
  ev->body = eval_cmd;

  auto* l4 = make("lemma4", "interpolation z -> mu_j with prescribed node product");
  l4->add("mu", "targets", "", true);
  l4->add("q", "node product", "", true);
  l4->body = lemma4_cmd;

  auto* bd = make("bidisc", "upper bound of the bidisc Lempert function");
  bd->add("A", "first-coordinate poles", "", true);
  bd->add("B", "second-coordinate poles", "", true);
  bd->add("z", "first base point", "0+0i");
  bd->add("w", "second base point", "0+0i");
  optimizer_opts(bd);
  bd->body = bidisc_cmd;

  auto* bo = make("bounds", "two-sided estimate for A x {b}");
  bo->add("D", "domain of A", "disc");
  bo->add("A", "poles in D", "", true);
  bo->add("G", "domain of b", "disc");
  bo->add("b", "pole in G", "", true);
  bo->add("z", "base point in D", "0+0i");
  bo->add("w", "base point in G", "0+0i");
  bo->body = bounds_cmd;

  auto* ce = make("counterexample", "constructions where the product property fails");
  ce->add("kind", "extension, equality, gap or level", "", true);
  ce->add("D", "first domain", "disc");
  ce->add("G", "second domain", "disc");
  ce->add("A", "poles in D (extension, level)");
  ce->add("B", "poles in G (extension, level)");
  ce->add("A1", "extension poles in D");
  ce->add("B1", "extension poles in G");
  ce->add("q", "gap ratio (extension; computed when omitted)");
  ce->add("z", "base point in D", "0+0i");
  ce->add("w", "base point in G", "0+0i");
  ce->add("b", "pole in G (equality, gap)", "0+0i");
  ce->add("n", "number of poles (equality)", "4");
  ce->add("lifts", "lifts per point in the genericity margin", "200");
  ce->add("extra", "extra poles (gap)");
  ce->add("count", "level-set samples (level)", "10");
  optimizer_opts(ce);
  ce->body = counterexample_cmd;

  auto* ve = make("verify", "run the acceptance criteria");
  ve->add("only", "criterion ids or group names, comma-separated");
  ve->add("rotation-expected", "expected rotation-case value (negative control)", "0.25");

  Json report;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    Command* cmd = nullptr;
    for (auto& c : commands) {
      if (c->app->parsed()) cmd = c.get();
    }
    report["command"] = cmd->app->get_name();
    report["argv"] = args;
    Json inputs;
    for (const auto& [k, v] : cmd->opts) {
      if (!v.empty()) inputs[k] = v;
    }
    report["inputs"] = inputs;
    report["seed"] = g.seed;
    report["threads"] = g.threads;
    Json body;
    if (cmd == ve) {
      body = verify_cmd(*cmd, g, result.err, result.exit_code);
    } else {
      body = cmd->body(*cmd, g);
    }
    for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = 2;
    report = error_json("usage", e.what(), 2);
  } catch (const DomainError& e) {
    result.exit_code = 2;
    report = error_json("domain", e.what(), 2);
  } catch (const NumericError& e) {
    result.exit_code = 1;
    report = error_json("numeric", e.what(), 1);
  } catch (const std::exception& e) {
    result.exit_code = 1;
    report = error_json("internal", e.what(), 1);
  }
  if (report.contains("error")) report["argv"] = args;
  report["runtime_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  result.out = g.csv ? to_csv(report) : dump17(report) + "\n";
  return result;
}

}  // namespace lempert::cli
