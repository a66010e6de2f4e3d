#include "pqpierce/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pqpierce/errors.hpp"
#include "pqpierce/json_io.hpp"

namespace pqpierce {

namespace {

using json_io::json;

struct GlobalOptions {
  std::string input;
  std::string output;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget;
  std::string format = "text";
};

/// --budget beats PQPIERCE_BUDGET beats the command default.
std::uint64_t resolve_budget(const GlobalOptions& g, std::uint64_t fallback) {
  if (g.budget) return *g.budget;
  if (const char* env = std::getenv("PQPIERCE_BUDGET"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("PQPIERCE_BUDGET is not a number: ") + env);
    }
  }
  return fallback;
}

class Emitter {
 public:
  Emitter(const GlobalOptions& g, std::ostream& out) : g_(g), out_(out) {}

  /// Writes `doc` as JSON, or `text` in text mode.
  void emit(const json& doc, const std::string& text) {
    const std::string body = g_.format == "json" ? doc.dump(2) + "\n" : text;
    if (g_.output.empty()) {
      out_ << body;
    } else {
      std::ofstream file(g_.output);
      if (!file) throw std::runtime_error("cannot write '" + g_.output + "'");
      file << body;
    }
  }

 private:
  const GlobalOptions& g_;
  std::ostream& out_;
};

json require_input(const GlobalOptions& g) {
  if (g.input.empty()) throw CLI::ValidationError("--input", "this command needs --input FILE");
  return json_io::read_file(g.input);
}

Family load_family(const GlobalOptions& g) { return json_io::decode_instance(require_input(g)).family(); }

std::string points_text(const std::vector<Point>& points) {
  std::string out;
  for (const auto& p : points) out += "  " + to_string(p) + "\n";
  return out;
}

std::string indices_text(const std::vector<std::size_t>& idx) {
  std::string out = "[";
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "," : "") + std::to_string(idx[i]);
  return out + "]";
}

json error_doc(const std::string& kind, const std::string& message, int code) {
  return {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Piercing numbers, fractional piercing certificates and weak epsilon-nets", "pqpierce"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--input", g.input, "Input JSON file");
  app.add_option("--output", g.output, "Write the result here instead of stdout");
  app.add_option("--seed", g.seed, "Seed for randomized generators");
  app.add_option("--budget", g.budget, "Enumeration / search budget (overrides PQPIERCE_BUDGET)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::function<int()> action;
  Emitter emitter(g, out);

  // verify-pq
  std::size_t pq_p = 0, pq_q = 0;
  auto* verify_pq_cmd = app.add_subcommand("verify-pq", "Decide the (p,q) property exhaustively");
  verify_pq_cmd->add_option("--p", pq_p)->required();
  verify_pq_cmd->add_option("--q", pq_q)->required();
  verify_pq_cmd->callback([&] {
    action = [&] {
      const auto report = verify_pq(load_family(g), pq_p, pq_q, resolve_budget(g, kDefaultSubsetBudget));
      std::string text = "holds: " + std::string(report.holds ? "true" : "false") + "\n";
      if (report.witness) text += "witness: " + indices_text(*report.witness) + "\n";
      emitter.emit(json_io::encode(report), text);
      return report.holds ? kExitOk : kExitViolation;
    };
  });

  // pierce-exact
  auto* pierce_cmd = app.add_subcommand("pierce-exact", "Minimum piercing set by branch-and-bound");
  pierce_cmd->callback([&] {
    action = [&] {
      const Family f = load_family(g);
      const auto result = exact_piercing(f, resolve_budget(g, kDefaultNodeBudget));
      std::string text = std::to_string(result.size()) + "\n";
      if (!result.optimal) text += "(budget exhausted: best cover found, not proven optimal)\n";
      text += points_text(result.certificate.points);
      emitter.emit(json_io::encode(result), text);
      return result.optimal ? kExitOk : kExitBudget;
    };
  });

  // gamma-lp
  auto* gamma_cmd = app.add_subcommand("gamma-lp", "Optimal vertex distribution with its dual certificate");
  gamma_cmd->callback([&] {
    action = [&] {
      const auto h = build_hypergraph(load_family(g));
      const auto cert = gamma_lp(h);
      emitter.emit(json_io::encode(h, cert), "gamma: " + to_string(cert.gamma) + "\n");
      return kExitOk;
    };
  });

  // heavy-multiset
  std::string cap_text = kDefaultDenominatorCap.str();
  auto* heavy_cmd = app.add_subcommand("heavy-multiset", "Point multiset hitting every body in a gamma fraction");
  heavy_cmd->add_option("--cap", cap_text, "Common-denominator cap");
  heavy_cmd->callback([&] {
    action = [&] {
      const auto result = heavy_multiset(load_family(g), numerator_of(parse_rational(cap_text)));
      const auto& y = result.multiset;
      std::string text = "gamma: " + to_string(y.gamma) + "\n|Y|: " + std::to_string(y.total) + "\n";
      if (y.denominator_guard_fired) text += "denominator guard fired (LP gamma " + to_string(result.fractional.gamma) + ")\n";
      emitter.emit(json_io::encode(y), text);
      return kExitOk;
    };
  });

  // eps-net
  std::string eps_text;
  std::string method_text;
  auto* net_cmd = app.add_subcommand("eps-net", "Weak epsilon-net of a point multiset");
  net_cmd->add_option("--epsilon", eps_text)->required();
  net_cmd->add_option("--method", method_text, "Quantile1D, Centerpoint, SlabPair2D or SupportFallback");
  net_cmd->callback([&] {
    action = [&] {
      const auto y = json_io::decode_multiset(require_input(g));
      std::optional<NetMethod> method;
      if (!method_text.empty()) method = parse_net_method(method_text);
      const auto result = weak_eps_net(y, parse_rational(eps_text), method, resolve_budget(g, kDefaultNetBudget));
      std::string text = "method: " + std::string(to_string(result.method)) + "\nsize: " +
                         std::to_string(result.net.size()) + "\nverified: " +
                         (result.verified ? (*result.verified ? "true" : "false") : "unverifiable") + "\n" +
                         points_text(result.net);
      emitter.emit(json_io::encode(result), text);
      if (!result.verified) return kExitBudget;
      return *result.verified ? kExitOk : kExitViolation;
    };
  });

  // verify-net
  std::string net_file;
  auto* verify_net_cmd = app.add_subcommand("verify-net", "Exhaustively check the weak epsilon-net property");
  verify_net_cmd->add_option("--net", net_file, "Net points (multiset JSON)")->required();
  verify_net_cmd->add_option("--epsilon", eps_text)->required();
  verify_net_cmd->callback([&] {
    action = [&] {
      const auto y = json_io::decode_multiset(require_input(g));
      const auto x = json_io::decode_multiset(json_io::read_file(net_file));
      const auto v = verify_weak_net(y, parse_rational(eps_text), x, resolve_budget(g, kDefaultNetBudget));
      static constexpr const char* kOutcome[] = {"passed", "failed", "unverifiable"};
      std::string text = std::string(kOutcome[static_cast<int>(v.outcome)]) + "\n";
      if (v.first_failure) text += "first failing subset: " + indices_text(*v.first_failure) + "\n";
      emitter.emit(json_io::encode(v), text);
      switch (v.outcome) {
        case NetVerification::Outcome::Passed: return kExitOk;
        case NetVerification::Outcome::Failed: return kExitViolation;
        case NetVerification::Outcome::Unverifiable: break;
      }
      return kExitBudget;
    };
  });

  // pipeline
  std::size_t pipe_p = 0;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Heavy multiset, weak net and certified piercing set");
  pipeline_cmd->add_option("--p", pipe_p)->required();
  pipeline_cmd->callback([&] {
    action = [&] {
      PipelineOptions opts;
      if (g.budget || std::getenv("PQPIERCE_BUDGET")) {
        const auto b = resolve_budget(g, 0);
        opts.subset_budget = opts.net_budget = opts.node_budget = b;
      }
      const auto report = run_pipeline(load_family(g), pipe_p, opts);
      std::string text = "gamma: " + to_string(report.achieved_gamma()) + "\n|Y|: " +
                         std::to_string(report.multiset_size()) + "\nnet method: " + to_string(report.net.method) +
                         (report.fallback_used ? " (fallback)" : "") + "\n|X|: " + std::to_string(report.net_size()) +
                         "\nexact optimum: " +
                         (report.exact_optimum ? std::to_string(*report.exact_optimum) : std::string("not computed")) +
                         "\n" + points_text(report.piercing.points);
      emitter.emit(json_io::encode(report), text);
      return kExitOk;
    };
  });

  // generate
  std::string kind;
  std::size_t gen_n = 10, gen_p = 0, gen_q = 0, gen_count = 8, gen_side = 3, gen_rounds = 200, gen_extra = 1;
  std::string thickness_text = "1/100", gen_eps_text = "1/3";
  auto* generate_cmd = app.add_subcommand("generate", "Emit a generated instance");
  generate_cmd
      ->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"slabs", "measure", "hd_tight_intervals", "search_43", "random_polygons", "random_intervals"}));
  auto* gen_n_opt = generate_cmd->add_option("--n", gen_n, "Number of bodies (search_43 defaults to 6)");
  generate_cmd->add_option("--p", gen_p, "hd_tight_intervals: p");
  generate_cmd->add_option("--q", gen_q, "hd_tight_intervals: q");
  generate_cmd->add_option("--extra", gen_extra, "hd_tight_intervals: cluster members beyond q");
  generate_cmd->add_option("--thickness", thickness_text, "slabs: initial thickness");
  generate_cmd->add_option("--epsilon", gen_eps_text, "measure: mass threshold");
  generate_cmd->add_option("--count", gen_count, "measure: number of bodies");
  generate_cmd->add_option("--side", gen_side, "measure: grid side of the uniform measure");
  generate_cmd->add_option("--rounds", gen_rounds, "search_43: random rounds");
  generate_cmd->callback([&] {
    action = [&] {
      Instance inst;
      if (kind == "slabs") {
        inst = generate_slabs(gen_n, parse_rational(thickness_text));
      } else if (kind == "measure") {
        inst = generate_measure(uniform_grid_measure(gen_side), parse_rational(gen_eps_text), gen_count, g.seed);
      } else if (kind == "hd_tight_intervals") {
        inst = generate_hd_tight_intervals(gen_p, gen_q, gen_extra);
      } else if (kind == "random_polygons") {
        inst = generate_random_polygons(gen_n, g.seed);
      } else if (kind == "random_intervals") {
        inst = generate_random_intervals(gen_n, g.seed);
      } else {
        const auto found = search_43(g.seed, gen_rounds, gen_n_opt->count() ? gen_n : 6);
        if (!found.found) {
          const json doc = {{"found", false},
                            {"rounds_run", found.rounds_run},
                            {"with_property", found.with_property},
                            {"best_piercing", found.best_piercing}};
          emitter.emit(doc, "no (4,3) family with piercing number >= 3 found in " +
                                std::to_string(found.rounds_run) + " rounds (best seen: " +
                                std::to_string(found.best_piercing) + ")\n");
          return kExitViolation;
        }
        inst = *found.found;
      }
      const json doc = json_io::encode(inst);
      emitter.emit(doc, doc.dump(2) + "\n");
      return kExitOk;
    };
  });

  // census
  auto* census_cmd = app.add_subcommand("census", "Fraction of intersecting (d+1)-tuples and deepest point");
  census_cmd->callback([&] {
    action = [&] {
      const auto c = fractional_helly_census(load_family(g), resolve_budget(g, kDefaultSubsetBudget));
      emitter.emit(json_io::encode(c), "alpha: " + to_string(c.alpha) + "\ndelta: " + to_string(c.delta) + "\n");
      return kExitOk;
    };
  });

  // check-t12
  std::size_t t12_x = 0;
  auto* t12_cmd = app.add_subcommand("check-t12", "Every x-subfamily pierceable by fewer than ceil(x/d) points?");
  t12_cmd->add_option("--x", t12_x)->required();
  t12_cmd->callback([&] {
    action = [&] {
      const bool holds = check_theorem_1_2_hypothesis(load_family(g), t12_x, resolve_budget(g, kDefaultSubsetBudget));
      emitter.emit(json{{"x", t12_x}, {"holds", holds}}, std::string(holds ? "true" : "false") + "\n");
      return holds ? kExitOk : kExitViolation;
    };
  });

  auto fail = [&](const std::string& kind_name, const std::string& message, int code, const json& extra = {}) {
    if (g.format == "json") {
      json doc = error_doc(kind_name, message, code);
      if (!extra.is_null()) doc["error"].update(extra);
      out << doc.dump(2) << "\n";
    } else {
      err << "error: " << message << "\n";
      if (extra.contains("witness")) err << "witness: " << extra["witness"].dump() << "\n";
    }
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    if (g.format == "json") return fail("usage", e.what(), kExitUsage);
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const PropertyViolation& e) {
    return fail("property_violation", e.what(), kExitViolation, {{"witness", e.witness()}});
  } catch (const BudgetExceeded& e) {
    return fail("budget_exhausted", e.what(), kExitBudget);
  } catch (const CLI::ValidationError& e) {
    return fail("usage", e.what(), kExitUsage);
  } catch (const std::invalid_argument& e) {
    return fail("invalid_input", e.what(), kExitUsage);
  } catch (const std::runtime_error& e) {
    return fail("input_error", e.what(), kExitUsage);
  }
}

}  // namespace pqpierce
