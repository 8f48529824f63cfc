// cuntzkit command-line front end: evaluate states and extensions, compute
// period / quasi-orbit data, compare extensions, classify conjugacy, and run
// the simulator self-checks. Exit codes: 0 success (including negative
// verdicts), 2 file/parse errors, 3 domain errors.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cuntzkit/classifier.hpp"
#include "cuntzkit/extension.hpp"
#include "cuntzkit/gns.hpp"
#include "cuntzkit/io.hpp"
#include "cuntzkit/parser.hpp"

namespace {

using nlohmann::json;
using namespace cuntzkit;

void emit(bool as_json, const json& j) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (auto& [k, v] : j.items()) {
    if (v.is_string())
      std::cout << k << ": " << v.get<std::string>() << "\n";
    else
      std::cout << k << ": " << v.dump() << "\n";
  }
}

json complex_json(cd z) { return {z.real(), z.imag()}; }

std::uint64_t effective_seed(std::uint64_t seed, bool seed_given) {
  if (!seed_given)
    if (const char* env = std::getenv("CUNTZKIT_SEED")) return std::stoull(env);
  return seed;
}

struct OracleReport {
  int trials = 0;
  double max_dev = 0.0;
};

OracleReport oracle_agreement(const ProductState& f, const CircleMeasure& mu, int max_deg,
                              int trials, std::uint64_t seed) {
  const ExtensionState rho(f, mu);
  const GnsContext ctx(f, mu);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(0, max_deg), letter(1, f.n);
  OracleReport rep;
  rep.trials = trials;
  for (int i = 0; i < trials; ++i) {
    MultiIndex s, t;
    for (int j = len(rng); j > 0; --j) s.push_back(letter(rng));
    for (int j = len(rng); j > 0; --j) t.push_back(letter(rng));
    const AlgebraElement x = AlgebraElement::monomial(f.n, s, t);
    rep.max_dev = std::max(rep.max_dev, std::abs(extend_eval(rho, x) - vector_state(ctx, x)));
  }
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator-algebra toolkit: product states, extensions, classifiers"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable JSON output");

  std::string seq_path, seq2_path, measure_path, measure2_path, tuple_path, tuple2_path, expr;
  int max_len = 4, trials = 100;
  std::uint64_t seed = 20260823ULL;

  auto* c_eval = app.add_subcommand("eval-state", "evaluate a product state on an expression");
  c_eval->add_option("--seq", seq_path, "sequence file")->required();
  c_eval->add_option("--expr", expr, "algebra expression")->required();

  auto* c_period = app.add_subcommand("period", "minimal period of a sequence");
  c_period->add_option("--seq", seq_path, "sequence file")->required();

  auto* c_qo = app.add_subcommand("quasi-orbit", "canonical quasi-orbit line tuple");
  c_qo->add_option("--seq", seq_path, "sequence file")->required();

  auto* c_ext = app.add_subcommand("extend-eval", "evaluate the extension on an expression");
  c_ext->add_option("--seq", seq_path, "sequence file")->required();
  c_ext->add_option("--measure", measure_path, "measure file")->required();
  c_ext->add_option("--expr", expr, "algebra expression")->required();

  auto* c_cmp = app.add_subcommand("compare-extensions", "unitary equivalence / disjointness");
  c_cmp->add_option("--seq", seq_path, "first sequence")->required();
  c_cmp->add_option("--measure", measure_path, "first measure")->required();
  c_cmp->add_option("--seq2", seq2_path, "second sequence")->required();
  c_cmp->add_option("--measure2", measure2_path, "second measure")->required();

  auto* c_endo = app.add_subcommand("classify-endo", "conjugacy of induced endomorphisms");
  c_endo->add_option("--seq", seq_path, "first sequence")->required();
  c_endo->add_option("--measure", measure_path, "first measure")->required();
  c_endo->add_option("--seq2", seq2_path, "second sequence")->required();
  c_endo->add_option("--measure2", measure2_path, "second measure")->required();

  auto* c_cuntz = app.add_subcommand("classify-cuntz", "line-tuple conjugacy up to rotation");
  c_cuntz->add_option("--tuple", tuple_path, "first tuple file")->required();
  c_cuntz->add_option("--tuple2", tuple2_path, "second tuple file")->required();

  auto* c_sim = app.add_subcommand("simulate-check", "relation checks and oracle agreement");
  c_sim->add_option("--seq", seq_path, "sequence file")->required();
  c_sim->add_option("--measure", measure_path, "measure file (atomic)")->required();
  c_sim->add_option("--max-len", max_len, "max monomial length");
  c_sim->add_option("--trials", trials, "number of random trials");
  auto* seed_opt = c_sim->add_option("--seed", seed, "RNG seed");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_eval) {
      const ProductState f = load_sequence(seq_path);
      const cd v = eval_product_state(f, parse_element(expr, f.n));
      emit(as_json, {{"value", complex_json(v)}, {"value_text", format_complex(v)}});
    } else if (*c_period) {
      const ProductState f = load_sequence(seq_path);
      emit(as_json, {{"period", period(f)}});
    } else if (*c_qo) {
      const ProductState f = load_sequence(seq_path);
      json j = tuple_to_json(quasi_orbit_rep(f));
      j["period"] = period(f);
      emit(as_json, j);
    } else if (*c_ext) {
      const ProductState f = load_sequence(seq_path);
      const ExtensionState rho(f, load_measure(measure_path));
      const cd v = extend_eval(rho, parse_element(expr, f.n));
      emit(as_json, {{"value", complex_json(v)}, {"value_text", format_complex(v)}});
    } else if (*c_cmp) {
      const ConjugacyVerdict v =
          extension_compare(load_sequence(seq_path), load_measure(measure_path),
                            load_sequence(seq2_path), load_measure(measure2_path));
      emit(as_json, verdict_to_json(v));
    } else if (*c_endo) {
      const ConjugacyVerdict v =
          endo_conjugate(load_sequence(seq_path), load_measure(measure_path),
                         load_sequence(seq2_path), load_measure(measure2_path));
      emit(as_json, verdict_to_json(v));
    } else if (*c_cuntz) {
      const ConjugacyVerdict v =
          cuntz_state_conjugate(load_tuple(tuple_path), load_tuple(tuple2_path));
      emit(as_json, verdict_to_json(v));
    } else if (*c_sim) {
      const std::uint64_t s = effective_seed(seed, seed_opt->count() > 0);
      const ProductState f = load_sequence(seq_path);
      const CircleMeasure mu = load_measure(measure_path);
      const GnsContext ctx(f, mu);
      const RelationReport rel = check_relations(ctx, max_len, trials, s);
      const OracleReport orc = oracle_agreement(f, mu, max_len, trials, s + 1);
      emit(as_json, {{"seed", s},
                     {"trials", rel.trials},
                     {"dev_pair_isometry", rel.dev_pair_isometry},
                     {"dev_completeness", rel.dev_completeness},
                     {"dev_link", rel.dev_link},
                     {"dev_compression", rel.dev_compression},
                     {"max_relation_deviation", rel.max_deviation()},
                     {"oracle_trials", orc.trials},
                     {"oracle_max_deviation", orc.max_dev}});
    }
  } catch (const file_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
