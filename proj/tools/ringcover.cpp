#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ringcover/cache.hpp"
#include "ringcover/classify.hpp"
#include "ringcover/cover.hpp"
#include "ringcover/dsl.hpp"
#include "ringcover/ideals.hpp"
#include "ringcover/manifest.hpp"
#include "ringcover/report.hpp"
#include "ringcover_default_manifest.hpp"

namespace rc = ringcover;

namespace {

constexpr std::size_t kLargeOrder = 128;
constexpr std::size_t kRandomTriples = 10000;

struct Globals {
  bool json = false;
  std::string cache_dir;
  std::size_t max_lattice = rc::kDefaultLatticeCap;
  std::size_t sigma_cap = 12;
  std::size_t threads = 1;
  std::optional<std::uint64_t> seed;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

rc::SolverOptions solver_options(Globals const& g) {
  rc::SolverOptions opt;
  opt.sigma_cap = g.sigma_cap;
  opt.lattice_cap = g.max_lattice;
  std::string dir = g.cache_dir;
  if (dir.empty()) {
    if (char const* env = std::getenv("RINGCOVER_CACHE")) dir = env;
  }
  if (!dir.empty()) {
    auto cache = std::make_shared<rc::LatticeCache>(dir, g.seed.value_or(0));
    opt.lattice = [cache](rc::RingTable const& r, std::size_t cap) { return (*cache)(r, cap); };
  }
  return opt;
}

rc::RingTable load(std::string const& arg) {
  rc::RingTable r = rc::eval(rc::load_spec_text(arg));
  if (r.order() > kLargeOrder) {
    std::cerr << "warning: ring of order " << r.order() << " may take a long time\n";
  }
  return r;
}

void print_sets(rc::RingTable const& r, std::vector<rc::ElementSet> const& sets) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::cout << "  S" << i + 1 << " (order " << sets[i].size() << "):";
    sets[i].for_each([&](rc::Element x) { std::cout << ' ' << r.format(x); });
    std::cout << '\n';
  }
}

void emit(rc::Json const& j) { std::cout << j.dump(2) << '\n'; }

// Random associativity and distributivity checks on full elements, on top
// of the basis-level validation done at construction.
std::size_t random_triple_failures(rc::RingTable const& r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < kRandomTriples; ++t) {
    rc::Element a = rng() % r.order(), b = rng() % r.order(), c = rng() % r.order();
    if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c))) ++bad;
    else if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c))) ++bad;
  }
  return bad;
}

int cmd_info(Globals const& g, std::string const& spec) {
  auto start = std::chrono::steady_clock::now();
  rc::RingTable r = load(spec);
  rc::RadicalResult rad = rc::jacobson_radical(r);
  rc::LocalData ld = rc::local_data(r);
  rc::Decomposition dec = rc::decompose(r);
  std::vector<std::size_t> factor_orders;
  for (auto const& f : dec.factors) factor_orders.push_back(f.order());
  std::optional<std::size_t> triple_failures;
  if (g.seed) triple_failures = random_triple_failures(r, *g.seed);

  if (g.json) {
    rc::Json res{{"radical_order", rad.radical.size()},
                 {"nilpotency_index", rad.nilpotency_index},
                 {"units", r.units().size()},
                 {"local", ld.is_local},
                 {"decomposition", factor_orders}};
    if (ld.is_local) {
      res["residue_order"] = ld.residue_order;
      res["dim_j_mod_j2"] = ld.dim_j_mod_j2;
    }
    if (triple_failures) res["random_triple_failures"] = *triple_failures;
    emit(rc::make_report(spec, r, res, std::nullopt, seconds_since(start)));
  } else {
    std::cout << "order " << r.order() << "\ncharacteristic " << r.characteristic() << "\ncommutative "
              << (r.is_commutative() ? "yes" : "no") << "\nunits " << r.units().size() << "\nradical order "
              << rad.radical.size() << " (nilpotency index " << rad.nilpotency_index << ")\nlocal "
              << (ld.is_local ? "yes" : "no");
    if (ld.is_local) std::cout << ", residue field order " << ld.residue_order << ", dim J/J^2 = " << ld.dim_j_mod_j2;
    std::cout << "\ndecomposition";
    for (std::size_t o : factor_orders) std::cout << ' ' << o;
    std::cout << '\n';
    if (triple_failures) std::cout << "random triple failures " << *triple_failures << " / " << kRandomTriples << '\n';
  }
  return triple_failures.value_or(0) == 0 ? 0 : 1;
}

int cmd_subrings(Globals const& g, std::string const& spec, bool maximal_only) {
  auto start = std::chrono::steady_clock::now();
  rc::RingTable r = load(spec);
  rc::SolverOptions opt = solver_options(g);
  rc::SubringLattice lat = rc::lattice_for(r, opt);
  std::vector<rc::ElementSet> sets = maximal_only ? rc::maximal_subrings(lat, r) : lat.subrings;
  if (g.json) {
    rc::Json res{{"count", sets.size()}};
    if (!maximal_only) res["covering_pairs"] = lat.containment;
    emit(rc::make_report(spec, r, res, rc::sets_json(r, sets), seconds_since(start)));
  } else {
    std::cout << sets.size() << (maximal_only ? " maximal subrings\n" : " subrings\n");
    print_sets(r, sets);
  }
  return 0;
}

int cmd_sigma(Globals const& g, std::string const& spec) {
  auto start = std::chrono::steady_clock::now();
  rc::RingTable r = load(spec);
  rc::CoverResult c = rc::sigma(r, solver_options(g));
  if (g.json) {
    rc::Json res{{"sigma", rc::sigma_json(c.sigma)}, {"maximal", c.maximal.size()}, {"nodes", c.stats.nodes}};
    std::optional<rc::Json> w;
    if (c.sigma.coverable()) w = rc::sets_json(r, c.witness);
    emit(rc::make_report(spec, r, res, w, seconds_since(start)));
  } else {
    std::cout << c.sigma.str() << '\n';
    print_sets(r, c.witness);
  }
  return 0;
}

int cmd_sn(Globals const& g, std::size_t n, std::string const& spec) {
  auto start = std::chrono::steady_clock::now();
  rc::RingTable r = load(spec);
  rc::SnVerdict v = rc::in_sn(r, n, solver_options(g));
  char const* reason = v.failure == rc::SnFailure::none          ? "none"
                       : v.failure == rc::SnFailure::wrong_sigma ? "wrong_sigma"
                                                                 : "quotient_also_small";
  if (g.json) {
    rc::Json checks = rc::Json::array();
    for (auto const& m : v.minimal_ideal_checks) {
      checks.push_back({{"ideal", rc::set_json(r, m.ideal)},
                        {"quotient_sigma", m.exceeds_n ? rc::Json("> " + std::to_string(n))
                                                       : rc::sigma_json(m.quotient_sigma)}});
    }
    rc::Json res{{"n", n},
                 {"member", v.member},
                 {"sigma", rc::sigma_json(v.sigma_r.sigma)},
                 {"failure", reason},
                 {"minimal_ideals", checks}};
    std::optional<rc::Json> w;
    if (v.sigma_r.sigma.coverable()) w = rc::sets_json(r, v.sigma_r.witness);
    emit(rc::make_report(spec, r, res, w, seconds_since(start)));
  } else {
    std::cout << "member=" << (v.member ? "true" : "false") << "\nsigma " << v.sigma_r.sigma.str() << '\n';
    if (!v.member) std::cout << "reason " << reason << '\n';
  }
  return v.member ? 0 : 1;
}

int cmd_quotient(Globals const& g, std::string const& spec, std::string const& gens_text) {
  auto start = std::chrono::steady_clock::now();
  rc::RingTable r = load(spec);
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(gens_text);
  } catch (nlohmann::json::parse_error const&) {
    throw rc::RingError(rc::Errc::syntax_error, "GENS must look like [[0,1,0],[1,0,0]]");
  }
  rc::ElementSet gens(r.order());
  for (auto const& v : parsed) {
    auto c = v.get<rc::Coords>();
    if (c.size() != r.rank()) throw rc::RingError(rc::Errc::range_error, "generator length does not match the ring");
    gens.insert(r.index(c));
  }
  rc::ElementSet ideal = rc::ideal_closure(r, gens);
  rc::QuotientResult q = rc::quotient_ring(r, ideal);
  std::string table = rc::canonical_print(
      rc::expr::table(q.quotient.shape(), q.quotient.consts(), q.quotient.unit_coords()));
  if (g.json) {
    rc::Json res{{"ideal_order", ideal.size()}, {"quotient", rc::ring_json(q.quotient)}, {"table", table}};
    emit(rc::make_report(spec, r, res, std::nullopt, seconds_since(start)));
  } else {
    std::cout << "ideal order " << ideal.size() << "\nquotient order " << q.quotient.order() << '\n'
              << table << '\n';
  }
  return 0;
}

int cmd_iso(Globals const& g, std::string const& a, std::string const& b) {
  auto start = std::chrono::steady_clock::now();
  rc::RingTable ra = load(a);
  rc::RingTable rb = load(b);
  bool iso = rc::is_isomorphic(ra, rb);
  if (g.json) {
    rc::Json res{{"other", b}, {"isomorphic", iso}};
    emit(rc::make_report(a, ra, res, std::nullopt, seconds_since(start)));
  } else {
    std::cout << (iso ? "isomorphic" : "not isomorphic") << '\n';
  }
  return iso ? 0 : 1;
}

int cmd_verify(Globals const& g, std::string const& manifest) {
  std::string text = manifest.empty() ? std::string(kDefaultManifest) : rc::load_spec_text(manifest);
  auto records = rc::parse_manifest(text);
  rc::VerifyReport rep = rc::verify_manifest(std::move(records), solver_options(g), g.threads);
  if (g.json) {
    rc::Json rows = rc::Json::array();
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
      auto const& rec = rep.records[i];
      auto const& o = rep.outcomes[i];
      rc::Json row{{"line", rec.line}, {"spec", rec.spec},   {"claim", rec.claim_text}, {"citation", rec.citation},
                   {"pass", o.pass},   {"observed", o.observed}, {"seconds", o.seconds}};
      if (!o.error.empty()) row["error"] = o.error;
      rows.push_back(std::move(row));
    }
    emit(rc::Json{{"claims", rows.size()},
                  {"failures", rep.failures()},
                  {"rows", rows},
                  {"timing", {{"seconds", rep.seconds}}}});
  } else {
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
      auto const& rec = rep.records[i];
      auto const& o = rep.outcomes[i];
      std::cout << (o.pass ? "PASS " : "FAIL ") << rec.spec << " :: " << rec.claim_text << " :: " << rec.citation
                << "  [" << o.observed;
      if (!o.error.empty()) std::cout << ": " << o.error;
      std::cout << ", " << std::fixed << std::setprecision(3) << o.seconds << "s]\n";
    }
    std::cout << rep.records.size() - rep.failures() << "/" << rep.records.size() << " claims pass in "
              << std::fixed << std::setprecision(2) << rep.seconds << "s\n";
  }
  return rep.failures() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covering numbers, subring lattices and S(n) membership for finite rings"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Write a JSON report to stdout");
  app.add_option("--cache-dir", g.cache_dir, "Subring lattice cache directory (default: $RINGCOVER_CACHE)");
  app.add_option("--max-lattice", g.max_lattice, "Abort when a ring has more subrings than this")
      ->check(CLI::PositiveNumber);
  app.add_option("--sigma-cap", g.sigma_cap, "Largest covering number searched for")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads for verify-paper")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized checks");

  std::string spec, spec2, gens, manifest;
  std::size_t n = 0;
  auto* info = app.add_subcommand("info", "Order, characteristic, radical, locality, decomposition");
  info->add_option("SPEC", spec)->required();
  auto* subrings = app.add_subcommand("subrings", "All subrings");
  subrings->add_option("SPEC", spec)->required();
  auto* maximal = app.add_subcommand("maximal", "Maximal subrings");
  maximal->add_option("SPEC", spec)->required();
  auto* sig = app.add_subcommand("sigma", "Covering number and a minimum cover");
  sig->add_option("SPEC", spec)->required();
  auto* sn = app.add_subcommand("sn", "Membership in S(N)");
  sn->add_option("N", n)->required()->check(CLI::Range(std::size_t{3}, std::size_t{1000}));
  sn->add_option("SPEC", spec)->required();
  auto* quot = app.add_subcommand("quotient", "Quotient by the ideal generated by GENS");
  quot->add_option("SPEC", spec)->required();
  quot->add_option("GENS", gens)->required();
  auto* iso = app.add_subcommand("iso", "Isomorphism test");
  iso->add_option("SPEC1", spec)->required();
  iso->add_option("SPEC2", spec2)->required();
  auto* verify = app.add_subcommand("verify-paper", "Check every claim of a manifest");
  verify->add_option("--manifest", manifest, "Manifest file (default: built-in)");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*info) return cmd_info(g, spec);
    if (*subrings) return cmd_subrings(g, spec, false);
    if (*maximal) return cmd_subrings(g, spec, true);
    if (*sig) return cmd_sigma(g, spec);
    if (*sn) return cmd_sn(g, n, spec);
    if (*quot) return cmd_quotient(g, spec, gens);
    if (*iso) return cmd_iso(g, spec, spec2);
    if (*verify) return cmd_verify(g, manifest);
  } catch (rc::RingError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
