// loctame: subsumption, classification, explanations and interpolants for
// EL+ CBoxes and their extensions.
#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "loctame/generate.hpp"
#include "loctame/hornsat.hpp"
#include "loctame/interpolate.hpp"
#include "loctame/oracle.hpp"
#include "loctame/pipeline.hpp"

using namespace loctame;
using json = nlohmann::ordered_json;

namespace {

struct Flags {
  std::string file;
  std::string mode = "chase";
  bool normalize = false;
  bool emit_psi = false;
  bool emit_reduction = false;
  bool json = false;
  std::uint64_t seed = 1;
  // classify
  bool per_query = false;
  int jobs = 1;
  // explain
  std::string query;
  // cross-check
  int samples = 200;
};

PipelineOptions options(const Flags& f) {
  PipelineOptions o;
  o.mode = f.mode == "instantiate" ? Mode::Instantiate : Mode::Chase;
  o.normalize = f.normalize;
  return o;
}

json micros_json(const StageMicros& us) {
  return {{"translate", us.translate}, {"psi", us.psi},           {"instantiate", us.instantiate},
          {"purify", us.purify},       {"semilattice", us.semilattice}, {"solve", us.solve},
          {"total", us.total()}};
}

std::string query_text(const Concept& l, const Concept& r) { return render(l) + " sub " + render(r); }

const char* verdict(bool holds) { return holds ? "subsumed" : "not subsumed"; }

// Parses `C sub D` against the roles of cbox.
std::pair<Concept, Concept> parse_query(const CBox& cbox, const std::string& text) {
  CBox probe = parse_cbox(render(cbox) + "\n? " + text + "\n");
  return {probe.queries.back().lhs, probe.queries.back().rhs};
}

int cmd_check(const Flags& f) {
  CBox box = parse_cbox_file(f.file);
  if (box.queries.empty()) throw Error("no queries in " + f.file);
  Reasoner rs(box, options(f));
  Mode other = rs.options().mode == Mode::Chase ? Mode::Instantiate : Mode::Chase;
  bool all = true;
  json report = {{"file", f.file}, {"mode", f.mode}, {"queries", json::array()}};
  for (const auto& q : box.queries) {
    QueryResult r = rs.check(q.lhs, q.rhs);
    all = all && r.holds;
    size_t count = r.red.problem.clauses.size();
    size_t other_count = sl_clause_count(r.red.purified, other);
    if (f.json) {
      json j = {{"query", query_text(q.lhs, q.rhs)},
                {"verdict", verdict(r.holds)},
                {"psi_size", r.red.psi.size()},
                {"clause_count", count},
                {"clause_counts",
                 {{"chase", other == Mode::Chase ? other_count : count},
                  {"instantiate", other == Mode::Instantiate ? other_count : count}}},
                {"micros_per_stage", micros_json(r.micros)}};
      if (!r.sat.log().empty()) j["combination_log"] = r.sat.log();
      if (f.emit_psi) j["psi"] = show_psi(r);
      if (f.emit_reduction) j["reduction"] = show_reduction(r);
      report["queries"].push_back(std::move(j));
      continue;
    }
    std::cout << query_text(q.lhs, q.rhs) << ": " << verdict(r.holds) << "  (psi " << r.red.psi.size()
              << ", clauses " << count << ", " << static_cast<long>(r.micros.total()) << " us)\n";
    for (const auto& line : r.sat.log()) std::cout << "  " << line << "\n";
    if (f.emit_psi) std::cout << "# psi\n" << show_psi(r);
    if (f.emit_reduction) std::cout << "# reduction\n" << show_reduction(r);
  }
  if (f.json) {
    report["all_hold"] = all;
    std::cout << report.dump(2) << "\n";
  }
  return all ? 0 : 1;
}

int cmd_classify(const Flags& f) {
  CBox box = parse_cbox_file(f.file);
  std::vector<std::string> names = box.concept_names();
  names.insert(names.begin(), "top");
  std::vector<std::pair<Concept, Concept>> qs;
  auto concept_of = [](const std::string& n) { return n == "top" ? Concept::top() : Concept::named(n); };
  for (const auto& a : names)
    for (const auto& b : names) qs.push_back({concept_of(a), concept_of(b)});
  Reasoner rs(box, options(f));
  std::vector<char> holds(qs.size(), 0);
  size_t psi_size = 0, clauses = 0;
  if (!f.per_query) {
    BatchResult b = rs.check_batch(qs);
    for (size_t i = 0; i < qs.size(); ++i) holds[i] = b.holds[i];
    psi_size = b.psi_size;
    clauses = b.clause_count;
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    auto worker = [&] {
      try {
        for (size_t i; (i = next++) < qs.size();) holds[i] = rs.check(qs[i].first, qs[i].second).holds;
      } catch (...) {
        std::lock_guard lock(m);
        failure = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < std::max(1, f.jobs); ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  size_t n = names.size();
  if (f.json) {
    json subs = json::object();
    for (size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (size_t j = 0; j < n; ++j)
        if (holds[i * n + j]) row.push_back(names[j]);
      subs[names[i]] = row;
    }
    json report = {{"file", f.file}, {"mode", f.mode}, {"names", names}, {"subsumers", subs}};
    if (!f.per_query) {
      report["psi_size"] = psi_size;
      report["clause_count"] = clauses;
    }
    std::cout << report.dump(2) << "\n";
    return 0;
  }
  for (size_t i = 0; i < n; ++i) {
    std::cout << names[i] << ":";
    for (size_t j = 0; j < n; ++j)
      if (holds[i * n + j]) std::cout << " " << names[j];
    std::cout << "\n";
  }
  return 0;
}

int cmd_explain(const Flags& f) {
  CBox box = parse_cbox_file(f.file);
  std::pair<Concept, Concept> q;
  if (!f.query.empty()) q = parse_query(box, f.query);
  else if (!box.queries.empty()) q = {box.queries[0].lhs, box.queries[0].rhs};
  else throw Error("no query given and none in " + f.file);
  Reasoner rs(box, options(f));
  QueryResult r = rs.check(q.first, q.second);
  if (!r.holds) {
    std::cerr << "not a theorem: " << query_text(q.first, q.second) << "\n";
    return 1;
  }
  std::cout << explain(r);
  return 0;
}

int cmd_interpolate(const Flags& f) {
  CBox box = parse_cbox_file(f.file);
  InterpolationResult r;
  try {
    r = interpolate(box);
  } catch (const NotUnsat& e) {
    if (f.json) std::cout << json{{"file", f.file}, {"unsat", false}}.dump(2) << "\n";
    else std::cerr << "no interpolant: " << e.what() << "\n";
    return 1;
  }
  if (f.json) {
    json atoms = json::array();
    for (const auto& [l, rr] : r.atoms) atoms.push_back(query_text(l, rr));
    json seps = json::array();
    for (const auto& s : r.separations)
      seps.push_back({{"instance", s.instance}, {"premise", s.premise}, {"term", s.term}});
    std::cout << json{{"file", f.file},          {"unsat", true},
                      {"interpolant", atoms},    {"shared_names", r.shared_names},
                      {"shared_roles", r.shared_roles}, {"separations", seps},
                      {"rounds", r.rounds}}
                     .dump(2)
              << "\n";
    return 0;
  }
  for (const auto& s : r.separations) std::cout << "# separated " << s.instance << " at " << s.term << "\n";
  std::cout << r.show();
  return 0;
}

int cmd_solve(const Flags& f) {
  std::ifstream in(f.file);
  if (!in) throw Error("cannot open " + f.file);
  std::stringstream ss;
  ss << in.rdbuf();
  HornProblem p = parse_dump(ss.str());
  SolveResult r = solve(p);
  bool derived = p.goal && r.holds(*p.goal);
  if (f.json) {
    json j = {{"file", f.file},
              {"unsat", r.unsat || derived},
              {"derived", r.stats.derived},
              {"decrements", r.stats.decrements},
              {"literal_occurrences", r.stats.literal_occurrences}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (r.unsat || derived ? "unsat" : "sat") << "\n";
  }
  return r.unsat || derived ? 0 : 1;
}

// Pipeline against the completion classifier, mode against mode, and
// SUBSUMED verdicts against bounded countermodel search.
int cmd_cross_check(const Flags& f) {
  Rng rng(f.seed);
  long pairs = 0, oracle_mismatch = 0, mode_mismatch = 0, unsound = 0, extended = 0;
  for (int i = 0; i < f.samples; ++i) {
    CBox box = random_normal_el(rng);
    auto names = box.concept_names();
    SubsumptionSet ss = completion_classify(normalize(box));
    std::vector<std::pair<Concept, Concept>> qs;
    for (const auto& a : names)
      for (const auto& b : names) qs.push_back({Concept::named(a), Concept::named(b)});
    BatchResult chase = Reasoner(box, {Mode::Chase}).check_batch(qs);
    BatchResult inst = Reasoner(box, {Mode::Instantiate}).check_batch(qs);
    for (size_t k = 0; k < qs.size(); ++k) {
      ++pairs;
      if (chase.holds[k] != ss.subsumes(qs[k].first.name, qs[k].second.name)) ++oracle_mismatch;
      if (chase.holds[k] != inst.holds[k]) ++mode_mismatch;
    }
    CBox ext = random_extended(rng);
    auto en = ext.concept_names();
    if (en.empty()) continue;
    Concept l = random_concept(rng, ext, en, 1), r = random_concept(rng, ext, en, 1);
    bool c = Reasoner(ext, {Mode::Chase}).check(l, r).holds;
    if (c != Reasoner(ext, {Mode::Instantiate}).check(l, r).holds) ++mode_mismatch;
    ++extended;
    if (c && bounded_model_search(ext, l, r, 3)) ++unsound;
  }
  bool ok = oracle_mismatch == 0 && mode_mismatch == 0 && unsound == 0;
  if (f.json) {
    std::cout << json{{"seed", f.seed},
                      {"samples", f.samples},
                      {"pairs", pairs},
                      {"extended_queries", extended},
                      {"oracle_mismatches", oracle_mismatch},
                      {"mode_mismatches", mode_mismatch},
                      {"countermodels_to_subsumed", unsound},
                      {"ok", ok}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "EL+ pairs " << pairs << ", completion mismatches " << oracle_mismatch << "\n"
              << "mode mismatches " << mode_mismatch << "\n"
              << "extended queries " << extended << ", countermodels to subsumed " << unsound << "\n"
              << (ok ? "ok" : "FAILED") << "\n";
  }
  return ok ? 0 : 1;
}

void pipeline_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--mode", f.mode, "Transitivity handling")->check(CLI::IsMember({"chase", "instantiate"}));
  sub->add_flag("--normalize", f.normalize, "Normalize the CBox first (binary EL+ only)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subsumption and interpolation for EL+ and extensions by local reduction"};
  app.require_subcommand(1);
  Flags f;
  app.add_flag("--json", f.json, "Machine-readable output");
  app.add_option("--seed", f.seed, "Random seed");

  auto* check = app.add_subcommand("check", "Decide every ? query of a CBox file");
  check->add_option("file", f.file)->required();
  pipeline_flags(check, f);
  check->add_flag("--emit-psi", f.emit_psi, "Print the Psi-terms");
  check->add_flag("--emit-reduction", f.emit_reduction, "Print the ground Horn problem");

  auto* classify = app.add_subcommand("classify", "Subsumers of every concept name");
  classify->add_option("file", f.file)->required();
  pipeline_flags(classify, f);
  classify->add_flag("--per-query", f.per_query, "One reduction per name pair instead of one shared saturation");
  classify->add_option("--jobs", f.jobs, "Worker threads for --per-query")->check(CLI::PositiveNumber);

  auto* expl = app.add_subcommand("explain", "Derivation of a subsumption");
  expl->add_option("file", f.file)->required();
  expl->add_option("--query", f.query, "`C sub D`; defaults to the first ? query");
  pipeline_flags(expl, f);

  auto* interp = app.add_subcommand("interpolate", "Ground interpolant of an A:/B: split");
  interp->add_option("file", f.file)->required();

  auto* solv = app.add_subcommand("solve", "Saturate a ground Horn problem dump");
  solv->add_option("file", f.file)->required();

  auto* cross = app.add_subcommand("cross-check", "Compare against the independent oracles on random CBoxes");
  cross->add_option("--samples", f.samples, "Random CBoxes")->check(CLI::PositiveNumber);

  // global flags are accepted after the subcommand too
  for (auto* sub : {check, classify, expl, interp, solv, cross}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(f);
    if (*classify) return cmd_classify(f);
    if (*expl) return cmd_explain(f);
    if (*interp) return cmd_interpolate(f);
    if (*solv) return cmd_solve(f);
    return cmd_cross_check(f);
  } catch (const ParseError& e) {
    std::cerr << f.file << ":" << e.what() << "\n";
  } catch (const UnsupportedConstruct& e) {
    std::cerr << f.file << ": unsupported: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
