#pragma once

// Experiment runner behind `systematic-k run`. A config names a command and
// the group, order, ring and window it works on; the report lists every
// check with its seed. Exit codes: 0 all checks pass, 1 a check failed or
// the algebra refused the input, 2 the config itself is invalid.

#include "sysk/acceptance.hpp"
#include "sysk/io.hpp"
#include "sysk/kzero.hpp"
#include "sysk/modcat.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace sysk::cli {

using io::json;

struct Outcome {
  int exit_code = 0;
  json report;
};

struct Context {
  json config;
  std::uint64_t seed = 1;
  std::size_t samples = 50;
  std::size_t n_max = 2;
  std::size_t search = 200;

  std::optional<Group> group;
  std::optional<OrderSpec> order;
  RingPtr ring;

  const json& window() const { return io::field(config, "window"); }
  std::vector<GroupElement> window_list(const char* key) const {
    const json& w = window();
    if (!w.contains(key)) throw ConfigError(std::string("window needs '") + key + "'");
    return io::elements(w.at(key));
  }
};

inline std::vector<std::vector<std::int64_t>> functionals(const Context& c) {
  if (!c.config.contains("order")) return {};
  return io::int_matrix(io::field(c.config.at("order"), "functionals"));
}

/// The order lives on G, on N for semidirect products, on H for extensions.
inline OrderSpec order_for(const Context& c) {
  const Group& g = *c.group;
  auto f = functionals(c);
  if (g.kind() == Group::Kind::Semidirect) return OrderSpec(g.normal_factor(), f);
  if (g.kind() == Group::Kind::Extension) return OrderSpec::induced_on_quotient(g, f);
  return OrderSpec(g, f);
}

struct Report {
  json data = json::object();
  std::vector<Check> checks;
  void add(const std::string& name, bool passed, const std::string& detail, std::uint64_t seed) {
    checks.push_back({name, passed, detail, seed});
  }
};

inline void expect_rank(const Context& c, Report& r, const K0Group& g) {
  if (c.config.contains("expect") && c.config.at("expect").contains("rank")) {
    auto want = c.config.at("expect").at("rank").get<std::size_t>();
    r.add("rank is " + std::to_string(want), g.rank() == want, g.summary(), c.seed);
  }
}

inline json map_json(const MapCheck& m) {
  return json{{"well_defined", m.well_defined}, {"surjective", m.surjective}, {"injective", m.injective}};
}

// ------------------------------------------------------------- commands

inline void cmd_kzero_window(const Context& c, Report& r) {
  auto degrees = c.window_list("degrees");
  WindowK0 w(c.ring, degree_window(*c.group, *c.order, degrees));
  r.data["group"] = io::to_json(w.group());
  expect_rank(c, r, w.group());
  bool free_ok = true;
  for (const auto& d : degrees)
    free_ok = free_ok && w.group().equal(w.classify(IdemObject::free(FreeSysModule(c.ring, {d}))),
                                         K0Element(Label::degree(d)));
  r.add("free objects classify to their shift", free_ok, std::to_string(degrees.size()) + " degrees", c.seed);
  if (degrees.empty()) return;

  Rng rng(c.seed);
  bool additive = true, round_trip = true, shift_ok = true;
  std::size_t shifted = 0;
  std::set<GroupElement> in_window(degrees.begin(), degrees.end());
  for (std::size_t i = 0; i < c.samples; ++i) {
    IdemObject x = random_window_object(w, 1 + i % 3, rng);
    IdemObject y = random_window_object(w, 1 + (i + 1) % 3, rng);
    IdemObject s(direct_sum(x.carrier(), y.carrier()), RMatrix::block_diag(x.p(), y.p()));
    K0Element kx = w.classify(x);
    additive = additive && w.group().equal(w.classify(s), kx + w.classify(y));

    // epsilon_k T_k summed over slots
    IdemObject a = w.arrange(x);
    auto sizes = w.partition().block_sizes(a.carrier());
    K0Element sum;
    for (std::size_t k = 0; k < sizes.size(); ++k)
      if (sizes[k]) sum = sum + w.classify(lt_block(a, sizes, k));
    round_trip = round_trip && w.group().equal(sum, kx);

    // shift by a difference of window degrees when it stays inside
    const GroupElement& d0 = degrees[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(degrees.size()) - 1))];
    const GroupElement& d1 = degrees[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(degrees.size()) - 1))];
    GroupElement g = c.group->compose(d1, c.group->invert(d0));
    FreeSysModule moved = shift_module(g, x.carrier());
    bool inside = true;
    for (const auto& d : moved.degrees) inside = inside && in_window.count(d);
    if (inside) {
      ++shifted;
      shift_ok = shift_ok && w.group().equal(w.classify(IdemObject(moved, x.p())), shift_action(*c.group, g, kx));
    }
  }
  r.add("classes are additive", additive, std::to_string(c.samples) + " samples", c.seed);
  r.add("slot blocks sum back to the class", round_trip, std::to_string(c.samples) + " samples", c.seed);
  r.add("shift commutes with classification", shift_ok, std::to_string(shifted) + " shifted samples", c.seed);

  if (c.config.value("oracle", false)) {
    IdemClassTable t = classify_finite_category(c.ring, degrees, c.n_max);
    MapCheck m = oracle_window_check(t, w);
    r.data["oracle"] = {{"n_max", c.n_max},
                        {"idempotents", t.objects.size()},
                        {"classes", t.representatives.size()},
                        {"group", io::to_json(t.group)},
                        {"map", map_json(m)}};
    r.add("oracle classes biject with window classes", m.iso(), t.group.summary() + " up to n=" + std::to_string(c.n_max), c.seed);
  }
}

inline void cmd_verify_identities(const Context& c, Report& r) {
  const SystematicRing& ring = *c.ring;
  auto degrees = c.window_list("degrees");
  Rng rng(c.seed);
  r.add("SR3: 1 in R_1", check_sr3(ring), "", c.seed);
  bool sr2 = true;
  for (const auto& g : degrees)
    for (const auto& h : degrees) sr2 = sr2 && check_sr2(ring, g, h);
  r.add("SR2 on window pairs", sr2, std::to_string(degrees.size() * degrees.size()) + " pairs", c.seed);
  bool sr1 = true;
  for (std::size_t i = 0; i < c.samples; ++i) sr1 = sr1 && check_sr1(ring, random_ring_element(ring, degrees, rng));
  r.add("SR1 on canonical forms", sr1, std::to_string(c.samples) + " samples", c.seed);

  std::optional<WindowK0> w;
  try {
    w.emplace(c.ring, degree_window(*c.group, *c.order, degrees));
  } catch (const Error& e) {
    r.data["lt_suite"] = std::string("skipped: ") + e.what();
    return;
  }
  // two blocks: the larger half of the window against the rest
  auto ordered = linear_extension(*c.order, degrees);
  if (ordered.size() < 2) {
    r.data["lt_suite"] = "skipped: window has fewer than two degrees";
    return;
  }
  const std::size_t cut = (ordered.size() + 1) / 2;
  std::vector<GroupElement> top(ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(cut));
  std::vector<GroupElement> bottom(ordered.begin() + static_cast<std::ptrdiff_t>(cut), ordered.end());
  auto shape = [&] {
    LTShape s;
    const auto n1 = static_cast<std::size_t>(uniform_int(rng, 1, 2));
    const auto n2 = static_cast<std::size_t>(uniform_int(rng, 1, 2));
    std::vector<GroupElement> a, b;
    for (std::size_t i = 0; i < n1; ++i) a.push_back(top[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(top.size()) - 1))]);
    for (std::size_t i = 0; i < n2; ++i) b.push_back(bottom[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(bottom.size()) - 1))]);
    // keep each block sorted by the window order so the blocks stay triangular
    auto rank_of = [&](const GroupElement& g) { return std::find(ordered.begin(), ordered.end(), g) - ordered.begin(); };
    auto by_order = [&](const GroupElement& x, const GroupElement& y) { return rank_of(x) < rank_of(y); };
    std::sort(a.begin(), a.end(), by_order);
    std::sort(b.begin(), b.end(), by_order);
    s.degrees = a;
    s.degrees.insert(s.degrees.end(), b.begin(), b.end());
    s.sizes = {n1, n2};
    return s;
  };
  std::size_t split_ok = 0, natural = 0, squares = 0;
  bool additive = true;
  for (std::size_t i = 0; i < c.samples; ++i) {
    LTShape sa = shape(), sb = shape();
    IdemObject a = random_lt_idempotent(c.ring, sa, rng);
    IdemObject b = random_lt_idempotent(c.ring, sb, rng);
    if (all_passed(verify_split(idem_split_lt(a, sa.sizes[0])))) ++split_ok;
    IdemMorphism f = random_idem_morphism(a, sa.sizes, b, sb.sizes, rng);
    IdemMorphism g = random_idem_morphism(a, sa.sizes, b, sb.sizes, rng);
    if (naturality_check_ses(f, sa.sizes[0], sb.sizes[0])) ++natural;
    if (naturality_square(NaturalTransformation::unreverse(), f)) ++squares;
    try {
      for (std::size_t k = 0; k < 2; ++k)
        check_additive(AdditiveFunctor::block(w->partition(), k), {{f.morphism(), g.morphism()}});
      check_additive(AdditiveFunctor::shift(ordered.front()), {{f.morphism(), g.morphism()}});
    } catch (const NonAdditiveFunctor&) {
      additive = false;
    }
  }
  const std::string n = std::to_string(c.samples);
  r.add("split identities", split_ok == c.samples, std::to_string(split_ok) + "/" + n, c.seed);
  r.add("ses naturality", natural == c.samples, std::to_string(natural) + "/" + n, c.seed);
  r.add("naturality squares of unreverse", squares == c.samples, std::to_string(squares) + "/" + n, c.seed);
  r.add("block and shift functors are additive", additive, n + " pairs", c.seed);
}

inline void cmd_check_strong(const Context& c, Report& r) {
  const SystematicRing& ring = *c.ring;
  const Group& g = ring.grading();
  auto degrees = c.window_list("degrees");
  Rng rng(c.seed);
  json table = json::array();
  bool all_strong = true, bases_ok = true;
  for (const auto& d : degrees) {
    bool s = is_strongly_systematic_at(ring, d);
    all_strong = all_strong && s;
    json row{{"degree", io::to_json(d)}, {"strong", s}};
    // 1 in R_a R_{a^-1} for a = d^{-1} is strength at d
    if (s) {
      DualBasis b = dual_basis(ring, g.invert(d));
      bool ok = b.sums_to_one(ring) && b.degrees_valid(ring);
      for (std::size_t i = 0; i < c.samples && ok; ++i) {
        RingElem x = random_component_element(ring, b.degree, rng);
        ok = b.reconstruct(x) == x;
      }
      bases_ok = bases_ok && ok;
      json pairs = json::array();
      for (const auto& [a, bb] : b.pairs) pairs.push_back(json::array({io::to_json(a), io::to_json(bb)}));
      row["dual_basis"] = pairs;
    }
    table.push_back(row);
  }
  r.data["degrees"] = table;
  r.add("dual bases reconstruct sampled elements", bases_ok, "", c.seed);
  bool onto = true;
  for (const auto& a : degrees)
    for (const auto& b : degrees) onto = onto && components_multiply_onto(ring, a, b);
  r.add("strong at every degree iff R_g R_h = R_gh on the window", all_strong == onto,
        std::string(all_strong ? "strong" : "not strong") + ", products " + (onto ? "onto" : "not onto"), c.seed);
  if (all_strong) {
    bool modules = true;
    for (std::size_t i = 0; i < c.samples && modules; ++i) {
      std::vector<GroupElement> md;
      for (int k = 0; k < 2; ++k) md.push_back(degrees[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(degrees.size()) - 1))]);
      const auto& x = degrees[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(degrees.size()) - 1))];
      const auto& y = degrees[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(degrees.size()) - 1))];
      modules = module_components_multiply_onto(FreeSysModule(c.ring, md), x, y);
    }
    r.add("free modules are strongly systematic", modules, std::to_string(c.samples) + " samples", c.seed);
  }
  if (c.config.contains("expect") && c.config.at("expect").contains("strong")) {
    bool want = c.config.at("expect").at("strong").get<bool>();
    r.add(std::string("ring is ") + (want ? "" : "not ") + "strongly systematic on the window", all_strong == want, "",
          c.seed);
  }
}

inline void cmd_split_demo(const Context& c, Report& r) {
  auto degrees = c.window_list("degrees");
  auto ordered = linear_extension(*c.order, degrees);
  LTShape shape;
  const json& w = c.window();
  if (w.contains("block1") && w.contains("block2")) {
    auto b1 = io::elements(w.at("block1"));
    auto b2 = io::elements(w.at("block2"));
    shape.degrees = b1;
    shape.degrees.insert(shape.degrees.end(), b2.begin(), b2.end());
    shape.sizes = {b1.size(), b2.size()};
  } else {
    if (ordered.size() < 2) throw ConfigError("split-demo needs two window degrees");
    shape.degrees = {ordered.front(), ordered.back()};
    shape.sizes = {1, 1};
  }
  Rng rng(c.seed);
  IdemObject x = random_lt_idempotent(c.ring, shape, rng);
  SplitData s = idem_split_lt(x, shape.sizes[0]);
  r.data["p"] = io::to_json(x.p());
  r.data["sigma"] = io::to_json(s.raw.sigma);
  r.data["pi"] = io::to_json(s.raw.pi);
  r.data["rho"] = io::to_json(s.raw.rho);
  r.data["M"] = io::to_json(s.raw.M);
  append(r.checks, verify_split(s));
  for (auto& ch : r.checks) ch.seed = c.seed;

  bool diag_only = c.config.value("block_diagonal_only", false);
  RhoWitness wit = rho_not_natural_witness(c.ring, shape, c.search, c.seed, diag_only);
  json wj{{"status", wit.status}, {"attempts", wit.attempts}, {"block_diagonal_only", diag_only}};
  if (wit.found) {
    wj["source_p"] = io::to_json(wit.f->source().p());
    wj["target_p"] = io::to_json(wit.f->target().p());
    wj["f"] = io::to_json(wit.f->matrix());
    wj["rho_B_f"] = io::to_json(wit.rho_then_f);
    wj["f22_rho_A"] = io::to_json(wit.f_then_rho);
  }
  r.data["rho_naturality_witness"] = wj;
}

inline void cmd_thm_semidirect(const Context& c, Report& r) {
  auto s = c.window_list("s");
  OrderSpec on(c.group->normal_factor(), functionals(c));
  auto res = theorem_semidirect_iso(c.ring, on, s, c.n_max, c.seed);
  r.data["h_group"] = io::to_json(res.h_group);
  r.data["lhs"] = io::to_json(res.lhs);
  r.data["rhs"] = io::to_json(res.rhs);
  r.data["map"] = map_json(res.map);
  append(r.checks, res.checks);
  expect_rank(c, r, res.rhs);
}

inline Section section_for(const Context& c) {
  const std::string name = c.window().value("section", std::string("hnf"));
  if (name == "hnf") return hnf_section(*c.group);
  if (name == "shifted") return shifted_section(*c.group);
  throw ConfigError("unknown section '" + name + "'");
}

inline std::vector<GroupElement> n_window(const Context& c) {
  if (c.window().contains("n")) return c.window_list("n");
  return {c.group->kernel().identity()};
}

inline void cmd_thm_quotient(const Context& c, Report& r) {
  auto res = theorem_quotient_iso(c.ring, *c.order, c.window_list("h"), n_window(c), section_for(c), c.seed);
  r.data["lhs"] = io::to_json(res.lhs);
  r.data["rhs"] = io::to_json(res.rhs);
  r.data["map"] = map_json(res.map);
  append(r.checks, res.checks);
  expect_rank(c, r, res.rhs);
}

inline void cmd_corollary(const Context& c, Report& r) {
  auto res = corollary_strong_reduction(c.ring, *c.order, c.window_list("h"), n_window(c), c.seed);
  r.data["group"] = io::to_json(res.group);
  r.data["quotient_rhs"] = io::to_json(res.quotient.rhs);
  r.data["cross_check"] = map_json(res.cross_check);
  append(r.checks, res.checks);
  expect_rank(c, r, res.group);
}

/// B[A] for A cut out by the ring's support cone in Z^r; N = A cap (-A).
inline void cmd_toric(const Context& c, Report& r) {
  const json& rj = io::field(c.config, "ring");
  auto f = io::int_matrix(io::field(rj, "support_cone"));
  ToricSetup t = make_toric(Coefficients::parse(rj.value("base", std::string("Z"))), f, c.group->encoding_size());
  json nb = json::array();
  for (const auto& row : t.group.n_basis()) {
    json a = json::array();
    for (const auto& x : row) a.push_back(io::to_json(x));
    nb.push_back(a);
  }
  r.data["n_basis"] = nb;
  auto hw = c.window_list("h");
  std::vector<GroupElement> nw =
      c.window().contains("n") ? c.window_list("n") : std::vector<GroupElement>{t.group.kernel().identity()};
  auto q = theorem_quotient_iso(t.ring, t.order_h, hw, nw, hnf_section(t.group), c.seed);
  r.data["window_k0"] = io::to_json(q.rhs);
  append(r.checks, q.checks);
  expect_rank(c, r, q.rhs);
  RingPtr rn = subring_over_subgroup(t.ring, GroupHom::kernel_inclusion(t.group));
  bool strong = true;
  for (const auto& n : nw) strong = strong && is_strongly_systematic_at(*rn, n);
  r.data["r_n_strongly_systematic"] = strong;
  if (strong) {
    auto cor = corollary_strong_reduction(t.ring, t.order_h, hw, nw, c.seed);
    r.data["coset_group"] = io::to_json(cor.group);
    for (auto ch : cor.checks) {
      ch.name = "corollary: " + ch.name;
      r.checks.push_back(ch);
    }
  }
}

inline void cmd_counterexamples(const Context& c, Report& r) {
  auto pl = std::dynamic_pointer_cast<const PowerLocalization>(c.ring);
  if (!pl) throw ConfigError("counterexamples run on a power localization");
  auto rep = counterexamples(pl->inverted());
  r.data["L"] = rep.l_over_k1.to_string();
  r.data["tau_L"] = rep.tau_l.to_string();
  r.data["rho_surjective"] = rep.rho_surjective;
  r.data["witness"] = rep.witness;
  r.data["bijective_over_K"] = rep.bijective_over_k;
  for (auto ch : rep.checks) {
    ch.seed = c.seed;
    r.checks.push_back(ch);
  }
}

inline const std::map<std::string, std::function<void(const Context&, Report&)>>& commands() {
  static const std::map<std::string, std::function<void(const Context&, Report&)>> table{
      {"verify-identities", cmd_verify_identities}, {"check-strong", cmd_check_strong},
      {"split-demo", cmd_split_demo},               {"kzero-window", cmd_kzero_window},
      {"thm-semidirect", cmd_thm_semidirect},       {"thm-quotient", cmd_thm_quotient},
      {"corollary-strong", cmd_corollary},          {"toric", cmd_toric},
      {"counterexamples", cmd_counterexamples}};
  return table;
}

/// Parses and validates everything the command needs before running it.
inline Context prepare(const json& config, std::optional<std::uint64_t> seed) {
  Context c;
  c.config = config;
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  const std::string cmd = io::field(config, "command").get<std::string>();
  if (!commands().count(cmd)) throw ConfigError("unknown command '" + cmd + "'");
  c.seed = seed ? *seed : config.value("seed", std::uint64_t{1});
  if (config.contains("budget")) {
    const json& b = config.at("budget");
    c.samples = b.value("samples", c.samples);
    c.n_max = b.value("n_max", c.n_max);
    c.search = b.value("search", c.search);
  }
  if (config.contains("group")) c.group = io::parse_group(config.at("group"));
  const json& rj = io::field(config, "ring");
  if (!c.group) {
    if (rj.value("kind", std::string()) != "power_localization") throw ConfigError("missing field 'group'");
    c.group = Group::free_abelian(1);
  }
  if (cmd == "toric") {
    if (c.group->kind() != Group::Kind::FreeAbelian) throw ConfigError("toric configs use a free abelian group");
    c.group = Group::extension(c.group->encoding_size(), lattice::IntMatrix{});
  }
  c.ring = io::parse_ring(rj, cmd == "toric" ? Group::free_abelian(c.group->encoding_size()) : *c.group);
  if (cmd != "toric" && !c.ring->grading().same_as(*c.group))
    throw ConfigError("group of the ring differs from the declared group");
  if (config.contains("order") && c.group->kind() != Group::Kind::Semidirect && cmd != "toric")
    c.order = order_for(c);
  const bool needs_order = cmd == "kzero-window" || cmd == "verify-identities" || cmd == "split-demo" ||
                           cmd == "thm-quotient" || cmd == "corollary-strong";
  if (needs_order && !c.order) throw ConfigError(cmd + " needs an order");
  if (cmd == "thm-semidirect" && !config.contains("order")) throw ConfigError("thm-semidirect needs an order on N");
  if (cmd != "counterexamples" && !config.contains("window")) throw ConfigError("missing field 'window'");
  return c;
}

/// Strip wall-clock fields; what remains is the determinism contract.
inline json without_timings(json report) {
  report.erase("timings");
  return report;
}

inline Outcome run(const json& config, std::optional<std::uint64_t> seed = std::nullopt) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  Context c;
  try {
    c = prepare(config, seed);
  } catch (const ConfigError& e) {
    out.exit_code = 2;
    out.report = json{{"error", "config"}, {"message", e.what()}};
    return out;
  } catch (const json::exception& e) {
    out.exit_code = 2;
    out.report = json{{"error", "config"}, {"message", e.what()}};
    return out;
  }
  Report r;
  json error;
  try {
    commands().at(c.config.at("command").get<std::string>())(c, r);
  } catch (const ConfigError& e) {
    out.exit_code = 2;
    out.report = json{{"error", "config"}, {"message", e.what()}};
    return out;
  } catch (const Error& e) {
    error = json{{"kind", e.kind()}, {"message", e.what()}, {"seed", c.seed}};
  } catch (const json::exception& e) {
    out.exit_code = 2;
    out.report = json{{"error", "config"}, {"message", e.what()}};
    return out;
  }
  const bool passed = error.is_null() && all_passed(r.checks);
  json rep;
  rep["command"] = c.config.at("command");
  rep["seed"] = c.seed;
  rep["config"] = c.config;
  rep["passed"] = passed;
  rep["checks"] = io::to_json(r.checks);
  std::size_t failed = 0;
  for (const auto& ch : r.checks) failed += ch.passed ? 0 : 1;
  rep["counts"] = {{"checks", r.checks.size()}, {"failed", failed}};
  rep["data"] = r.data;
  if (!error.is_null()) rep["error"] = error;
  rep["timings"] = {{"total_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};
  out.report = rep;
  out.exit_code = passed ? 0 : 1;
  return out;
}

/// Plain-text summary of a report.
inline std::string human(const json& report) {
  std::ostringstream os;
  if (report.contains("error") && report.at("error").is_string()) {
    os << "config error: " << report.at("message").get<std::string>() << "\n";
    return os.str();
  }
  os << report.at("command").get<std::string>() << " (seed " << report.at("seed") << "): "
     << (report.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
  for (const auto& ch : report.at("checks"))
    os << "  [" << (ch.at("passed").get<bool>() ? "ok" : "FAILED") << "] " << ch.at("name").get<std::string>()
       << (ch.at("detail").get<std::string>().empty() ? "" : "  " + ch.at("detail").get<std::string>()) << "\n";
  for (const auto& [k, v] : report.at("data").items())
    if (v.is_object() && v.contains("summary")) os << "  " << k << ": " << v.at("summary").get<std::string>() << "\n";
  if (report.contains("error"))
    os << "  error " << report.at("error").at("kind").get<std::string>() << ": "
       << report.at("error").at("message").get<std::string>() << "\n";
  return os.str();
}

}  // namespace sysk::cli
