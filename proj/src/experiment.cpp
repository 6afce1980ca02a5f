#include "discordant/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "discordant/constructions.hpp"
#include "discordant/detectors.hpp"
#include "discordant/errors.hpp"
#include "discordant/folner.hpp"
#include "discordant/ie_density.hpp"
#include "discordant/rotation.hpp"
#include "discordant/sl2.hpp"
#include "discordant/symbolic.hpp"

namespace discordant {

namespace {

using nlohmann::json;

enum class Kind { Int, Number, String, Bool, IntArray, IntArrayArray };

struct Field {
  Kind kind;
  bool required = false;
  std::vector<std::string> choices = {};
};

using Schema = std::map<std::string, Field>;

const std::vector<std::string> kSets = {"squarefree", "bfree",      "bufree", "coprime_pairs", "heisenberg_bfree",
                                        "straus",     "fat_cantor", "ar",     "evens"};
const std::vector<std::string> kContexts = {"naturals", "integers", "lattice", "heisenberg"};

Schema set_fields() {
  return {{"set", {Kind::String, true, kSets}},
          {"context", {Kind::String, false, kContexts}},
          {"dim", {Kind::Int}},
          {"moduli", {Kind::IntArray}},
          {"exponents", {Kind::IntArray}},
          {"count", {Kind::Int}},
          {"first", {Kind::Int}},
          {"ratio", {Kind::Int}},
          {"variant", {Kind::String, false, {"single", "block"}}},
          {"alpha", {Kind::String, false, {"golden", "sqrt2"}}},
          {"measure", {Kind::Number}},
          {"depth", {Kind::Int}},
          {"t", {Kind::Number}},
          {"base_point", {Kind::Number}}};
}

Schema merged(Schema a, const Schema& b) {
  a.insert(b.begin(), b.end());
  return a;
}

const std::map<std::string, Schema>& schemas() {
  static const std::map<std::string, Schema> s = {
      {"density", merged(set_fields(), {{"windows", {Kind::IntArray, true}}, {"tolerance", {Kind::Number}}})},
      {"detect", merged(set_fields(), {{"mode", {Kind::String, true, {"ps", "thickness", "syndetic", "duality"}}},
                                       {"h", {Kind::IntArrayArray}},
                                       {"budget", {Kind::Int}},
                                       {"window", {Kind::Int}}})},
      {"witness",
       {{"shifts", {Kind::IntArray, true}},
        {"moduli", {Kind::IntArray, true}},
        {"targets", {Kind::IntArray}},
        {"check", {Kind::String, false, {"squarefree", "none"}}},
        {"range", {Kind::IntArray}}}},
      {"sl2",
       {{"n_min", {Kind::Int}},
        {"n_max", {Kind::Int, true}},
        {"ks", {Kind::IntArray}},
        {"assert_from", {Kind::Int}}}},
      {"symbolic",
       {{"operation", {Kind::String, true, {"disjunctivity", "normal", "extract", "gap", "orbit"}}},
        {"config", {Kind::String, false, {"disjunctive", "pseudorandom", "evens", "squarefree", "ena"}}},
        {"context", {Kind::String, false, kContexts}},
        {"dim", {Kind::Int}},
        {"seed", {Kind::Int}},
        {"catalog_length", {Kind::Int}},
        {"bound", {Kind::Int}},
        {"windows", {Kind::IntArray}},
        {"k", {Kind::IntArray}},
        {"lengths", {Kind::IntArray}},
        {"h_budget", {Kind::Int}},
        {"shape", {Kind::IntArray}},
        {"candidates", {Kind::IntArray}},
        {"beta", {Kind::String, false, {"empty", "whole"}}},
        {"sparsity", {Kind::Int}},
        {"word", {Kind::String}},
        {"blocks", {Kind::Int}}}},
      {"rotate",
       {{"alpha", {Kind::String, false, {"golden", "sqrt2"}}},
        {"measure", {Kind::Number}},
        {"depth", {Kind::Int}},
        {"base_point", {Kind::Number}},
        {"context", {Kind::String, false, {"naturals", "integers"}}},
        {"windows", {Kind::IntArray, true}},
        {"budget", {Kind::Int}},
        {"tolerance", {Kind::Number}}}},
      {"ena",
       {{"context", {Kind::String, false, {"naturals", "integers"}}},
        {"sparsity", {Kind::Int, true}},
        {"word", {Kind::String}},
        {"blocks", {Kind::Int, true}}}},
      {"ie",
       {{"moduli", {Kind::IntArray, true}},
        {"windows", {Kind::IntArray, true}},
        {"indices", {Kind::IntArrayArray}},
        {"tolerance", {Kind::Number}}}},
  };
  return s;
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Int: return "integer";
    case Kind::Number: return "number";
    case Kind::String: return "string";
    case Kind::Bool: return "boolean";
    case Kind::IntArray: return "array of integers";
    case Kind::IntArrayArray: return "array of integer arrays";
  }
  return "?";
}

bool int_array(const json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number_integer(); });
}

void check_field(const std::string& path, const json& v, const Field& f, std::vector<std::string>& out) {
  bool ok = false;
  switch (f.kind) {
    case Kind::Int: ok = v.is_number_integer(); break;
    case Kind::Number: ok = v.is_number(); break;
    case Kind::String: ok = v.is_string(); break;
    case Kind::Bool: ok = v.is_boolean(); break;
    case Kind::IntArray: ok = int_array(v); break;
    case Kind::IntArrayArray:
      ok = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return int_array(e); });
      break;
  }
  if (!ok) {
    out.push_back(path + ": expected " + kind_name(f.kind));
    return;
  }
  if (!f.choices.empty() && std::find(f.choices.begin(), f.choices.end(), v.get<std::string>()) == f.choices.end()) {
    std::string list;
    for (const auto& c : f.choices) list += (list.empty() ? "" : ", ") + c;
    out.push_back(path + ": \"" + v.get<std::string>() + "\" is not one of " + list);
  }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// ---- parameter access -------------------------------------------------------

template <class T>
T get_or(const json& p, const char* key, T fallback) {
  return p.contains(key) ? p.at(key).get<T>() : fallback;
}

std::vector<std::int64_t> ints(const json& p, const char* key, std::vector<std::int64_t> fallback = {}) {
  return p.contains(key) ? p.at(key).get<std::vector<std::int64_t>>() : fallback;
}

GroupContext context_of(const json& p, const std::string& fallback) {
  const std::string c = get_or<std::string>(p, "context", fallback);
  if (c == "naturals") return GroupContext::naturals();
  if (c == "integers") return GroupContext::integers();
  if (c == "heisenberg") return GroupContext::heisenberg();
  return GroupContext::lattice(static_cast<int>(get_or<std::int64_t>(p, "dim", 2)));
}

CircleAngle angle_of(const json& p) {
  return get_or<std::string>(p, "alpha", "golden") == "sqrt2" ? CircleAngle::sqrt2_fraction() : CircleAngle::golden();
}

struct BuiltSet {
  SetOracle set;
  GroupContext ctx;
};

BuiltSet build_set(const json& p) {
  const std::string s = p.at("set").get<std::string>();
  auto moduli = [&] {
    if (!p.contains("moduli")) throw ArgumentError("set \"" + s + "\" needs moduli");
    return BSequence(ints(p, "moduli"));
  };
  if (s == "squarefree") return {squarefree_oracle(), context_of(p, "naturals")};
  if (s == "evens") return {residue_class(2, 0), context_of(p, "integers")};
  if (s == "bfree") return {bfree_oracle(moduli()), context_of(p, "naturals")};
  if (s == "bufree") {
    const auto e = ints(p, "exponents");
    const std::vector<int> u(e.begin(), e.end());
    return {bufree_oracle(moduli(), u), context_of(p, "naturals")};
  }
  if (s == "coprime_pairs") {
    const auto ps = primes_up_to(get_or<std::int64_t>(p, "count", 100000));
    const std::vector<BSequence> rows(2, BSequence(ps));
    return {coprime_tuple_oracle(rows), GroupContext::lattice(2)};
  }
  if (s == "heisenberg_bfree") return {heisenberg_bfree_oracle(moduli()), GroupContext::heisenberg()};
  if (s == "straus") {
    const auto variant =
        get_or<std::string>(p, "variant", "single") == "block" ? StrausVariant::Block : StrausVariant::SingleResidue;
    const auto sp = StrausParams::geometric(get_or<std::int64_t>(p, "first", 8), get_or<std::int64_t>(p, "ratio", 2),
                                            static_cast<std::size_t>(get_or<std::int64_t>(p, "count", 40)), variant);
    return {straus_set(sp), GroupContext::naturals()};
  }
  if (s == "fat_cantor") {
    const FatCantorSpec fc =
        fat_cantor(get_or<double>(p, "measure", 0.5), static_cast<int>(get_or<std::int64_t>(p, "depth", 8)));
    RotationSpec rs{angle_of(p), fc.as_arcs(), get_or<double>(p, "base_point", 0.0)};
    return {RotationVisits(rs).oracle(), context_of(p, "integers")};
  }
  ARSetSpec as;
  as.t = get_or<double>(p, "t", 0.2);
  as.alpha = angle_of(p);
  return {ARSet(as).oracle(), context_of(p, "integers")};
}

std::vector<std::vector<Element>> h_family_of(const json& p) {
  std::vector<std::vector<Element>> out;
  if (!p.contains("h")) {
    for (std::int64_t m = 1; m <= 5; ++m) out.push_back(initial_segment(m));
    return out;
  }
  for (const auto& row : p.at("h")) {
    std::vector<Element> h;
    for (const auto& v : row) h.push_back(Element{v.get<std::int64_t>()});
    if (h.empty()) throw ArgumentError("H sets must be nonempty");
    out.push_back(std::move(h));
  }
  return out;
}

std::string join_elements(std::span<const Element> xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ";") + x.to_string();
  return s;
}

// ---- artifacts --------------------------------------------------------------

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> r) { rows.push_back(std::move(r)); }
  std::string str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
      out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }
};

std::string num(std::int64_t v) { return std::to_string(v); }

struct Outcome {
  std::optional<Table> table;
  std::optional<nlohmann::ordered_json> certificate;
  bool acceptance_failed = false;
  std::vector<std::string> messages;
};

// ---- commands ---------------------------------------------------------------

Outcome run_density(const json& p, unsigned threads) {
  const BuiltSet b = build_set(p);
  const auto windows = ints(p, "windows");
  const DensityReport r = density_report(b.set, b.ctx, windows, threads);
  Outcome o;
  Table t{{"n", "count", "ratio", "known_density", "abs_diff"}, {}};
  double last_diff = 0.0;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const double ratio = r.ratios[i].second;
    if (b.set.known_density) {
      last_diff = std::abs(ratio - *b.set.known_density);
      t.add({num(windows[i]), num(r.counts[i]), format_real(ratio), format_real(*b.set.known_density),
             format_real(last_diff)});
    } else {
      t.add({num(windows[i]), num(r.counts[i]), format_real(ratio), "", ""});
    }
  }
  o.table = std::move(t);
  nlohmann::ordered_json j;
  j["set"] = b.set.label;
  j["context"] = b.ctx.name();
  j["upperEstimate"] = r.upper_estimate;
  j["lowerEstimate"] = r.lower_estimate;
  o.certificate = j;
  if (p.contains("tolerance") && b.set.known_density && last_diff > p.at("tolerance").get<double>()) {
    o.acceptance_failed = true;
    o.messages.push_back(fmt::format("|ratio - known| = {} exceeds tolerance", format_real(last_diff)));
  }
  return o;
}

Outcome run_detect(const json& p) {
  const BuiltSet b = build_set(p);
  const std::string mode = p.at("mode").get<std::string>();
  const auto family = h_family_of(p);
  const std::int64_t budget = get_or<std::int64_t>(p, "budget", 100000);
  Outcome o;
  if (mode == "thickness") {
    const ThicknessProfile prof = thickness_profile(b.set, b.ctx, budget);
    Table t{{"budget", "profile"}, {}};
    for (const auto& [bud, v] : prof.checkpoints) t.add({num(bud), num(v)});
    o.table = std::move(t);
    nlohmann::ordered_json j;
    j["maxShapeIndex"] = prof.max_shape_index;
    j["witness"] = prof.witness ? prof.witness->to_string() : "";
    j["stalled"] = prof.stalled();
    j["saturated"] = prof.saturated();
    o.certificate = j;
  } else if (mode == "ps") {
    const PsEvidence ev = ps_evidence(b.set, b.ctx, family, budget);
    Table t{{"h", "half_budget_profile", "profile", "witness", "grade"}, {}};
    for (const auto& e : ev.entries)
      t.add({join_elements(e.h), num(e.profile.checkpoints[0].second), num(e.profile.max_shape_index),
             e.profile.witness ? e.profile.witness->to_string() : "", to_string(e.grade)});
    o.table = std::move(t);
    o.certificate = nlohmann::ordered_json{{"summary", ev.summary}};
  } else if (mode == "syndetic") {
    const std::int64_t window = get_or<std::int64_t>(p, "window", 1000);
    Table t{{"h", "window", "covered", "failure_witness"}, {}};
    for (const auto& h : family) {
      const auto c = syndeticity_check(b.set, b.ctx, h, window);
      t.add({join_elements(h), num(window), c.covered() ? "true" : "false",
             c.failure_witness ? c.failure_witness->to_string() : ""});
    }
    o.table = std::move(t);
  } else {
    const DualityReport d = duality_check(b.set, b.ctx, family, get_or<std::int64_t>(p, "window", 1000));
    Table t{{"h", "syndetic", "failure_witness", "complement_translate", "consistent"}, {}};
    for (const auto& r : d.rows)
      t.add({join_elements(r.h), r.syndetic_on_window ? "true" : "false",
             r.syndeticity_failure ? r.syndeticity_failure->to_string() : "",
             r.complement_translate ? r.complement_translate->to_string() : "", r.consistent ? "true" : "false"});
    o.table = std::move(t);
    if (!d.all_consistent()) {
      o.acceptance_failed = true;
      o.messages.push_back("duality cross-tabulation is inconsistent");
    }
  }
  return o;
}

Outcome run_witness(const json& p) {
  const auto shifts = ints(p, "shifts");
  const auto moduli = ints(p, "moduli");
  const auto targets = ints(p, "targets");
  CRTWitness w = crt_witness(shifts, moduli, targets);
  if (p.contains("range")) {
    const auto r = ints(p, "range");
    if (r.size() != 2 || r[0] > r[1]) throw ArgumentError("range must be [k_lo, k_hi]");
    w.verified_range = {r[0], r[1]};
  }
  Outcome o;
  auto j = nlohmann::ordered_json::parse(w.to_json());
  if (get_or<std::string>(p, "check", "squarefree") == "squarefree") {
    const bool ok = w.verify(squarefree_oracle());
    j["verified"] = ok;
    if (!ok) {
      o.acceptance_failed = true;
      o.messages.push_back("a shifted progression contains a squarefree integer");
    }
  }
  o.certificate = j;
  return o;
}

Outcome run_sl2(const json& p, unsigned threads) {
  const std::int64_t n_max = p.at("n_max").get<std::int64_t>();
  const std::int64_t n_min = get_or<std::int64_t>(p, "n_min", 1);
  const auto ks = ints(p, "ks", {2});
  const std::int64_t assert_from = get_or<std::int64_t>(p, "assert_from", 10);
  const BallTable table = ball_table(n_min, n_max, ks, threads);
  Outcome o;
  Table t{{"n", "ball_size", "lower_bound"}, {}};
  for (auto k : ks) {
    t.header.push_back(fmt::format("gamma{}", k));
    t.header.push_back(fmt::format("gamma{}_bound", k));
  }
  bool lower_ok = true;
  for (const auto& r : table.rows) {
    std::vector<std::string> cells{num(r.n), num(r.ball_size), format_real(r.lower_bound)};
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const bool applies = ks[i] <= r.n;
      cells.push_back(applies ? num(r.gamma_counts[i]) : "");
      cells.push_back(applies ? format_real(r.gamma_bounds[i]) : "");
    }
    t.add(std::move(cells));
    if (r.n >= assert_from && static_cast<double>(r.ball_size) < r.lower_bound) lower_ok = false;
  }
  o.table = std::move(t);
  nlohmann::ordered_json j;
  j["lowerBoundOnset"] = table.lower_bound_onset ? json(*table.lower_bound_onset) : json(nullptr);
  j["gammaBoundsHold"] = table.gamma_bounds_hold;
  o.certificate = j;
  if (!lower_ok || !table.gamma_bounds_hold) {
    o.acceptance_failed = true;
    o.messages.push_back("an SL2 counting bound failed");
  }
  return o;
}

BinaryConfig config_of(const json& p, const GroupContext& ctx) {
  const std::string c = get_or<std::string>(p, "config", "pseudorandom");
  if (c == "disjunctive") return disjunctive_generator(ctx).config;
  if (c == "evens") return BinaryConfig::of(residue_class(2, 0));
  if (c == "squarefree") return BinaryConfig::of(squarefree_oracle());
  if (c == "ena")
    return ena_generator(ctx, get_or<std::int64_t>(p, "sparsity", 2),
                         WordPattern::from_string(get_or<std::string>(p, "word", "1")),
                         static_cast<int>(get_or<std::int64_t>(p, "blocks", 4)))
        .config;
  return pseudorandom_config(static_cast<std::uint64_t>(get_or<std::int64_t>(p, "seed", kPseudorandomSeed)));
}

Outcome run_symbolic(const json& p, unsigned threads) {
  const GroupContext ctx = context_of(p, "naturals");
  const BinaryConfig alpha = config_of(p, ctx);
  const std::string op = p.at("operation").get<std::string>();
  Outcome o;
  if (op == "disjunctivity" || op == "gap") {
    const auto catalog = interval_pattern_catalog(static_cast<int>(get_or<std::int64_t>(p, "catalog_length", 4)));
    if (op == "disjunctivity") {
      const auto rep = disjunctivity_scan(alpha, ctx, catalog, get_or<std::int64_t>(p, "bound", 100000), threads);
      Table t{{"pattern", "l1", "l2", "witness"}, {}};
      for (std::size_t i = 0; i < catalog.size(); ++i)
        t.add({num(static_cast<std::int64_t>(i)), join_elements(catalog[i].l1), join_elements(catalog[i].l2),
               rep.witnesses[i] ? rep.witnesses[i]->to_string() : ""});
      o.table = std::move(t);
      o.certificate = nlohmann::ordered_json{{"found", rep.found}, {"patterns", catalog.size()}};
    } else {
      const auto rows = minimal_orbit_gap_report(alpha, ctx, catalog, get_or<std::int64_t>(p, "bound", 10000));
      Table t{{"pattern", "l1", "l2", "occurrences", "max_gap_half", "max_gap", "class"}, {}};
      for (std::size_t i = 0; i < catalog.size(); ++i)
        t.add({num(static_cast<std::int64_t>(i)), join_elements(catalog[i].l1), join_elements(catalog[i].l2),
               num(rows[i].occurrences), num(rows[i].max_gap_half), num(rows[i].max_gap), to_string(rows[i].cls)});
      o.table = std::move(t);
    }
  } else if (op == "normal") {
    const auto k = ints(p, "k", {0, 1, 2});
    const auto windows = ints(p, "windows", {1000, 10000, 100000});
    const NormalReport rep = normal_statistics(alpha, ctx, k, windows);
    Table t{{"n", "word", "frequency", "expected", "deviation"}, {}};
    for (const auto& w : rep.windows)
      for (std::size_t m = 0; m < w.frequencies.size(); ++m) {
        std::string word;
        for (std::size_t i = 0; i < k.size(); ++i) word += ((m >> i) & 1U) ? '1' : '0';
        t.add({num(w.n), word, format_real(w.frequencies[m]), format_real(rep.expected),
               format_real(w.frequencies[m] - rep.expected)});
      }
    o.table = std::move(t);
    o.certificate = nlohmann::ordered_json{{"flaggedNonNormal", rep.flagged_non_normal}};
  } else if (op == "extract") {
    const auto lengths = ints(p, "lengths", {4, 8, 16});
    const auto r = syndetic_extraction(alpha, ctx, lengths, static_cast<int>(get_or<std::int64_t>(p, "h_budget", 4)),
                                       get_or<std::int64_t>(p, "bound", 100000));
    std::string window;
    for (bool bit : r.window) window += bit ? '1' : '0';
    o.certificate = nlohmann::ordered_json{{"outcome", r.outcome},     {"h", r.h},
                                           {"offset", r.offset ? json(*r.offset) : json(nullptr)},
                                           {"window", window},         {"maxGap", r.max_gap},
                                           {"coverage", r.coverage},   {"maxRun", r.max_run}};
  } else {
    const auto shape_raw = ints(p, "shape", {0, 1, 2});
    std::vector<Element> shape;
    for (auto v : shape_raw) shape.push_back(Element{v});
    const BinaryConfig beta = get_or<std::string>(p, "beta", "empty") == "empty" ? BinaryConfig::of(empty_set())
                                                                                 : BinaryConfig::of(whole_set());
    std::optional<std::vector<Element>> cands;
    if (p.contains("candidates")) {
      cands.emplace();
      for (auto v : ints(p, "candidates")) cands->push_back(Element{v});
    }
    const auto w = orbit_window_membership(
        beta, alpha, ctx, shape, get_or<std::int64_t>(p, "bound", 1000000),
        cands ? std::optional<std::span<const Element>>(*cands) : std::nullopt);
    o.certificate = nlohmann::ordered_json{{"witness", w.g ? json(w.g->to_string()) : json(nullptr)},
                                           {"probes", w.probes}};
  }
  return o;
}

Outcome run_rotate(const json& p, unsigned threads) {
  const FatCantorSpec fc =
      fat_cantor(get_or<double>(p, "measure", 0.5), static_cast<int>(get_or<std::int64_t>(p, "depth", 8)));
  const RotationVisits visits(RotationSpec{angle_of(p), fc.as_arcs(), get_or<double>(p, "base_point", 0.0)});
  const GroupContext ctx = context_of(p, "naturals");
  const SetOracle set = visits.oracle();
  const auto windows = ints(p, "windows");
  const DensityReport r = density_report(set, ctx, windows, threads);
  Outcome o;
  Table t{{"n", "count", "ratio", "known_density", "abs_diff"}, {}};
  double last = 0.0;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    last = std::abs(r.ratios[i].second - fc.remaining_measure());
    t.add({num(windows[i]), num(r.counts[i]), format_real(r.ratios[i].second), format_real(fc.remaining_measure()),
           format_real(last)});
  }
  o.table = std::move(t);
  const ThicknessProfile prof = thickness_profile(set, ctx, get_or<std::int64_t>(p, "budget", 100000));
  nlohmann::ordered_json j;
  j["stageMeasure"] = fc.remaining_measure();
  j["boundaryProbes"] = visits.boundary_count(ctx, windows.back());
  j["thicknessProfile"] = prof.max_shape_index;
  j["thicknessStalled"] = prof.stalled();
  o.certificate = j;
  if (p.contains("tolerance") && last > p.at("tolerance").get<double>()) {
    o.acceptance_failed = true;
    o.messages.push_back("visit density is outside the tolerance");
  }
  return o;
}

Outcome run_ena(const json& p) {
  const GroupContext ctx = context_of(p, "naturals");
  const WordPattern w = WordPattern::from_string(get_or<std::string>(p, "word", "1"));
  const EnaConfig e = ena_generator(ctx, p.at("sparsity").get<std::int64_t>(), w,
                                    static_cast<int>(p.at("blocks").get<std::int64_t>()));
  const std::vector<WordPattern> catalog{w};
  const auto stats = ena_statistics(e.config, ctx, catalog, e.windows);
  Outcome o;
  Table t{{"k", "n", "mode", "max_fraction", "min_fraction"}, {}};
  for (std::size_t i = 0; i < e.windows.size(); ++i) {
    const auto& f = stats[0].per_window[i].second;
    t.add({num(static_cast<std::int64_t>(i + 1)), num(e.windows[i]), e.match_mode[i] ? "match" : "no-match",
           f.max_fraction ? format_real(*f.max_fraction) : "", f.min_fraction ? format_real(*f.min_fraction) : ""});
  }
  o.table = std::move(t);
  o.certificate = nlohmann::ordered_json{{"upper", stats[0].upper},
                                         {"lower", stats[0].lower},
                                         {"sparsityHolds", ena_sparsity_holds(ctx, e.windows)}};
  return o;
}

Outcome run_ie(const json& p, unsigned threads) {
  const auto moduli = ints(p, "moduli");
  const IEFamily fam = IEFamily::congruences(moduli);
  std::vector<std::vector<std::size_t>> index_sets;
  if (p.contains("indices")) {
    for (const auto& row : p.at("indices")) {
      std::vector<std::size_t> s;
      for (const auto& v : row) {
        if (v.get<std::int64_t>() < 0) throw ArgumentError("indices must be non-negative");
        s.push_back(v.get<std::size_t>());
      }
      index_sets.push_back(std::move(s));
    }
  } else {
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (std::size_t j = i + 1; j < fam.size(); ++j) index_sets.push_back({i, j});
  }
  const double tol = get_or<double>(p, "tolerance", 1e-3);
  Outcome o;
  Table t{{"indices", "n", "window_ratio", "product", "difference", "flagged"}, {}};
  for (auto n : ints(p, "windows"))
    for (const auto& s : index_sets) {
      const auto r = ie_check_independence(fam, s, n, tol, threads);
      std::string label;
      for (auto i : s) label += (label.empty() ? "" : ";") + std::to_string(i);
      t.add({label, num(n), format_real(r.window_ratio), format_real(r.product), format_real(r.difference),
             r.flagged ? "true" : "false"});
    }
  o.table = std::move(t);
  o.certificate = nlohmann::ordered_json{
      {"emptiness", fam.infinite_intersections_empty() == IEFamily::EmptinessEvidence::Verified ? "verified"
                                                                                                 : "assumed"}};
  return o;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << body;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

SpecValidationError::SpecValidationError(std::vector<std::string> v)
    : std::runtime_error([&] {
        std::string s = "invalid experiment spec:";
        for (const auto& x : v) s += "\n  " + x;
        return s;
      }()),
      violations(std::move(v)) {}

std::string format_real(double v) { return fmt::format("{:.9g}", v); }

ExperimentSpec parse_spec(const std::string& text, std::chrono::system_clock::time_point now) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw SpecParseError(fmt::format("malformed JSON at line {}, column {}: {}", line, col, e.what()), line, col);
  }
  std::vector<std::string> v;
  if (!doc.is_object()) throw SpecValidationError({"/: expected an object"});
  for (const auto& [key, _] : doc.items())
    if (key != "command" && key != "params" && key != "output") v.push_back("/" + key + ": unknown field");

  ExperimentSpec spec;
  const Schema* schema = nullptr;
  if (!doc.contains("command")) {
    v.push_back("/command: required field is missing");
  } else if (!doc["command"].is_string()) {
    v.push_back("/command: expected string");
  } else {
    spec.command = doc["command"].get<std::string>();
    const auto it = schemas().find(spec.command);
    if (it == schemas().end())
      v.push_back("/command: unknown command \"" + spec.command + "\"");
    else
      schema = &it->second;
  }

  if (doc.contains("output") && !doc["output"].is_string()) v.push_back("/output: expected string");
  if (schema) {
    const json params = doc.contains("params") ? doc["params"] : json::object();
    if (!params.is_object()) {
      v.push_back("/params: expected an object");
    } else {
      for (const auto& [key, val] : params.items()) {
        const auto f = schema->find(key);
        if (f == schema->end())
          v.push_back("/params/" + key + ": unknown field");
        else
          check_field("/params/" + key, val, f->second, v);
      }
      for (const auto& [key, f] : *schema)
        if (f.required && !params.contains(key)) v.push_back("/params/" + key + ": required field is missing");
      spec.params = params;
    }
  }
  if (!v.empty()) throw SpecValidationError(std::move(v));

  if (doc.contains("output"))
    spec.output = doc["output"].get<std::string>();
  else
    spec.output = fmt::format("out/{}-{:%Y%m%dT%H%M%SZ}", spec.command,
                              fmt::gmtime(std::chrono::system_clock::to_time_t(now)));
  return spec;
}

RunResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  RunResult res;
  try {
    const json& p = spec.params;
    const unsigned th = options.threads;
    Outcome o;
    if (spec.command == "density") o = run_density(p, th);
    else if (spec.command == "detect") o = run_detect(p);
    else if (spec.command == "witness") o = run_witness(p);
    else if (spec.command == "sl2") o = run_sl2(p, th);
    else if (spec.command == "symbolic") o = run_symbolic(p, th);
    else if (spec.command == "rotate") o = run_rotate(p, th);
    else if (spec.command == "ena") o = run_ena(p);
    else if (spec.command == "ie") o = run_ie(p, th);
    else throw ArgumentError("unknown command " + spec.command);

    std::filesystem::path prefix(spec.output);
    if (options.out_dir && prefix.is_relative()) prefix = std::filesystem::path(*options.out_dir) / prefix;
    if (o.table) {
      const auto path = prefix.string() + ".csv";
      write_file(path, o.table->str());
      res.artifacts.push_back(path);
    }
    if (o.certificate) {
      const auto path = prefix.string() + ".json";
      write_file(path, o.certificate->dump(2) + "\n");
      res.artifacts.push_back(path);
    }
    res.messages = std::move(o.messages);
    res.exit_code = o.acceptance_failed ? kExitAcceptance : kExitOk;
  } catch (const std::exception& e) {
    res.exit_code = kExitError;
    res.messages.push_back(e.what());
  }
  return res;
}

}  // namespace discordant
