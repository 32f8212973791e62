#include "cli.h"

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ddl/default_engine.h"
#include "ddl/errors.h"
#include "ddl/kb_language.h"
#include "ddl/model_counter.h"
#include "ddl/oracle.h"
#include "ddl/rule_forge.h"
#include "lottery.h"

namespace ddl::cli {

namespace {

using json = nlohmann::json;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string Exact(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

json ProportionJson(const Rational& r) {
  return {{"exact", Exact(r)}, {"decimal", DecimalString(r)}};
}

Rational FlagRational(const std::string& text, const char* flag) {
  const auto r = ParseRational(text);
  if (!r) throw UsageError(std::string("--") + flag + ": not a number: " + text);
  return *r;
}

struct Options {
  std::string kb_path;
  std::optional<std::size_t> domain;
  std::uint64_t budget = CountOptions{}.budget;
  unsigned threads = 1;
  std::string report;
  bool timing = false;
  std::string delta;
  std::string epsilon_star;
  std::string order = "greedy";
  std::string mode = "reiter";
  std::string rules;
  std::string target;
  bool non_strict = false;
  std::size_t constants = 1;
  std::optional<std::size_t> max_literals;
  std::uint64_t max_sets = EvidenceBound{}.max_sets;
  std::uint64_t cap = oracle::kDefaultCap;
  std::size_t n = 0;
  std::string intervals;
  std::string kb_out;
};

struct Loaded {
  ParsedKb parsed;
  std::string text;
  std::shared_ptr<const KnowledgeBase> kb;
};

Loaded Load(const Options& o) {
  std::ifstream in(o.kb_path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + o.kb_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  Loaded l;
  l.text = ss.str();
  l.parsed = ParseKb(l.text);
  if (o.domain) {
    if (*o.domain < 1) throw UsageError("--domain must be at least 1");
    l.parsed.kb.domain_size = *o.domain;
  }
  l.kb = std::make_shared<const KnowledgeBase>(l.parsed.kb);
  return l;
}

CountOptions Counting(const Options& o) {
  CountOptions c;
  c.budget = o.budget;
  c.threads = std::max(1U, o.threads);
  return c;
}

Rational Delta(const Options& o, const ThresholdConfig& config) {
  if (!o.delta.empty()) {
    const Rational d = FlagRational(o.delta, "delta");
    if (d <= 0 || d >= 1) throw UsageError("--delta must lie in (0, 1)");
    return d;
  }
  return config.Delta();
}

Rational EpsilonStar(const Options& o, const ThresholdConfig& config) {
  if (!o.epsilon_star.empty()) {
    const Rational e = FlagRational(o.epsilon_star, "epsilon-star");
    if (e <= 0 || e > 1) throw UsageError("--epsilon-star must lie in (0, 1]");
    return e;
  }
  return config.EpsilonStar();
}

Ordering ParseOrder(const std::string& text, std::size_t rules) {
  Ordering o;
  if (text == "greedy") return o;
  if (text == "declared") {
    o.policy = OrderPolicy::kDeclared;
    return o;
  }
  o.policy = OrderPolicy::kExplicit;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    std::size_t v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != item.size() || v >= rules) {
      throw UsageError("--order: expected greedy, declared or a list of rule "
                       "indices below " + std::to_string(rules));
    }
    o.priority.push_back(v);
  }
  return o;
}

json StatJson(const KnowledgeBase& kb, const StatStatement& s) {
  return kb.Render(s);
}

json RuleJson(const KnowledgeBase& kb, const DefaultRule& r) {
  json j;
  j["rule"] = kb.Render(r);
  j["origin"] =
      r.origin.kind == RuleOrigin::Kind::kDeclared ? "declared" : "generated";
  if (!r.origin.case_tag.empty()) j["case"] = r.origin.case_tag;
  j["sources"] = json::array();
  for (const auto& s : r.origin.sources) j["sources"].push_back(StatJson(kb, s));
  if (const auto lb = r.SourceLowerBound()) {
    j["source_lower_bound"] = ProportionJson(*lb);
  }
  return j;
}

std::string EvidenceText(const KnowledgeBase& kb, const Evidence& e) {
  if (e.empty()) return "{}";
  std::string out = "{";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i > 0) out += ", ";
    out += kb.Render(e[i]);
  }
  return out + "}";
}

json EvidenceJson(const KnowledgeBase& kb, const Evidence& e) {
  json j = json::array();
  for (const auto& l : e) j.push_back(kb.Render(l));
  return j;
}

std::string GroundRuleText(const KnowledgeBase& kb, const GroundRule& gr) {
  const std::string c = kb.constants[gr.constant].name;
  return "d" + std::to_string(gr.rule_index) + "[" + c + "]";
}

json TraceJson(const KnowledgeBase& kb, const TraceEntry& t) {
  return {{"rule_index", t.rule.rule_index},
          {"constant", kb.constants[t.rule.constant].name},
          {"rule", kb.Render(t.rule.rule)},
          {"consequent", kb.Render(t.rule.Consequent())},
          {"proportion", ProportionJson(t.proportion.value)}};
}

json ExtensionJson(const KnowledgeBase& kb, const Extension& ext) {
  json j;
  j["conclusions"] = json::array();
  for (const auto& c : ext.conclusions) j["conclusions"].push_back(kb.Render(c));
  j["trace"] = json::array();
  for (const auto& t : ext.trace) j["trace"].push_back(TraceJson(kb, t));
  j["proportion"] = ProportionJson(ext.final_proportion.value);
  return j;
}

void PrintExtension(std::ostream& out, const KnowledgeBase& kb,
                    const Extension& ext, const std::string& title) {
  out << title << "\n";
  if (ext.trace.empty()) out << "  (no rule applied)\n";
  for (std::size_t i = 0; i < ext.trace.size(); ++i) {
    const auto& t = ext.trace[i];
    out << "  " << std::setw(3) << i + 1 << "  " << std::left << std::setw(8)
        << GroundRuleText(kb, t.rule) << std::setw(24)
        << kb.Render(t.rule.Consequent()) << std::right << "p = "
        << Exact(t.proportion.value) << " ("
        << DecimalString(t.proportion.value) << ")\n";
  }
  out << "  proportion " << Exact(ext.final_proportion.value) << " ("
      << DecimalString(ext.final_proportion.value) << ")\n";
}

struct Outcome {
  json results;
  bool violation = false;
};

Outcome Generate(const Options& o, const Loaded& l, std::ostream& out) {
  const KnowledgeBase& kb = *l.kb;
  if (kb.stats.empty()) {
    throw Error("knowledge base has no statistical statements");
  }
  const Rational delta = Delta(o, l.parsed.config);
  std::vector<Formula> targets;
  if (!o.target.empty()) {
    targets.push_back(ParseFormula(o.target, kb));
  } else {
    targets = CompilationTargets(kb);
  }
  Outcome res;
  res.results["delta"] = ProportionJson(delta);
  res.results["targets"] = json::array();
  std::vector<DefaultRule> kept;
  out << "delta " << FormatRational(delta) << ", keep rules whose source "
      << "lower bound >= " << FormatRational(1 - delta) << "\n";
  for (const auto& target : targets) {
    const CandidateSet cs = GenerateCandidates(kb, target);
    const FilterResult fr = FilterByDelta(cs, delta);
    json t;
    t["target"] = kb.Render(target);
    t["statements"] = json::array();
    for (const auto& s : StatsForTarget(kb, target)) {
      t["statements"].push_back(StatJson(kb, s));
    }
    t["warnings"] = cs.warnings;
    t["candidates"] = json::array();
    out << "\ntarget " << kb.Render(target) << "\n";
    for (const auto& w : cs.warnings) out << "  warning: " << w << "\n";
    out << "  " << std::left << std::setw(8) << "case" << std::setw(10)
        << "verdict" << "rule\n"
        << std::right;
    for (const auto& r : cs.candidates) {
      json c = RuleJson(kb, r);
      std::string verdict = "kept";
      for (const auto& rej : fr.rejected) {
        if (rej.rule == r) {
          verdict = "rejected";
          c["reason"] = rej.reason;
        }
      }
      c["verdict"] = verdict;
      out << "  " << std::left << std::setw(8) << r.origin.case_tag
          << std::setw(10) << verdict << kb.Render(r) << std::right;
      if (c.contains("reason")) out << "  [" << c["reason"].get<std::string>() << "]";
      out << "\n";
      t["candidates"].push_back(std::move(c));
      if (verdict == "kept" &&
          std::none_of(kept.begin(), kept.end(),
                       [&](const DefaultRule& k) { return k.SameShape(r); })) {
        kept.push_back(r);
      }
    }
    res.results["targets"].push_back(std::move(t));
  }
  res.results["kept"] = json::array();
  out << "\nkept rules (" << kept.size() << ")\n";
  for (const auto& r : kept) {
    out << "  " << kb.Render(r) << "\n";
    res.results["kept"].push_back(kb.Render(r));
  }
  return res;
}

std::vector<DefaultRule> RulesFor(const Options& o, const Loaded& l,
                                  const Rational& delta, std::string& which) {
  which = o.rules;
  if (which.empty()) which = l.parsed.rules.empty() ? "auto" : "declared";
  if (which == "declared") return l.parsed.rules;
  if (which == "auto") {
    if (l.kb->stats.empty()) return {};
    return CompileDefaults(*l.kb, delta).kept;
  }
  throw UsageError("--rules must be declared or auto");
}

Outcome Extend(const Options& o, const Loaded& l, std::ostream& out) {
  const KnowledgeBase& kb = *l.kb;
  const Rational delta = Delta(o, l.parsed.config);
  std::string which;
  const std::vector<DefaultRule> rules = RulesFor(o, l, delta, which);
  const ModelCounter counter(l.kb, Counting(o));
  Outcome res;
  res.results["mode"] = o.mode;
  res.results["rule_source"] = which;
  res.results["evidence"] = EvidenceJson(kb, l.parsed.evidence);
  res.results["rules"] = json::array();
  out << "evidence " << EvidenceText(kb, l.parsed.evidence) << "\n";
  out << "rules (" << which << ")\n";
  for (std::size_t i = 0; i < rules.size(); ++i) {
    res.results["rules"].push_back(RuleJson(kb, rules[i]));
    out << "  d" << i << "  " << kb.Render(rules[i]) << "\n";
  }
  if (o.mode == "reiter") {
    const auto exts = ReiterExtensions(counter, l.parsed.evidence, rules);
    res.results["extensions"] = json::array();
    out << "\n" << exts.size() << " extension(s)\n";
    for (std::size_t i = 0; i < exts.size(); ++i) {
      res.results["extensions"].push_back(ExtensionJson(kb, exts[i]));
      PrintExtension(out, kb, exts[i], "extension " + std::to_string(i + 1));
    }
  } else if (o.mode == "threshold") {
    ThresholdOptions t;
    t.epsilon_star = EpsilonStar(o, l.parsed.config);
    t.ordering = ParseOrder(o.order, rules.size());
    t.strict = !o.non_strict;
    const Extension ext =
        ThresholdedExtension(counter, l.parsed.evidence, rules, t);
    json j = ExtensionJson(kb, ext);
    j["epsilon_star"] = ProportionJson(t.epsilon_star);
    j["threshold"] = ProportionJson(1 - t.epsilon_star);
    j["strict"] = t.strict;
    j["order"] = o.order;
    j["halting_step"] = ext.trace.size() + 1;
    j["below_threshold"] = json::array();
    for (const auto& b : ext.below_threshold) {
      j["below_threshold"].push_back(TraceJson(kb, b));
    }
    res.results["extension"] = std::move(j);
    out << "\nthreshold " << FormatRational(1 - t.epsilon_star)
        << (t.strict ? " (strict)" : " (inclusive)") << ", order " << o.order
        << "\n";
    PrintExtension(out, kb, ext, "extension");
    out << "  halted at step " << ext.trace.size() + 1;
    if (ext.below_threshold.empty()) {
      out << ": no applicable rule left\n";
    } else {
      out << ": below threshold\n";
      for (const auto& b : ext.below_threshold) {
        out << "    " << GroundRuleText(kb, b.rule) << "  "
            << kb.Render(b.rule.Consequent()) << "  p = "
            << Exact(b.proportion.value) << " ("
            << DecimalString(b.proportion.value) << ")\n";
      }
    }
  } else {
    throw UsageError("--mode must be reiter or threshold");
  }
  return res;
}

Outcome Soundness(const Options& o, const Loaded& l, std::ostream& out) {
  const KnowledgeBase& kb = *l.kb;
  const Rational delta = Delta(o, l.parsed.config);
  std::vector<DefaultRule> rules;
  if (!kb.stats.empty()) rules = CompileDefaults(kb, delta).kept;
  const std::size_t generated = rules.size();
  for (const auto& r : l.parsed.rules) rules.push_back(r);

  ValidityOptions v;
  v.bound.constants = o.constants;
  if (o.max_literals) v.bound.max_literals = *o.max_literals;
  v.bound.max_sets = o.max_sets;
  v.count = Counting(o);

  // Evidence is rendered against the same vocabulary the check used.
  KnowledgeBase shown = kb;
  if (shown.constants.empty()) shown.AddConstant("a");

  Outcome res;
  res.results["delta"] = ProportionJson(delta);
  res.results["generated_rules"] = generated;
  res.results["declared_rules"] = l.parsed.rules.size();
  res.results["rules"] = json::array();
  out << "delta " << FormatRational(delta) << ", " << generated
      << " generated and " << l.parsed.rules.size() << " declared rule(s)\n";
  std::size_t violations = 0;
  for (const auto& r : rules) {
    const ValidityReport rep = DeltaValidCheck(r, kb, delta, v);
    json j = RuleJson(kb, r);
    j["valid"] = rep.valid;
    j["worst_error"] = ProportionJson(rep.worst_proportion.value);
    j["evidence_sets"] = rep.evidence_sets;
    j["consistent_sets"] = rep.consistent_sets;
    j["applicable_sets"] = rep.applicable_sets;
    if (rep.worst_evidence) {
      j["worst_evidence"] = EvidenceJson(shown, *rep.worst_evidence);
      j["worst_constant"] = shown.constants[*rep.worst_constant].name;
    }
    res.results["rules"].push_back(std::move(j));
    if (!rep.valid) ++violations;
    out << "  " << (rep.valid ? "valid    " : "VIOLATED ") << kb.Render(r)
        << "  worst error " << Exact(rep.worst_proportion.value) << " ("
        << DecimalString(rep.worst_proportion.value) << ")";
    if (rep.worst_evidence) {
      out << " at E = " << EvidenceText(shown, *rep.worst_evidence);
    }
    out << "\n";
  }
  res.results["violations"] = violations;
  out << (violations == 0 ? "sound" : "unsound") << ": " << violations
      << " violation(s)\n";
  res.violation = violations > 0;
  return res;
}

Outcome Lottery(const Options& o, const ParsedKb& parsed,
                const std::string& text, std::ostream& out) {
  const auto kb = std::make_shared<const KnowledgeBase>(parsed.kb);
  const ModelCounter counter(kb, Counting(o));
  const Rational upper = parsed.kb.stats.front().upper;
  Outcome res;
  res.results["n"] = o.n;
  res.results["domain"] = parsed.kb.domain_size;
  res.results["interval"] = {ProportionJson(parsed.kb.stats.front().lower),
                             ProportionJson(upper)};
  res.results["kb"] = text;

  const auto exts = ReiterExtensions(counter, parsed.evidence, parsed.rules);
  json reiter = json::array();
  out << "reiter: " << exts.size() << " extension(s)\n";
  out << "  " << std::left << std::setw(12) << "species" << std::setw(14)
      << "conclusions" << std::setw(22) << "proportion" << "within bound\n"
      << std::right;
  const WorldState base = WorldState::FromEvidence(kb, parsed.evidence);
  for (const auto& ext : exts) {
    json j = ExtensionJson(*kb, ext);
    std::string species = "-";
    for (std::size_t p = 1; p < kb->predicates.size(); ++p) {
      const WorldState w = base.With(ext.conclusions);
      if (counter.Entails(w, {Formula::Atom(p), 0})) {
        species = kb->predicates[p].name;
      }
    }
    const bool within = ext.final_proportion.value <= upper;
    j["species"] = species;
    j["within_bound"] = within;
    reiter.push_back(std::move(j));
    out << "  " << std::left << std::setw(12) << species << std::setw(14)
        << ext.conclusions.size() << std::setw(22)
        << (Exact(ext.final_proportion.value) + " (" +
            DecimalString(ext.final_proportion.value) + ")")
        << (within ? "yes" : "no") << std::right << "\n";
  }
  res.results["reiter"] = std::move(reiter);

  ThresholdOptions t;
  t.epsilon_star = parsed.config.EpsilonStar();
  t.ordering = ParseOrder(o.order, parsed.rules.size());
  t.strict = !o.non_strict;
  const Extension ext =
      ThresholdedExtension(counter, parsed.evidence, parsed.rules, t);
  json j = ExtensionJson(*kb, ext);
  j["epsilon_star"] = ProportionJson(t.epsilon_star);
  j["halting_step"] = ext.trace.size() + 1;
  j["below_threshold"] = json::array();
  for (const auto& b : ext.below_threshold) {
    j["below_threshold"].push_back(TraceJson(*kb, b));
  }
  res.results["threshold"] = std::move(j);
  out << "\nthreshold " << FormatRational(1 - t.epsilon_star) << ", order "
      << o.order << "\n";
  PrintExtension(out, *kb, ext, "extension");
  out << "  blocked at step " << ext.trace.size() + 1 << " of "
      << parsed.rules.size() << "\n";
  return res;
}

Outcome VerifyOracle(const Options& o, const Loaded& l, std::ostream& out) {
  const KnowledgeBase& kb = *l.kb;
  const ModelCounter counter(l.kb, Counting(o));
  Outcome res;
  res.results["checks"] = json::array();
  std::optional<std::string> first_mismatch;
  const auto record = [&](const std::string& query, const std::string& fast,
                          const std::string& slow) {
    const bool ok = fast == slow;
    res.results["checks"].push_back(
        {{"query", query}, {"counter", fast}, {"oracle", slow}, {"equal", ok}});
    out << "  " << (ok ? "ok        " : "MISMATCH  ") << std::left
        << std::setw(28) << query << std::right << fast;
    if (!ok) out << " vs oracle " << slow;
    out << "\n";
    if (!ok && !first_mismatch) {
      first_mismatch = query + ": counter " + fast + ", oracle " + slow;
    }
  };

  const WorldState bare{l.kb, {}};
  const WorldState w = WorldState::FromEvidence(l.kb, l.parsed.evidence);
  record("count K", counter.Count(bare).value.str(),
         oracle::Count(bare, o.cap).str());
  const Integer models = counter.Count(w).value;
  record("count K+E", models.str(), oracle::Count(w, o.cap).str());
  if (models > 0) {
    for (std::size_t c = 0; c < kb.constants.size(); ++c) {
      for (std::size_t p = 0; p < kb.predicates.size(); ++p) {
        const GroundFormula q{Formula::Atom(p), c};
        record("P(" + kb.Render(q) + ")",
               Exact(counter.ProportionOf(w, q).value),
               Exact(oracle::ProportionOf(w, q, o.cap).value));
      }
    }
  }
  res.results["equal"] = !first_mismatch.has_value();
  if (first_mismatch) {
    res.results["first_mismatch"] = *first_mismatch;
    res.violation = true;
  }
  return res;
}

int Finish(const Options& o, const std::string& name,
           const std::vector<std::string>& args, const std::string& kb_path,
           const std::string& kb_text, Outcome res, double seconds,
           std::ostream& err) {
  if (!o.report.empty()) {
    json report;
    report["command"] = {{"name", name}, {"args", args}};
    report["kb"] = {{"path", kb_path}, {"sha256", Sha256Hex(kb_text)}};
    report["results"] = std::move(res.results);
    report["status"] = res.violation ? "violation" : "ok";
    if (o.timing) report["timing"] = {{"seconds", seconds}};
    std::ofstream f(o.report, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << o.report << "\n";
      return 2;
    }
    f << report.dump(2) << "\n";
  }
  return res.violation ? 1 : 0;
}

}  // namespace

std::string Sha256Hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0')
       << static_cast<int>(digest[i]);
  }
  return os.str();
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Default rules with exact model-proportion semantics", "ddl"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub, bool kb_file) {
    if (kb_file) {
      sub->add_option("kb", o.kb_path, "knowledge-base file")->required();
    }
    sub->add_option("--domain", o.domain, "override the domain size");
    sub->add_option("--budget", o.budget,
                    "largest region-vector enumeration per count");
    sub->add_option("--threads", o.threads, "counting workers");
    sub->add_option("--report", o.report, "write a JSON report here");
    sub->add_flag("--timing", o.timing, "include wall time in the report");
  };

  auto* gen = app.add_subcommand("generate", "compile defaults from statistics");
  common(gen, true);
  gen->add_option("--target", o.target, "target formula (default: all)");
  gen->add_option("--delta", o.delta, "security level");

  auto* ext = app.add_subcommand("extend", "compute extensions");
  common(ext, true);
  ext->add_option("--mode", o.mode, "reiter or threshold")
      ->check(CLI::IsMember({"reiter", "threshold"}));
  ext->add_option("--epsilon-star", o.epsilon_star, "threshold slack");
  ext->add_option("--order", o.order,
                  "greedy, declared, or rule indices like 2,0,1");
  ext->add_option("--rules", o.rules,
                  "declared or auto (default: declared if any)")
      ->check(CLI::IsMember({"declared", "auto"}));
  ext->add_option("--delta", o.delta, "security level for --rules auto");
  ext->add_flag("--non-strict", o.non_strict, "fire at p >= 1 - epsilon*");

  auto* snd = app.add_subcommand("soundness", "check every rule for delta-validity");
  common(snd, true);
  snd->add_option("--delta", o.delta, "security level");
  snd->add_option("--constants", o.constants,
                  "constants the evidence may mention");
  snd->add_option("--max-literals", o.max_literals, "literals per evidence set");
  snd->add_option("--max-sets", o.max_sets, "refuse above this many sets");

  auto* lot = app.add_subcommand("lottery", "run the species lottery");
  common(lot, false);
  lot->add_option("--n", o.n, "number of species")->required();
  lot->add_option("--intervals", o.intervals, "species interval as lo,hi");
  lot->add_option("--epsilon-star", o.epsilon_star, "threshold slack");
  lot->add_option("--order", o.order, "threshold ordering");
  lot->add_option("--kb-out", o.kb_out, "write the generated knowledge base");
  lot->add_flag("--non-strict", o.non_strict, "fire at p >= 1 - epsilon*");

  auto* ver = app.add_subcommand("verify-oracle",
                                 "compare the counter against enumeration");
  common(ver, true);
  ver->add_option("--cap", o.cap, "largest oracle enumeration");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };
  try {
    if (*lot) {
      if (o.n < 1) throw UsageError("--n must be at least 1");
      LotterySpec spec;
      spec.n = o.n;
      spec.domain = o.domain.value_or(8);
      if (spec.domain < 1) throw UsageError("--domain must be at least 1");
      if (!o.intervals.empty()) {
        const auto comma = o.intervals.find(',');
        if (comma == std::string::npos) {
          throw UsageError("--intervals expects lo,hi");
        }
        spec.lower = FlagRational(o.intervals.substr(0, comma), "intervals");
        spec.upper = FlagRational(o.intervals.substr(comma + 1), "intervals");
      }
      spec.epsilon_star = EpsilonStar(o, ThresholdConfig{});
      const ParsedKb parsed = MakeLottery(spec);
      const std::string text = SerializeKb(parsed);
      if (!o.kb_out.empty()) {
        std::ofstream f(o.kb_out, std::ios::binary);
        if (!f) throw UsageError("cannot write " + o.kb_out);
        f << text;
      }
      Outcome res = Lottery(o, parsed, text, out);
      return Finish(o, "lottery", args, o.kb_out, text, std::move(res),
                    elapsed(), err);
    }
    const Loaded l = Load(o);
    Outcome res;
    std::string name;
    if (*gen) {
      name = "generate";
      res = Generate(o, l, out);
    } else if (*ext) {
      name = "extend";
      res = Extend(o, l, out);
    } else if (*snd) {
      name = "soundness";
      res = Soundness(o, l, out);
    } else {
      name = "verify-oracle";
      res = VerifyOracle(o, l, out);
      if (res.violation) {
        err << "error: mismatch at "
            << res.results["first_mismatch"].get<std::string>() << "\n";
      }
    }
    return Finish(o, name, args, o.kb_path, l.text, std::move(res), elapsed(),
                  err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ddl::cli
