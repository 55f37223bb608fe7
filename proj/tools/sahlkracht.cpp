// Command-line front end. Every subcommand is a thin wrapper over one library
// operation; this file only gathers input, builds budgets and formats output.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "sahlkracht/correspond.hpp"
#include "sahlkracht/error.hpp"
#include "sahlkracht/golden.hpp"
#include "sahlkracht/minval.hpp"
#include "sahlkracht/parser.hpp"
#include "sahlkracht/safety.hpp"
#include "sahlkracht/semantics.hpp"
#include "sahlkracht/synthesize.hpp"
#include "sahlkracht/tree_json.hpp"

using namespace sahlkracht;
using nlohmann::json;

namespace {

struct Flags {
  bool json = false;
  bool verify = false;
  bool trace = false;
  std::optional<int> max_worlds;
  std::optional<int> relations;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
};

// Usage problems (bad input source) exit with 2, like syntax errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  json j = json::object();
  std::ostringstream text;
  int code = 0;
};

std::string strip_comments(std::istream& in) {
  std::string line, out;
  while (std::getline(in, line)) {
    if (line == "#" || line.rfind("# ", 0) == 0) continue;
    out += line;
    out += ' ';
  }
  return out;
}

std::string read_input(const std::string& arg, const std::string& file) {
  if (!arg.empty() && !file.empty()) throw UsageError("give the formula either inline or with --file, not both");
  if (!arg.empty()) return arg;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read " + file);
    return strip_comments(in);
  }
  return strip_comments(std::cin);
}

std::vector<Label> labels_union(const std::vector<Label>& a, const std::vector<Label>& b) {
  std::set<Label> s(a.begin(), a.end());
  s.insert(b.begin(), b.end());
  return {s.begin(), s.end()};
}

// nullopt keeps the semantics defaults.
std::optional<Budget> make_budget(const Flags& f, std::size_t relation_count) {
  std::optional<std::uint64_t> seed = f.seed;
  if (const char* env = std::getenv("SAHLKRACHT_SEED")) seed = std::stoull(env);
  if (!f.max_worlds && !f.relations && !f.samples && !seed) return std::nullopt;
  std::size_t n = f.relations ? static_cast<std::size_t>(*f.relations) : relation_count;
  Budget b = Budget::standard(std::max<std::size_t>(n, 1));
  if (f.relations)
    for (int k = 1; k <= *f.relations; ++k) b.labels.push_back(Label{k});
  if (f.max_worlds) b.exhaustive_worlds = *f.max_worlds;
  if (f.samples) b.samples = *f.samples;
  if (seed) b.seed = *seed;
  return b;
}

json known(const AnyTree& t) {
  auto n = known_name(t);
  return n ? json(*n) : json(nullptr);
}

void note_known(Output& o, const AnyTree& t) {
  o.j["known"] = known(t);
  if (auto n = known_name(t)) o.text << "(matches bundled formula " << *n << ")\n";
}

void report_check(Output& o, const Report& r, const std::string& what) {
  o.j["check"] = to_json(r);
  o.text << what << ": " << (r.passed ? "passed" : "FAILED") << " (" << r.frames << " frames, "
         << r.points << " points)\n";
  if (!r.passed) {
    const Counterexample& c = *r.counterexample;
    o.text << "  counterexample at world " << c.world << " of " << c.frame.to_string()
           << " (modal/left " << c.left << ", right " << c.right << ")\n";
  }
}

// --- subcommands -----------------------------------------------------------

void cmd_parse(Output& o, const std::string& text, const std::string& kind) {
  std::optional<AnyTree> t;
  std::string used = kind;
  if (kind == "modal") t = parse(SyntaxKind::Modal, text);
  else if (kind == "expr") t = parse(SyntaxKind::Expr, text);
  else if (kind == "fo") t = parse(SyntaxKind::Fo, text);
  else {
    // Auto: first-order, then expression, then modal; the modal error is the
    // one reported when nothing fits.
    for (auto [k, name] : {std::pair{SyntaxKind::Fo, "fo"}, std::pair{SyntaxKind::Expr, "expr"}}) {
      try {
        t = parse(k, text);
        used = name;
        break;
      } catch (const SyntaxError&) {
      }
    }
    if (!t) {
      t = parse(SyntaxKind::Modal, text);
      used = "modal";
    }
  }
  o.j["kind"] = used;
  o.j["printed"] = print(*t);
  o.j["tree"] = to_json(*t);
  o.text << used << ": " << print(*t) << "\n";
  note_known(o, *t);
}

void cmd_classify(Output& o, const std::string& text) {
  Modal m = parse_modal(text);
  auto c = classify_sahlqvist(m);
  o.j["input"] = print(m);
  o.j["sahlqvist"] = c.ok;
  o.j["decomposition"] = c.ok ? to_json(*c.decomposition) : json(nullptr);
  o.j["reason"] = c.ok ? json(nullptr) : json(c.reason);
  note_known(o, m);
  if (c.ok) {
    o.text << "generalized Sahlqvist\n" << c.decomposition->to_string();
  } else {
    o.text << "not generalized Sahlqvist: " << c.reason << "\n";
    o.code = 1;
  }
}

void trace_decomposition(Output& o, const Decomposition& d, json& out) {
  if (d.kind != DecompKind::Simple) {
    for (const Decomposition& k : d.kids) trace_decomposition(o, k, out);
    return;
  }
  RequirementMap f;
  json kvs = json::array();
  for (std::size_t i = 0; i < d.tree.nodes.size(); ++i)
    for (const Modal& r : d.tree.nodes[i].reg) {
      f[ObjVar{static_cast<int>(i)}].push_back(r);
      kvs.push_back({{"node", i}, {"formula", print(r)}, {"kv", print(kv(r))}});
    }
  json kfs = json::object();
  for (const PropVar& p : requirement_vars(f)) {
    json branches = json::array();
    for (const Expr& e : kf(f, p)) branches.push_back(print(e));
    kfs[p.key()] = branches;
  }
  out.push_back({{"antecedent", print(d.gsa)}, {"tree", d.tree.to_string()}, {"kv", kvs}, {"kf", kfs}});
  o.text << "-- simple implication with antecedent " << print(d.gsa) << "\n" << d.tree.to_string();
  for (const auto& k : kvs)
    o.text << "   KV at node " << k["node"].get<int>() << ": " << k["formula"].get<std::string>()
           << "  =>  " << k["kv"].get<std::string>() << "\n";
  for (auto it = kfs.begin(); it != kfs.end(); ++it) {
    o.text << "   KF " << it.key() << " =";
    for (const auto& b : it.value()) o.text << " [" << b.get<std::string>() << "]";
    o.text << "\n";
  }
}

void cmd_correspond(Output& o, const std::string& text, const Flags& fl) {
  Modal m = parse_modal(text);
  auto c = classify_sahlqvist(m);
  o.j["input"] = print(m);
  note_known(o, m);
  if (!c.ok) {
    o.j["correspondent"] = nullptr;
    o.j["reason"] = c.reason;
    o.text << "not generalized Sahlqvist: " << c.reason << "\n";
    o.code = 1;
    return;
  }
  Fo a = correspond(m);
  o.j["correspondent"] = print(a);
  o.j["tree"] = to_json(a);
  if (fl.trace) {
    json tr = json::array();
    trace_decomposition(o, *c.decomposition, tr);
    o.j["trace"] = tr;
  }
  o.text << print(a) << "\n";
  if (fl.verify) {
    Report r = check_correspondence(m, a, make_budget(fl, labels_union(labels_of(m), labels_of(a)).size()));
    report_check(o, r, "verification");
    if (!r.passed) o.code = 1;
  }
}

void cmd_kracht(Output& o, const std::string& text) {
  Fo f = parse_fo(text);
  KrachtVerdict v = check_kracht(f);
  o.j["input"] = print(f);
  o.j["kracht"] = v.kracht;
  o.j["normalized"] = v.normalized ? json(print(*v.normalized)) : json(nullptr);
  json u = json::array();
  for (ObjVar x : v.universal) u.push_back(print(x));
  o.j["universal"] = u;
  o.j["reasons"] = v.reasons;
  note_known(o, f);
  if (v.normalized) o.text << "normalized: " << print(*v.normalized) << "\n";
  if (v.kracht) {
    o.text << "generalized Kracht\n";
  } else {
    o.text << "not generalized Kracht:\n";
    for (const auto& r : v.reasons) o.text << "  " << r << "\n";
    o.code = 1;
  }
}

void cmd_synthesize(Output& o, const std::string& text, const Flags& fl) {
  Fo f = parse_fo(text);
  o.j["input"] = print(f);
  note_known(o, f);
  SynthesisOptions opts;
  opts.verify = fl.verify;
  if (fl.verify) opts.budget = make_budget(fl, labels_of(f).size());
  Synthesis s = synthesize_traced(f, opts);
  o.j["result"] = print(s.result);
  o.j["tree"] = to_json(s.result);
  if (fl.trace) {
    json pools = json::array();
    for (const auto& [e, head] : s.exprs.heads) {
      json req = json::object();
      for (const auto& [x, ms] : s.exprs.pools.at(e)) {
        json fs = json::array();
        for (const Modal& m : ms) fs.push_back(print(m));
        req[print(x)] = fs;
      }
      pools.push_back({{"expr", print(e)}, {"head", print(Modal::var(head))}, {"requirements", req}});
    }
    o.j["trace"] = {{"normalized", print(s.normalized)}, {"eliminated", print(s.eliminated)}, {"pools", pools}};
    o.text << "normalized: " << print(s.normalized) << "\n"
           << "eliminated: " << print(s.eliminated) << "\n";
    for (const auto& p : pools) {
      o.text << "pool " << p["expr"].get<std::string>() << " head " << p["head"].get<std::string>() << "\n";
      for (auto it = p["requirements"].begin(); it != p["requirements"].end(); ++it)
        for (const auto& m : it.value()) o.text << "   " << it.key() << " |= " << m.get<std::string>() << "\n";
    }
  }
  o.text << print(s.result) << "\n";
  if (s.verification) report_check(o, *s.verification, "verification");
}

void cmd_safe(Output& o, const std::string& text) {
  Expr e = parse_expr(text);
  SafetyVerdict v = analyze_safety(e);
  o.j["input"] = print(e);
  o.j["verdict"] = to_json(v);
  note_known(o, e);
  o.text << to_string(v.status) << "\n" << render_marked(v);
  if (v.status != SafetyStatus::Safe) o.code = 1;
}

void cmd_verify(Output& o, const std::string& mtext, const std::string& ftext, const Flags& fl) {
  Modal m = parse_modal(mtext);
  Fo f = parse_fo(ftext);
  o.j["modal"] = print(m);
  o.j["fo"] = print(f);
  Report r = check_correspondence(m, f, make_budget(fl, labels_union(labels_of(m), labels_of(f)).size()));
  report_check(o, r, "correspondence");
  if (!r.passed) o.code = 1;
}

void cmd_roundtrip(Output& o, const std::string& text, const Flags& fl) {
  std::optional<Fo> fo;
  try {
    fo = parse_fo(text);
  } catch (const SyntaxError&) {
  }
  if (fo) {
    Modal m = synthesize(*fo);
    Fo back = correspond(m);
    o.j["direction"] = "fo";
    o.j["input"] = print(*fo);
    o.j["synthesized"] = print(m);
    o.j["back"] = print(back);
    note_known(o, *fo);
    o.text << "synthesized: " << print(m) << "\ncorrespondent: " << print(back) << "\n";
    Report r = check_fo_equivalence(*fo, back, make_budget(fl, labels_union(labels_of(*fo), labels_of(back)).size()));
    report_check(o, r, "first-order equivalence");
    if (!r.passed) o.code = 1;
    return;
  }
  Modal m = parse_modal(text);
  Fo a = correspond(m);
  Modal back = synthesize(a);
  o.j["direction"] = "modal";
  o.j["input"] = print(m);
  o.j["correspondent"] = print(a);
  o.j["back"] = print(back);
  note_known(o, m);
  o.text << "correspondent: " << print(a) << "\nsynthesized: " << print(back) << "\n";
  Report r = check_modal_equivalence(m, back, make_budget(fl, labels_union(labels_of(m), labels_of(back)).size()));
  report_check(o, r, "frame equivalence");
  if (!r.passed) o.code = 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sahlqvist/Kracht correspondence toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags fl;
  app.add_flag("--json", fl.json, "Emit a JSON report");
  app.add_flag("--verify", fl.verify, "Check the result against the frame oracle");
  app.add_flag("--trace", fl.trace, "Print intermediate artifacts");
  app.add_option("--max-worlds", fl.max_worlds, "Exhaustive frame size bound")->check(CLI::Range(1, 8));
  app.add_option("--relations", fl.relations, "Number of relations to enumerate")->check(CLI::Range(1, 8));
  app.add_option("--samples", fl.samples, "Number of sampled frames");
  app.add_option("--seed", fl.seed, "Sampling seed (SAHLKRACHT_SEED overrides)");

  std::string input, file, kind = "auto", second;
  auto with_input = [&](CLI::App* sub) {
    sub->add_option("formula", input, "Formula text (default: read stdin)");
    sub->add_option("--file", file, "Read the formula from a file");
    return sub;
  };
  auto* parse_cmd = with_input(app.add_subcommand("parse", "Parse and print a formula"));
  parse_cmd->add_option("--kind", kind, "modal, expr, fo or auto")
      ->check(CLI::IsMember({"auto", "modal", "expr", "fo"}));
  auto* classify_cmd = with_input(app.add_subcommand("classify", "Generalized Sahlqvist verdict"));
  auto* correspond_cmd = with_input(app.add_subcommand("correspond", "First-order correspondent"));
  auto* kracht_cmd = with_input(app.add_subcommand("kracht-check", "Generalized Kracht verdict"));
  auto* synth_cmd = with_input(app.add_subcommand("synthesize", "Modal formula for a Kracht formula"));
  auto* safe_cmd = with_input(app.add_subcommand("safe", "Safety verdict with marked tree"));
  auto* rt_cmd = with_input(app.add_subcommand("roundtrip", "Translate there and back, then compare"));
  auto* verify_cmd = app.add_subcommand("verify", "Check a modal formula against a first-order one");
  verify_cmd->add_option("modal", input, "Modal formula")->required();
  verify_cmd->add_option("fo", second, "First-order formula")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Output o;
  CLI::App* sub = app.get_subcommands().front();
  o.j["command"] = sub->get_name();
  try {
    if (sub == verify_cmd) {
      cmd_verify(o, input, second, fl);
    } else {
      std::string text = read_input(input, file);
      if (sub == parse_cmd) cmd_parse(o, text, kind);
      else if (sub == classify_cmd) cmd_classify(o, text);
      else if (sub == correspond_cmd) cmd_correspond(o, text, fl);
      else if (sub == kracht_cmd) cmd_kracht(o, text);
      else if (sub == synth_cmd) cmd_synthesize(o, text, fl);
      else if (sub == safe_cmd) cmd_safe(o, text);
      else if (sub == rt_cmd) cmd_roundtrip(o, text, fl);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (fl.json) {
      o.j["error"] = e.what();
      std::cout << o.j.dump(2) << "\n";
    }
    return 1;
  }
  o.j["exit"] = o.code;
  if (fl.json)
    std::cout << o.j.dump(2) << "\n";
  else
    std::cout << o.text.str();
  return o.code;
}
