// glpkit: command-line front end.
//
// Exit codes: 0 success / proved / pass, 1 refuted / fail, 2 unknown /
// inconclusive, 64 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "glpkit/decision.hpp"
#include "glpkit/space.hpp"
#include "glpkit/surgery.hpp"

using namespace glpkit;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFail = 1, kUnknown = 2, kUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  bool json_out = false;
  unsigned proof_budget = 0;
  unsigned model_budget = 0;
  std::uint64_t seed = 0;

  Budgets budgets() const {
    Budgets b = Budgets::defaults();
    if (proof_budget) b.proof = proof_budget;
    if (model_budget) b.model = model_budget;
    return b;
  }
};

Formula formula_arg(const std::string& text) {
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("formula: ") + e.what());
  }
}

JModel load_model(const std::string& path, bool require_j_frame = true) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  try {
    return model_from_json(j, require_j_frame);
  } catch (const ModelError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

NodeId node_arg(const JModel& w, const std::string& name) {
  auto x = w.find(name);
  if (!x) throw UsageError("no node named " + name);
  return *x;
}

int verdict_code(Verdict v) { return v == Verdict::Proved ? kOk : v == Verdict::Refuted ? kFail : kUnknown; }

json outcome_json(const DecisionOutcome& o) {
  json j;
  j["verdict"] = to_string(o.verdict);
  j["system"] = o.system == System::J ? "J" : "GLP";
  j["formula"] = to_string(o.formula);
  if (o.proof) {
    j["derivation"] = to_string(*o.proof);
    j["lines"] = o.proof->lines.size();
  }
  if (o.model) {
    j["model"] = model_to_json(*o.model);
    j["node"] = o.model->name(o.node);
  }
  return j;
}

void print_outcome(const DecisionOutcome& o, const Common& c) {
  if (c.json_out) {
    std::cout << outcome_json(o).dump(2) << '\n';
    return;
  }
  std::cout << to_string(o.verdict) << '\n';
  if (o.proof) std::cout << to_string(*o.proof);
  if (o.model) {
    std::cout << "false at " << o.model->name(o.node) << ": " << to_string(o.formula) << '\n';
    std::cout << model_to_json(*o.model).dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// topo

Ordinal ordinal_arg(const std::string& text) {
  try {
    return parse_ordinal(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("ordinal: ") + e.what());
  }
}

OrdSet set_arg(const std::string& text, const Ordinal& space) {
  try {
    return parse_ordset(text, space);
  } catch (const std::exception& e) {
    throw UsageError(std::string("set: ") + e.what());
  }
}

json trace_json(const DerivativeTrace& t) {
  json stages = json::array();
  for (const auto& s : t.stages) stages.push_back({to_string(s.label), to_string(s.value)});
  return {{"stages", stages}, {"terminal", to_string(t.terminal)}};
}

void print_trace(const DerivativeTrace& t, const Common& c) {
  if (c.json_out) {
    std::cout << trace_json(t).dump(2) << '\n';
    return;
  }
  for (const auto& s : t.stages) std::cout << "stage " << to_string(s.label) << ": " << to_string(s.value) << '\n';
  std::cout << "terminal: " << to_string(t.terminal) << '\n';
}

struct TopoArgs {
  std::string op;
  std::string space = "w^w";
  std::string set = "X";
  std::string set2;
  int n = 0;
  std::string stage;
  unsigned cap = 64;
};

int run_topo(const TopoArgs& a, const Common& c) {
  Ordinal space = ordinal_arg(a.space);
  if (space.is_zero()) throw UsageError("the space must be nonempty");
  if (a.n != 0 && a.n != 1) throw UsageError("--n must be 0 or 1");
  OrdSet s = set_arg(a.set, space);
  auto second = [&] {
    if (a.set2.empty()) throw UsageError(a.op + " needs --set2");
    return set_arg(a.set2, space);
  };
  auto print_set = [&](const std::string& key, const OrdSet& v) {
    if (c.json_out) std::cout << json{{key, to_string(v)}}.dump() << '\n';
    else std::cout << to_string(v) << '\n';
  };

  if (a.op == "d0" || a.op == "d1") {
    print_set(a.op, a.op == "d0" ? d0(s) : d1(s));
    return kOk;
  }
  if (a.op == "closure") {
    print_set("closure", closure(s, a.n));
    return kOk;
  }
  if (a.op == "iterate" || a.op == "cb") {
    std::optional<Ordinal> stage;
    if (!a.stage.empty() && a.stage != "fixpoint") stage = ordinal_arg(a.stage);
    DerivativeTrace t;
    try {
      t = a.op == "cb" ? cb_sequence(space, a.n, a.cap) : iterate_d(s, a.n, stage, a.cap);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    print_trace(t, c);
    return t.terminal == DerivativeTrace::Terminal::CapReached && (a.op == "cb" || !stage) ? kUnknown : kOk;
  }
  if (a.op == "conserve") {
    bool r = conservative_n_sets(s, second(), a.n);
    if (c.json_out) std::cout << json{{"conservative", r}}.dump() << '\n';
    else std::cout << (r ? "true" : "false") << '\n';
    return r ? kOk : kFail;
  }
  if (a.op == "weakred") {
    auto r = weak_reduction_check(s);
    if (c.json_out) {
      std::cout << json{{"c0_d1", to_string(r.lhs)}, {"d0_omega", to_string(r.rhs)}, {"equal", r.equal},
                        {"entails", r.entails}}
                       .dump(2)
                << '\n';
    } else {
      std::cout << "c0(d1(A)) = " << to_string(r.lhs) << '\n'
                << "d0^w[A]   = " << to_string(r.rhs) << '\n'
                << (r.equal ? "equal" : "different") << '\n';
    }
    return r.equal ? kOk : kFail;
  }
  if (a.op == "compact") {
    auto r = compactness_stage_check(s, second(), a.cap);
    json j{{"compact", r.compact},
           {"limit_stage_inclusion", r.limit_holds},
           {"finite_stage", r.finite_stage ? json(*r.finite_stage) : json(nullptr)},
           {"agree", r.agree},
           {"ok", r.ok}};
    if (c.json_out) {
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << "space " << (r.compact ? "compact" : "not compact") << '\n'
                << "d0^w[A] <= d0(B): " << (r.limit_holds ? "yes" : "no") << '\n'
                << "finite stage: " << (r.finite_stage ? std::to_string(*r.finite_stage) : "none") << '\n'
                << (r.agree ? "agree" : r.ok ? "disagree (allowed, not compact)" : "disagree") << '\n';
    }
    return r.ok ? kOk : kFail;
  }
  throw UsageError("unknown topo operation " + a.op);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glpkit: provability logic GLP and ordinal GLP-spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_flag("--json", c.json_out, "JSON output");
  app.add_option("--proof-budget", c.proof_budget, "proof search depth");
  app.add_option("--model-budget", c.model_budget, "largest countermodel size");
  app.add_option("--seed", c.seed, "seed for randomized operations");

  std::string fml, fml2, psi, phi, model_path, at;
  unsigned n = 0, k = 0, d = 0, kmax = 6;
  Modality m = 0;

  auto* decide = app.add_subcommand("decide", "GLP provability via the reduction to J");
  decide->add_option("formula", fml)->required();
  auto* jdecide = app.add_subcommand("jdecide", "J provability");
  jdecide->add_option("formula", fml)->required();

  auto* qexpand = app.add_subcommand("qexpand", "print Q^k_n(f)");
  qexpand->add_option("-n", n)->required();
  qexpand->add_option("-k", k)->required();
  qexpand->add_option("formula", fml)->required();

  auto* mplus = app.add_subcommand("mplus", "print M+(f)");
  mplus->add_option("formula", fml)->required();

  auto* model = app.add_subcommand("model", "model checking");
  model->require_subcommand(1);
  model->fallthrough();
  auto* mcheck = model->add_subcommand("check", "evaluate a formula");
  mcheck->add_option("file", model_path)->required();
  mcheck->add_option("--at", at, "node (default: all nodes)");
  mcheck->add_option("--fml", fml, "formula")->required();
  auto* mvalidate = model->add_subcommand("validate", "check the J-frame conditions");
  mvalidate->add_option("file", model_path)->required();

  auto* surg = app.add_subcommand("surgery", "countermodel surgery");
  surg->add_option("--m", m)->required();
  surg->add_option("--k", k)->required();
  surg->add_option("--psi", psi)->required();
  surg->add_option("--phi", phi)->required();
  surg->add_option("--model", model_path)->required();

  auto* bisim = app.add_subcommand("bisim", "d-bisimilarity classes");
  bisim->add_option("--d", d)->required();
  bisim->add_option("--model", model_path)->required();

  auto* reduce = app.add_subcommand("reduce", "least k with GLP |- Q^k_m(psi) -> <m>phi");
  reduce->add_option("--m", m)->required();
  reduce->add_option("--psi", psi)->required();
  reduce->add_option("--phi", phi)->required();
  reduce->add_option("--kmax", kmax);

  TopoArgs topo;
  auto* topo_cmd = app.add_subcommand("topo", "ordinal GLP-space operations");
  topo_cmd->add_option("op", topo.op, "d0 | d1 | closure | iterate | cb | conserve | weakred | compact")
      ->required()
      ->check(CLI::IsMember({"d0", "d1", "closure", "iterate", "cb", "conserve", "weakred", "compact"}));
  topo_cmd->add_option("--space", topo.space, "ordinal bound of the space");
  topo_cmd->add_option("--set", topo.set, "set expression (A)");
  topo_cmd->add_option("--set2", topo.set2, "second set expression (B)");
  topo_cmd->add_option("--n", topo.n, "topology index 0 or 1");
  topo_cmd->add_option("--stage", topo.stage, "ordinal stage or 'fixpoint'");
  topo_cmd->add_option("--cap", topo.cap, "stages are limited to w*cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*decide || *jdecide) {
      Formula f = formula_arg(fml);
      auto o = *decide ? glp_decide(f, c.budgets()) : j_decide(f, c.budgets());
      print_outcome(o, c);
      return verdict_code(o.verdict);
    }
    if (*qexpand) {
      std::cout << to_string(build_q(n, k, formula_arg(fml))) << '\n';
      return kOk;
    }
    if (*mplus) {
      std::cout << to_string(build_m_plus(formula_arg(fml))) << '\n';
      return kOk;
    }
    if (*mcheck) {
      JModel w = load_model(model_path);
      Formula f = formula_arg(fml);
      auto t = truth_set(w, f);
      std::vector<NodeId> nodes;
      if (!at.empty()) nodes.push_back(node_arg(w, at));
      else for (NodeId x = 0; x < w.size(); ++x) nodes.push_back(x);
      bool all = true;
      json j = json::object();
      for (NodeId x : nodes) {
        all = all && t[x];
        j[w.name(x)] = static_cast<bool>(t[x]);
        if (!c.json_out) std::cout << w.name(x) << ": " << (t[x] ? "true" : "false") << '\n';
      }
      if (c.json_out) std::cout << j.dump() << '\n';
      return all ? kOk : kFail;
    }
    if (*mvalidate) {
      JModel w = load_model(model_path, false);
      auto v = validate_frame(w);
      if (c.json_out) {
        json j = json::array();
        for (const auto& x : v) j.push_back({{"condition", x.condition}, {"detail", x.detail}});
        std::cout << json{{"valid", v.empty()}, {"violations", j}}.dump(2) << '\n';
      } else {
        if (v.empty()) std::cout << "ok\n";
        for (const auto& x : v) std::cout << x.condition << ": " << x.detail << '\n';
      }
      return v.empty() ? kOk : kFail;
    }
    if (*surg) {
      JModel w = load_model(model_path);
      Formula p = formula_arg(psi), q = formula_arg(phi);
      SurgeryResult r;
      try {
        r = surgery(w, m, p, q, k);
      } catch (const SurgeryError& e) {
        if (c.json_out) std::cout << json{{"error", e.what()}}.dump() << '\n';
        else std::cout << "surgery not applicable: " << e.what() << '\n';
        return kFail;
      }
      auto report = check_surgery_conclusion(r.model, r.b, m, p, q);
      if (c.json_out) {
        json checks = json::array();
        for (const auto& ch : report.checks) checks.push_back({{"name", ch.name}, {"passed", ch.passed}});
        std::cout << json{{"model", model_to_json(r.model)},
                          {"b", r.model.name(r.b)},
                          {"classes", r.classes},
                          {"a", w.name(r.chain.at(r.i))},
                          {"a_prime", w.name(r.chain.at(r.j))},
                          {"checks", checks},
                          {"ok", report.ok()}}
                         .dump(2)
                  << '\n';
      } else {
        std::cout << "classes " << r.classes << ", a = " << w.name(r.chain.at(r.i)) << ", a' = "
                  << w.name(r.chain.at(r.j)) << ", new root " << r.model.name(r.b) << '\n';
        std::cout << model_to_json(r.model).dump() << '\n';
        for (const auto& ch : report.checks) std::cout << (ch.passed ? "pass  " : "FAIL  ") << ch.name << '\n';
      }
      return report.ok() ? kOk : kFail;
    }
    if (*bisim) {
      JModel w = load_model(model_path);
      Partition p = bisim_classes(w, d);
      json blocks = json::array();
      for (const auto& b : p.blocks) {
        json names = json::array();
        for (NodeId x : b) names.push_back(w.name(x));
        blocks.push_back(names);
      }
      if (c.json_out) {
        std::cout << json{{"depth", d}, {"classes", blocks}}.dump(2) << '\n';
      } else {
        std::cout << p.blocks.size() << " classes\n";
        for (const auto& b : blocks) std::cout << b.dump() << '\n';
      }
      return kOk;
    }
    if (*reduce) {
      auto r = reduction_witness(formula_arg(psi), formula_arg(phi), m, kmax, c.budgets());
      json j{{"a_priori_bound", r.a_priori_bound}, {"premise", to_string(r.premise.verdict)}};
      if (r.k) {
        j["k"] = *r.k;
        j["minimal"] = r.minimal;
        j["within_bound"] = r.within_bound;
      }
      const char* status = r.status == ReductionWitness::Status::Found                   ? "found"
                           : r.status == ReductionWitness::Status::PremiseNotEstablished ? "premise not established"
                                                                                         : "not found";
      j["status"] = status;
      if (c.json_out) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << status;
        if (r.k) std::cout << ": k = " << *r.k << (r.minimal ? " (k-1 refuted)" : " (minimality not verified)");
        std::cout << "\na priori bound: " << r.a_priori_bound << '\n';
      }
      if (r.status == ReductionWitness::Status::Found) return kOk;
      if (r.status == ReductionWitness::Status::PremiseNotEstablished)
        return r.premise.verdict == Verdict::Refuted ? kFail : kUnknown;
      return kUnknown;
    }
    if (*topo_cmd) return run_topo(topo, c);
  } catch (const UsageError& e) {
    std::cerr << "glpkit: " << e.what() << '\n';
    return kUsage;
  } catch (const SetError& e) {
    std::cerr << "glpkit: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
