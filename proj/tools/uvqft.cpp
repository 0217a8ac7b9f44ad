// Command-line workbench: loads a JSON model, runs one command and prints a
// JSON report. Exit status is 0 iff every check in the report passed.

#include <uvqft/suites.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace uvqft;

namespace {

struct Settings {
  std::optional<int> max_sym_degree, max_field_degree, coupling_order;
  std::uint64_t seed = 1;
  std::string subtraction = "minimal";
  std::string subtraction_file;
  bool timing = false;
  bool interacting = false;
};

std::optional<int> env_int(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("environment variable ") + name + " is not an integer");
  }
}

// flag > environment > model file > built-in default
void resolve_defaults(Settings& s) {
  if (!s.max_sym_degree) s.max_sym_degree = env_int("UVQFT_MAX_SYM_DEGREE");
  if (!s.max_field_degree) s.max_field_degree = env_int("UVQFT_MAX_FIELD_DEGREE");
  if (!s.coupling_order) s.coupling_order = env_int("UVQFT_COUPLING_ORDER");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError("syntax error in '" + path + "': " + e.what());
  }
}

Model load(const std::string& path, const Settings& s) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError("model syntax error: " + std::string(e.what()));
  }
  if (s.coupling_order && j.contains("couplings")) j["couplings"]["order"] = *s.coupling_order;
  Model m = parse_model_json(j, text);
  if (s.max_sym_degree) m.truncation.max_sym_degree = *s.max_sym_degree;
  if (s.max_field_degree) m.truncation.max_field_degree = *s.max_field_degree;
  return m;
}

template <class F>
auto dispatch(ScalarKind k, F&& f) {
  switch (k) {
    case ScalarKind::exact: return f.template operator()<ExactComplex>();
    case ScalarKind::series: return f.template operator()<CouplingSeries>();
    default: return f.template operator()<RegulatorLaurent>();
  }
}

template <class S>
SymElement<S> element_of(const Model& m, const std::string& text) {
  auto e = lower_element<S>(m.parser(m.truncation).element(text));
  if (!e) throw ModelError("expression '" + text + "' has poles or couplings the model does not declare");
  return *e;
}

template <class S>
TensorWord<S> word_of(const Model& m, const std::string& text) {
  auto w = lower_word<S>(m.parser(m.truncation).word(text));
  if (!w) throw ModelError("word '" + text + "' has poles or couplings the model does not declare");
  return *w;
}

struct Report {
  json results = json::object();
  json checks = json::array();
  void check(const std::string& name, bool pass, json detail = json::object()) {
    detail["name"] = name;
    detail["pass"] = pass;
    checks.push_back(std::move(detail));
  }
};

json model_summary(const Model& m) {
  const CausalSet& cs = *m.cs;
  json pts = json::array(), rel = json::array();
  for (PointId p = 0; p < cs.size(); ++p) pts.push_back({{"name", cs.name(p)}, {"species", cs.species(p)}});
  for (PointId x = 0; x < cs.size(); ++x)
    for (PointId y = 0; y < cs.size(); ++y)
      if (x != y && cs.leq(x, y)) rel.push_back({cs.name(x), cs.name(y)});
  return {{"points", pts}, {"order", rel}, {"fields", cs.num_fields()},
          {"scalar_kind", scalar_kind_name(static_cast<int>(m.kind))}, {"truncation", truncation_json(m.truncation)}};
}

// ------------------------------------------------------------------ commands

void cmd_validate(const Model& m, Report& r) {
  r.results["model"] = model_summary(m);
  dispatch(m.kind, [&]<class S>() {
    const auto omega = m.measure<S>(m.truncation);
    const CutPropagator<S>& cut = omega.cut();
    r.results["cut"] = {{"local", cut.is_local()}, {"hermitian", cut.is_hermitian()}};
    if constexpr (std::is_same_v<S, ExactComplex>) r.results["cut"]["positive"] = cut.is_positive();
    const auto flags = classify_measure(omega, Truncation{std::min(m.truncation.max_sym_degree, 3),
                                                          std::min(m.truncation.max_field_degree, 4)});
    r.results["measure"] = {{"normalized", flags.normalized},
                            {"normally_ordered", flags.normally_ordered},
                            {"simple_operator_normalized", flags.simple_operator_normalized},
                            {"hermitian", flags.hermitian},
                            {"notes", flags.notes}};
    if (m.lagrangian_text) r.results["lagrangian"] = to_string(*m.cs, *m.lagrangian<S>(m.truncation));
    json syms = json::array();
    for (const auto& [name, g] : m.symmetries) syms.push_back(name);
    if (!syms.empty()) r.results["symmetries"] = syms;
  });
  r.check("model valid", true);
}

void cmd_wick(const Model& m, const std::string& expr, Report& r) {
  dispatch(m.kind, [&]<class S>() {
    const auto omega = m.measure<S>(m.truncation);
    const auto a = element_of<S>(m, expr);
    r.results["element"] = to_string(*m.cs, a);
    r.results["value"] = to_string(omega.eval(a));
  });
}

void cmd_eval(const Model& m, const std::string& text, const Settings& s, Report& r) {
  dispatch(m.kind, [&]<class S>() {
    const auto omega = m.measure<S>(m.truncation);
    const auto w = word_of<S>(m, text);
    r.results["word"] = to_string(*m.cs, w);
    if (s.interacting) {
      // exp(i L) terminates by nilpotency, so the dressing is kept whole
      auto L = m.lagrangian<S>(Truncation::unbounded());
      if (!L) throw ModelError("--interacting needs a lagrangian in the model");
      const auto theory = InteractingTheory<S, S>::from_lagrangian(omega, *L);
      auto whole = w;
      for (auto& f : whole.factors) f.retruncate(Truncation::unbounded());
      r.results["interacting"] = true;
      r.results["value"] = to_string(theory.eval(whole));
    } else {
      WordEvaluator<S> ev(omega);
      r.results["value"] = to_string(ev.eval(w));
    }
  });
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ';'))
    if (part.find_first_not_of(" \t\n") != std::string::npos) out.push_back(part);
  if (out.empty()) throw std::invalid_argument("empty basis");
  return out;
}

ScalarKind wider(ScalarKind a, ScalarKind b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

void cmd_renorm_find(const Model& m1, const Model& m2, Report& r) {
  const Truncation tr{std::min(m1.truncation.max_sym_degree, m2.truncation.max_sym_degree),
                      std::min(m1.truncation.max_field_degree, m2.truncation.max_field_degree)};
  dispatch(wider(m1.kind, m2.kind), [&]<class S>() {
    const auto w1 = m1.measure<S>(tr), w2 = m2.measure<S>(tr);
    if (!(*w1.causal_set() == *w2.causal_set())) throw ModelError("the two models have different causal sets");
    const auto st = find_renormalization_stages(w1, w2, tr);
    r.results["renormalization"] = renormalization_json(*m1.cs, st.rho.with_domain(tr));
    r.results["stages"] = {{"forced", st.forced},
                           {"single_point_solves", st.single_point_checks},
                           {"multi_point_checks", st.multi_point_checks}};
    const auto moved = w1.acted_on_by(st.rho, tr);
    std::string where;
    bool ok = true;
    for (const auto& x : spanning_basis(*m1.cs, tr))
      if (!(moved.eval(x) == w2.eval(x))) {
        ok = false;
        where = multiset_to_string(*m1.cs, x);
        break;
      }
    r.check("rho . omega1 = omega2 on spanning set", ok, {{"mismatch", where}});
    r.check("stage components forced", st.forced);
  });
}

void cmd_renorm_apply(const Model& m, const std::string& rho_path, const std::string& expr, Report& r) {
  const json rj = parse_json_file(rho_path);
  dispatch(m.kind, [&]<class S>() {
    const auto rho = parse_renormalization<S>(rj, m, m.truncation);
    const auto a = element_of<S>(m, expr);
    const auto image = rho.act(a);
    const auto omega = m.measure<S>(m.truncation);
    r.results["element"] = to_string(*m.cs, a);
    r.results["image"] = to_string(*m.cs, image);
    r.results["value"] = to_string(omega.eval(image));
    r.results["simple_operator_preserving"] = is_simple_operator_preserving(rho);
    r.results["real"] = is_real_renormalization(rho);
  });
}

void cmd_polekill(const Model& m, const Settings& s, Report& r) {
  if (m.kind != ScalarKind::laurent) throw ModelError("polekill needs a model with a regulator section");
  using L = RegulatorLaurent;
  const auto omega = m.measure<L>(m.truncation);
  SubtractionHook<L> hook;
  if (s.subtraction == "file") {
    if (s.subtraction_file.empty()) throw std::invalid_argument("--subtraction=file needs --subtraction-file");
    const auto finite = parse_renormalization<L>(parse_json_file(s.subtraction_file), m, m.truncation);
    hook = [finite](const Multiset& x) { return finite.component(x); };
  } else if (s.subtraction != "minimal") {
    throw std::invalid_argument("--subtraction is minimal or file");
  }
  const auto res = pole_kill(omega, m.truncation, hook);
  r.results["subtraction"] = s.subtraction;
  r.results["renormalization"] = renormalization_json(*m.cs, res.stages.rho.with_domain(m.truncation));
  json values = json::array();
  bool finite = true;
  std::string where;
  for (const auto& x : spanning_basis(*m.cs, m.truncation)) {
    const L v = res.finite.eval(x);
    if (!v.is_pole_free() && finite) {
      finite = false;
      where = multiset_to_string(*m.cs, x);
    }
    if (!v.is_zero()) values.push_back({multiset_to_string(*m.cs, x), v.str()});
  }
  r.results["finite_values"] = values;
  r.check("finite measure has no principal part", finite, {{"mismatch", where}});
  r.check("multi-point singular parts vanish before each stage", true,
          {{"multi_point_checks", res.stages.multi_point_checks}});
}

void cmd_gns(const Model& m, const std::vector<std::string>& words, Report& r) {
  dispatch(m.kind, [&]<class S>() {
    const auto omega = m.measure<S>(m.truncation);
    std::vector<TensorWord<S>> basis;
    for (const auto& w : words) basis.push_back(word_of<S>(m, w));
    WordEvaluator<S> ev(omega);
    const auto g = gns_gram(ev, basis);
    json gram = json::array();
    for (const auto& row : g) {
      json jr = json::array();
      for (const auto& v : row) jr.push_back(to_string(v));
      gram.push_back(jr);
    }
    r.results["gram"] = gram;
    if constexpr (std::is_same_v<S, ExactComplex>) {
      const auto ldl = hermitian_ldl(g);
      json piv = json::array();
      for (const auto& p : ldl.pivots) piv.push_back(p.str());
      r.results["pivots"] = piv;
      r.results["rank"] = ldl.rank;
      r.check("Gram matrix Hermitian", ldl.hermitian);
      r.check("Gram matrix positive semidefinite", ldl.psd, {{"failure", ldl.failure}});
    } else {
      throw ModelError("gns needs exact scalars: the model declares couplings or a regulator");
    }
  });
}

void cmd_smatrix(const Model& m, Report& r) {
  if (m.kind == ScalarKind::exact || !m.lagrangian_text) throw ModelError("smatrix needs couplings and a lagrangian");
  dispatch(m.kind, [&]<class S>() {
    if constexpr (!std::is_same_v<S, ExactComplex>) {
      const auto omega = m.measure<S>(m.truncation);
      const auto theory = InteractingTheory<S, S>::from_lagrangian(omega, *m.lagrangian<S>(Truncation::unbounded()));
      const auto sm = s_matrix(theory);
      const S amp = sm.vacuum_amplitude(), uni = sm.unitarity();
      r.results["coupling_order"] = m.ring->order;
      r.results["vacuum_amplitude"] = to_string(amp);
      r.results["unitarity"] = to_string(uni);
      r.check("omega(S* S) = 1", uni == S(1));
    }
  });
}

bool cmd_check(const std::string& suite, const CheckOptions& o, Report& r) {
  std::vector<const SuiteEntry*> run;
  if (suite == "all") {
    for (const auto& e : suite_registry()) run.push_back(&e);
  } else {
    const SuiteEntry* e = find_suite(suite);
    if (!e) {
      std::string names;
      for (const auto& s : suite_registry()) names += (names.empty() ? "" : ", ") + s.name;
      throw std::invalid_argument("unknown suite '" + suite + "'; known: all, " + names);
    }
    run.push_back(e);
  }
  json reports = json::array();
  bool all = true;
  for (const auto* e : run) {
    const auto rep = e->run(o);
    reports.push_back(rep.to_json());
    r.check(e->name, rep.pass(), {{"cases", rep.cases()}});
    all = all && rep.pass();
  }
  r.results["suites"] = reports;
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uvqft: exact toolkit for Feynman measures on finite causal sets"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--max-sym-degree", s.max_sym_degree, "symmetric-degree truncation D");
  app.add_option("--max-field-degree", s.max_field_degree, "field-degree truncation F");
  app.add_option("--coupling-order", s.coupling_order, "coupling truncation K");
  app.add_option("--seed", s.seed, "seed for property suites");
  app.add_option("--subtraction", s.subtraction, "minimal or file")->check(CLI::IsMember({"minimal", "file"}));
  app.add_option("--subtraction-file", s.subtraction_file, "finite parts for --subtraction=file");
  app.add_flag("--timing", s.timing, "add wall-clock timing to the report");

  std::string model, model2, expr, rho_path, suite;

  auto* validate = app.add_subcommand("validate", "check a model file");
  validate->add_option("model", model)->required();
  auto* wick = app.add_subcommand("wick", "evaluate omega on an element");
  wick->add_option("model", model)->required();
  wick->add_option("expr", expr)->required();
  auto* eval = app.add_subcommand("eval", "evaluate omega on a word [A_n, ..., A_1]");
  eval->add_option("model", model)->required();
  eval->add_option("word", expr)->required();
  eval->add_flag("--interacting", s.interacting, "dress every factor with exp(i L)");
  auto* renorm = app.add_subcommand("renorm", "find or apply renormalizations");
  renorm->require_subcommand(1);
  renorm->fallthrough();
  auto* find = renorm->add_subcommand("find", "rho with rho . omega1 = omega2");
  find->add_option("model1", model)->required();
  find->add_option("model2", model2)->required();
  auto* apply = renorm->add_subcommand("apply", "rho(expr) and omega(rho(expr))");
  apply->add_option("model", model)->required();
  apply->add_option("rho", rho_path)->required();
  apply->add_option("expr", expr)->required();
  auto* polekill = app.add_subcommand("polekill", "minimal subtraction of a regulated measure");
  polekill->add_option("model", model)->required();
  auto* gns = app.add_subcommand("gns", "Gram matrix of omega(b_i* b_j) with exact LDL");
  gns->add_option("model", model)->required();
  gns->add_option("basis", expr, "even-length words separated by ';'")->required();
  auto* smatrix = app.add_subcommand("smatrix", "vacuum amplitude and unitarity of S");
  smatrix->add_option("model", model)->required();
  int order = 0;
  smatrix->add_option("order", order, "coupling order")->required();
  auto* check = app.add_subcommand("check", "run a property suite");
  check->add_option("suite", suite, "suite name or all")->required();

  CLI11_PARSE(app, argc, argv);

  const auto start = std::chrono::steady_clock::now();
  json out;
  json echo = json::array();
  for (int i = 1; i < argc; ++i) echo.push_back(argv[i]);
  out["command"] = echo;
  Report r;
  bool pass = true;
  int status = 0;
  try {
    resolve_defaults(s);
    auto sub = app.get_subcommands().front();
    if (sub == smatrix) s.coupling_order = order;
    if (sub == check) {
      CheckOptions o;
      o.seed = s.seed;
      if (s.max_sym_degree) o.max_sym_degree = *s.max_sym_degree;
      if (s.max_field_degree) o.max_field_degree = *s.max_field_degree;
      if (s.coupling_order) o.coupling_order = *s.coupling_order;
      pass = cmd_check(suite, o, r);
    } else if (sub == renorm && find->parsed()) {
      const Model m1 = load(model, s), m2 = load(model2, s);
      out["model_digest"] = {m1.digest, m2.digest};
      cmd_renorm_find(m1, m2, r);
    } else {
      const Model m = load(model, s);
      out["model_digest"] = m.digest;
      if (sub == validate) cmd_validate(m, r);
      else if (sub == wick) cmd_wick(m, expr, r);
      else if (sub == eval) cmd_eval(m, expr, s, r);
      else if (sub == renorm) cmd_renorm_apply(m, rho_path, expr, r);
      else if (sub == polekill) cmd_polekill(m, s, r);
      else if (sub == gns) cmd_gns(m, split_words(expr), r);
      else if (sub == smatrix) cmd_smatrix(m, r);
    }
    for (const auto& c : r.checks) pass = pass && c.at("pass").get<bool>();
  } catch (const ParseError& e) {
    out["error"] = {{"module", "parser"}, {"message", e.what()}, {"position", e.position()}};
    status = 2;
  } catch (const ModelError& e) {
    out["error"] = {{"module", "model"}, {"message", e.what()}};
    status = 2;
  } catch (const InvariantViolation& e) {
    out["error"] = {{"module", "uv-group"}, {"message", e.what()}};
    status = 2;
  } catch (const std::exception& e) {
    out["error"] = {{"module", "evaluation"}, {"message", e.what()}};
    status = 2;
  }
  out["results"] = r.results;
  out["checks"] = r.checks;
  out["pass"] = status == 0 && pass;
  if (s.timing)
    out["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  std::cout << out.dump(2) << "\n";
  if (status) return status;
  return pass ? 0 : 1;
}
