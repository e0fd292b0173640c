#include "commands.hpp"

#include "monalg/canonical.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <new>

namespace monalg::cli {

using nlohmann::json;

namespace {

json num(const Integer &x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return x.convert_to<long long>();
  return x.str();
}
json rat(const Rational &x) { return to_string(x); }

json vec(const IntVector &v) {
  json a = json::array();
  for (const auto &x : v) a.push_back(num(x));
  return a;
}
json vec(const RatVector &v) {
  json a = json::array();
  for (const auto &x : v) a.push_back(rat(x));
  return a;
}
template <class V> json vecs(const std::vector<V> &vs) {
  json a = json::array();
  for (const auto &v : vs) a.push_back(vec(v));
  return a;
}
template <class T> json maybe(const std::optional<T> &x) {
  if (!x) return nullptr;
  if constexpr (std::is_same_v<T, IntVector> || std::is_same_v<T, RatVector>) return vec(*x);
  else if constexpr (std::is_same_v<T, Integer>) return num(*x);
  else return *x;
}
json one_based(const std::vector<VertexSet> &sets) {
  json a = json::array();
  for (const auto &s : sets) {
    json e = json::array();
    for (int v : s) e.push_back(v + 1);
    a.push_back(e);
  }
  return a;
}

json to_json(const RoundingVerdict &v) {
  json j;
  j["system"] = std::string(system_name(v.system));
  j["verdict"] = v.theorem_route;
  j["theorem_route"] = v.theorem_route;
  j["theorem_witness"] = maybe(v.theorem_witness);
  j["oracle_route"] = maybe(v.oracle_route);
  j["oracle_inconclusive"] = v.oracle_inconclusive;
  j["oracle_box"] = maybe(v.oracle_box);
  j["oracle_points"] = v.oracle_points;
  if (v.counterexample) {
    const auto &c = *v.counterexample;
    j["counterexample"] = {{"a", vec(c.a)},
                           {"lp_value", rat(c.lp_value)},
                           {"rounded", num(c.rounded)},
                           {"ip_value", maybe(c.ip_value)}};
  } else {
    j["counterexample"] = nullptr;
  }
  if (v.torsion_route) {
    j["torsion_route"] = {{"kf_normal", v.torsion_route->kf_normal},
                          {"torsion", vec(v.torsion_route->torsion)},
                          {"uniform_columns", v.torsion_route->uniform_columns}};
  } else {
    j["torsion_route"] = nullptr;
  }
  return j;
}

json to_json(const MaximalVertexData &m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.maximal_vertices.size(); ++i)
    a.push_back({{"vertex", vec(m.maximal_vertices[i])},
                 {"denominator", num(m.denominators[i])},
                 {"norm", rat(m.norms[i])}});
  return a;
}

struct Context {
  const CommandFlags &flags;
  const InputDocument *input;

  HilbertOptions hilbert() const {
    HilbertOptions h;
    h.candidate_cap = flags.candidate_cap;
    return h;
  }
  RoundingOptions rounding() const {
    RoundingOptions r;
    if (flags.oracle) r.oracle_box = flags.box;
    r.oracle_state_cap = flags.oracle_state_cap;
    r.down_set_cap = flags.down_set_cap;
    r.hilbert = hilbert();
    return r;
  }
  CanonicalOptions canonical() const {
    CanonicalOptions c;
    c.scan_cap = flags.scan_cap;
    c.down_set_cap = flags.down_set_cap;
    c.hilbert = hilbert();
    return c;
  }
  const InputDocument &doc() const {
    if (!input) throw DomainError("command needs an input (--matrix, --graph, --clutter or --stdin)");
    return *input;
  }
};

std::vector<std::string> selected(const std::vector<std::string> &given,
                                  std::vector<std::string> fallback,
                                  const std::vector<std::string> &all) {
  std::vector<std::string> out;
  for (const auto &g : given.empty() ? fallback : given) {
    if (g == "all") return all;
    out.push_back(g);
  }
  return out;
}

const std::vector<std::string> kAlgebraNames = {"rees",   "extended_rees", "kf",     "kft",
                                                "kft_t",  "S_downset",     "ehrhart"};

json cmd_normality(const Context &c) {
  const auto a = c.doc().incidence();
  json out = json::array();
  for (const auto &name : selected(c.flags.algebras, {"rees"}, kAlgebraNames)) {
    const auto kind = parse_kind(name);
    auto spec = build_algebra(kind, a, c.flags.down_set_cap);
    auto cert = is_normal(spec, c.hilbert());
    out.push_back({{"algebra", name},
                   {"normal", cert.verdict},
                   {"witness", maybe(cert.witness)},
                   {"generators", spec.generators.size()},
                   {"ambient_dim", spec.ambient_dim},
                   {"lattice", spec.lattice.empty() ? "standard" : "generated"}});
  }
  return {{"algebras", out}};
}

json cmd_hilbert_basis(const Context &c) {
  const auto a = c.doc().incidence();
  json out = json::array();
  auto all = kAlgebraNames;
  all.insert(all.begin(), "cone");
  for (const auto &name : selected(c.flags.algebras, {"cone"}, all)) {
    ConeSpec cone;
    if (name == "cone") {
      cone = make_cone(a.column_list());
    } else {
      auto spec = build_algebra(parse_kind(name), a, c.flags.down_set_cap);
      cone = make_cone(spec.generators, spec.lattice);
    }
    HilbertStats st;
    auto basis = hilbert_basis(cone, c.hilbert(), &st);
    out.push_back({{"algebra", name},
                   {"size", basis.size()},
                   {"basis", vecs(basis)},
                   {"simplices", st.simplices},
                   {"candidates", st.candidates},
                   {"max_det", num(st.max_det)}});
  }
  return {{"cones", out}};
}

json cmd_irp(const Context &c) {
  const auto a = c.doc().incidence();
  json out = json::array();
  for (const auto &name : selected(c.flags.systems, {"leq1", "geq1", "eq1"}, {"leq1", "geq1", "eq1"}))
    out.push_back(to_json(irp_check(parse_system(name), a, c.rounding())));
  return {{"systems", out}};
}

json cmd_mfmc(const Context &c) {
  auto v = mfmc_check(c.doc().incidence(), c.rounding());
  json j = {{"verdict", v.verdict},
            {"q_integral", v.q_integral},
            {"rees_normal", v.rees_normal},
            {"fractional_vertices", vecs(v.fractional_vertices)},
            {"rees_witness", maybe(v.rees_witness)},
            {"oracle_route", maybe(v.oracle_route)},
            {"oracle_inconclusive", v.oracle_inconclusive},
            {"oracle_box", maybe(v.oracle_box)}};
  if (v.counterexample)
    j["counterexample"] = {{"a", vec(v.counterexample->a)},
                           {"lp_value", rat(v.counterexample->lp_value)},
                           {"min_cover", num(v.counterexample->min_cover)},
                           {"max_pack", num(v.counterexample->max_pack)}};
  else
    j["counterexample"] = nullptr;
  return j;
}

json cmd_duality(const Context &c) {
  const auto clutter = c.doc().clutter();
  const auto a = incidence_matrix(clutter);
  const auto d = dual_matrix(a);
  auto rees_a = is_normal(build_algebra(AlgebraKind::rees, a), c.hilbert());
  auto rees_d = is_normal(build_algebra(AlgebraKind::rees, without_zero_rows(d)), c.hilbert());
  auto r = verify_duality_theorem(clutter, c.rounding());
  return {{"conditions",
           {{"rees_normal", r.rees_normal},
            {"dual_downset_normal", r.dual_downset_normal},
            {"gamma_hilbert", r.gamma_hilbert},
            {"geq1_on_a", to_json(r.geq1_on_a)},
            {"leq1_on_dual", to_json(r.leq1_on_dual)}}},
          {"verdict", r.verdict},
          {"rees_normal_a", rees_a.verdict},
          {"rees_witness_a", maybe(rees_a.witness)},
          {"rees_normal_dual", rees_d.verdict},
          {"rees_witness_dual", maybe(rees_d.witness)}};
}

json canonical_json(const CanonicalModuleReport &r) {
  return {{"maximal_vertices", to_json(r.vertex_data)},
          {"omega_generators", vecs(r.omega_generators)},
          {"a_invariant", num(r.a_invariant)},
          {"a_invariant_from_omega", num(r.a_invariant_from_omega)},
          {"gorenstein", r.gorenstein},
          {"gorenstein_route", std::string(route_name(r.gorenstein_route))},
          {"degree_bound", num(r.degree_bound)},
          {"points_scanned", r.points_scanned},
          {"a_invariant_floor_form", num(r.a_invariant_floor_form)},
          {"floor_form_differs", r.floor_form_differs},
          {"denominators_one_or_two", r.denominators_one_or_two}};
}

json cmd_canmod(const Context &c) {
  return canonical_json(canonical_module_S(c.doc().incidence(), c.canonical()));
}

json cmd_ainvariant(const Context &c) {
  auto r = canonical_module_S(c.doc().incidence(), c.canonical());
  return {{"a_invariant", num(r.a_invariant)},
          {"a_invariant_from_omega", num(r.a_invariant_from_omega)},
          {"a_invariant_floor_form", num(r.a_invariant_floor_form)},
          {"floor_form_differs", r.floor_form_differs},
          {"maximal_vertices", to_json(r.vertex_data)}};
}

json cmd_gorenstein(const Context &c) {
  auto t = gorenstein_tests(c.doc().incidence(), c.canonical());
  return {{"gorenstein", t.principal_omega},
          {"a_invariant", num(t.a_invariant)},
          {"sufficient_condition", t.sufficient_condition},
          {"integral_polytope", t.integral_polytope},
          {"integral_criterion", maybe(t.integral_criterion)},
          {"necessary_condition", maybe(t.necessary_condition)}};
}

json cmd_ci_check(const Context &c) {
  auto r = complete_intersection_check(c.doc().graph(), c.hilbert());
  return {{"verdict", r.verdict},
          {"bipartite", r.bipartite},
          {"primitive_cycles", r.primitive_cycles},
          {"cycle_rank", r.cycle_rank}};
}

json cmd_alexander_dual(const Context &c) {
  auto dual = alexander_dual(c.doc().clutter());
  return {{"vertices", dual.vertex_count()},
          {"edges", one_based(dual.edges())},
          {"edge_count", dual.edges().size()}};
}

json cmd_vertices(const Context &c) {
  const auto a = c.doc().incidence();
  auto p = dd_convert(packing_polytope(a));
  auto m = maximal_vertex_data(p);
  auto q = dd_convert(covering_polyhedron(a));
  return {{"packing",
           {{"vertices", vecs(p.vertices)},
            {"maximal_vertices", to_json(m)},
            {"integral", is_integral_polytope(p)}}},
          {"covering",
           {{"vertices", vecs(q.vertices)},
            {"rays", vecs(q.rays)},
            {"fractional_vertices", vecs(fractional_vertices(q))}}}};
}

std::string graph_text(const Graph &g) {
  std::string s = "graph " + std::to_string(g.vertex_count());
  for (auto [u, v] : g.edges()) s += " / " + std::to_string(u + 1) + " " + std::to_string(v + 1);
  return s;
}

json cmd_sweep(const Context &c) {
  const auto &f = c.flags;
  if (f.max_vertices < 1) throw DomainError("sweep: --max-vertices must be positive");
  json j = {{"experiment", f.experiment}, {"max_vertices", f.max_vertices}};
  std::size_t instances = 0, agree = 0, skipped = 0;
  json disagreements = json::array();

  if (f.experiment == "bipartite-eq1") {
    for (int n = 1; n <= f.max_vertices; ++n)
      for (const auto &g : graphs_up_to_isomorphism(n, true)) {
        if (g.edge_count() == 0) continue;
        auto v = irp_check(RoundingSystem::eq1, incidence_matrix(g), c.rounding());
        ++instances;
        const bool ok = v.theorem_route == g.bipartite() &&
                        (!v.oracle_route || *v.oracle_route == v.theorem_route ||
                         v.oracle_inconclusive);
        if (!ok) throw SoundnessError("eq1 rounding disagrees with bipartiteness on " + graph_text(g));
        ++agree;
      }
  } else if (f.experiment == "duality") {
    if (f.max_vertices > 6) throw ResourceError("clutter enumeration beyond 6 vertices", "enumeration-vertex-cap");
    std::size_t normal = 0;
    for (int n = 1; n <= f.max_vertices; ++n)
      for (const auto &cl : clutters_up_to_isomorphism(n, f.max_edges)) {
        auto a = incidence_matrix(cl);
        auto d = dual_matrix(a);
        bool zero_line = false;
        for (std::size_t i = 0; i < d.rows(); ++i) zero_line = zero_line || is_zero(d.row(i));
        for (std::size_t k = 0; k < d.cols(); ++k) zero_line = zero_line || is_zero(d.column(k));
        if (zero_line) {
          ++skipped;
          continue;
        }
        auto r = verify_duality_theorem(cl, c.rounding());
        ++instances;
        ++agree;
        if (r.verdict) ++normal;
      }
    j["normal"] = normal;
    j["max_edges"] = f.max_edges;
  } else if (f.experiment == "gorenstein") {
    std::size_t gorenstein = 0, unmixed_gorenstein = 0, unmixed = 0;
    for (int n = 1; n <= f.max_vertices; ++n)
      for (const auto &g : graphs_up_to_isomorphism(n, true)) {
        if (g.edge_count() == 0) continue;
        std::optional<GorensteinObservation> o;
        try {
          o = observe_gorenstein(g, c.canonical());
        } catch (const DomainError &) {
          ++skipped; // S not normal
          continue;
        }
        ++instances;
        if (o->agrees) ++agree;
        else disagreements.push_back(graph_text(g));
        if (o->gorenstein) ++gorenstein;
        if (o->unmixed) ++unmixed;
        if (o->unmixed && o->gorenstein) ++unmixed_gorenstein;
      }
    j["gorenstein"] = gorenstein;
    j["unmixed"] = unmixed;
    j["unmixed_and_gorenstein"] = unmixed_gorenstein;
  } else {
    throw DomainError("sweep: unknown experiment '" + f.experiment +
                      "' (expected bipartite-eq1, duality or gorenstein)");
  }
  j["instances"] = instances;
  j["agreements"] = agree;
  j["skipped"] = skipped;
  j["disagreements"] = disagreements;
  return j;
}

const std::map<std::string, std::function<json(const Context &)>> &table() {
  static const std::map<std::string, std::function<json(const Context &)>> t = {
      {"normality", cmd_normality},   {"irp", cmd_irp},
      {"mfmc", cmd_mfmc},             {"duality", cmd_duality},
      {"canmod", cmd_canmod},         {"ainvariant", cmd_ainvariant},
      {"gorenstein", cmd_gorenstein}, {"ci-check", cmd_ci_check},
      {"alexander-dual", cmd_alexander_dual}, {"vertices", cmd_vertices},
      {"hilbert-basis", cmd_hilbert_basis},   {"sweep", cmd_sweep}};
  return t;
}

json caps_of(const CommandFlags &f) {
  return {{"down_set_cap", f.down_set_cap},
          {"omega_scan_cap", f.scan_cap},
          {"hilbert_candidate_cap", f.candidate_cap},
          {"oracle_state_cap", f.oracle_state_cap},
          {"oracle_box", f.oracle ? json(f.box) : json(nullptr)},
          {"alexander_dual_vertex_cap", kAlexanderDualVertexCap},
          {"enumeration_vertex_cap", kEnumerationVertexCap}};
}

json input_summary(const InputDocument &d) {
  auto a = d.incidence();
  return {{"kind", std::string(input_kind_name(d.kind))},
          {"rows", a.rows()},
          {"columns", a.cols()},
          {"digest", input_digest(d)}};
}

CommandResult failure(CommandResult r, int code, const std::string &status, json error) {
  r.exit_code = code;
  r.report["status"] = status;
  r.report["exit_code"] = code;
  r.report["result"] = nullptr;
  r.diagnostic = error["message"].get<std::string>();
  r.report["error"] = std::move(error);
  return r;
}

CommandResult skeleton(const std::string &name, const CommandFlags &flags) {
  CommandResult r;
  r.report = {{"schema", kReportSchema},
              {"command", name},
              {"status", "ok"},
              {"exit_code", 0},
              {"input", nullptr},
              {"result", nullptr},
              {"error", nullptr},
              {"caps", caps_of(flags)},
              {"timings", {{"total_ms", 0.0}}}};
  return r;
}

/// Maps an in-flight exception onto the exit-code contract.
CommandResult classify(CommandResult r) {
  try {
    throw;
  } catch (const ParseError &e) {
    return failure(std::move(r), 1, "domain-error",
                   {{"type", "parse"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}});
  } catch (const ValidationError &e) {
    json err = {{"type", "validation"}, {"message", e.what()}, {"rule", e.rule()}};
    if (e.line() > 0) {
      err["line"] = e.line();
      err["column"] = e.column();
    }
    return failure(std::move(r), 1, "domain-error", err);
  } catch (const DomainError &e) {
    return failure(std::move(r), 1, "domain-error", {{"type", "domain"}, {"message", e.what()}});
  } catch (const ResourceError &e) {
    return failure(std::move(r), 2, "resource-error",
                   {{"type", "resource"}, {"message", e.what()}, {"cap", e.cap()}});
  } catch (const std::bad_alloc &) {
    return failure(std::move(r), 2, "resource-error",
                   {{"type", "resource"}, {"message", "out of memory"}, {"cap", "memory"}});
  } catch (const SoundnessError &e) {
    return failure(std::move(r), 3, "soundness-failure", {{"type", "soundness"}, {"message", e.what()}});
  } catch (const std::exception &e) {
    return failure(std::move(r), 3, "soundness-failure",
                   {{"type", "internal"}, {"message", std::string("internal error: ") + e.what()}});
  }
}

} // namespace

const std::vector<std::string> &command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto &[k, _] : table()) v.push_back(k);
    return v;
  }();
  return names;
}

bool command_needs_input(const std::string &name) { return name != "sweep"; }

CommandResult run_command(const std::string &name, const std::optional<InputDocument> &input,
                          const CommandFlags &flags) {
  const auto t0 = std::chrono::steady_clock::now();
  auto r = skeleton(name, flags);
  auto finish = [&](CommandResult res) {
    res.report["timings"]["total_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
  };
  try {
    auto it = table().find(name);
    if (it == table().end()) throw DomainError("unknown command '" + name + "'");
    if (input) {
      r.report["input"] = input_summary(*input);
      if (flags.input_role == "graph") (void)input->graph();
      if (flags.input_role == "clutter") (void)input->clutter();
    }
    Context ctx{flags, input ? &*input : nullptr};
    r.report["result"] = it->second(ctx);
  } catch (...) {
    return finish(classify(std::move(r)));
  }
  return finish(std::move(r));
}

CommandResult run_command_on_text(const std::string &name, const std::optional<std::string> &text,
                                  bool json_input, const CommandFlags &flags) {
  std::optional<InputDocument> doc;
  if (text) {
    try {
      doc = json_input ? parse_json_input(*text) : parse_input(*text);
    } catch (...) {
      return classify(skeleton(name, flags));
    }
  }
  return run_command(name, doc, flags);
}

} // namespace monalg::cli
