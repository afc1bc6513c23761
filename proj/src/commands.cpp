#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "dghopf/dghopf.hpp"

namespace dghopf::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <Field K>
std::optional<DGHopfPresentation<K>> builtin(const std::string& name, std::optional<int> top, std::uint32_t p) {
  if (name == "lambda1") return exterior_example<K>(1);
  if (name == "lambda2") return exterior_example<K>(2);
  if (name == "lambda3") return exterior_example<K>(3);
  if (name == "acyclic") return acyclic_example<K>(top.value_or(6));
  if (name == "fp-trunc") return fp_trunc_example<K>(static_cast<int>(p));
  return std::nullopt;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Json load_document(const std::string& input) {
  if (std::filesystem::exists(input)) return read_json(input);
  if (auto d = builtin_document(input)) return *d;
  throw UsageError("no file or built-in example named \"" + input + "\"");
}

std::optional<int> parse_q(const std::string& q) {
  if (q == "inf" || q == "infinity" || q == "∞") return std::nullopt;
  try {
    std::size_t used = 0;
    int v = std::stoi(q, &used);
    if (used != q.size()) throw std::invalid_argument(q);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("--q must be an integer or \"inf\"");
  }
}

// --dmax, else DGHOPF_DMAX, clamped to the top degree of a truncated presentation.
template <Field K>
std::optional<int> effective_dmax(const CommandOptions& o, const DGHopfPresentation<K>& H) {
  std::optional<int> d = o.d_max;
  if (!d) {
    if (const char* env = std::getenv("DGHOPF_DMAX")) {
      try {
        d = std::stoi(env);
      } catch (const std::logic_error&) {
        throw UsageError("DGHOPF_DMAX must be an integer");
      }
      if (H.truncated()) d = std::min(*d, H.top_degree());
    }
  }
  return d;
}

template <Field K>
ComplexWindow make_window(const CommandOptions& o, const DGHopfPresentation<K>& H) {
  ComplexWindow w;
  auto th = parse_theory(o.theory);
  if (!th) throw UsageError("unknown theory \"" + o.theory + "\"");
  w.theory = *th;
  w.q = parse_q(o.q);
  w.restricted = !o.unrestricted;
  w.m_max = o.m_max;
  w.n_max = o.n_max;
  w.d_max = effective_dmax(o, H);
  return w;
}

Json window_json(const ComplexWindow& w, int cap) {
  Json j;
  j["theory"] = theory_name(w.theory);
  j["q"] = w.q ? Json(*w.q) : Json("inf");
  j["restricted"] = w.restricted;
  j["m_max"] = w.m_max ? Json(*w.m_max) : Json(nullptr);
  j["n_max"] = w.n_max ? Json(*w.n_max) : Json(nullptr);
  j["d_max"] = w.d_max ? Json(*w.d_max) : Json(nullptr);
  j["degree_cap"] = cap;
  return j;
}

// ---------------------------------------------------------------------------

template <Field K>
int cmd_validate(const DGHopfPresentation<K>& H, std::ostream& out, Json& rep) {
  auto v = validate_hopf(H);
  Json ax = Json::array();
  for (const auto& a : v.axioms) {
    out << (a.passed ? "  ok    " : "  FAIL  ") << a.name;
    if (!a.passed) out << "  (" << a.residual_entries << " residual entries, first " << a.first_residual << ")";
    out << "\n";
    ax.push_back({{"name", a.name},
                  {"passed", a.passed},
                  {"residual_entries", a.residual_entries},
                  {"first_residual", a.first_residual}});
  }
  rep["axioms"] = ax;
  rep["passed"] = v.passed();
  out << (v.passed() ? "valid" : "invalid") << "\n";
  return v.passed() ? ok : failure;
}

template <Field K>
int cmd_cohomology(const CommandOptions& o, const DGHopfPresentation<K>& H, std::ostream& out, Json& rep) {
  auto w = make_window(o, H);
  std::shared_ptr<AssembledComplex<K>> ac;
  if (w.theory == Theory::harrison) {
    ac = harrison_complex(H.algebra, w);
  } else {
    ac = std::make_shared<AssembledComplex<K>>(std::make_shared<const CochainComplex<K>>(H, w));
  }
  const auto& cx = ac->complex();
  auto res = cohomology(*ac, o.degree);
  rep["window"] = window_json(w, cx.degree_cap());
  rep["degree"] = res.degree;
  rep["dimension"] = res.dimension;
  rep["cochain_dim"] = res.cochain_dim;
  rep["cocycle_dim"] = res.cocycle_dim;
  rep["boundary_rank"] = res.boundary_rank;
  rep["certificate_rank"] = res.certificate_rank;
  Json reps = Json::array();
  for (const auto& r : res.representatives) reps.push_back(cochain_json(cx.from_vector(r, o.degree)));
  rep["representatives"] = reps;
  Json blocks = Json::array();
  for (const auto& b : cx.space(o.degree).blocks) blocks.push_back({{"tridegree", {b.tri.p, b.tri.m, b.tri.n}}, {"dim", b.dim}});
  rep["blocks"] = blocks;
  out << theory_name(w.theory) << " cohomology of " << H.name << " in degree " << o.degree << "\n";
  out << "  cochains   " << res.cochain_dim << "\n";
  out << "  cocycles   " << res.cocycle_dim << "\n";
  out << "  boundaries " << res.boundary_rank << "\n";
  out << "  dimension  " << res.dimension << "\n";
  return ok;
}

template <Field K>
Json deformation_json(const DeformationContext<K>& ctx, const TruncatedDeformation<K>& D) {
  Json c = Json::array();
  for (int k = 1; k <= D.order(); ++k) c.push_back({{"order", k}, {"coefficient", cochain_json(ctx.coefficient(D, k))}});
  return c;
}

template <Field K>
int cmd_deform(const CommandOptions& o, const DGHopfPresentation<K>& H, std::ostream& out, Json& rep) {
  if (o.order < 1) throw UsageError("--order must be at least 1");
  DeformationContext<K> ctx(H);
  std::mt19937_64 rng(o.seed);
  auto D = ctx.trivial(0);
  Json obs = Json::array();
  out << "deformation of " << H.name << " to order " << o.order << " (seed " << o.seed << ")\n";
  for (int k = 1; k <= o.order; ++k) {
    auto z = ctx.random_cocycle(rng);
    auto r = ctx.extend(D, &z);
    const auto& ob = r.obstruction;
    obs.push_back({{"order", k},
                   {"cocycle", ob.cocycle},
                   {"status", class_status_name(ob.status)},
                   {"rank_boundaries", ob.rank_boundaries},
                   {"rank_augmented", ob.rank_augmented},
                   {"residual", cochain_json(ob.residual)}});
    out << "  order " << k << ": obstruction " << class_status_name(ob.status) << "\n";
    if (!r.extended) {
      rep["obstructions"] = obs;
      rep["extended_to"] = k - 1;
      out << "  blocked at order " << k << "\n";
      return failure;
    }
    D = std::move(r.deformation);
  }
  rep["obstructions"] = obs;
  rep["extended_to"] = o.order;
  rep["infinitesimal"] = cochain_json(ctx.infinitesimal(D));
  rep["coefficients"] = deformation_json(ctx, D);
  out << "  valid modulo t^" << o.order + 1 << "\n";
  return ok;
}

template <Field K>
int cmd_rigidity(const CommandOptions& o, const DGHopfPresentation<K>& H, std::ostream& out, Json& rep) {
  if (o.order < 1) throw UsageError("--order must be at least 1");
  DeformationContext<K> ctx(H);
  auto h2 = cohomology(ctx.assembled(), 2);
  rep["h2_dimension"] = h2.dimension;
  std::mt19937_64 rng(o.seed);
  auto D = ctx.random_deformation(o.order, rng);
  rep["deformation"] = deformation_json(ctx, D);
  auto tr = ctx.trivialize(D);
  rep["trivialized"] = tr.trivialized;
  out << H.name << ": dim H^2 = " << h2.dimension << "\n";
  if (!tr.trivialized) {
    rep["blocking_order"] = tr.blocking_order;
    rep["blocking_class"] = cochain_json(tr.blocking_class);
    rep["rank_boundaries"] = tr.rank_boundaries;
    rep["rank_augmented"] = tr.rank_augmented;
    out << "not trivialized: order " << tr.blocking_order << " coefficient is not a coboundary\n";
    return failure;
  }
  Json g = Json::array();
  out << "trivialized\n";
  for (int k = 1; k <= tr.gauge.order(); ++k) {
    TotalCochain<K> phi;
    if (!tr.gauge.phi[static_cast<std::size_t>(k)].is_zero())
      phi.emplace(Tridegree{0, 1, 1}, tr.gauge.phi[static_cast<std::size_t>(k)]);
    g.push_back({{"order", k}, {"phi", cochain_json(phi)}});
    out << "  phi_" << k << ":";
    const auto& b = *H.basis();
    for (const auto& [s, v] : tr.gauge.phi[static_cast<std::size_t>(k)].columns())
      for (const auto& [t, c] : v) out << "  " << b.word_label(s) << " -> " << c.str() << " " << b.word_label(t);
    out << "\n";
  }
  rep["gauge"] = g;
  return ok;
}

template <Field K>
int cmd_reduce(const CommandOptions& o, const DGHopfPresentation<K>& H, std::ostream& out, Json& rep) {
  if (o.cocycle.empty()) throw UsageError("reduce needs --cocycle FILE");
  auto w = make_window(o, H);
  w.theory = Theory::harrison;
  auto hc = harrison_complex(H.algebra, w);
  Json doc = read_json(o.cocycle);
  const Json& comps = doc.is_object() && doc.contains("cocycle") ? doc.at("cocycle") : doc;
  auto f = parse_cochain<K>(comps, H.basis(), H.basis());
  if (f.empty()) throw UsageError("the cocycle is empty");
  int n = f.begin()->first.p + f.begin()->first.m;
  for (const auto& [t, g] : f)
    if (t.p + t.m != n || t.n != 1) throw UsageError("cocycle components must share one total degree with n = 1");
  auto st = staircase_reduce(*hc, f, n);
  rep["window"] = window_json(w, hc->complex().degree_cap());
  rep["degree"] = n;
  rep["ok"] = st.ok;
  rep["steps"] = st.steps;
  if (!st.ok) {
    rep["failure"] = st.failure;
    out << "reduction failed: " << st.failure << "\n";
    return failure;
  }
  rep["reduced"] = cochain_json(st.reduced);
  rep["witness"] = cochain_json(st.witness);
  out << "reduced to bidegree (" << n - 1 << ",1) in " << st.steps << " steps; witness verified\n";
  return ok;
}

template <Field K>
int dispatch(const CommandOptions& o, const Json& doc, std::ostream& out, Json& rep) {
  auto H = parse_presentation<K>(doc);
  rep["name"] = H.name;
  if (o.command == "validate") return cmd_validate(H, out, rep);
  if (o.command == "cohomology") return cmd_cohomology(o, H, out, rep);
  if (o.command == "deform") return cmd_deform(o, H, out, rep);
  if (o.command == "rigidity") return cmd_rigidity(o, H, out, rep);
  if (o.command == "reduce") return cmd_reduce(o, H, out, rep);
  throw UsageError("unknown command \"" + o.command + "\"");
}

Json echo(const CommandOptions& o) {
  Json j;
  j["command"] = o.command;
  j["input"] = o.input;
  if (o.command == "cohomology" || o.command == "reduce") {
    j["theory"] = o.theory;
    j["q"] = o.q;
    j["degree"] = o.degree;
  }
  if (o.command == "deform" || o.command == "rigidity") {
    j["order"] = o.order;
    j["seed"] = o.seed;
  }
  return j;
}

}  // namespace

std::optional<Json> builtin_document(const std::string& name, std::optional<std::uint32_t> prime,
                                     std::optional<int> top, const std::string& field) {
  std::uint32_t p = prime.value_or(3);
  bool want_prime = field == "prime" || (field.empty() && name == "fp-trunc");
  if (!field.empty() && field != "prime" && field != "rational")
    throw UsageError("--field must be \"rational\" or \"prime\"");
  FieldSpec spec;
  if (want_prime) {
    spec.prime = p;
    ModP::Scope scope(p);
    auto H = builtin<ModP>(name, top, p);
    if (!H) return std::nullopt;
    return emit_presentation(*H, spec);
  }
  auto H = builtin<Rational>(name, top, p);
  if (!H) return std::nullopt;
  return emit_presentation(*H, spec);
}

int run_command(const CommandOptions& o, std::ostream& out, Json& rep) {
  rep = Json::object();
  rep["invocation"] = echo(o);
  try {
    if (o.command == "example") {
      auto d = builtin_document(o.input, o.prime, o.top, o.field);
      if (!d) throw UsageError("no built-in example named \"" + o.input + "\"");
      rep["document"] = *d;
      out << d->dump(2) << "\n";
      return ok;
    }
    Json doc = load_document(o.input);
    FieldSpec field = parse_field(detail::require(doc, "field", "document"));
    rep["field"] = field_json(field);
    if (field.prime) {
      ModP::Scope scope(*field.prime);
      return dispatch<ModP>(o, doc, out, rep);
    }
    return dispatch<Rational>(o, doc, out, rep);
  } catch (const UsageError& e) {
    rep["error"] = e.what();
    out << "error: " << e.what() << "\n";
    return usage;
  } catch (const SchemaError& e) {
    rep["error"] = e.what();
    out << "error: " << e.what() << "\n";
    return usage;
  } catch (const WindowError& e) {
    rep["error"] = e.what();
    out << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    rep["error"] = e.what();
    out << "error: " << e.what() << "\n";
    return failure;
  }
}

}  // namespace dghopf::cli
