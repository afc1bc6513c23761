#ifndef DGHOPF_IO_HPP
#define DGHOPF_IO_HPP

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cochains.hpp"
#include "hopf.hpp"

namespace dghopf {

using Json = nlohmann::ordered_json;

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "rational", {"prime": p} or ["prime", p]
struct FieldSpec {
  std::optional<std::uint32_t> prime;
  bool rational() const { return !prime; }
};

inline FieldSpec parse_field(const Json& j) {
  FieldSpec f;
  auto prime = [](const Json& v) -> std::optional<std::uint32_t> {
    if (!v.is_number_integer() || v.get<long long>() < 2 || v.get<long long>() > 0xffffffffLL) return std::nullopt;
    return static_cast<std::uint32_t>(v.get<long long>());
  };
  if (j.is_string() && j.get<std::string>() == "rational") return f;
  if (j.is_object() && j.size() == 1 && j.contains("prime")) f.prime = prime(j.at("prime"));
  if (j.is_array() && j.size() == 2 && j[0] == "prime") f.prime = prime(j[1]);
  if (!f.prime) throw SchemaError("field must be \"rational\" or {\"prime\": p}");
  return f;
}

inline Json field_json(const FieldSpec& f) {
  if (f.rational()) return "rational";
  return Json{{"prime", *f.prime}};
}

namespace detail {

inline const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::string require_string(const Json& j, const char* key, const std::string& where) {
  const auto& v = require(j, key, where);
  if (!v.is_string()) throw SchemaError(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

template <Field K>
K coefficient(const Json& j, const std::string& where) {
  const auto& v = require(j, "coeff", where);
  try {
    if (v.is_string()) return K::parse(v.get<std::string>());
    if (v.is_number_integer()) return K::parse(std::to_string(v.get<long long>()));
  } catch (const FieldError& e) {
    throw SchemaError(where + ": " + e.what());
  }
  throw SchemaError(where + ": coefficient must be an integer or a string \"a/b\"");
}

inline int resolve(const GradedBasis& b, const std::string& label, const std::string& where) {
  auto i = b.find(label);
  if (!i) throw SchemaError(where + ": unknown label \"" + label + "\"");
  return *i;
}

inline const Json& list(const Json& doc, const char* key) {
  static const Json empty = Json::array();
  if (!doc.contains(key)) return empty;
  const auto& v = doc.at(key);
  if (!v.is_array()) throw SchemaError(std::string("\"") + key + "\" must be a list");
  return v;
}

// Unit and counit rows implied by connectedness.
template <Field K>
GradedMap<K> default_mu(const BasisPtr& b) {
  GradedMap<K> mu(b, 2, 1, 0);
  for (int a = 0; a < b->size(); ++a) {
    mu.add(Word{0, a}, Word{a}, K(1));
    if (a != 0) mu.add(Word{a, 0}, Word{a}, K(1));
  }
  return mu;
}

template <Field K>
GradedMap<K> default_delta(const BasisPtr& b) {
  GradedMap<K> delta(b, 1, 2, 0);
  delta.add(Word{0}, Word{0, 0}, K(1));
  for (int a = 1; a < b->size(); ++a) {
    delta.add(Word{a}, Word{0, a}, K(1));
    delta.add(Word{a}, Word{a, 0}, K(1));
  }
  return delta;
}

}  // namespace detail

/*
 * Presentation from a document. Unit and counit rows are synthesized;
 * entries given in the document are added on top of them. Axioms are
 * not checked here (see validate_hopf).
 */
template <Field K>
DGHopfPresentation<K> parse_presentation(const Json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw SchemaError("presentation document must be an object");
  std::vector<GradedBasis::Element> elems;
  const auto& bl = require(doc, "basis", "document");
  if (!bl.is_array()) throw SchemaError("\"basis\" must be a list");
  for (std::size_t i = 0; i < bl.size(); ++i) {
    std::string where = "basis[" + std::to_string(i) + "]";
    const auto& deg = require(bl[i], "degree", where);
    if (!deg.is_number_integer()) throw SchemaError(where + ": degree must be an integer");
    elems.push_back({require_string(bl[i], "label", where), deg.get<int>()});
  }
  std::optional<int> top;
  if (doc.contains("top_degree")) top = doc.at("top_degree").get<int>();
  BasisPtr b;
  try {
    b = std::make_shared<const GradedBasis>(std::move(elems), top);
  } catch (const ShapeError& e) {
    throw SchemaError(std::string("basis: ") + e.what());
  }
  std::string unit = require_string(doc, "unit", "document");
  if (b->unit_label() != unit) throw SchemaError("unit \"" + unit + "\" is not the degree-0 basis element");
  bool truncated = doc.value("truncated", false);

  auto mu = default_mu<K>(b);
  const auto& ml = list(doc, "mu");
  for (std::size_t i = 0; i < ml.size(); ++i) {
    std::string where = "mu[" + std::to_string(i) + "]";
    int l = resolve(*b, require_string(ml[i], "left", where), where);
    int r = resolve(*b, require_string(ml[i], "right", where), where);
    int o = resolve(*b, require_string(ml[i], "out", where), where);
    if (b->degree(o) != b->degree(l) + b->degree(r)) throw SchemaError(where + ": product is not degree-preserving");
    mu.add(Word{l, r}, Word{o}, coefficient<K>(ml[i], where));
  }
  auto delta = default_delta<K>(b);
  const auto& dl = list(doc, "delta");
  for (std::size_t i = 0; i < dl.size(); ++i) {
    std::string where = "delta[" + std::to_string(i) + "]";
    int a = resolve(*b, require_string(dl[i], "in", where), where);
    int l = resolve(*b, require_string(dl[i], "out_left", where), where);
    int r = resolve(*b, require_string(dl[i], "out_right", where), where);
    if (b->degree(a) != b->degree(l) + b->degree(r))
      throw SchemaError(where + ": coproduct is not degree-preserving");
    delta.add(Word{a}, Word{l, r}, coefficient<K>(dl[i], where));
  }
  GradedMap<K> d(b, 1, 1, 1);
  const auto& xl = list(doc, "diff");
  for (std::size_t i = 0; i < xl.size(); ++i) {
    std::string where = "diff[" + std::to_string(i) + "]";
    int a = resolve(*b, require_string(xl[i], "in", where), where);
    int o = resolve(*b, require_string(xl[i], "out", where), where);
    if (b->degree(o) != b->degree(a) + 1) throw SchemaError(where + ": differential must raise degree by one");
    d.add(Word{a}, Word{o}, coefficient<K>(xl[i], where));
  }

  DGHopfPresentation<K> H;
  H.name = doc.value("name", std::string("presentation"));
  H.algebra = {b, mu, d, truncated};
  H.coalgebra = {b, delta, d, truncated};
  H.antipode = compute_antipode(mu, delta);
  if (doc.contains("antipode")) {
    GradedMap<K> S(b, 1, 1, 0);
    const auto& sl = list(doc, "antipode");
    for (std::size_t i = 0; i < sl.size(); ++i) {
      std::string where = "antipode[" + std::to_string(i) + "]";
      int a = resolve(*b, require_string(sl[i], "in", where), where);
      int o = resolve(*b, require_string(sl[i], "out", where), where);
      S.add(Word{a}, Word{o}, coefficient<K>(sl[i], where));
    }
    H.supplied_antipode = S;
  }
  const auto& gl = list(doc, "generators");
  for (std::size_t i = 0; i < gl.size(); ++i) {
    if (!gl[i].is_string()) throw SchemaError("generators[" + std::to_string(i) + "] must be a label");
    H.generators.push_back(resolve(*b, gl[i].get<std::string>(), "generators[" + std::to_string(i) + "]"));
  }
  return H;
}

// Canonical document: entries are the difference from the synthesized
// unit/counit rows, in basis order.
template <Field K>
Json emit_presentation(const DGHopfPresentation<K>& H, const FieldSpec& field) {
  const auto& b = H.basis();
  Json doc;
  doc["name"] = H.name;
  doc["field"] = field_json(field);
  Json basis = Json::array();
  for (const auto& e : b->elements()) basis.push_back({{"label", e.label}, {"degree", e.degree}});
  doc["basis"] = basis;
  doc["unit"] = b->unit_label();
  if (H.truncated()) {
    doc["truncated"] = true;
    doc["top_degree"] = b->top_degree();
  }
  if (!H.generators.empty()) {
    Json g = Json::array();
    for (int i : H.generators) g.push_back(b->label(i));
    doc["generators"] = g;
  }
  auto dm = H.mu() - detail::default_mu<K>(b);
  Json mu = Json::array();
  for (const auto& [s, v] : dm.columns())
    for (const auto& [t, c] : v)
      mu.push_back({{"left", b->label(s[0])}, {"right", b->label(s[1])}, {"out", b->label(t[0])}, {"coeff", c.str()}});
  doc["mu"] = mu;
  auto dd = H.delta() - detail::default_delta<K>(b);
  Json delta = Json::array();
  for (const auto& [s, v] : dd.columns())
    for (const auto& [t, c] : v)
      delta.push_back(
          {{"in", b->label(s[0])}, {"out_left", b->label(t[0])}, {"out_right", b->label(t[1])}, {"coeff", c.str()}});
  doc["delta"] = delta;
  Json diff = Json::array();
  for (const auto& [s, v] : H.d().columns())
    for (const auto& [t, c] : v) diff.push_back({{"in", b->label(s[0])}, {"out", b->label(t[0])}, {"coeff", c.str()}});
  doc["diff"] = diff;
  if (H.supplied_antipode) {
    Json S = Json::array();
    for (const auto& [s, v] : H.supplied_antipode->columns())
      for (const auto& [t, c] : v) S.push_back({{"in", b->label(s[0])}, {"out", b->label(t[0])}, {"coeff", c.str()}});
    doc["antipode"] = S;
  }
  return doc;
}

template <Field K>
bool same_presentation(const DGHopfPresentation<K>& a, const DGHopfPresentation<K>& b) {
  return a.name == b.name && same_basis(a.basis(), b.basis()) && a.truncated() == b.truncated() &&
         a.mu() == b.mu() && a.delta() == b.delta() && a.d() == b.d() && a.generators == b.generators &&
         a.supplied_antipode.has_value() == b.supplied_antipode.has_value() &&
         (!a.supplied_antipode || *a.supplied_antipode == *b.supplied_antipode);
}

// Sparse listing of a total cochain: one entry per nonzero coefficient.
template <Field K>
Json cochain_json(const TotalCochain<K>& f) {
  Json out = Json::array();
  for (const auto& [tri, g] : f) {
    if (g.is_zero()) continue;
    const auto& sb = *g.source_basis();
    const auto& tb = *g.target_basis();
    Json entries = Json::array();
    for (const auto& [s, v] : g.columns())
      for (const auto& [t, c] : v)
        entries.push_back({{"source", sb.word_labels(s)}, {"target", tb.word_labels(t)}, {"coeff", c.str()}});
    out.push_back({{"tridegree", {tri.p, tri.m, tri.n}}, {"entries", entries}});
  }
  return out;
}

template <Field K>
TotalCochain<K> parse_cochain(const Json& j, const BasisPtr& sb, const BasisPtr& tb) {
  if (!j.is_array()) throw SchemaError("a cochain is a list of components");
  TotalCochain<K> f;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string where = "component[" + std::to_string(i) + "]";
    const auto& tri = detail::require(j[i], "tridegree", where);
    if (!tri.is_array() || tri.size() != 3) throw SchemaError(where + ": tridegree must be [p, m, n]");
    Tridegree t{tri[0].get<int>(), tri[1].get<int>(), tri[2].get<int>()};
    GradedMap<K> g(sb, t.m, tb, t.n, t.p);
    const auto& es = detail::require(j[i], "entries", where);
    for (std::size_t k = 0; k < es.size(); ++k) {
      std::string w2 = where + ".entries[" + std::to_string(k) + "]";
      auto word = [&](const char* key, const BasisPtr& b, int arity) {
        const auto& l = detail::require(es[k], key, w2);
        if (!l.is_array() || static_cast<int>(l.size()) != arity)
          throw SchemaError(w2 + ": \"" + key + "\" must list " + std::to_string(arity) + " labels");
        Word w;
        for (const auto& x : l) w.push_back(detail::resolve(*b, x.get<std::string>(), w2));
        return w;
      };
      Word s = word("source", sb, t.m), tw = word("target", tb, t.n);
      if (tb->degree(tw) != sb->degree(s) + t.p) throw SchemaError(w2 + ": entry has the wrong internal degree");
      g.add(s, tw, detail::coefficient<K>(es[k], w2));
    }
    if (!g.is_zero()) {
      auto it = f.find(t);
      if (it == f.end()) f.emplace(t, g);
      else it->second += g;
    }
  }
  return f;
}

template <Field K>
Json sparse_json(const SparseVec<K>& v) {
  Json out = Json::array();
  for (const auto& [i, c] : v) out.push_back({i, c.str()});
  return out;
}

}  // namespace dghopf

#endif
