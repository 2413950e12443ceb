#include "pdgcat/serialize.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pdgcat {
namespace {

using json = nlohmann::ordered_json;

int reduce_mod(long v, int p) { return static_cast<int>(((v % p) + p) % p); }

Vec sparse_to_vec(const json& j, int dim, int p, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array of [index, value] pairs");
  Vec out(dim, 0);
  for (const json& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer())
      throw ParseError(what + ": each entry must be an [index, value] integer pair");
    int idx = pair[0].get<int>();
    if (idx < 0 || idx >= dim)
      throw ParseError(what + ": basis index " + std::to_string(idx) + " out of range");
    out[idx] = reduce_mod((out[idx] + pair[1].get<long>()), p);
  }
  return out;
}

json vec_to_sparse(const Vec& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.push_back(json::array({i, v[i]}));
  return out;
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing required field \"" + key + "\"");
  return *it;
}

bool contains_object(const json& j) {
  if (j.is_object()) return true;
  if (j.is_array())
    for (const json& c : j)
      if (contains_object(c)) return true;
  return false;
}

/// Objects one key per line; arrays inline when short and free of objects,
/// else one element per line.  Keeps the files diffable without drowning the
/// small coefficient arrays in vertical whitespace.
void dump_compact(std::ostream& os, const json& j, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close_pad(2 * static_cast<std::size_t>(depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) os << ",\n";
      first = false;
      os << pad << json(key).dump() << ": ";
      dump_compact(os, value, depth + 1);
    }
    os << "\n" << close_pad << "}";
  } else if (j.is_array()) {
    if (!contains_object(j) && j.dump().size() <= 60) {
      os << j.dump();
      return;
    }
    os << "[\n";
    bool first = true;
    for (const json& c : j) {
      if (!first) os << ",\n";
      first = false;
      os << pad;
      dump_compact(os, c, depth + 1);
    }
    os << "\n" << close_pad << "]";
  } else {
    os << j.dump();
  }
}

}  // namespace

AlgebraFile read_algebra_file(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_algebra_file_text(buf.str());
}

AlgebraFile read_algebra_file_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top level must be an object");

  AlgebraFile f;
  const json& jp = require(j, "p", "file");
  if (!jp.is_number_integer() || jp.get<int>() < 2) throw ParseError("\"p\" must be a prime >= 2");
  f.raw.p = jp.get<int>();
  const int p = f.raw.p;
  if (j.contains("name")) f.raw.name = j["name"].get<std::string>();

  const json& jb = require(j, "basis", "file");
  if (!jb.is_array() || jb.empty()) throw ParseError("\"basis\" must be a nonempty array");
  for (const json& b : jb) {
    if (!b.is_array() || b.size() != 2 || !b[0].is_string() || !b[1].is_number_integer())
      throw ParseError("basis entries must be [label, degree] pairs");
    f.raw.space.basis.push_back({b[0].get<std::string>(), b[1].get<int>()});
  }
  const int dim = f.raw.space.dim();

  f.raw.unit = sparse_to_vec(require(j, "unit", "file"), dim, p, "unit");

  f.raw.mul.assign(dim, std::vector<Vec>(dim, Vec(dim, 0)));
  const json& jm = require(j, "mul", "file");
  if (!jm.is_array()) throw ParseError("\"mul\" must be an array of [i, j, product] triples");
  for (const json& t : jm) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
      throw ParseError("mul entries must be [i, j, product] triples");
    int a = t[0].get<int>(), b = t[1].get<int>();
    if (a < 0 || a >= dim || b < 0 || b >= dim)
      throw ParseError("mul: index out of range in triple");
    f.raw.mul[a][b] = sparse_to_vec(t[2], dim, p, "mul product");
  }

  f.raw.diff.assign(dim, Vec(dim, 0));
  if (j.contains("diff")) {
    const json& jd = j["diff"];
    if (!jd.is_array()) throw ParseError("\"diff\" must be an array of [i, image] pairs");
    for (const json& t : jd) {
      if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer())
        throw ParseError("diff entries must be [i, image] pairs");
      int a = t[0].get<int>();
      if (a < 0 || a >= dim) throw ParseError("diff: index out of range");
      f.raw.diff[a] = sparse_to_vec(t[1], dim, p, "diff image");
    }
  }

  const json& ji = require(j, "idempotents", "file");
  if (!ji.is_array() || ji.empty())
    throw ParseError("\"idempotents\" must be a nonempty array of sparse vectors");
  for (const json& e : ji) f.raw.idempotents.push_back(sparse_to_vec(e, dim, p, "idempotent"));

  if (j.contains("radical")) {
    std::vector<Vec> rad;
    if (!j["radical"].is_array()) throw ParseError("\"radical\" must be an array");
    for (const json& r : j["radical"]) rad.push_back(sparse_to_vec(r, dim, p, "radical"));
    f.raw.declared_radical = std::move(rad);
  }

  if (j.contains("objects")) {
    if (!j["objects"].is_object()) throw ParseError("\"objects\" must be an object");
    for (const auto& [name, jo] : j["objects"].items()) {
      AlgebraFile::ObjectDef def;
      const json& jg = require(jo, "generators", "object \"" + name + "\"");
      if (!jg.is_array() || jg.empty())
        throw ParseError("object \"" + name + "\": \"generators\" must be nonempty");
      for (const json& g : jg) {
        if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() ||
            !g[1].is_number_integer())
          throw ParseError("object \"" + name + "\": generators are [idempotent, shift] pairs");
        def.gens.push_back({g[0].get<int>(), g[1].get<int>()});
      }
      const int m = static_cast<int>(def.gens.size());
      def.alpha.assign(m, std::vector<Vec>(m, Vec(dim, 0)));
      if (jo.contains("twist")) {
        for (const json& t : jo["twist"]) {
          if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
              !t[1].is_number_integer())
            throw ParseError("object \"" + name + "\": twist entries are [row, col, value]");
          int r = t[0].get<int>(), c = t[1].get<int>();
          if (r < 0 || r >= m || c < 0 || c >= m)
            throw ParseError("object \"" + name + "\": twist index out of range");
          def.alpha[r][c] = sparse_to_vec(t[2], dim, p, "twist value");
        }
      }
      f.objects.emplace(name, std::move(def));
    }
  }

  if (j.contains("morphisms")) {
    if (!j["morphisms"].is_object()) throw ParseError("\"morphisms\" must be an object");
    for (const auto& [name, jo] : j["morphisms"].items()) {
      AlgebraFile::MorphismDef def;
      def.source = require(jo, "source", "morphism \"" + name + "\"").get<std::string>();
      def.target = require(jo, "target", "morphism \"" + name + "\"").get<std::string>();
      def.degree = require(jo, "degree", "morphism \"" + name + "\"").get<int>();
      auto src = f.objects.find(def.source);
      auto tgt = f.objects.find(def.target);
      if (src == f.objects.end() || tgt == f.objects.end())
        throw ParseError("morphism \"" + name + "\": unknown source or target object");
      const int rows = static_cast<int>(tgt->second.gens.size());
      const int cols = static_cast<int>(src->second.gens.size());
      def.entries.assign(rows, std::vector<Vec>(cols, Vec(dim, 0)));
      if (jo.contains("entries")) {
        for (const json& t : jo["entries"]) {
          if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
              !t[1].is_number_integer())
            throw ParseError("morphism \"" + name + "\": entries are [row, col, value]");
          int r = t[0].get<int>(), c = t[1].get<int>();
          if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw ParseError("morphism \"" + name + "\": entry index out of range");
          def.entries[r][c] = sparse_to_vec(t[2], dim, p, "morphism entry");
        }
      }
      f.morphisms.emplace(name, std::move(def));
    }
  }

  if (j.contains("onemorphisms")) {
    if (!j["onemorphisms"].is_object()) throw ParseError("\"onemorphisms\" must be an object");
    for (const auto& [name, jo] : j["onemorphisms"].items()) {
      if (!jo.is_string())
        throw ParseError("1-morphism \"" + name + "\" must be an expression string");
      f.onemorphisms.emplace(name, jo.get<std::string>());
    }
  }

  return f;
}

void write_algebra_file(std::ostream& out, const AlgebraFile& f) {
  out << write_algebra_file_text(f);
}

std::string write_algebra_file_text(const AlgebraFile& f) {
  json j;
  j["p"] = f.raw.p;
  if (!f.raw.name.empty()) j["name"] = f.raw.name;
  j["basis"] = json::array();
  for (const BasisElement& b : f.raw.space.basis)
    j["basis"].push_back(json::array({b.label, b.degree}));
  j["unit"] = vec_to_sparse(f.raw.unit);
  j["mul"] = json::array();
  for (std::size_t a = 0; a < f.raw.mul.size(); ++a)
    for (std::size_t b = 0; b < f.raw.mul[a].size(); ++b)
      if (!is_zero(f.raw.mul[a][b]))
        j["mul"].push_back(json::array({a, b, vec_to_sparse(f.raw.mul[a][b])}));
  j["diff"] = json::array();
  for (std::size_t a = 0; a < f.raw.diff.size(); ++a)
    if (!is_zero(f.raw.diff[a]))
      j["diff"].push_back(json::array({a, vec_to_sparse(f.raw.diff[a])}));
  j["idempotents"] = json::array();
  for (const Vec& e : f.raw.idempotents) j["idempotents"].push_back(vec_to_sparse(e));
  if (f.raw.declared_radical) {
    j["radical"] = json::array();
    for (const Vec& r : *f.raw.declared_radical) j["radical"].push_back(vec_to_sparse(r));
  }
  if (!f.objects.empty()) {
    j["objects"] = json::object();
    for (const auto& [name, def] : f.objects) {
      json jo;
      jo["generators"] = json::array();
      for (const Generator& g : def.gens)
        jo["generators"].push_back(json::array({g.idem, g.shift}));
      json tw = json::array();
      for (std::size_t r = 0; r < def.alpha.size(); ++r)
        for (std::size_t c = 0; c < def.alpha[r].size(); ++c)
          if (!is_zero(def.alpha[r][c]))
            tw.push_back(json::array({r, c, vec_to_sparse(def.alpha[r][c])}));
      if (!tw.empty()) jo["twist"] = tw;
      j["objects"][name] = jo;
    }
  }
  if (!f.morphisms.empty()) {
    j["morphisms"] = json::object();
    for (const auto& [name, def] : f.morphisms) {
      json jo;
      jo["source"] = def.source;
      jo["target"] = def.target;
      jo["degree"] = def.degree;
      json en = json::array();
      for (std::size_t r = 0; r < def.entries.size(); ++r)
        for (std::size_t c = 0; c < def.entries[r].size(); ++c)
          if (!is_zero(def.entries[r][c]))
            en.push_back(json::array({r, c, vec_to_sparse(def.entries[r][c])}));
      if (!en.empty()) jo["entries"] = en;
      j["morphisms"][name] = jo;
    }
  }
  if (!f.onemorphisms.empty()) {
    j["onemorphisms"] = json::object();
    for (const auto& [name, ex] : f.onemorphisms) j["onemorphisms"][name] = ex;
  }
  std::ostringstream os;
  dump_compact(os, j, 0);
  os << "\n";
  return os.str();
}

TwistedObject instantiate_object(AlgebraPtr A, const AlgebraFile::ObjectDef& def) {
  for (const Generator& g : def.gens)
    if (g.idem < 0 || g.idem >= A->num_idempotents())
      throw ParseError("object generator references idempotent " + std::to_string(g.idem) +
                       ", algebra has " + std::to_string(A->num_idempotents()));
  return make_object(A, def.gens, def.alpha);
}

TwistedMorphism instantiate_morphism(AlgebraPtr A, const AlgebraFile& f,
                                     const AlgebraFile::MorphismDef& def) {
  auto src = f.objects.find(def.source);
  auto tgt = f.objects.find(def.target);
  if (src == f.objects.end() || tgt == f.objects.end())
    throw ParseError("morphism references unknown objects");
  TwistedMorphism m;
  m.source = instantiate_object(A, src->second);
  m.target = instantiate_object(A, tgt->second);
  m.degree = def.degree;
  m.entries = def.entries;
  return m;
}

}  // namespace pdgcat
