#include "pdgcat/commands.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pdgcat/cellrep.hpp"
#include "pdgcat/cells.hpp"
#include "pdgcat/examples.hpp"
#include "pdgcat/expr.hpp"
#include "pdgcat/filtration.hpp"
#include "pdgcat/homotopy.hpp"
#include "pdgcat/serialize.hpp"

namespace pdgcat {
namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParsedArgs {
  std::vector<std::string> positional;
  std::map<std::string, std::string> options;
  std::set<std::string> flags;
};

ParsedArgs parse_args(const std::vector<std::string>& args, std::size_t start,
                      const std::set<std::string>& value_options,
                      const std::set<std::string>& bool_flags) {
  ParsedArgs out;
  for (std::size_t i = start; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) == 0) {
      std::string key = a.substr(2);
      if (bool_flags.count(key)) {
        out.flags.insert(key);
      } else if (value_options.count(key)) {
        if (i + 1 >= args.size()) throw UsageError("option --" + key + " needs a value");
        out.options[key] = args[++i];
      } else {
        throw UsageError("unknown option --" + key);
      }
    } else {
      out.positional.push_back(a);
    }
  }
  return out;
}

const std::string& require_option(const ParsedArgs& a, const std::string& key) {
  auto it = a.options.find(key);
  if (it == a.options.end()) throw UsageError("missing required option --" + key);
  return it->second;
}

int parse_int_option(const ParsedArgs& a, const std::string& key, int fallback) {
  auto it = a.options.find(key);
  if (it == a.options.end()) return fallback;
  try {
    std::size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw UsageError("option --" + key + " needs an integer, got \"" + it->second + "\"");
  }
}

AlgebraFile load_file(const std::string& path, std::istream& in) {
  if (path == "-") return read_algebra_file(in);
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open file: " + path);
  return read_algebra_file(f);
}

/// Resolve every named 1-morphism expression in the file, allowing names to
/// reference each other (cycles are reported).
OneMorphismEnv resolve_onemorphisms(AlgebraPtr A, const AlgebraFile& f) {
  OneMorphismEnv env;
  std::set<std::string> in_progress;
  std::function<const OneMorphism&(const std::string&)> resolve =
      [&](const std::string& name) -> const OneMorphism& {
    auto done = env.find(name);
    if (done != env.end()) return done->second;
    auto it = f.onemorphisms.find(name);
    if (it == f.onemorphisms.end())
      throw ExprError("unknown 1-morphism name \"" + name + "\"", 0);
    if (!in_progress.insert(name).second)
      throw ExprError("1-morphism \"" + name + "\" is defined in terms of itself", 0);
    ExprPtr e = parse_expr(it->second);
    // Pre-resolve referenced names so eval_expr sees a complete environment.
    std::function<void(const Expr&)> visit = [&](const Expr& x) {
      if (x.kind == Expr::Kind::Name && !env.count(x.name)) resolve(x.name);
      for (const ExprPtr& c : x.children) visit(*c);
    };
    visit(*e);
    in_progress.erase(name);
    return env.emplace(name, eval_expr(*e, A, env)).first->second;
  };
  for (const auto& kv : f.onemorphisms) resolve(kv.first);
  return env;
}

json violations_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const Violation& v : vs) out.push_back({{"rule", v.rule}, {"witness", v.witness}});
  return out;
}

void print_violations(std::ostream& out, const std::vector<Violation>& vs,
                      const std::string& indent = "  ") {
  for (const Violation& v : vs) out << indent << "[" << v.rule << "] " << v.witness << "\n";
}

std::string gens_string(const TwistedObject& x) {
  std::string out;
  for (const Generator& g : x.gens) {
    if (!out.empty()) out += ", ";
    out += "(e" + std::to_string(g.idem + 1) + ", " + std::to_string(g.shift) + ")";
  }
  return "[" + out + "]";
}

json gens_json(const TwistedObject& x) {
  json out = json::array();
  for (const Generator& g : x.gens) out.push_back(json::array({g.idem, g.shift}));
  return out;
}

const AlgebraFile::ObjectDef& require_object(const AlgebraFile& f, const std::string& name) {
  auto it = f.objects.find(name);
  if (it == f.objects.end()) throw ParseError("file defines no object named \"" + name + "\"");
  return it->second;
}

AlgebraPtr validated(const AlgebraFile& f) { return make_algebra(f.raw); }

// ---------------------------------------------------------------------------

int cmd_validate(const ParsedArgs& a, std::istream& in, std::ostream& out, bool jmode) {
  AlgebraFile f = load_file(a.positional.at(0), in);
  ValidationResult res = validate_algebra(f.raw);
  json j;
  j["command"] = "validate";
  j["algebra"] = f.raw.name;
  j["p"] = f.raw.p;
  j["dimension"] = f.raw.space.dim();
  j["idempotents"] = f.raw.idempotents.size();
  j["valid"] = res.ok();
  j["violations"] = violations_json(res.violations);
  bool all_ok = res.ok();
  json jobj = json::object(), jmor = json::object();
  if (res.ok()) {
    AlgebraPtr A = std::make_shared<PdgAlgebra>(std::move(*res.algebra));
    j["blocks"] = A->num_blocks();
    for (const auto& [name, def] : f.objects) {
      TwistedValidation v = validate_twisted(instantiate_object(A, def));
      jobj[name] = {{"valid", v.ok()}, {"violations", violations_json(v.violations)}};
      all_ok = all_ok && v.ok();
    }
    for (const auto& [name, def] : f.morphisms) {
      TwistedValidation v = validate_morphism(instantiate_morphism(A, f, def));
      jmor[name] = {{"valid", v.ok()}, {"violations", violations_json(v.violations)}};
      all_ok = all_ok && v.ok();
    }
    OneMorphismEnv env = resolve_onemorphisms(A, f);  // throws on bad expressions
    json jone = json::array();
    for (const auto& kv : env) jone.push_back(kv.first);
    j["onemorphisms"] = jone;
  }
  j["objects"] = jobj;
  j["morphisms"] = jmor;
  if (jmode) {
    out << j.dump(2) << "\n";
  } else {
    out << "algebra: " << (f.raw.name.empty() ? "(unnamed)" : f.raw.name) << "  (p = " << f.raw.p
        << ", dimension " << f.raw.space.dim() << ", idempotents " << f.raw.idempotents.size();
    if (res.ok()) out << ", blocks " << j["blocks"].get<int>();
    out << ")\n";
    out << "valid: " << (res.ok() ? "yes" : "no") << "\n";
    print_violations(out, res.violations);
    for (const auto& [name, jv] : jobj.items()) {
      out << "object " << name << ": " << (jv["valid"].get<bool>() ? "valid" : "invalid") << "\n";
      for (const json& v : jv["violations"])
        out << "  [" << v["rule"].get<std::string>() << "] " << v["witness"].get<std::string>()
            << "\n";
    }
    for (const auto& [name, jv] : jmor.items()) {
      out << "morphism " << name << ": " << (jv["valid"].get<bool>() ? "valid" : "invalid")
          << "\n";
      for (const json& v : jv["violations"])
        out << "  [" << v["rule"].get<std::string>() << "] " << v["witness"].get<std::string>()
            << "\n";
    }
  }
  return all_ok ? 0 : 1;
}

int cmd_radical(const ParsedArgs& a, std::istream& in, std::ostream& out, bool jmode) {
  AlgebraFile f = load_file(a.positional.at(0), in);
  AlgebraPtr A = validated(f);
  RadicalResult r = A->radical();
  std::vector<std::pair<int, int>> dims;
  GradedSpace rad_space;
  for (const Vec& b : r.basis) {
    auto d = A->element_degree(b);
    rad_space.basis.push_back({A->format_element(b), d.value_or(0)});
  }
  json j;
  j["command"] = "radical";
  j["algebra"] = A->name();
  j["dimension"] = r.basis.size();
  j["graded_dimension"] = format_graded_dimension(rad_space.graded_dimension());
  json jb = json::array();
  for (const BasisElement& b : rad_space.basis)
    jb.push_back({{"element", b.label}, {"degree", b.degree}});
  j["basis"] = jb;
  j["declared"] = r.declared;
  j["verified"] = r.ok();
  j["violations"] = violations_json(r.violations);
  if (jmode) {
    out << j.dump(2) << "\n";
  } else {
    out << "radical dimension: " << r.basis.size() << "\n";
    out << "graded dimension: " << j["graded_dimension"].get<std::string>() << "\n";
    for (const BasisElement& b : rad_space.basis)
      out << "  " << b.label << "  (degree " << b.degree << ")\n";
    out << "source: " << (r.declared ? "declared in file" : "computed") << "\n";
    out << "verified: " << (r.ok() ? "yes" : "no") << "\n";
    print_violations(out, r.violations);
  }
  return r.ok() ? 0 : 1;
}

int cmd_cells(const ParsedArgs& a, std::istream& in, std::ostream& out, bool jmode) {
  AlgebraFile f = load_file(a.positional.at(0), in);
  AlgebraPtr A = validated(f);
  CellStructure cs = compute_cells(A);
  bool regular = strong_regularity(cs);
  auto cell_labels = [&](const std::vector<int>& cell) {
    json labels = json::array();
    for (int i : cell) labels.push_back(cs.indecomposables[i].label);
    return labels;
  };
  auto cells_json = [&](const std::vector<std::vector<int>>& cells) {
    json arr = json::array();
    for (const auto& c : cells) arr.push_back(cell_labels(c));
    return arr;
  };
  json j;
  j["command"] = "cells";
  j["algebra"] = A->name();
  j["objects"] = A->num_blocks();
  json ji = json::array();
  for (const Indecomposable& ind : cs.indecomposables) {
    json e;
    e["label"] = ind.label;
    e["aliases"] = ind.aliases;
    ji.push_back(e);
  }
  j["indecomposables"] = ji;
  j["left_cells"] = cells_json(cs.left_cells);
  j["right_cells"] = cells_json(cs.right_cells);
  j["two_sided_cells"] = cells_json(cs.two_cells);
  json grid = json::array();
  for (std::size_t c1 = 0; c1 < cs.two_cells.size(); ++c1) {
    json row = json::array();
    for (std::size_t c2 = 0; c2 < cs.two_cells.size(); ++c2)
      row.push_back(cell_geq(cs.geq_two, cs.two_cells, static_cast<int>(c1),
                             static_cast<int>(c2)));
    grid.push_back(row);
  }
  j["two_sided_order"] = grid;
  j["strongly_regular"] = regular;
  if (jmode) {
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "objects: " << A->num_blocks() << "\n";
  out << "indecomposable 1-morphisms: " << cs.indecomposables.size() << "\n";
  for (const Indecomposable& ind : cs.indecomposables) {
    out << "  " << ind.label;
    if (!ind.aliases.empty()) {
      out << "  (aliases:";
      for (const std::string& al : ind.aliases) out << " " << al;
      out << ")";
    }
    out << "\n";
  }
  auto print_cells = [&](const char* title, const std::vector<std::vector<int>>& cells) {
    out << title << ": " << cells.size() << "\n";
    for (const auto& c : cells) {
      out << "  {";
      for (std::size_t i = 0; i < c.size(); ++i)
        out << (i ? ", " : "") << cs.indecomposables[c[i]].label;
      out << "}\n";
    }
  };
  print_cells("left cells", cs.left_cells);
  print_cells("right cells", cs.right_cells);
  print_cells("two-sided cells", cs.two_cells);
  out << "two-sided order (row >= column):\n";
  for (const json& row : grid) {
    out << "  ";
    for (const json& v : row) out << (v.get<bool>() ? "1 " : "0 ");
    out << "\n";
  }
  out << "strongly regular: " << (regular ? "yes" : "no") << "\n";
  return 0;
}

int cmd_cellrep(const ParsedArgs& a, std::istream& in, std::ostream& out, bool jmode) {
  const std::string& label = require_option(a, "cell");
  AlgebraFile f = load_file(a.positional.at(0), in);
  AlgebraPtr A = validated(f);
  CellStructure cs = compute_cells(A);
  int idx = cs.find(label);
  if (idx < 0) throw CellError("no indecomposable 1-morphism labelled \"" + label + "\"");
  CellRepData data = build_cell_rep(cs, idx);
  NaturalComparison cmp = compare_with_natural(data);
  std::vector<Violation> maximal = verify_maximal_ideal(data);
  bool hard_maximal_fail = false, soft_maximal = false;
  for (const Violation& v : maximal)
    (v.rule == "maximality-unverified" ? soft_maximal : hard_maximal_fail) = true;

  json j;
  j["command"] = "cellrep";
  j["cell"] = data.cell_label;
  j["identity_cell"] = data.identity_cell;
  j["generators"] = data.generator_labels;
  json dims = json::array();
  for (int to = 0; to < data.num_generators(); ++to)
    for (int from = 0; from < data.num_generators(); ++from)
      dims.push_back({{"from", data.generator_labels[from]},
                      {"to", data.generator_labels[to]},
                      {"quotient", format_graded_dimension(data.quotient_dimension(from, to))}});
  j["quotient_dimensions"] = dims;
  j["verified"] = data.ok();
  j["violations"] = violations_json(data.violations);
  json jc = json::array();
  for (const NaturalComparison::Entry& e : cmp.entries)
    jc.push_back({{"from", e.from},
                  {"to", e.to},
                  {"cell", e.cell_dims},
                  {"natural", e.natural_dims},
                  {"dimensions_match", e.dims_match},
                  {"differentials_match", e.diff_match}});
  j["natural_comparison"] = jc;
  j["natural_match"] = cmp.ok();
  j["ideal_maximal"] = maximal.empty() ? "verified" : (hard_maximal_fail ? "no" : "unverified");
  j["maximality_violations"] = violations_json(maximal);
  if (jmode) {
    out << j.dump(2) << "\n";
  } else {
    out << "cell of " << data.cell_label << (data.identity_cell ? "  (identity cell)" : "")
        << "\n";
    out << "generators: " << data.num_generators() << "\n";
    for (const std::string& g : data.generator_labels) out << "  " << g << "\n";
    out << "quotient hom spaces:\n";
    for (int to = 0; to < data.num_generators(); ++to)
      for (int from = 0; from < data.num_generators(); ++from)
        out << "  " << data.generator_labels[from] << " -> " << data.generator_labels[to] << ": "
            << format_graded_dimension(data.quotient_dimension(from, to)) << "\n";
    out << "verified: " << (data.ok() ? "yes" : "no") << "\n";
    print_violations(out, data.violations);
    out << "matches module-category representation: " << (cmp.ok() ? "yes" : "no") << "\n";
    for (const NaturalComparison::Entry& e : cmp.entries)
      if (!e.dims_match || !e.diff_match)
        out << "  mismatch " << e.from << " -> " << e.to << ": cell " << e.cell_dims
            << " vs natural " << e.natural_dims << "\n";
    out << "ideal maximal: " << j["ideal_maximal"].get<std::string>() << "\n";
    print_violations(out, maximal);
  }
  return (data.ok() && cmp.ok() && !hard_maximal_fail) ? 0 : 1;
}

int cmd_two_hom(const ParsedArgs& a, std::istream& in, std::ostream& out, bool jmode) {
  const std::string& from = require_option(a, "from");
  const std::string& to = require_option(a, "to");
  AlgebraFile f = load_file(a.positional.at(0), in);
  AlgebraPtr A = validated(f);
  OneMorphismEnv env = resolve_onemorphisms(A, f);
  OneMorphism x = eval_expr_text(from, A, env);
  OneMorphism y = eval_expr_text(to, A, env);
  TwoHom H = two_hom(x, y);
  json j;
  j["command"] = "two-hom";
  j["from"] = from;
  j["to"] = to;
  j["graded_dimension"] = format_graded_dimension(H.space.graded_dimension());
  if (a.flags.count("stable")) {
    StableTwoHomTable table = stable_two_hom_table(x, y);
    json by = json::array();
    for (const StableTwoHom& s : table.by_degree)
      if (s.dimension() > 0) by.push_back({{"degree", s.degree}, {"dimension", s.dimension()}});
    j["stable"] = {{"by_degree", by}, {"total", table.total}};
  }
  if (jmode) {
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "hom space: " << j["graded_dimension"].get<std::string>() << "\n";
  if (j.contains("stable")) {
    for (const json& s : j["stable"]["by_degree"])
      out << "stable dimension in degree " << s["degree"].get<int>() << ": "
          << s["dimension"].get<int>() << "\n";
    out << "total stable dimension: " << j["stable"]["total"].get<int>() << "\n";
  }
  return 0;
}

int cmd_cone(const ParsedArgs& a, std::istream& in, std::ostream& out, bool jmode) {
  const std::string& name = require_option(a, "morphism");
  AlgebraFile f = load_file(a.positional.at(0), in);
  AlgebraPtr A = validated(f);
  auto it = f.morphisms.find(name);
  if (it == f.morphisms.end())
    throw ParseError("file defines no morphism named \"" + name + "\"");
  TwistedMorphism m = instantiate_morphism(A, f, it->second);
  if (m.degree != 0)
    throw DimensionError("cone needs a degree-0 morphism; \"" + name + "\" has degree " +
                         std::to_string(m.degree));
  if (!mor_is_zero(mor_diff(m)))
    throw DimensionError("cone needs a closed morphism; d(" + name + ") != 0");
  ConeData c = cone(m);
  bool maps_ok = validate_twisted(c.cone).ok() && validate_morphism(c.v).ok() &&
                 validate_morphism(c.u).ok() && validate_morphism(c.r).ok() &&
                 validate_morphism(c.q).ok() && mor_is_zero(mor_diff(c.v)) &&
                 mor_is_zero(mor_diff(c.u)) && mor_is_zero(mor_diff(c.r)) &&
                 mor_is_zero(mor_diff(c.q));
  Realization real = realize(c.cone);
  json j;
  j["command"] = "cone";
  j["morphism"] = name;
  j["generators"] = gens_json(c.cone);
  j["graded_dimension"] = format_graded_dimension(real.space.graded_dimension());
  j["structure_maps_closed"] = maps_ok;
  if (jmode) {
    out << j.dump(2) << "\n";
  } else {
    out << "cone generators (idempotent, shift): " << gens_string(c.cone) << "\n";
    out << "graded dimension: " << j["graded_dimension"].get<std::string>() << "\n";
    out << "structure maps closed of degree 0: " << (maps_ok ? "yes" : "no") << "\n";
  }
  return maps_ok ? 0 : 1;
}

int cmd_tensor_h(const ParsedArgs& a, std::istream& in, std::ostream& out, bool jmode) {
  const std::string& name = require_option(a, "object");
  AlgebraFile f = load_file(a.positional.at(0), in);
  int vi = parse_int_option(a, "vi", 0);
  int shift = parse_int_option(a, "shift", 0);
  AlgebraPtr A = validated(f);
  if (vi < 0 || vi >= A->p())
    throw DimensionError("--vi must lie in [0, p-1]; got " + std::to_string(vi));
  TwistedObject x = instantiate_object(A, require_object(f, name));
  TwistedObject res = tensor_h(x, standard_module(A->p(), vi, shift));
  TwistedValidation v = validate_twisted(res);
  Realization real = realize(res);
  json j;
  j["command"] = "tensor-h";
  j["object"] = name;
  j["vi"] = vi;
  j["shift"] = shift;
  j["generators"] = gens_json(res);
  j["graded_dimension"] = format_graded_dimension(real.space.graded_dimension());
  j["valid"] = v.ok();
  if (jmode) {
    out << j.dump(2) << "\n";
  } else {
    out << "generators (idempotent, shift): " << gens_string(res) << "\n";
    out << "graded dimension: " << j["graded_dimension"].get<std::string>() << "\n";
    out << "valid twisted object: " << (v.ok() ? "yes" : "no") << "\n";
    print_violations(out, v.violations);
  }
  return v.ok() ? 0 : 1;
}

int cmd_fantastic(const ParsedArgs& a, std::istream& in, std::ostream& out, bool jmode) {
  const std::string& name = require_option(a, "object");
  AlgebraFile f = load_file(a.positional.at(0), in);
  AlgebraPtr A = validated(f);
  TwistedObject x = instantiate_object(A, require_object(f, name));
  TwistedValidation v = validate_twisted(x);
  if (!v.ok())
    throw DimensionError("object \"" + name + "\" is not a valid twisted object: " +
                         v.violations.front().rule);
  FantasticCertificate cert = canonical_filtration(x);
  FantasticReport rep = verify_fantastic(cert);
  json j;
  j["command"] = "fantastic";
  j["object"] = name;
  j["steps"] = cert.pieces.size();
  json jp = json::array();
  for (const TwistedObject& piece : cert.pieces) jp.push_back(gens_json(piece));
  j["pieces"] = jp;
  j["verified"] = rep.ok;
  if (!rep.ok) {
    j["condition"] = rep.condition;
    j["witness"] = rep.witness;
  }
  if (jmode) {
    out << j.dump(2) << "\n";
  } else {
    out << "filtration steps: " << cert.pieces.size() << "\n";
    for (std::size_t i = 0; i < cert.pieces.size(); ++i)
      out << "  step " << (i + 1) << ": generators " << gens_string(cert.pieces[i]) << "\n";
    out << "verified: " << (rep.ok ? "yes" : "no") << "\n";
    if (!rep.ok)
      out << "  failed condition: " << rep.condition << " (piece " << rep.index << ")  "
          << rep.witness << "\n";
  }
  return rep.ok ? 0 : 1;
}

int cmd_example(const ParsedArgs& a, std::ostream& out) {
  if (a.positional.empty()) throw UsageError("example needs a name (kx, semisimple, ...)");
  std::string name = a.positional[0];
  int p = parse_int_option(a, "p", 3);
  auto diff = a.options.find("diff");
  if (diff != a.options.end()) {
    if (name != "kx" && name != "kx-paper-variant")
      throw UsageError("--diff only applies to the kx example");
    if (diff->second == "one")
      name = "kx-paper-variant";
    else if (diff->second == "xsq")
      name = "kx";
    else
      throw UsageError("--diff must be xsq or one, got \"" + diff->second + "\"");
  }
  int param;
  if (name == "kx" || name == "kx-paper-variant")
    param = parse_int_option(a, "n", 3);
  else if (name == "semisimple")
    param = parse_int_option(a, "r", 2);
  else if (name == "coinvariant")
    param = parse_int_option(a, "lambda", 2);
  else
    param = parse_int_option(a, "n", 3);
  AlgebraFile f;
  f.raw = builtin_example(name, p, param);
  write_algebra_file(out, f);
  return 0;
}

}  // namespace

std::string usage_text() {
  return "usage: pdgcat COMMAND [ARGS]\n"
         "\n"
         "commands:\n"
         "  validate FILE                           check all axioms; list violations\n"
         "  radical FILE                            Jacobson radical with certificates\n"
         "  cells FILE                              indecomposable 1-morphisms and cells\n"
         "  cellrep FILE --cell LABEL               cell 2-representation and comparison\n"
         "  two-hom FILE --from E --to E [--stable] graded 2-morphism space between\n"
         "                                          1-morphism expressions\n"
         "  cone FILE --morphism NAME               cone of a named closed morphism\n"
         "  tensor-h FILE --object NAME --vi I --shift S\n"
         "                                          tensor with the standard chain V_I<S>\n"
         "  fantastic FILE --object NAME            generator-order filtration with\n"
         "                                          certified split subquotients\n"
         "  example NAME [--p P] [--n N] [--r R] [--lambda L] [--diff xsq|one]\n"
         "                                          print a built-in algebra file\n"
         "\n"
         "FILE may be '-' to read from standard input.  Every command accepts --json\n"
         "for machine-readable output.  Expressions: Id(i), P(s,t), E<n>, E*E, E+E,\n"
         "and names defined in the file; '*' (composition) binds tighter than '+'\n"
         "(direct sum), '<n>' is the shift.  Indices are 1-based.\n";
}

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err) {
  if (args.empty() || args[0] == "--help" || args[0] == "help" || args[0] == "-h") {
    out << usage_text();
    return args.empty() ? 2 : 0;
  }
  const std::string& cmd = args[0];
  try {
    ParsedArgs a;
    auto common = [&](const std::set<std::string>& opts,
                      const std::set<std::string>& extra_flags = {}) {
      std::set<std::string> flags = extra_flags;
      flags.insert("json");
      a = parse_args(args, 1, opts, flags);
      if (a.positional.size() != 1) throw UsageError("expected exactly one FILE argument");
    };
    bool jmode = false;
    auto dispatch = [&]() -> int {
      if (cmd == "validate") {
        common({});
      } else if (cmd == "radical") {
        common({});
      } else if (cmd == "cells") {
        common({});
      } else if (cmd == "cellrep") {
        common({"cell"});
      } else if (cmd == "two-hom") {
        common({"from", "to"}, {"stable"});
      } else if (cmd == "cone") {
        common({"morphism"});
      } else if (cmd == "tensor-h") {
        common({"object", "vi", "shift"});
      } else if (cmd == "fantastic") {
        common({"object"});
      } else if (cmd == "example") {
        a = parse_args(args, 1, {"p", "n", "r", "lambda", "diff"}, {"json"});
        if (a.positional.size() != 1) throw UsageError("example needs exactly one NAME");
      } else {
        throw UsageError("unknown command \"" + cmd + "\"");
      }
      jmode = a.flags.count("json") > 0;
      if (cmd == "validate") return cmd_validate(a, in, out, jmode);
      if (cmd == "radical") return cmd_radical(a, in, out, jmode);
      if (cmd == "cells") return cmd_cells(a, in, out, jmode);
      if (cmd == "cellrep") return cmd_cellrep(a, in, out, jmode);
      if (cmd == "two-hom") return cmd_two_hom(a, in, out, jmode);
      if (cmd == "cone") return cmd_cone(a, in, out, jmode);
      if (cmd == "tensor-h") return cmd_tensor_h(a, in, out, jmode);
      if (cmd == "fantastic") return cmd_fantastic(a, in, out, jmode);
      return cmd_example(a, out);
    };
    return dispatch();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n\n" << usage_text();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pdgcat
