#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "raagsep/bench.hpp"
#include "raagsep/completion.hpp"
#include "raagsep/cube_complex.hpp"
#include "raagsep/errors.hpp"
#include "raagsep/graph.hpp"
#include "raagsep/separation.hpp"
#include "raagsep/words.hpp"

namespace raagsep {

using nlohmann::json;

inline void require_schema(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != 1)
    throw ParseError(std::string(what) + ": missing or unsupported schema tag");
}

inline json graph_to_json(const DefiningGraph& g) {
  json j{{"schema", 1}};
  j["generators"] = json::array();
  for (int i = 0; i < g.size(); ++i) j["generators"].push_back(g.name(i));
  j["edges"] = json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({g.name(u), g.name(v)});
  return j;
}

inline DefiningGraph json_to_graph(const json& j) {
  require_schema(j, "graph");
  std::vector<std::string> names = j.at("generators").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 2) throw ParseError("graph edge is not a pair");
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return DefiningGraph(std::move(names), edges);
}

// Accepts both the plain text format and the JSON object form.
inline DefiningGraph parse_graph_any(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return json_to_graph(json::parse(text));
    break;
  }
  return parse_graph(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline DefiningGraph load_graph_file(const std::string& path) {
  return parse_graph_any(read_file(path));
}

inline json complex_to_json(const DefiningGraph& g, const CubeComplex2& c) {
  json j{{"schema", 1}};
  j["vertices"] = c.num_vertices();
  j["basepoint"] = c.basepoint();
  j["edges"] = json::array();
  for (const Edge& e : c.edges())
    j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"label", g.name(e.label)}});
  j["squares"] = json::array();
  for (const Square& s : c.squares())
    j["squares"].push_back({{"lx", g.name(s.lx)},
                            {"ly", g.name(s.ly)},
                            {"corners", s.corners},
                            {"edges", s.edges}});
  return j;
}

inline CubeComplex2 json_to_complex(const DefiningGraph& g, const json& j) {
  require_schema(j, "complex");
  CubeComplex2 c(j.at("vertices").get<int>(), j.at("basepoint").get<int>());
  for (const auto& e : j.value("edges", json::array())) {
    const int label = g.index(e.at("label").get<std::string>());
    if (label < 0) throw ParseError("edge label is not a generator");
    c.add_edge(e.at("src").get<int>(), e.at("dst").get<int>(), label);
  }
  for (const auto& s : j.value("squares", json::array())) {
    Square sq;
    sq.lx = g.index(s.at("lx").get<std::string>());
    sq.ly = g.index(s.at("ly").get<std::string>());
    if (sq.lx < 0 || sq.ly < 0) throw ParseError("square label is not a generator");
    auto cs = s.at("corners").get<std::vector<int>>();
    auto es = s.at("edges").get<std::vector<int>>();
    if (cs.size() != 4 || es.size() != 4) throw ParseError("square needs 4 corners and 4 edges");
    std::copy(cs.begin(), cs.end(), sq.corners.begin());
    std::copy(es.begin(), es.end(), sq.edges.begin());
    c.add_square(sq);
  }
  c.validate(g);
  return c;
}

inline json ledger_to_json(const DefiningGraph& g, const CompletionLedger& l) {
  json j{{"schema", 1}};
  j["square_fills"] = l.square_fills;
  j["steps"] = json::array();
  for (const LedgerStep& s : l.steps)
    j["steps"].push_back({{"case", s.case_tag},
                          {"label", g.name(s.label)},
                          {"k", s.k},
                          {"h", format_word(g, s.h)},
                          {"vertices", s.vertices},
                          {"edges", s.created_edges}});
  return j;
}

inline CompletionLedger json_to_ledger(const DefiningGraph& g, const json& j) {
  require_schema(j, "ledger");
  CompletionLedger l;
  l.square_fills = j.at("square_fills").get<int>();
  for (const auto& s : j.value("steps", json::array())) {
    LedgerStep step;
    step.case_tag = s.at("case").get<int>();
    step.label = g.index(s.at("label").get<std::string>());
    if (step.label < 0) throw ParseError("ledger step label is not a generator");
    step.k = s.at("k").get<int>();
    step.h = parse_word(g, s.at("h").get<std::string>());
    step.vertices = s.at("vertices").get<std::vector<int>>();
    step.created_edges = s.at("edges").get<std::vector<int>>();
    l.steps.push_back(std::move(step));
  }
  return l;
}

inline json certificate_to_json(const DefiningGraph& g, const std::vector<Word>& gens,
                                const Word& w, const SeparationCertificate& cert) {
  json j{{"schema", 1}};
  j["graph"] = graph_to_json(g);
  j["generators"] = json::array();
  for (const Word& h : gens) j["generators"].push_back(format_word(g, h));
  j["word"] = format_word(g, w);
  j["kind"] = cert.kind == CertKind::Permutation ? "permutation" : "mod-p";
  j["degree"] = cert.degree;
  if (cert.kind == CertKind::ModP) {
    j["p"] = cert.p;
    j["witness"] = {{"z", cert.wit.z.str()}, {"row", cert.wit.row}, {"col", cert.wit.col}};
  }
  j["size_bound"] = cert.size_bound.str();
  j["log_size_bound"] = log_bigint(cert.size_bound);
  j["normal_core_bound"] = normal_core_bound(cert).str();
  return j;
}

struct ParsedCertificate {
  DefiningGraph graph;
  std::vector<Word> gens;
  Word word;
  SeparationCertificate cert;
};

inline ParsedCertificate json_to_certificate(const json& j) {
  require_schema(j, "certificate");
  ParsedCertificate p;
  p.graph = json_to_graph(j.at("graph"));
  for (const auto& s : j.at("generators"))
    p.gens.push_back(parse_word(p.graph, s.get<std::string>()));
  p.word = parse_word(p.graph, j.at("word").get<std::string>());
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "permutation") p.cert.kind = CertKind::Permutation;
  else if (kind == "mod-p") p.cert.kind = CertKind::ModP;
  else throw ParseError("unknown certificate kind: " + kind);
  p.cert.degree = j.at("degree").get<int>();
  if (p.cert.kind == CertKind::ModP) {
    p.cert.p = j.at("p").get<long long>();
    const auto& w = j.at("witness");
    p.cert.wit.z = BigInt(w.at("z").get<std::string>());
    p.cert.wit.row = w.at("row").get<int>();
    p.cert.wit.col = w.at("col").get<int>();
  }
  p.cert.size_bound = BigInt(j.at("size_bound").get<std::string>());
  return p;
}

inline json family_to_json(const GrowthFamily& f) {
  json j{{"schema", 1}};
  j["name"] = f.name;
  j["graph"] = graph_to_json(f.graph);
  j["generators"] = json::array();
  for (const Word& h : f.gens) j["generators"].push_back(format_word(f.graph, h));
  j["prefix"] = format_word(f.graph, f.prefix);
  j["base"] = format_word(f.graph, f.base);
  j["suffix"] = format_word(f.graph, f.suffix);
  j["m_min"] = f.m_min;
  j["m_max"] = f.m_max;
  return j;
}

inline GrowthFamily json_to_family(const json& j) {
  require_schema(j, "family");
  GrowthFamily f;
  f.name = j.at("name").get<std::string>();
  f.graph = json_to_graph(j.at("graph"));
  for (const auto& s : j.at("generators"))
    f.gens.push_back(parse_word(f.graph, s.get<std::string>()));
  f.prefix = parse_word(f.graph, j.value("prefix", ""));
  f.base = parse_word(f.graph, j.at("base").get<std::string>());
  f.suffix = parse_word(f.graph, j.value("suffix", ""));
  f.m_min = j.value("m_min", 1);
  f.m_max = j.value("m_max", 12);
  return f;
}

}  // namespace raagsep
