#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "raagsep/raagsep.hpp"

namespace {

using namespace raagsep;

struct CommonArgs {
  std::string graph_file;
  std::vector<std::string> gen_words;
  int cap = 0;  // 0 = unset, fall back to env then default
  std::string schedule = "fold-fill-spread";
  int twist = 2;
};

FoldingConfig folding_config(const CommonArgs& a) {
  FoldingConfig cfg;
  cfg.schedule = a.schedule;
  if (a.cap > 0) {
    cfg.max_cells = a.cap;
  } else if (const char* env = std::getenv("RAAGSEP_CAP")) {
    const int v = std::atoi(env);
    if (v <= 0) throw ParseError("RAAGSEP_CAP must be a positive integer");
    cfg.max_cells = v;
  }
  return cfg;
}

DefiningGraph load_graph(const CommonArgs& a) {
  if (a.graph_file.empty()) throw ParseError("--graph is required");
  return load_graph_file(a.graph_file);
}

std::vector<Word> parse_gens(const DefiningGraph& g, const CommonArgs& a) {
  if (a.gen_words.empty()) throw ParseError("at least one --gen is required");
  std::vector<Word> out;
  for (const std::string& s : a.gen_words) out.push_back(parse_word(g, s));
  return out;
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write file: " + path);
  f << text;
}

json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

void add_common(CLI::App* cmd, CommonArgs& a, bool with_gens = true) {
  cmd->add_option("--graph", a.graph_file, "defining graph file (text or json)")
      ->required();
  if (with_gens)
    cmd->add_option("--gen", a.gen_words, "subgroup generator word, repeatable")
        ->required();
  cmd->add_option("--cap", a.cap, "cell budget for folding (env RAAGSEP_CAP)");
  cmd->add_option("--schedule", a.schedule,
                  "fold-fill-spread (default) or fold-spread-fill");
}

int run(int argc, char** argv) {
  CLI::App app{"membership and finite-quotient separation for word-quasiconvex "
               "subgroups of right-angled Artin groups"};
  app.require_subcommand(1);

  CommonArgs a;
  std::string word_arg, out_file, cert_file, family_file, what = "core";
  bool as_dot = false, do_fit = false;

  auto* fold = app.add_subcommand("fold", "fold generators into the compact core");
  add_common(fold, a);
  fold->add_flag("--dot", as_dot, "emit graphviz instead of json");
  fold->add_option("-o,--out", out_file, "output file (default stdout)");

  auto* complete = app.add_subcommand("complete", "canonically complete the core to a cover");
  add_common(complete, a);
  complete->add_option("-o,--out", out_file, "output file (default stdout)");

  auto* member = app.add_subcommand("member", "decide membership of a word");
  add_common(member, a);
  member->add_option("--word", word_arg, "word to test, e.g. \"a b^-1\"")->required();
  member->add_option("--twist", a.twist, "twist exponent for the pair (default 2)");

  auto* rep = app.add_subcommand("rep", "evaluate the plain/twisted pair on a word");
  add_common(rep, a);
  rep->add_option("--word", word_arg, "word to evaluate")->required();
  rep->add_option("--twist", a.twist, "twist exponent (default 2)");
  rep->add_option("-o,--out", out_file, "output file (default stdout)");

  auto* sep = app.add_subcommand("separate", "produce a separation certificate");
  add_common(sep, a);
  sep->add_option("--word", word_arg, "word to separate from the subgroup")->required();
  sep->add_option("--twist", a.twist, "twist exponent (default 2)");
  sep->add_option("-o,--out", out_file, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "re-derive and check a certificate");
  verify->add_option("--cert", cert_file, "certificate json file")->required();
  verify->add_option("--cap", a.cap, "cell budget for folding (env RAAGSEP_CAP)");

  auto* bench = app.add_subcommand("bench", "run a growth family");
  bench->add_option("--family", family_file, "family json file")->required();
  bench->add_option("--cap", a.cap, "cell budget for folding (env RAAGSEP_CAP)");
  bench->add_option("-o,--out", out_file, "csv output file (default stdout)");
  bench->add_flag("--fit", do_fit, "print the fitted exponent as json");

  auto* dot = app.add_subcommand("export-dot", "graphviz export of a complex");
  add_common(dot, a, false);
  dot->add_option("--gen", a.gen_words, "subgroup generator word, repeatable");
  dot->add_option("--what", what, "core (default), cover, or salvetti");
  dot->add_option("-o,--out", out_file, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (fold->parsed()) {
    const DefiningGraph g = load_graph(a);
    const CubeComplex2 core = build_subgroup_complex(g, parse_gens(g, a), folding_config(a));
    write_out(out_file, as_dot ? export_dot(g, core)
                               : complex_to_json(g, core).dump(2));
    return 0;
  }

  if (complete->parsed()) {
    const DefiningGraph g = load_graph(a);
    const CubeComplex2 core = build_subgroup_complex(g, parse_gens(g, a), folding_config(a));
    auto [cover, ledger] = canonical_complete(g, core);
    json j{{"schema", 1}};
    j["core"] = complex_to_json(g, core);
    j["cover"] = complex_to_json(g, cover);
    j["ledger"] = ledger_to_json(g, ledger);
    j["index"] = index_of_completion(cover);
    j["chain"] = json::array();
    for (ChainKind k : hnn_chain(ledger, g, cover))
      j["chain"].push_back(k == ChainKind::Hnn ? "hnn" : "free-product");
    j["stable_letters"] = json::array();
    for (const LedgerStep& s : ledger.steps)
      j["stable_letters"].push_back(format_word(g, stable_letter(g, s)));
    write_out(out_file, j.dump(2));
    return 0;
  }

  if (member->parsed()) {
    const DefiningGraph g = load_graph(a);
    RepresentationBundle rb(g, parse_gens(g, a), folding_config(a), a.twist);
    const Word w = parse_word(g, word_arg);
    const auto z = rb.zariski_membership_test(w);
    json j{{"schema", 1}};
    j["word"] = format_word(g, w);
    j["normal_form"] = format_word(g, normal_form(g, w));
    j["in_h"] = rb.in_h(w);
    j["in_k"] = z.in_k;
    j["zariski_member"] = z.member();
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (rep->parsed()) {
    const DefiningGraph g = load_graph(a);
    RepresentationBundle rb(g, parse_gens(g, a), folding_config(a), a.twist);
    const Word w = parse_word(g, word_arg);
    json j{{"schema", 1}};
    j["word"] = format_word(g, w);
    j["dim"] = rb.dim();
    j["rho0"] = matrix_to_json(rb.rho0(w));
    if (rb.in_k(w)) {
      j["rho_twisted"] = matrix_to_json(rb.rho_twisted(w));
      j["pair_equal"] = rb.rho0(w) == rb.rho_twisted(w);
      json items = json::array();
      for (const HnnItem& it : rb.rewrite(w)) {
        if (it.is_t)
          items.push_back({{"t", it.step}, {"sign", it.sign}});
        else
          items.push_back({{"syllable", format_word(g, it.syl)}});
      }
      j["rewrite"] = std::move(items);
    } else {
      j["in_k"] = false;
    }
    write_out(out_file, j.dump(2));
    return 0;
  }

  if (sep->parsed()) {
    const DefiningGraph g = load_graph(a);
    const std::vector<Word> gens = parse_gens(g, a);
    RepresentationBundle rb(g, gens, folding_config(a), a.twist);
    const Word w = parse_word(g, word_arg);
    const SeparationCertificate cert = separate(rb, w);
    write_out(out_file, certificate_to_json(g, gens, w, cert).dump(2));
    return 0;
  }

  if (verify->parsed()) {
    const ParsedCertificate pc = json_to_certificate(json::parse(read_file(cert_file)));
    RepresentationBundle rb(pc.graph, pc.gens, folding_config(a));
    verify_certificate(rb, pc.word, pc.cert);
    std::cout << "certificate verified: OK\n";
    return 0;
  }

  if (bench->parsed()) {
    const GrowthFamily fam = json_to_family(json::parse(read_file(family_file)));
    const auto recs = run_family(fam, folding_config(a));
    if (do_fit) {
      const ExponentFit fit = fit_exponent(recs);
      json j{{"schema", 1},
             {"family", fam.name},
             {"records", recs.size()},
             {"slope", fit.slope},
             {"intercept", fit.intercept},
             {"max_residual", fit.max_residual},
             {"half_slope_lo", fit.half_slope_lo},
             {"half_slope_hi", fit.half_slope_hi},
             {"stable", fit.stable}};
      if (!out_file.empty()) write_out(out_file, emit_csv(recs));
      std::cout << j.dump(2) << "\n";
    } else {
      write_out(out_file, emit_csv(recs));
    }
    return 0;
  }

  if (dot->parsed()) {
    const DefiningGraph g = load_graph(a);
    if (what == "salvetti") {
      write_out(out_file, export_dot(g, salvetti(g), "salvetti"));
      return 0;
    }
    const CubeComplex2 core = build_subgroup_complex(g, parse_gens(g, a), folding_config(a));
    if (what == "core") {
      write_out(out_file, export_dot(g, core, "core"));
    } else if (what == "cover") {
      auto [cover, ledger] = canonical_complete(g, core);
      (void)ledger;
      write_out(out_file, export_dot(g, cover, "cover"));
    } else {
      throw ParseError("--what must be core, cover, or salvetti");
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const raagsep::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
