// Command-line front end: run machines, check monoid properties, export graphs.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sstkit/equiv.hpp"
#include "sstkit/error.hpp"
#include "sstkit/flow_monoid.hpp"
#include "sstkit/fo_logic.hpp"
#include "sstkit/fo_transducer.hpp"
#include "sstkit/lookahead.hpp"
#include "sstkit/output_graph.hpp"

using namespace sstkit;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* yes_no(bool b) { return b ? "yes" : "NO"; }

std::vector<std::string> input_tokens(const Machine& m, const std::string& text) {
  return input_alphabet(m).names(input_alphabet(m).parse_word(text));
}

int cmd_run(const std::string& file, const std::string& word) {
  Machine m = parse_machine(read_file(file));
  auto out = transform(m, input_tokens(m, word));
  if (!out) {
    std::cout << "DOMAIN-MISS\n";
    return kNegative;
  }
  std::cout << render_tokens(*out) << "\n";
  return kOk;
}

std::string word_text(const Alphabet& a, const Word& w) { return w.empty() ? "ε" : a.render(w); }

void report_flow_checks(const Sst& t, std::size_t cap) {
  auto ob = check_one_bounded(t, cap);
  auto ap = check_aperiodic(t, cap);
  const auto labels = matrix_labels(t);
  std::cout << "states: " << t.num_states() << "  variables: " << t.num_vars() << "\n";
  std::cout << "monoid size: " << ob.monoid_size << (ob.exact ? "" : " (truncated at cap)") << "\n";
  std::cout << "1-bounded: " << yes_no(ob.one_bounded);
  if (!ob.one_bounded) {
    std::cout << " (witness " << word_text(t.input, *ob.witness) << ", entry " << labels[ob.from] << " -> "
              << labels[ob.to] << ")";
  }
  std::cout << "\n";
  std::cout << "aperiodic: " << yes_no(ap.aperiodic);
  if (!ap.aperiodic) {
    std::cout << " (witness " << word_text(t.input, *ap.witness) << ", index " << ap.witness_index << ", period "
              << ap.witness_period << ")";
  } else {
    std::cout << " (x^" << ap.idempotent_bound << " = x^" << ap.idempotent_bound + 1 << " for every element)";
  }
  if (ap.saturated_abstraction) std::cout << " [over saturated counts]";
  std::cout << "\n";
  if (!ob.one_bounded) {
    std::cout << "nontrivial cycle: skipped (needs a 1-bounded machine)\n";
    return;
  }
  auto cy = nontrivial_cycle_check(t, cap);
  std::cout << "nontrivial cycle: " << (cy.found ? "yes" : "no");
  if (cy.found) std::cout << " (u = " << word_text(t.input, cy.word) << ", node " << cy.node_label << ", r = " << cy.r << ")";
  std::cout << "\n";
  std::cout << "verdicts agree: " << yes_no(cy.found != ap.aperiodic) << "\n";
}

int cmd_check(const std::string& file, std::size_t cap) {
  Machine m = parse_machine(read_file(file));
  if (const auto* t = std::get_if<Sst>(&m)) {
    for (const auto& w : t->lint()) std::cout << "warning: " << w << "\n";
    report_flow_checks(*t, cap);
    return kOk;
  }
  if (const auto* t = std::get_if<SstLa>(&m)) {
    auto mx = mutual_exclusive_check(*t);
    std::cout << "mutually exclusive: " << yes_no(mx.ok);
    if (!mx.ok) {
      std::cout << " (state " << t->base.states[mx.state] << ", letter " << t->base.input.name(mx.letter)
                << ", guards " << t->la.states[mx.guard1] << " and " << t->la.states[mx.guard2] << ", witness "
                << word_text(t->base.input, mx.witness) << ")";
    }
    std::cout << "\n";
    auto useful = useful_configs(*t);
    std::cout << "useful configurations: " << useful.size() << "\n";
    auto mon = la_monoid(*t, cap);
    std::optional<std::size_t> init;
    for (std::size_t c = 0; c < useful.size(); ++c) {
      if (useful[c] == Config{t->base.initial, {}}) init = c;
    }
    auto ob = one_bounded_of(mon, t->base.num_vars(), init);
    auto ap = check_aperiodic(mon);
    std::cout << "config monoid size: " << mon.size() << (mon.truncated ? " (truncated at cap)" : "") << "\n";
    std::cout << "1-bounded: " << yes_no(ob.one_bounded) << "\n";
    std::cout << "aperiodic: " << yes_no(ap.aperiodic);
    if (!ap.aperiodic) std::cout << " (witness " << word_text(t->base.input, *ap.witness) << ")";
    std::cout << "\n";
    return kOk;
  }
  throw ValidationError("check expects an .sst or .sstla machine");
}

int cmd_graph(const std::string& file, const std::string& word, bool show_useless, bool with_readout) {
  Machine m = parse_machine(read_file(file));
  if (const auto* f = std::get_if<FoTransducer>(&m)) {
    auto st = output_structure(*f, f->input.parse_word(word));
    if (!st) {
      std::cerr << "DOMAIN-MISS\n";
      return kNegative;
    }
    std::cout << to_dot(*f, *st);
    return kOk;
  }
  const auto* t = std::get_if<Sst>(&m);
  if (!t) throw ValidationError("graph expects an .sst or .fot machine");
  Word s = t->input.parse_word(word);
  if (!output(*t, s)) {
    std::cerr << "DOMAIN-MISS\n";
    return kNegative;
  }
  auto g = build_graph(*t, s, GraphOptions{show_useless});
  std::cout << to_dot(*t, g);
  if (with_readout) std::cout << "# readout: " << t->output.render(readout(g)) << "\n";
  return kOk;
}

int cmd_equiv(const std::string& f1, const std::string& f2, std::size_t max_len) {
  Machine a = parse_machine(read_file(f1));
  Machine b = parse_machine(read_file(f2));
  auto v = equiv_bounded(a, b, max_len);
  if (v.equal) {
    std::cout << "equal (" << v.words_checked << " inputs up to length " << max_len << ")\n";
    return kOk;
  }
  auto show = [](const std::optional<std::vector<std::string>>& o) {
    return o ? "\"" + render_tokens(*o) + "\"" : std::string("DOMAIN-MISS");
  };
  std::cout << "different on " << word_text(v.alphabet, *v.counterexample) << ": " << show(v.left) << " vs "
            << show(v.right) << "\n";
  return kNegative;
}

StringModel model_of(const std::string& text) {
  StringModel m;
  if (text.find_first_of(" \t") != std::string::npos) {
    std::istringstream in(text);
    for (std::string tok; in >> tok;) m.labels.push_back(tok);
  } else {
    for (char c : text) m.labels.emplace_back(1, c);
  }
  return m;
}

int cmd_ktype(std::size_t k, const std::string& s1, const std::string& s2) {
  std::cout << (equiv_k(model_of(s1), model_of(s2), k) ? "equivalent" : "inequivalent") << "\n";
  return kOk;
}

int cmd_heads(const std::string& file, const std::string& word, std::size_t i) {
  Machine m = parse_machine(read_file(file));
  const auto* t = std::get_if<FoTransducer>(&m);
  if (!t) throw ValidationError("heads expects an .fot transducer");
  Word s = t->input.parse_word(word);
  if (!output_structure(*t, s)) {
    std::cout << "DOMAIN-MISS\n";
    return kNegative;
  }
  std::cout << format_report(*t, heads_tails(*t, s, i));
  std::size_t k = qrank_fot(*t);
  std::cout << "unique addresses (k = " << k << "): " << yes_no(verify_head_uniqueness(*t, s, i, k)) << "\n";
  return kOk;
}

int cmd_la_eliminate(const std::string& in, const std::string& out) {
  SstLa t = parse_sstla(read_file(in));
  auto mx = mutual_exclusive_check(t);
  if (!mx.ok) throw ValidationError("lookahead guards are not mutually exclusive");
  SstLa n = normalize_star(t);
  Sst e = eliminate_lookahead(n);
  std::ofstream os(out);
  if (!os) throw ValidationError("cannot write `" + out + "`");
  os << write_sst(e);
  std::cout << "wrote " << out << ": " << e.num_states() << " states, " << e.num_vars() << " variables"
            << (n.base.num_states() != t.base.num_states() ? " (after state splitting)" : "") << "\n";
  return kOk;
}

nlohmann::json matrix_json(const FlowMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.dim; ++r) {
    std::string row;
    for (std::size_t c = 0; c < m.dim; ++c) row += flow_char(m.at(r, c));
    rows.push_back(row);
  }
  return rows;
}

int cmd_monoid(const std::string& file, std::size_t cap, const std::string& format) {
  Machine m = parse_machine(read_file(file));
  const auto* t = std::get_if<Sst>(&m);
  if (!t) throw ValidationError("monoid expects an .sst machine");
  auto mon = enumerate_monoid(*t, cap);
  auto labels = matrix_labels(*t);
  if (format == "json") {
    nlohmann::json j;
    j["labels"] = labels;
    j["size"] = mon.size();
    j["truncated"] = mon.truncated;
    j["elements"] = nlohmann::json::array();
    for (std::size_t i = 0; i < mon.size(); ++i) {
      j["elements"].push_back({{"word", t->input.render(mon.representative[i])}, {"matrix", matrix_json(mon.elements[i])}});
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "monoid size: " << mon.size() << (mon.truncated ? " (truncated at cap)" : "") << "\n";
  for (std::size_t i = 0; i < mon.size(); ++i) {
    std::cout << "\nM[" << word_text(t->input, mon.representative[i]) << "]\n" << format_matrix(mon.elements[i], labels);
  }
  return kOk;
}

int cmd_pathcheck(const std::string& file, const std::string& word) {
  Machine m = parse_machine(read_file(file));
  const auto* t = std::get_if<Sst>(&m);
  if (!t) throw ValidationError("pathcheck expects an .sst machine");
  Word s = t->input.parse_word(word);
  if (!output(*t, s)) {
    std::cout << "DOMAIN-MISS\n";
    return kNegative;
  }
  auto v = path_characterization_check(*t, s);
  if (v.ok) {
    std::cout << "ok (" << v.pairs_checked << " node pairs)\n";
    return kOk;
  }
  std::cout << "counterexample: " << v.from << " -> " << v.to << " expected " << (v.expected ? "path" : "no path")
            << ", graph has " << (v.reachable ? "a path" : "no path") << "\n";
  return kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming string transducer toolkit"};
  app.require_subcommand(1);
  int status = kOk;

  std::string file, file2, word, word2, format = "text";
  std::size_t cap = kDefaultMonoidCap, max_len = 6, k = 0, position = 1;
  bool show_useless = false, with_readout = false;

  auto* run = app.add_subcommand("run", "Print the output of a machine on an input word");
  run->add_option("file", file, "Machine file (.sst, .sstla or .fot)")->required();
  run->add_option("word", word, "Input word (\"\" for the empty word)")->required();
  run->callback([&] { status = cmd_run(file, word); });

  auto* check = app.add_subcommand("check", "Report 1-boundedness and aperiodicity");
  check->add_option("file", file)->required();
  check->add_option("--cap", cap, "Monoid enumeration cap");
  check->callback([&] { status = cmd_check(file, cap); });

  auto* graph = app.add_subcommand("graph", "Emit the output graph as DOT");
  graph->add_option("file", file)->required();
  graph->add_option("word", word)->required();
  graph->add_flag("--show-useless", show_useless, "Include useless nodes, dashed");
  graph->add_flag("--readout", with_readout, "Append the readout word as a comment");
  graph->callback([&] { status = cmd_graph(file, word, show_useless, with_readout); });

  auto* equiv = app.add_subcommand("equiv", "Compare two machines on all short inputs");
  equiv->add_option("first", file)->required();
  equiv->add_option("second", file2)->required();
  equiv->add_option("--max-len", max_len);
  equiv->callback([&] { status = cmd_equiv(file, file2, max_len); });

  auto* ktype = app.add_subcommand("ktype", "Decide k-type equivalence of two words");
  ktype->add_option("k", k)->required();
  ktype->add_option("s1", word)->required();
  ktype->add_option("s2", word2)->required();
  ktype->callback([&] { status = cmd_ktype(k, word, word2); });

  auto* heads = app.add_subcommand("heads", "List i-heads and i-tails of an FO transducer");
  heads->add_option("file", file)->required();
  heads->add_option("word", word)->required();
  heads->add_option("i", position)->required();
  heads->callback([&] { status = cmd_heads(file, word, position); });

  auto* elim = app.add_subcommand("la-eliminate", "Remove lookahead from an .sstla machine");
  elim->add_option("input", file)->required();
  elim->add_option("output", file2)->required();
  elim->callback([&] { status = cmd_la_eliminate(file, file2); });

  auto* monoid = app.add_subcommand("monoid", "Enumerate the transition monoid");
  monoid->add_option("file", file)->required();
  monoid->add_option("--cap", cap);
  monoid->add_option("--report", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  monoid->callback([&] { status = cmd_monoid(file, cap, format); });

  auto* pathcheck = app.add_subcommand("pathcheck", "Compare graph reachability with flow conditions");
  pathcheck->add_option("file", file)->required();
  pathcheck->add_option("word", word)->required();
  pathcheck->callback([&] { status = cmd_pathcheck(file, word); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return status;
}
