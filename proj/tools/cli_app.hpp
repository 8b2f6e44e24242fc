#pragma once

#include "maghom/maghom.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace maghom::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, validation = 1, budget = 2, internal = 3 };

// Shared settings. Budgets fall back to MAGHOM_BUDGET / MAGHOM_BASIS_CAP.
struct RunConfig {
  std::string format = "auto";
  unsigned threads = 1;
  std::size_t basis_cap = HomologyOptions{}.basis_cap;
  std::uint64_t search_budget = 10'000'000;

  HomologyOptions homology() const { return {basis_cap, threads}; }
};

inline GraphFormat parse_format(const std::string& name) {
  if (name == "edge-list") return GraphFormat::edge_list;
  if (name == "graph6") return GraphFormat::graph6;
  return GraphFormat::automatic;
}

// A file path, "-" for stdin, or a generator spec gen:K5, gen:C6, gen:P4,
// gen:S3 (star with three leaves).
inline Graph load_graph(const std::string& spec, const RunConfig& cfg, std::istream& in) {
  if (spec.rfind("gen:", 0) == 0) {
    const std::string body = spec.substr(4);
    int n = 0;
    if (body.size() < 2) throw ParseError("bad generator spec '" + spec + "'");
    try {
      std::size_t used = 0;
      n = std::stoi(body.substr(1), &used);
      if (used + 1 != body.size()) throw std::invalid_argument(body);
    } catch (const std::exception&) {
      throw ParseError("bad generator spec '" + spec + "'");
    }
    if (n < 1) throw ValidationError("generator size must be positive");
    switch (body[0]) {
      case 'K': return complete_graph(n);
      case 'C': return cycle_graph(n);
      case 'P': return path_graph(n);
      case 'S': return star_graph(n);
      default: throw ParseError("unknown generator '" + body.substr(0, 1) + "'");
    }
  }
  if (spec == "-") {
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str(), parse_format(cfg.format));
  }
  return read_graph_file(spec, parse_format(cfg.format));
}

inline void require_vertex(const Graph& g, Vertex v, const char* name) {
  if (v < 1 || v > g.order())
    throw ValidationError(std::string("--") + name + " must be a vertex in 1.." + std::to_string(g.order()));
}

inline Json group_json(const HomologyGroup& h) {
  Json t = Json::array();
  for (const auto& d : h.torsion) t.push_back(d.str());
  return Json{{"rank", h.rank}, {"torsion", t}};
}

inline Json strings(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

inline std::string join(const std::vector<Integer>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].str();
  return s;
}

inline std::string tuple_text(const auto& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? " " : "") + std::to_string(t[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_magnitude(const Graph& g, std::size_t order, bool json, std::ostream& out) {
  RatFunc m = magnitude_rational(g);
  SeriesCoeffs series = m.taylor(order);
  if (magnitude_series(g, order) != series)
    throw InternalError("series from the rational function disagrees with the direct expansion");
  if (json) {
    out << Json{{"num", m.num().to_string()}, {"den", m.den().to_string()}, {"series", strings(series.coeffs)}}.dump(2)
        << '\n';
  } else {
    out << "magnitude: " << m.to_string() << '\n';
    out << "series: " << join(series.coeffs) << '\n';
  }
  return ok;
}

inline std::string table_text(const MHTable& t) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"l\\k"};
  for (int k = 0; k <= t.lmax; ++k) header.push_back(std::to_string(k));
  cells.push_back(header);
  for (int ell = 0; ell <= t.lmax; ++ell) {
    std::vector<std::string> row{std::to_string(ell)};
    for (int k = 0; k <= t.lmax; ++k) {
      const auto& h = t.at(k, ell);
      row.push_back(k > ell ? "" : (h.is_zero() ? "." : h.to_string()));
    }
    cells.push_back(row);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c];
      cell.resize(width[c] + (c + 1 < row.size() ? 2 : 0), ' ');
      line += cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  return out.str();
}

inline int cmd_mh_table(const Graph& g, int lmax, const std::vector<int>& ab, const std::string& mode,
                        const RunConfig& cfg, std::ostream& out) {
  if (lmax < 0) throw ValidationError("--lmax must be non-negative");
  MHTable table;
  table.lmax = lmax;
  if (ab.empty()) {
    table = mh_table(g, lmax, cfg.homology());
    // The table and the magnitude series must agree through the Euler
    // characteristic; a mismatch means a bug.
    auto series = magnitude_rational(g).taylor(static_cast<std::size_t>(lmax));
    for (int ell = 0; ell <= lmax; ++ell) {
      Integer alt = 0;
      for (int k = 0; k <= ell; ++k) alt += (k % 2 ? -1 : 1) * Integer(table.at(k, ell).rank);
      if (alt != series.coeffs[static_cast<std::size_t>(ell)])
        throw InternalError("Euler characteristic check failed at l = " + std::to_string(ell));
    }
  } else {
    require_vertex(g, ab[0], "ab");
    require_vertex(g, ab[1], "ab");
    for (int ell = 0; ell <= lmax; ++ell) {
      auto groups = mh_ab_all(g, ab[0], ab[1], ell, cfg.homology());
      for (int k = 0; k <= ell; ++k) table.entries[{k, ell}] = groups[static_cast<std::size_t>(k)];
    }
  }
  if (mode == "csv") {
    out << format_table_csv(table);
  } else if (mode == "json") {
    Json entries = Json::array();
    for (const auto& [key, h] : table.entries) {
      if (h.is_zero()) continue;
      Json e{{"k", key.first}, {"l", key.second}};
      e.update(group_json(h));
      entries.push_back(e);
    }
    Json doc{{"lmax", lmax}, {"ab", ab.empty() ? Json(nullptr) : Json(ab)}, {"entries", entries}};
    out << doc.dump(2) << '\n';
  } else {
    out << table_text(table);
  }
  return ok;
}

inline int cmd_ai_complex(const Graph& g, Vertex a, Vertex b, int ell, bool list_faces, bool homology, bool json,
                          const RunConfig& cfg, std::ostream& out) {
  require_vertex(g, a, "a");
  require_vertex(g, b, "b");
  auto pair = build_pair(g, a, b, ell);
  if (auto bad = check_pair_invariants(g, pair)) throw InternalError(*bad);
  const std::size_t kprime = pair.subcomplex().size();
  std::optional<CorrespondenceReport> corr;
  std::vector<HomologyGroup> rel;
  if (homology) {
    rel = relative_homology(pair);
    corr = verify_ai_correspondence(g, a, b, ell, cfg.homology());
  }
  if (json) {
    Json doc{{"a", a}, {"b", b}, {"ell", ell}, {"f_vector", pair.f_vector()}, {"subcomplex_size", kprime},
             {"relative_cells", pair.cells.size() - kprime}};
    if (list_faces) {
      Json faces = Json::array();
      for (std::size_t i = 0; i < pair.cells.size(); ++i) {
        Json elems = Json::array();
        for (const auto& e : pair.cells[i].elements) elems.push_back({e.vertex, e.position});
        faces.push_back({{"simplex", elems}, {"in_subcomplex", static_cast<bool>(pair.in_subcomplex[i])}});
      }
      doc["faces"] = faces;
    }
    if (homology) {
      Json h = Json::array();
      for (const auto& grp : rel) h.push_back(group_json(grp));
      doc["relative_homology"] = h;
      Json rows = Json::array();
      for (const auto& r : corr->rows)
        rows.push_back({{"k", r.k}, {"magnitude", group_json(r.magnitude_side)},
                        {"complex", group_json(r.complex_side)}, {"pass", r.pass}});
      doc["correspondence"] = {{"pass", corr->pass}, {"rows", rows}};
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "K: " << pair.cells.size() << " simplices, f-vector";
    for (auto f : pair.f_vector()) out << ' ' << f;
    out << "\nK': " << kprime << " simplices\nrelative cells: " << pair.cells.size() - kprime << '\n';
    if (list_faces)
      for (std::size_t i = 0; i < pair.cells.size(); ++i)
        out << (pair.in_subcomplex[i] ? "K'  " : "rel ") << pair.cells[i].to_string() << '\n';
    if (homology) {
      for (std::size_t d = 0; d < rel.size(); ++d) out << "H_" << d << "(K,K') = " << rel[d].to_string() << '\n';
      for (const auto& r : corr->rows)
        out << "MH_" << r.k << " = " << r.magnitude_side.to_string() << " vs " << r.complex_side.to_string()
            << (r.pass ? "  ok" : "  MISMATCH") << '\n';
    }
  }
  if (corr && !corr->pass) throw InternalError("magnitude homology and relative homology disagree");
  return ok;
}

inline SStructure load_s(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open S-structure file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  SStructure s = parse_s(buffer.str(), g);
  auto check = verify_s_structure(g, s);
  if (!check.valid) throw ValidationError("S-structure violates (" + check.condition + "): " + check.detail);
  return s;
}

inline SStructure pawful_s(const Graph& g) { return build_pawful_S(g, default_selectors(g)); }

inline int cmd_morse(const Graph& g, Vertex a, Vertex b, int ell, const std::vector<std::string>& matching, bool report,
                     std::ostream& out) {
  require_vertex(g, a, "a");
  require_vertex(g, b, "b");
  SStructure s;
  if (matching.empty() || (matching.size() == 1 && matching[0] == "pawful")) {
    s = pawful_s(g);
  } else if (matching.size() == 2 && matching[0] == "s-file") {
    s = load_s(matching[1], g);
  } else {
    throw ValidationError("--matching expects 'pawful' or 's-file PATH'");
  }
  auto built = build_matching(g, a, b, ell, s);
  auto result = morse_rank_check(g, a, b, ell, built.poset, built.matching);
  out << "cells: " << built.poset.size() << ", pairs: " << built.matching.pairs.size()
      << ", critical: " << built.critical.size() << '\n';
  out << "morse check: " << (result.pass ? "pass" : "FAIL") << '\n';
  if (report) {
    out << "critical counts by dimension:";
    for (auto c : result.critical_counts) out << ' ' << c;
    out << '\n';
    for (std::size_t d = 0; d < result.relative_homology.size(); ++d)
      out << "H_" << d << "(K,K') = " << result.relative_homology[d].to_string() << '\n';
    for (auto c : built.critical) out << "critical " << built.poset.cells[c].to_string() << '\n';
  }
  for (const auto& d : result.diagnostics) out << "diagnostic: " << d << '\n';
  if (!result.pass) throw InternalError("constructed matching fails the Morse rank check");
  return ok;
}

inline int cmd_pawful(const Graph& g, bool json, std::ostream& out) {
  auto w = is_pawful(g);
  if (json) {
    out << Json{{"pawful", w.verdict}, {"diameter", w.diameter},
                {"violation", w.violation ? Json(*w.violation) : Json(nullptr)}}
               .dump(2)
        << '\n';
  } else {
    out << "pawful: " << (w.verdict ? "yes" : "no");
    if (w.violation) out << " (violation " << tuple_text(*w.violation) << ")";
    out << "\ndiameter: " << w.diameter << '\n';
  }
  return ok;
}

inline int cmd_s_structure(const Graph& g, const std::string& verify_path, bool search, const RunConfig& cfg,
                           std::ostream& out) {
  if (!verify_path.empty()) {
    std::ifstream in(verify_path);
    if (!in) throw ParseError("cannot open S-structure file '" + verify_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    SStructure s = parse_s(buffer.str(), g);
    auto check = verify_s_structure(g, s);
    if (!check.valid) {
      out << "valid: no (condition " << check.condition << ": " << check.detail << ")\n";
      return validation;
    }
    out << "valid: yes (" << s.f1.size() << " triples, " << s.f2.size() << " quadruples)\n";
    for (const auto& q : long_quads(g, s)) out << "far quadruple: " << tuple_text(q) << '\n';
    for (const auto& n : check.notes) out << "note: " << n << '\n';
    return ok;
  }
  if (!search) throw ValidationError("s-structure needs --verify FILE or --search");
  auto result = search_s_structure(g, cfg.search_budget);
  if (result.status == SearchStatus::exhausted) {
    out << "exhausted: none\n";
    return ok;
  }
  out << "# found after " << result.nodes << " nodes\n" << serialize_s(*result.certificate);
  return ok;
}

inline int cmd_match(const Graph& g, Vertex a, Vertex b, int ell, const std::string& s_path, bool pawful,
                     const std::string& precedence, bool json, std::ostream& out) {
  require_vertex(g, a, "a");
  require_vertex(g, b, "b");
  if (s_path.empty() == !pawful) throw ValidationError("match needs exactly one of --s FILE or --pawful");
  SStructure s = pawful ? pawful_s(g) : load_s(s_path, g);
  auto rule = precedence == "quadruple" ? TriplePrecedence::quadruple_first : TriplePrecedence::triple_first;
  auto built = build_matching(g, a, b, ell, s, rule);
  auto valid = verify_matching(built.poset, built.matching);
  auto acyclic = is_acyclic(built.poset, built.matching);
  const auto& cells = built.poset.cells;
  if (json) {
    Json pairs = Json::array();
    for (auto [l, u] : built.matching.pairs) pairs.push_back({cells[l].to_string(), cells[u].to_string()});
    Json crit = Json::array();
    for (auto c : built.critical) crit.push_back(cells[c].to_string());
    out << Json{{"valid", valid.valid}, {"acyclic", acyclic.acyclic}, {"pairs", pairs}, {"critical", crit}}.dump(2)
        << '\n';
  } else {
    out << "valid: " << (valid.valid ? "yes" : "no") << "\nacyclic: " << (acyclic.acyclic ? "yes" : "no") << '\n';
    for (auto [l, u] : built.matching.pairs) out << "pair " << cells[l].to_string() << " < " << cells[u].to_string() << '\n';
    for (auto c : built.critical) out << "critical " << cells[c].to_string() << '\n';
  }
  if (!valid.valid || !acyclic.acyclic) throw InternalError("constructed matching is not a valid acyclic matching");
  return ok;
}

// One JSON record per graph6 line; unparseable lines are skipped with a
// warning on the error stream.
inline int cmd_classify(std::istream& input, int lmax, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  for (std::size_t no = 1; std::getline(input, line); ++no) {
    auto body = std::string(detail::trim(line));
    if (!body.empty() && body[0] != '#') lines.emplace_back(no, body);
  }
  struct Outcome {
    std::optional<Json> record;
    std::string warning;
  };
  auto outcomes = parallel_map(lines.size(), cfg.threads, [&](std::size_t i) {
    const auto& [no, text] = lines[i];
    Outcome o;
    try {
      Graph g = parse_graph6(text);
      auto paw = is_pawful(g);
      Json r{{"line", no}, {"graph6", text}, {"vertices", g.order()}, {"edges", g.size()},
             {"diameter", paw.diameter}, {"pawful", paw.verdict}};
      if (paw.diameter <= 2) {
        r["star"] = check_star_property(g).holds;
        try {
          r["s_structure"] = search_s_structure(g, cfg.search_budget).status == SearchStatus::found ? "found" : "none";
        } catch (const BudgetExceeded&) {
          r["s_structure"] = "budget";
        }
      } else {
        r["star"] = nullptr;
        r["s_structure"] = nullptr;
      }
      r["diagonal_lmax"] = lmax;
      try {
        r["diagonal"] = is_diagonal_up_to(g, lmax, {cfg.basis_cap, 1});
      } catch (const BudgetExceeded&) {
        r["diagonal"] = nullptr;
      }
      r["ahk"] = g.is_tree() ? Json(nullptr) : Json(ahk_edge_cycle_check(g).holds);
      o.record = std::move(r);
    } catch (const std::runtime_error& e) {
      o.warning = "line " + std::to_string(no) + ": skipped: " + e.what();
    }
    return o;
  });
  for (const auto& o : outcomes) {
    if (o.record) out << o.record->dump() << '\n';
    else err << "warning: " << o.warning << '\n';
  }
  return ok;
}

inline int cmd_ahk(const Graph& g, std::ostream& out) {
  auto r = ahk_edge_cycle_check(g);
  out << "edge-cycle condition: " << (r.holds ? "holds" : "fails");
  if (r.failing_edge) out << " (edge " << r.failing_edge->first << " " << r.failing_edge->second << ")";
  out << '\n';
  return ok;
}

// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
  CLI::App app{"Exact magnitude, magnitude homology and discrete Morse matchings of graphs", "maghom"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--format", cfg.format, "Graph file format")
      ->check(CLI::IsMember({"auto", "edge-list", "graph6"}))
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads for independent (a,b) cells")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_option("--basis-cap", cfg.basis_cap, "Maximum chain basis size")
      ->envname("MAGHOM_BASIS_CAP")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string graph_spec;
  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("graph", graph_spec, "Graph file, '-' for stdin, or gen:K5 / gen:C6 / gen:P4 / gen:S3")->required();
  };
  Vertex a = 0, b = 0;
  int ell = 0;
  auto add_abl = [&](CLI::App* sub) {
    sub->add_option("--a", a, "Start vertex")->required();
    sub->add_option("--b", b, "End vertex")->required();
    sub->add_option("--ell", ell, "Length")->required()->check(CLI::Range(3, 24));
  };
  bool json = false;

  auto* magnitude = app.add_subcommand("magnitude", "Magnitude as a reduced rational function and its series");
  add_graph(magnitude);
  std::size_t series_order = 7;
  magnitude->add_option("--series", series_order, "Highest series coefficient")->capture_default_str();
  magnitude->add_flag("--json", json);

  auto* table = app.add_subcommand("mh-table", "Magnitude homology table for l <= lmax");
  add_graph(table);
  int lmax = 4;
  std::vector<int> ab;
  bool csv = false;
  table->add_option("--lmax", lmax, "Largest length")->check(CLI::Range(0, 40))->capture_default_str();
  table->add_option("--ab", ab, "Restrict to the (a,b) summand, as a,b")->delimiter(',')->expected(2);
  auto* table_json = table->add_flag("--json", json);
  table->add_flag("--csv", csv)->excludes(table_json);

  auto* ai = app.add_subcommand("ai-complex", "The simplicial pair (K, K') for (a, b, ell)");
  add_graph(ai);
  add_abl(ai);
  bool list_faces = false, homology = false;
  ai->add_flag("--list-faces", list_faces);
  ai->add_flag("--homology", homology, "Relative homology and the comparison with magnitude homology");
  ai->add_flag("--json", json);

  auto* morse = app.add_subcommand("morse", "Build a matching and check its homological consequences");
  add_graph(morse);
  add_abl(morse);
  std::vector<std::string> matching;
  bool report = false;
  morse->add_option("--matching", matching, "'pawful' or 's-file PATH'")->expected(1, 2);
  morse->add_flag("--report", report);

  auto* pawful = app.add_subcommand("pawful", "Pawful test with a witness");
  add_graph(pawful);
  pawful->add_flag("--json", json);

  auto* sstruct = app.add_subcommand("s-structure", "Verify or search for an S-structure");
  add_graph(sstruct);
  std::string verify_path;
  bool search = false;
  auto* verify_opt = sstruct->add_option("--verify", verify_path, "Certificate file");
  sstruct->add_flag("--search", search)->excludes(verify_opt);
  sstruct->add_option("--budget", cfg.search_budget, "Search node budget")
      ->envname("MAGHOM_BUDGET")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* match = app.add_subcommand("match", "The insertion/deletion matching on K \\ K'");
  add_graph(match);
  add_abl(match);
  std::string s_path, precedence = "triple";
  bool use_pawful = false;
  match->add_option("--s", s_path, "Certificate file");
  match->add_flag("--pawful", use_pawful, "Use the S-structure of a pawful graph");
  match->add_option("--precedence", precedence, "Rule that wins when a triple and a quadruple both apply")
      ->check(CLI::IsMember({"triple", "quadruple"}))
      ->capture_default_str();
  match->add_flag("--json", json);

  auto* classify = app.add_subcommand("classify", "Census a graph6 stream, one JSON record per graph");
  std::string stream_path = "-";
  classify->add_option("input", stream_path, "graph6 file or '-'")->capture_default_str();
  classify->add_option("--lmax", lmax, "Diagonality is tested for l <= lmax")
      ->check(CLI::Range(0, 40))
      ->capture_default_str();
  classify->add_option("--budget", cfg.search_budget, "Search node budget per graph")
      ->envname("MAGHOM_BUDGET")
      ->check(CLI::PositiveNumber);

  auto* ahk = app.add_subcommand("ahk-check", "Every edge on a 3-cycle or 4-cycle");
  add_graph(ahk);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : validation;
  }

  try {
    if (*classify) {
      if (stream_path == "-") return cmd_classify(in, lmax, cfg, out, err);
      std::ifstream file(stream_path);
      if (!file) throw ParseError("cannot open '" + stream_path + "'");
      return cmd_classify(file, lmax, cfg, out, err);
    }
    Graph g = load_graph(graph_spec, cfg, in);
    if (*magnitude) return cmd_magnitude(g, series_order, json, out);
    if (*table) return cmd_mh_table(g, lmax, ab, csv ? "csv" : json ? "json" : "human", cfg, out);
    if (*ai) return cmd_ai_complex(g, a, b, ell, list_faces, homology, json, cfg, out);
    if (*morse) return cmd_morse(g, a, b, ell, matching, report, out);
    if (*pawful) return cmd_pawful(g, json, out);
    if (*sstruct) return cmd_s_structure(g, verify_path, search, cfg, out);
    if (*match) return cmd_match(g, a, b, ell, s_path, use_pawful, precedence, json, out);
    if (*ahk) return cmd_ahk(g, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return validation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return validation;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return budget;
  } catch (const InternalError& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return internal;
  }
  return internal;
}

}  // namespace maghom::cli
