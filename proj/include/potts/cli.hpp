#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "potts/io.hpp"
#include "potts/verify.hpp"

namespace potts::cli {

inline constexpr const char* kVersion = "potts-torus 1.0.0";
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitInvalid = 2;

enum class Format { kJson, kCsv };

/// Validated command line.
struct RunConfig {
  std::string subcommand;
  std::string lattice = "square";
  int width = 2;
  int length = 2;
  std::vector<std::string> couplings;
  std::optional<unsigned long> coupling_seed;
  std::string v;
  std::vector<std::string> q_values;
  bool poly_q = false;
  bool no_poly = false;
  bool bless = false;
  bool force = false;
  bool check_golden = false;
  std::string golden_dir;
  std::string only;
  std::string suite;
  std::string output;
  std::string format = "json";
  int lmax = 8;
  int level = -1;
  std::optional<int> twist;
  std::optional<int> irrep;

  Format fmt() const { return format == "csv" ? Format::kCsv : Format::kJson; }
};

namespace detail {

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::string file_tag(const std::string& s) {
  std::string out;
  for (char c : s) out += c == '/' ? '_' : c;
  return out;
}

inline EdgeCouplingSpec coupling_spec(const RunConfig& c) {
  const int set = (c.coupling_seed ? 1 : 0) + (c.couplings.empty() ? 0 : 1) + (c.v.empty() ? 0 : 1);
  if (set > 1) throw std::invalid_argument("give at most one of --v, --coupling, --coupling-seed");
  if (c.coupling_seed) return Seeded{*c.coupling_seed};
  if (!c.couplings.empty()) {
    std::vector<BigRat> values;
    for (const auto& item : c.couplings) {
      for (const auto& part : split_commas(item)) values.push_back(BigRat::parse(part));
    }
    if (values.size() == 1) return Homogeneous{values.front()};
    return Explicit{values};
  }
  return Homogeneous{c.v.empty() ? BigRat(1) : BigRat::parse(c.v)};
}

inline std::string coupling_tag(const RunConfig& c, const TorusGraph& g) {
  if (c.coupling_seed) return "seed" + std::to_string(*c.coupling_seed);
  if (g.homogeneous()) return "v" + file_tag(g.edge(0).coupling.to_compact());
  return "explicit";
}

inline TorusGraph graph_from(const RunConfig& c) {
  return build_torus(parse_lattice_kind(c.lattice), c.width, c.length, coupling_spec(c));
}

inline BigRat single_q(const RunConfig& c) {
  if (c.q_values.size() != 1) throw std::invalid_argument("exactly one --q is required");
  return BigRat::parse(c.q_values.front());
}

inline io::json versioned(io::json body) {
  io::json out;
  out["version"] = kVersion;
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

inline void emit_json(std::ostream& out, const io::json& j) { out << j.dump(2) << "\n"; }

inline std::string golden_directory(const RunConfig& c) {
  if (!c.golden_dir.empty()) return c.golden_dir;
  if (const char* env = std::getenv("POTTS_GOLDEN_DIR")) return env;
  return "tests/golden/v1";
}

/// Fields a golden comparison looks at.
inline bool golden_equal(const io::json& a, const io::json& b) {
  for (const char* key : {"graph", "mode", "q", "Z", "restricted", "characters"}) {
    if (a.contains(key) != b.contains(key)) return false;
    if (a.contains(key) && a[key] != b[key]) return false;
  }
  return true;
}

// ---- subcommands ----------------------------------------------------------

inline int cmd_amplitudes(const RunConfig& c, std::ostream& out) {
  if (c.lmax < 0 || c.lmax > 24) throw std::invalid_argument("--lmax must be in 0..24");
  std::optional<BigRat> q;
  if (!c.q_values.empty()) q = single_q(c);
  struct Row {
    int l;
    int m;
    PolyQ poly;
  };
  std::vector<Row> rows{{0, 0, PolyQ{1}}};
  for (int l = 1; l <= c.lmax; ++l) {
    for (int m : nt::divisors(l)) rows.push_back({l, m, nt::amplitude_character(l, l / m)});
  }
  if (c.fmt() == Format::kCsv) {
    out << "l,m,polynomial" << (q ? ",value" : "") << "\n";
    for (const auto& r : rows) {
      out << r.l << "," << (r.l == 0 ? std::string("-") : std::to_string(r.m)) << "," << io::csv_cell(r.poly.to_string());
      if (q) out << "," << r.poly.eval(*q).to_string();
      out << "\n";
    }
    return kExitOk;
  }
  io::json arr = io::json::array();
  for (const auto& r : rows) {
    io::json row = {{"l", r.l}, {"m", r.l == 0 ? io::json(nullptr) : io::json(r.m)},
                    {"polynomial", r.poly.to_string()}, {"coefficients", io::to_json(r.poly)}};
    if (q) row["value"] = io::to_json(r.poly.eval(*q));
    arr.push_back(row);
  }
  io::json body = {{"lmax", c.lmax}, {"amplitudes", arr}};
  if (q) body["q"] = io::to_json(*q);
  emit_json(out, versioned(body));
  return kExitOk;
}

inline int cmd_ntor(const RunConfig& c, std::ostream& out) {
  if (c.width < 1 || c.width > 8) throw std::invalid_argument("--width must be in 1..8 for enumeration");
  bool ok = true;
  io::json arr = io::json::array();
  std::ostringstream csv;
  csv << "l,formula,enumerated,match\n";
  for (int l = 0; l <= c.width; ++l) {
    const mpz_class formula = nt::n_tor(c.width, l);
    long enumerated = -1;
    try {
      enumerated = static_cast<long>(enumerate_states(c.width, l).size());
    } catch (const std::logic_error&) {
      enumerated = -1;
    }
    const bool match = mpz_class(enumerated) == formula;
    ok = ok && match;
    arr.push_back({{"l", l}, {"formula", formula.get_str()}, {"enumerated", enumerated}, {"match", match}});
    csv << l << "," << formula.get_str() << "," << enumerated << "," << (match ? "true" : "false") << "\n";
  }
  if (c.fmt() == Format::kCsv) {
    out << csv.str();
  } else {
    emit_json(out, versioned({{"width", c.width}, {"levels", arr}}));
  }
  return ok ? kExitOk : kExitVerification;
}

inline int cmd_oracle(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const TorusGraph g = graph_from(c);
  potts::detail::require_enumerable(g);
  io::json body = {{"graph", io::describe_graph(g)}};
  std::string qtag;
  auto fill = [&](const auto& mode) {
    const auto table = restricted_partition_functions(g, mode);
    const auto chars = characters_from_Z(table, g.width(), mode);
    body["Z"] = io::to_json(table.total());
    body["restricted"] = io::table_to_json(table);
    body["characters"] = io::characters_to_json(chars);
  };
  if (c.poly_q) {
    if (!c.q_values.empty()) throw std::invalid_argument("--poly-q and --q are exclusive");
    body["mode"] = PolyInQ::name();
    qtag = "poly";
    fill(PolyInQ{});
  } else {
    const BigRat q = single_q(c);
    if (q.is_zero()) throw std::invalid_argument("Q = 0 makes the characters singular");
    body["mode"] = FixedQ::name();
    body["q"] = io::to_json(q);
    qtag = "q" + file_tag(q.to_compact());
    fill(FixedQ(q));
  }
  body["stats"] = io::stats_to_json(g.homogeneous() ? cached_counts(g).stats : enumerate_weights(g).stats);

  const std::filesystem::path golden = std::filesystem::path(golden_directory(c)) /
                                       (c.lattice + "-" + std::to_string(c.width) + "x" + std::to_string(c.length) + "-" +
                                        coupling_tag(c, g) + "-" + qtag + ".json");
  if (c.bless) {
    if (std::filesystem::exists(golden) && !c.force) {
      err << "golden file exists, pass --force to overwrite: " << golden.string() << "\n";
      return kExitInvalid;
    }
    std::filesystem::create_directories(golden.parent_path());
    std::ofstream f(golden);
    f << body.dump(2) << "\n";
    err << "wrote " << golden.string() << "\n";
  }
  int code = kExitOk;
  if (c.check_golden) {
    std::ifstream f(golden);
    if (!f) {
      err << "missing golden file: " << golden.string() << "\n";
      return kExitInvalid;
    }
    const io::json expected = io::json::parse(f);
    if (!golden_equal(expected, body)) {
      err << "golden mismatch: " << golden.string() << "\n";
      code = kExitVerification;
    }
    body["golden"] = {{"file", golden.filename().string()}, {"match", code == kExitOk}};
  }
  if (c.fmt() == Format::kCsv) {
    out << "quantity,j_or_d,n1,value\n";
    out << "Z,,," << io::csv_cell(body["Z"].dump()) << "\n";
    for (const auto& row : body["restricted"]) {
      out << "Z_restricted," << row["j"] << "," << row["n1"] << "," << io::csv_cell(row["value"].dump()) << "\n";
    }
    for (const auto& row : body["characters"]["K_level"]) {
      out << "K_level," << row["l"] << ",," << io::csv_cell(row["value"].dump()) << "\n";
    }
    for (const auto& row : body["characters"]["K_class"]) {
      out << "K_class," << row["d"] << "," << row["n1"] << "," << io::csv_cell(row["value"].dump()) << "\n";
    }
  } else {
    emit_json(out, versioned(body));
  }
  return code;
}

inline int cmd_characters(const RunConfig& c, std::ostream& out) {
  const TorusGraph g = graph_from(c);
  if (c.level < 0 || c.level > g.width()) throw std::invalid_argument("--level must be in 0..width");
  const int l = c.level;
  if (c.twist && (l == 0 || *c.twist < 1 || *c.twist > l)) throw std::invalid_argument("--twist must be in 1..level");
  if (c.irrep) nt::require_irrep(l, *c.irrep);
  io::json body = {{"graph", io::describe_graph(g)}, {"level", l}};
  std::vector<std::vector<std::string>> csv_rows;
  auto exact_part = [&](const auto& mode, auto&& twisted_numeric) {
    TransferEngine<std::decay_t<decltype(mode)>> engine(g, l, mode);
    const auto tt = engine.twisted_traces();
    auto K = l == 0 ? tt[0] : tt[0] * BigRat(l);
    body["K_level"] = io::to_json(K);
    csv_rows.push_back({"K_level", "", scalar_string(K)});
    io::json twisted = io::json::array();
    for (int a = 1; a <= std::max(l, 1); ++a) {
      if (c.twist && a != *c.twist) continue;
      const auto& value = tt[static_cast<std::size_t>(a % std::max(l, 1))];
      twisted.push_back({{"twist", a}, {"value", io::to_json(value)}});
      csv_rows.push_back({"twisted", std::to_string(a), scalar_string(value)});
    }
    body["twisted"] = twisted;
    io::json classes = io::json::array();
    if (l >= 1) {
      for (int d : nt::divisors(l)) {
        std::decay_t<decltype(K)> acc{};
        for (int a : nt::class_members(l, d)) acc += tt[static_cast<std::size_t>(a % l)];
        classes.push_back({{"d", d}, {"n1", l / d}, {"value", io::to_json(acc)}});
        csv_rows.push_back({"class(" + std::to_string(d) + "," + std::to_string(l / d) + ")", "", scalar_string(acc)});
      }
    }
    body["classes"] = classes;
    twisted_numeric(tt);
  };
  if (c.poly_q) {
    if (c.irrep) throw std::invalid_argument("--irrep needs a numeric --q");
    body["mode"] = PolyInQ::name();
    exact_part(PolyInQ{}, [](const auto&) {});
  } else {
    const BigRat q = single_q(c);
    body["mode"] = FixedQ::name();
    body["q"] = io::to_json(q);
    exact_part(FixedQ(q), [&](const std::vector<BigRat>& tt) {
      if (l == 0) return;
      io::json irreps = io::json::array();
      for (int k = 1; k <= l; ++k) {
        if (c.irrep && k != *c.irrep) continue;
        const ComplexF v = character_K(tt, l, k);
        irreps.push_back({{"irrep", k}, {"value", io::to_json(v)}});
        std::ostringstream s;
        s.precision(17);
        s << v.real() << "," << v.imag();
        csv_rows.push_back({"irrep_float", std::to_string(k), s.str()});
      }
      body["irreps"] = irreps;
    });
  }
  if (c.fmt() == Format::kCsv) {
    out << "quantity,index,value\n";
    for (const auto& r : csv_rows) {
      out << r[0] << "," << r[1] << "," << (r[0] == "irrep_float" ? r[2] : io::csv_cell(r[2])) << "\n";
    }
  } else {
    emit_json(out, versioned(body));
  }
  return kExitOk;
}

inline int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  const TorusGraph g = graph_from(c);
  if (c.level < 0 || c.level > g.width()) throw std::invalid_argument("--level must be in 0..width");
  const BigRat q = single_q(c);
  const int l = c.level;
  std::vector<int> ks;
  if (l == 0) {
    ks = {1};
  } else if (c.irrep) {
    nt::require_irrep(l, *c.irrep);
    ks = {*c.irrep};
  } else {
    for (int k = 1; k <= l; ++k) ks.push_back(k);
  }
  io::json sectors = io::json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "level,irrep,index,re_float,im_float\n";
  for (int k : ks) {
    const SectorSpectrum s = sector_spectrum(g, l, k, q);
    sectors.push_back(io::spectrum_to_json(s));
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      csv << l << "," << s.k << "," << i << "," << s.eigenvalues[i].real() << "," << s.eigenvalues[i].imag() << "\n";
    }
  }
  if (c.fmt() == Format::kCsv) {
    out << csv.str();
  } else {
    emit_json(out, versioned({{"graph", io::describe_graph(g)}, {"q", io::to_json(q)}, {"sectors", sectors}}));
  }
  return kExitOk;
}

inline void prefix_ids(VerificationReport& r, const std::string& prefix) {
  for (auto& ch : r.checks) ch.id = prefix + ch.id;
}

/// The acceptance matrix: amplitude layer plus every test graph.
inline VerificationReport desk_suite() {
  VerificationReport all;
  all.subject = "desk";
  all.mode = "fixed-q+poly-q";
  auto amp = verify_amplitudes(12);
  prefix_ids(amp, "amplitudes/");
  all.append(amp);
  auto ntr = verify_numtheory();
  prefix_ids(ntr, "numtheory/");
  all.append(ntr);
  {
    VerificationReport states;
    for (int L = 1; L <= 6; ++L) {
      for (int l = 0; l <= L; ++l) {
        bool ok = true;
        try {
          ok = enumerate_states(L, l).size() * static_cast<std::size_t>(std::max(l, 1)) ==
               enumerate_labeled_states(L, l).size();
        } catch (const std::logic_error&) {
          ok = false;
        }
        states.checks.push_back(potts::detail::bool_check("states/basis-dimension(" + std::to_string(L) + "," + std::to_string(l) + ")", ok));
      }
    }
    all.append(states);
  }
  GraphVerifyOptions opt;
  opt.q_points = {BigRat(2), BigRat(3), BigRat(5, 2)};
  const std::vector<BigRat> vs = {BigRat(1), BigRat(-1, 2), BigRat(3, 7)};
  for (LatticeKind kind : {LatticeKind::kSquare, LatticeKind::kTriangular}) {
    for (int L : {2, 3}) {
      for (int N : {2, 3}) {
        for (const auto& v : vs) {
          const TorusGraph g = build_torus(kind, L, N, v);
          auto r = verify_graph(g, opt);
          prefix_ids(r, to_string(kind) + "-" + std::to_string(L) + "x" + std::to_string(N) + "-v" + v.to_compact() + "/");
          all.append(r);
        }
      }
    }
  }
  for (auto [kind, L, N] : {std::tuple{LatticeKind::kSquare, 3, 2}, std::tuple{LatticeKind::kTriangular, 2, 2}}) {
    const TorusGraph g = build_torus(kind, L, N, EdgeCouplingSpec{Seeded{1}});
    auto r = verify_graph(g, opt);
    prefix_ids(r, to_string(kind) + "-" + std::to_string(L) + "x" + std::to_string(N) + "-seed1/");
    all.append(r);
  }
  return all;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  VerificationReport report;
  if (!c.suite.empty()) {
    if (c.suite != "desk") throw std::invalid_argument("unknown suite: " + c.suite);
    report = desk_suite();
  } else {
    const TorusGraph g = graph_from(c);
    GraphVerifyOptions opt;
    for (const auto& q : c.q_values) opt.q_points.push_back(BigRat::parse(q));
    if (opt.q_points.empty()) opt.q_points = {BigRat(2)};
    for (const auto& q : opt.q_points) {
      if (q.is_zero()) throw std::invalid_argument("Q = 0 makes the characters singular");
    }
    opt.poly_q = !c.no_poly;
    report = verify_graph(g, opt);
  }
  if (!c.only.empty()) {
    VerificationReport filtered;
    filtered.subject = report.subject;
    filtered.mode = report.mode;
    for (const auto& ch : report.checks) {
      if (ch.id == c.only || ch.id.rfind(c.only, 0) == 0) filtered.checks.push_back(ch);
    }
    if (filtered.checks.empty()) {
      err << "no check matches --only " << c.only << "\n";
      return kExitInvalid;
    }
    report = std::move(filtered);
  }
  if (c.fmt() == Format::kCsv) {
    out << "id,kind,residual,tolerance,pass\n";
    for (const auto& ch : report.checks) {
      out << io::csv_cell(ch.id) << "," << (ch.exact ? "exact" : "numeric") << ",";
      if (ch.exact) {
        out << io::csv_cell(ch.residual) << ",";
      } else {
        std::ostringstream s;
        s.precision(6);
        s << ch.numeric_residual << "," << ch.tolerance;
        out << s.str();
      }
      out << "," << (ch.pass ? "true" : "false") << "\n";
    }
  } else {
    emit_json(out, versioned(io::report_to_json(report)));
  }
  err << report.checks.size() - static_cast<std::size_t>(report.failures()) << "/" << report.checks.size()
      << " checks passed\n";
  return report.passed() ? kExitOk : kExitVerification;
}

}  // namespace detail

/// Parses and dispatches; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Potts-model torus amplitudes, transfer matrices and enumeration oracles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  RunConfig c;

  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_graph = [&](CLI::App* s) {
    s->add_option("--lattice", c.lattice, "square or triangular")->check(CLI::IsMember({"square", "triangular"}));
    s->add_option("--width", c.width, "Transverse width L (>= 2)");
    s->add_option("--length", c.length, "Length N (>= 1)");
    s->add_option("--v", c.v, "Homogeneous coupling v as p/q");
    s->add_option("--coupling", c.couplings, "Coupling p/q, or a comma list in edge order");
    s->add_option("--coupling-seed", c.coupling_seed, "Seeded per-edge couplings");
  };

  auto* amp = app.add_subcommand("amplitudes", "Table of amplitudes b(l,m)");
  amp->add_option("--lmax", c.lmax, "Largest level");
  amp->add_option("--q", c.q_values, "Evaluate at Q = p/q");
  add_format(amp);

  auto* ntor = app.add_subcommand("ntor", "Basis dimensions: formula vs enumeration");
  ntor->add_option("--width", c.width, "Width L")->required();
  add_format(ntor);

  auto* oracle = app.add_subcommand("oracle", "Enumerate Z, Z_{j,n1} and the characters");
  add_graph(oracle);
  oracle->add_option("--q", c.q_values, "Q = p/q");
  oracle->add_flag("--poly-q", c.poly_q, "Keep Q symbolic");
  oracle->add_flag("--bless", c.bless, "Write the golden file");
  oracle->add_flag("--force", c.force, "Allow --bless to overwrite");
  oracle->add_flag("--check-golden", c.check_golden, "Compare with the golden file");
  oracle->add_option("--golden-dir", c.golden_dir, "Golden directory (else $POTTS_GOLDEN_DIR)");
  add_format(oracle);

  auto* chars = app.add_subcommand("characters", "Twisted traces and characters from the transfer matrix");
  add_graph(chars);
  chars->add_option("--level", c.level, "Level l")->required();
  chars->add_option("--twist", c.twist, "Only E^a for this a");
  chars->add_option("--irrep", c.irrep, "Only irrep D_k");
  chars->add_option("--q", c.q_values, "Q = p/q");
  chars->add_flag("--poly-q", c.poly_q, "Keep Q symbolic");
  add_format(chars);

  auto* spec = app.add_subcommand("spectrum", "Sector eigenvalues of the transfer matrix");
  add_graph(spec);
  spec->add_option("--level", c.level, "Level l")->required();
  spec->add_option("--irrep", c.irrep, "Irrep k (default: all)");
  spec->add_option("--q", c.q_values, "Q = p/q")->required();
  add_format(spec);

  auto* ver = app.add_subcommand("verify", "Run the identity checks");
  add_graph(ver);
  ver->add_option("--q", c.q_values, "Evaluation points (repeatable)");
  ver->add_flag("--no-poly", c.no_poly, "Skip the symbolic-Q pass");
  ver->add_option("--suite", c.suite, "Named suite (desk)");
  ver->add_option("--only", c.only, "Check id or id prefix");
  add_format(ver);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (c.width < 2 && !ntor->parsed()) throw std::invalid_argument("torus width must be >= 2");
    if (c.length < 1) throw std::invalid_argument("torus length must be >= 1");
    if (amp->parsed()) return detail::cmd_amplitudes(c, out);
    if (ntor->parsed()) return detail::cmd_ntor(c, out);
    if (oracle->parsed()) return detail::cmd_oracle(c, out, err);
    if (chars->parsed()) return detail::cmd_characters(c, out);
    if (spec->parsed()) return detail::cmd_spectrum(c, out);
    if (ver->parsed()) return detail::cmd_verify(c, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace potts::cli
