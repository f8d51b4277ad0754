// Command-line front end: solve channels, inspect Farey structures, run the
// verification oracle, produce BER sweeps and constellation dumps.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "zcnoma/channel.hpp"
#include "zcnoma/distance.hpp"
#include "zcnoma/farey.hpp"
#include "zcnoma/sim.hpp"
#include "zcnoma/solver.hpp"

using nlohmann::json;
using namespace zcnoma;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complex flag grammar: "a", "bj", "a+bj", "a-bj", "j", "-j". No spaces.
std::complex<double> parse_complex(const std::string& text) {
  if (text.empty()) throw UsageError("empty complex literal");
  auto parse_real = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw UsageError("bad numeric literal: " + s);
    return v;
  };
  if (text.back() != 'j') {
    return {parse_real(text), 0.0};
  }
  const std::string body = text.substr(0, text.size() - 1);
  // Split at the sign that separates real and imaginary parts (skip a
  // leading sign and exponent signs).
  for (std::size_t i = body.size(); i-- > 1;) {
    const char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      return {parse_real(body.substr(0, i)), parse_real(body.substr(i))};
    }
  }
  return {0.0, parse_real(body)};
}

// "0:5:40" (start:step:stop, inclusive) or "0,10,20"; values in dB.
std::vector<double> parse_snr_grid(const std::string& text) {
  std::vector<double> db;
  if (text.find(':') != std::string::npos) {
    double start = 0, step = 0, stop = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3 || step <= 0) {
      throw UsageError("bad SNR range, expected start:step:stop");
    }
    for (double v = start; v <= stop + 1e-9; v += step) db.push_back(v);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) db.push_back(std::stod(item));
    }
  }
  if (db.empty()) throw UsageError("empty SNR grid");
  std::vector<double> rho;
  rho.reserve(db.size());
  for (double v : db) rho.push_back(std::pow(10.0, v / 10.0));
  return rho;
}

std::vector<double> parse_triple(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.size() != 3) throw UsageError("expected three comma-separated values");
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

json solution_to_json(const ScalingSolution& s, bool with_trace) {
  json j{{"w1", s.w1},
         {"w2", s.w2},
         {"objective", s.objective},
         {"scenario", scenario_name(s.scenario.tag)},
         {"ratio", s.scenario.ratio},
         {"interval", s.interval.str()},
         {"branch", s.branch}};
  if (s.scenario.tag == ScenarioTag::Strong) j["L"] = s.scenario.L;
  if (s.closed_form_mismatch) j["closed_form_mismatch"] = true;
  if (with_trace) {
    json trace = json::array();
    for (const auto& e : s.trace) {
      trace.push_back(json{{"interval", e.interval.str()}, {"objective", e.objective}});
    }
    j["trace"] = trace;
  }
  return j;
}

struct ChannelFlags {
  std::string h11 = "1", h21 = "0.5", h22 = "1";
  double P1 = 0.0, P2 = 0.0;  // totals (Eq-split)
  double p1 = 0.0, p2 = 0.0;  // per-component budgets
  unsigned M = 4, Mp = 0;
  std::string json_path;

  void add_to(CLI::App* cmd, bool with_power = true) {
    cmd->add_option("--h11", h11, "direct link S1->D1 (complex, e.g. 3+4j)");
    cmd->add_option("--h21", h21, "cross link S2->D1");
    cmd->add_option("--h22", h22, "direct link S2->D2");
    cmd->add_option("--M", M, "in-phase PAM order (even)");
    cmd->add_option("--Mp", Mp, "quadrature PAM order (defaults to M)");
    cmd->add_option("--channel", json_path,
                    "JSON channel document {h11:[re,im],h21:[..],h22:[..],P1,P2,M,Mp}");
    if (with_power) {
      cmd->add_option("--P1", P1, "total power budget of S1 (split per component)");
      cmd->add_option("--P2", P2, "total power budget of S2");
      cmd->add_option("--p1", p1, "per-component power budget of S1");
      cmd->add_option("--p2", p2, "per-component power budget of S2");
    }
  }

  // A channel document overrides the individual flags.
  void load_json_if_given() {
    if (json_path.empty()) return;
    std::ifstream f(json_path);
    if (!f) throw std::runtime_error("cannot open channel document: " + json_path);
    json j;
    f >> j;
    auto fetch = [&](const char* key) {
      if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2) {
        throw UsageError(std::string("channel document needs ") + key + ": [re, im]");
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g%+.17gj", j[key][0].get<double>(),
                    j[key][1].get<double>());
      return std::string(buf);
    };
    h11 = fetch("h11");
    h21 = fetch("h21");
    h22 = fetch("h22");
    if (j.contains("P1")) P1 = j["P1"].get<double>();
    if (j.contains("P2")) P2 = j["P2"].get<double>();
    if (j.contains("M")) M = j["M"].get<unsigned>();
    if (j.contains("Mp")) Mp = j["Mp"].get<unsigned>();
  }

  bool per_component() const {
    if ((p1 > 0.0) != (p2 > 0.0) || (P1 > 0.0) != (P2 > 0.0)) {
      throw UsageError("power budgets must be given in pairs");
    }
    if (p1 > 0.0 && P1 > 0.0) throw UsageError("give either --p1/--p2 or --P1/--P2");
    return p1 > 0.0;
  }

  ComplexZcChannel channel() const {
    ComplexZcChannel ch;
    ch.h11 = parse_complex(h11);
    ch.h21 = parse_complex(h21);
    ch.h22 = parse_complex(h22);
    ch.M = M;
    ch.Mp = Mp == 0 ? M : Mp;
    if (per_component()) {
      ch.P1 = 2.0 * p1;  // placeholder; per-component callers override below
      ch.P2 = 2.0 * p2;
    } else {
      ch.P1 = P1 > 0.0 ? P1 : 1.0;
      ch.P2 = P2 > 0.0 ? P2 : 1.0;
    }
    return ch;
  }

  // The two real sub-channels with the requested powers attached.
  std::pair<RealZcInstance, RealZcInstance> instances() const {
    const ComplexZcChannel ch = channel();
    auto [ii, qq] = decompose(ch);
    if (per_component()) {
      ii.p1 = p1;
      ii.p2 = p2;
      qq.p1 = p1;
      qq.p2 = p2;
    }
    return {ii, qq};
  }
};

int cmd_solve(const ChannelFlags& flags, bool with_trace, const std::string& out) {
  const auto [ii, qq] = flags.instances();
  const ScalingSolution si = solve(ii);
  const ScalingSolution sq = solve(qq);
  json j{{"schema", 1},
         {"command", "solve"},
         {"channel",
          {{"g11", ii.g11},
           {"g21", ii.g21},
           {"g22", ii.g22},
           {"M", ii.M},
           {"Mp", qq.M},
           {"p1", ii.p1},
           {"p2", ii.p2},
           {"p1_quadrature", qq.p1},
           {"p2_quadrature", qq.p2}}}};
  json comps = json::array();
  json jc = solution_to_json(si, with_trace);
  jc["component"] = "in-phase";
  comps.push_back(jc);
  jc = solution_to_json(sq, with_trace);
  jc["component"] = "quadrature";
  comps.push_back(jc);
  j["components"] = comps;
  write_output(out, j.dump(2) + "\n");
  return 0;
}

int cmd_farey(unsigned K, bool extended, bool intervals, int partition_L,
              const std::string& out) {
  if (K == 0) throw UsageError("--K must be >= 1");
  json j{{"schema", 1}, {"command", "farey"}, {"K", K}};
  auto frac_list = [](const std::vector<Fraction>& seq) {
    json arr = json::array();
    for (const auto& f : seq) arr.push_back(f.str());
    return arr;
  };
  auto interval_list = [](const std::vector<FareyInterval>& ivs) {
    json arr = json::array();
    for (const auto& iv : ivs) arr.push_back(json::array({iv.lo.str(), iv.hi.str()}));
    return arr;
  };
  if (partition_L >= 0) {
    if (partition_L < 1 || static_cast<unsigned>(partition_L) > 2 * K) {
      throw UsageError("--partition threshold must lie in [1, 2K]");
    }
    const IntervalPartition part = partition_intervals(K, static_cast<unsigned>(partition_L));
    j["partition"] = json{{"L", partition_L},
                          {"u_set", interval_list(part.u_set)},
                          {"v_set", interval_list(part.v_set)}};
  } else if (intervals) {
    j["intervals"] = interval_list(farey_intervals(K));
  } else if (extended) {
    j["extended"] = frac_list(extended_farey_sequence(K));
  } else {
    j["sequence"] = frac_list(farey_sequence(K));
  }
  write_output(out, j.dump(2) + "\n");
  return 0;
}

int cmd_mindist(const ChannelFlags& flags, double w1, double w2, const std::string& out) {
  if (!(w1 > 0.0) || !(w2 > 0.0)) throw UsageError("--w1/--w2 must be > 0");
  const auto [ii, qq] = flags.instances();
  (void)qq;
  auto report_to_json = [](const DistanceReport& r) {
    return json{{"d1_min", r.d1_min},
                {"m", r.d1_argmin.m},
                {"n", r.d1_argmin.n},
                {"d2_min", r.d2_min},
                {"objective", r.objective}};
  };
  const DistanceReport bf = min_distance_bruteforce(ii, w1, w2);
  const DistanceReport fa = min_distance_farey(ii, w1, w2);
  const std::vector<Fraction>& seq = cached_extended_farey(ii.M - 1);
  const std::size_t idx = locate_farey_interval(ii.g11 * w1, ii.g21 * w2, seq);
  json j{{"schema", 1},
         {"command", "mindist"},
         {"ratio", ii.g21 * w2 / (ii.g11 * w1)},
         {"interval", FareyInterval{seq[idx], seq[idx + 1]}.str()},
         {"bruteforce", report_to_json(bf)},
         {"farey", report_to_json(fa)},
         {"degenerate", fa.d1_min == 0.0}};
  write_output(out, j.dump(2) + "\n");
  return 0;
}

int cmd_oracle(const ChannelFlags& flags, std::size_t grid, unsigned threads,
               const std::string& out) {
  const auto [ii, qq] = flags.instances();
  (void)qq;
  const ScalingSolution closed = solve(ii);
  const ScalingSolution grid_sol = oracle_solve(ii, ii.p1, ii.p2, grid, threads);
  json j{{"schema", 1},
         {"command", "oracle"},
         {"grid_points", grid},
         {"closed_form", solution_to_json(closed, false)},
         {"oracle", solution_to_json(grid_sol, false)},
         {"objective_gap", closed.objective - grid_sol.objective}};
  write_output(out, j.dump(2) + "\n");
  return 0;
}

int cmd_ber(const std::string& scheme_text, const ChannelFlags& flags,
            const std::string& vars_text, const std::string& snr_text, std::uint64_t trials,
            std::uint64_t symbols, std::uint64_t seed, unsigned threads,
            const std::string& out, const std::string& streams_out) {
  const std::optional<Scheme> scheme = parse_scheme(scheme_text);
  if (!scheme) throw UsageError("unknown scheme: " + scheme_text);
  if (flags.p1 > 0.0 || flags.p2 > 0.0) {
    throw UsageError("ber works on total budgets, use --P1/--P2");
  }

  SimConfig cfg;
  cfg.scheme = *scheme;
  cfg.M = flags.M;
  cfg.Mp = flags.Mp == 0 ? flags.M : flags.Mp;
  cfg.snr_grid = parse_snr_grid(snr_text);
  cfg.trials = trials;
  cfg.symbols_per_trial = symbols;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.P1 = flags.P1 > 0.0 ? flags.P1 : 1.0;
  cfg.P2 = flags.P2 > 0.0 ? flags.P2 : 1.0;

  FadingSpec fading;
  if (!vars_text.empty()) {
    const auto v = parse_triple(vars_text);
    fading = FadingSpec::rayleigh(v[0], v[1], v[2]);
  } else {
    fading = FadingSpec::fixed(parse_complex(flags.h11), parse_complex(flags.h21),
                               parse_complex(flags.h22));
  }

  const BerCurve curve = cfg.scheme == Scheme::ProposedNoma ? run_ber(cfg, fading)
                                                            : run_baseline(cfg, fading);
  write_output(out, curve.to_csv());
  if (!streams_out.empty()) write_output(streams_out, curve.to_stream_csv());

  std::ostream& summary = out.empty() ? std::cerr : std::cout;
  for (const BerPoint& pt : curve.points) {
    char line[256];
    std::snprintf(line, sizeof line,
                  "%s snr_db=%.4g ber=%.6g (s1@d1 %.6g, s2@d1 %.6g, s2@d2 %.6g) bits=%llu\n",
                  scheme_name(cfg.scheme).c_str(), 10.0 * std::log10(pt.rho), pt.ber(),
                  pt.s1_d1.ber(), pt.s2_d1.ber(), pt.s2_d2.ber(),
                  static_cast<unsigned long long>(pt.bits()));
    summary << line;
  }
  return 0;
}

int cmd_constellation(const ChannelFlags& flags, int receiver, const std::string& out) {
  if (receiver != 1 && receiver != 2) throw UsageError("--receiver must be 1 or 2");
  const auto [ii, qq] = flags.instances();
  const ScalingSolution si = solve(ii);
  const ScalingSolution sq = solve(qq);
  const SumConstellation ci = sum_constellation(ii, si.w1, si.w2);
  const SumConstellation cq = sum_constellation(qq, sq.w1, sq.w2);
  const std::vector<double>& in_pts = receiver == 1 ? ci.rx1 : ci.rx2;
  const std::vector<double>& quad_pts = receiver == 1 ? cq.rx1 : cq.rx2;

  std::string csv = "inphase,quadrature\n";
  char buf[96];
  for (double re : in_pts) {
    for (double im : quad_pts) {
      std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", re, im);
      csv += buf;
    }
  }
  write_output(out, csv);
  return 0;
}

// Validates any document this tool emits: JSON must carry schema 1; CSV must
// use one of the documented headers with consistent column counts.
int cmd_check(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string content = ss.str();

  const auto first_nonspace = content.find_first_not_of(" \t\r\n");
  if (first_nonspace == std::string::npos) throw std::runtime_error("empty document");

  if (content[first_nonspace] == '{' || content[first_nonspace] == '[') {
    const json j = json::parse(content);  // throws on malformed input
    if (!j.is_object() || !j.contains("schema") || j["schema"] != 1) {
      throw std::runtime_error("JSON document lacks schema marker");
    }
    std::cout << "ok json schema=1\n";
    return 0;
  }

  std::stringstream lines(content);
  std::string header;
  std::getline(lines, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  const std::vector<std::string> known{"scheme,rho,snr_db,ber,bits,errors",
                                       "scheme,stream,rho,snr_db,ber,bits,errors",
                                       "inphase,quadrature"};
  std::size_t columns = 0;
  for (const auto& k : known) {
    if (header == k) columns = 1 + std::count(k.begin(), k.end(), ',');
  }
  if (columns == 0) throw std::runtime_error("unknown CSV header: " + header);
  std::string row;
  std::size_t nrows = 0;
  while (std::getline(lines, row)) {
    if (row.empty() || (row.size() == 1 && row[0] == '\r')) continue;
    const std::size_t cols = 1 + static_cast<std::size_t>(std::count(row.begin(), row.end(), ','));
    if (cols != columns) throw std::runtime_error("ragged CSV row: " + row);
    ++nrows;
  }
  std::cout << "ok csv rows=" << nrows << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"max-min scaling design and link simulation for two-user NOMA Z-channels"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "optimal scaling factors for a channel");
  ChannelFlags solve_flags;
  solve_flags.add_to(solve_cmd);
  bool with_trace = false;
  std::string solve_out;
  solve_cmd->add_flag("--trace", with_trace, "include per-interval candidates");
  solve_cmd->add_option("--out", solve_out, "output path (stdout if omitted)");

  // farey
  auto* farey_cmd = app.add_subcommand("farey", "Farey sequences, intervals, partitions");
  unsigned farey_K = 0;
  bool farey_ext = false, farey_iv = false;
  int farey_L = -1;
  std::string farey_out;
  farey_cmd->add_option("--K", farey_K, "sequence order")->required();
  farey_cmd->add_flag("--extended", farey_ext, "extended sequence up to 1/0");
  farey_cmd->add_flag("--intervals", farey_iv, "interval set of the extended sequence");
  farey_cmd->add_option("--partition", farey_L, "split intervals by numerator-sum threshold");
  farey_cmd->add_option("--out", farey_out, "output path");

  // mindist
  auto* mindist_cmd = app.add_subcommand("mindist", "minimum-distance diagnostics");
  ChannelFlags mindist_flags;
  mindist_flags.add_to(mindist_cmd, false);
  double md_w1 = 0.0, md_w2 = 0.0;
  std::string mindist_out;
  mindist_cmd->add_option("--w1", md_w1, "scaling of S1")->required();
  mindist_cmd->add_option("--w2", md_w2, "scaling of S2")->required();
  mindist_cmd->add_option("--out", mindist_out, "output path");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "closed form vs grid-search oracle");
  ChannelFlags oracle_flags;
  oracle_flags.add_to(oracle_cmd);
  std::size_t oracle_grid = 100000;
  unsigned oracle_threads = 0;
  std::string oracle_out;
  oracle_cmd->add_option("--grid", oracle_grid, "grid points per sweep");
  oracle_cmd->add_option("--threads", oracle_threads, "worker threads (0 = auto)");
  oracle_cmd->add_option("--out", oracle_out, "output path");

  // ber
  auto* ber_cmd = app.add_subcommand("ber", "Monte Carlo BER sweep");
  ChannelFlags ber_flags;
  ber_flags.add_to(ber_cmd);
  std::string ber_scheme = "noma", ber_vars, ber_snr = "0:5:40";
  std::uint64_t ber_trials = 2000, ber_symbols = 100, ber_seed = 1;
  unsigned ber_threads = 0;
  std::string ber_out, ber_streams_out;
  ber_cmd->add_option("--scheme", ber_scheme, "noma|tdma|fdma|crnoma");
  ber_cmd->add_option("--vars", ber_vars, "Rayleigh variances var11,var21,var22");
  ber_cmd->add_option("--snr", ber_snr, "dB grid: start:step:stop or comma list");
  ber_cmd->add_option("--trials", ber_trials, "channel realizations per point");
  ber_cmd->add_option("--symbols", ber_symbols, "symbols per realization");
  ber_cmd->add_option("--seed", ber_seed, "stream seed");
  ber_cmd->add_option("--threads", ber_threads, "worker threads (0 = auto)");
  ber_cmd->add_option("--out", ber_out, "CSV path (stdout if omitted)");
  ber_cmd->add_option("--streams-out", ber_streams_out, "per-stream CSV path");

  // constellation
  auto* cons_cmd = app.add_subcommand("constellation", "received constellation dump");
  ChannelFlags cons_flags;
  cons_flags.add_to(cons_cmd);
  int cons_receiver = 1;
  std::string cons_out;
  cons_cmd->add_option("--receiver", cons_receiver, "1 (sum) or 2 (direct)");
  cons_cmd->add_option("--out", cons_out, "output path");

  // check
  auto* check_cmd = app.add_subcommand("check", "validate an emitted JSON/CSV document");
  std::string check_file;
  check_cmd->add_option("--file", check_file, "document to validate")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (ChannelFlags* flags :
         {&solve_flags, &mindist_flags, &oracle_flags, &ber_flags, &cons_flags}) {
      flags->load_json_if_given();
    }
    if (solve_cmd->parsed()) return cmd_solve(solve_flags, with_trace, solve_out);
    if (farey_cmd->parsed()) return cmd_farey(farey_K, farey_ext, farey_iv, farey_L, farey_out);
    if (mindist_cmd->parsed()) return cmd_mindist(mindist_flags, md_w1, md_w2, mindist_out);
    if (oracle_cmd->parsed()) {
      return cmd_oracle(oracle_flags, oracle_grid, oracle_threads, oracle_out);
    }
    if (ber_cmd->parsed()) {
      return cmd_ber(ber_scheme, ber_flags, ber_vars, ber_snr, ber_trials, ber_symbols,
                     ber_seed, ber_threads, ber_out, ber_streams_out);
    }
    if (cons_cmd->parsed()) return cmd_constellation(cons_flags, cons_receiver, cons_out);
    if (check_cmd->parsed()) return cmd_check(check_file);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
