// regcalc: exact invariants of graded quotients of polynomial rings over a
// prime field, plus a batch verifier and bound-tightness search.

#include <CLI11.hpp>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "regcalc/deadline.hpp"
#include "regcalc/report.hpp"

namespace fs = std::filesystem;
using namespace regcalc;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  int timeout_secs = 120;
  long long char_override = 0;
  int jobs = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Replaces the characteristic token on the ring line; used by --char.
std::string override_char_text(const std::string& text, long long p) {
  std::string out = text;
  size_t pos = out.find("ring");
  if (pos == std::string::npos) return out;
  size_t num = out.find_first_of("0123456789", pos);
  if (num == std::string::npos) return out;
  size_t end = out.find_first_not_of("0123456789", num);
  out.replace(num, end - num, std::to_string(p));
  return out;
}

IdealFile load_ideal(const std::string& path, const GlobalOpts& g) {
  std::string text = read_file(path);
  if (g.char_override) text = override_char_text(text, g.char_override);
  return parse_ideal_file(text);
}

/// Regression pins from `expect` lines become ordinary checks.
void append_expect_checks(VerifyOutcome& out, const IdealFile& file) {
  auto value_of = [&](const std::string& key, long long& v) {
    const InvariantReport& inv = out.inv;
    if (key == "dim") v = inv.dim;
    else if (key == "depth") v = inv.depth;
    else if (key == "deg") v = inv.deg;
    else if (key == "reg") v = inv.reg;
    else if (key == "reg_ideal") v = inv.reg_ideal;
    else if (key == "ri") v = inv.ri;
    else if (key == "beg") v = inv.beg;
    else if (key == "gen") v = inv.gen;
    else if (key == "pd") v = inv.pd;
    else if (key == "hdeg") v = inv.hdeg;
    else return false;
    return true;
  };
  for (const auto& [key, want] : file.expect) {
    long long got = 0;
    CheckResult c;
    if (!value_of(key, got)) {
      c = detail::make_skip("expect." + key, "unknown expect key", out.digest);
    } else {
      c = detail::make_check("expect." + key, "==", got, want, out.digest);
    }
    out.checks.push_back(std::move(c));
  }
}

struct FileRun {
  std::string path;
  std::string label;
  bool errored = false;
  std::string error;
  IdealFile file;
  VerifyOutcome outcome;
  BettiTable betti;
  long long elapsed_ms = 0;
};

FileRun run_file(const std::string& path, std::uint64_t seed, const GlobalOpts& g,
                 bool b7_additivity) {
  FileRun r;
  r.path = path;
  auto t0 = std::chrono::steady_clock::now();
  try {
    ScopedDeadline budget(std::chrono::milliseconds(1000ll * g.timeout_secs));
    r.file = load_ideal(path, g);
    r.label = r.file.label;
    Analyzer az(r.file.ring);
    VerifyOptions opt;
    opt.seed = seed;
    opt.b7_additivity = b7_additivity;
    r.outcome = verify_ideal(az, r.file.gens, opt);
    r.betti = az.analyze(quotient_ring(r.file.ring, r.file.gens)).betti;
    append_expect_checks(r.outcome, r.file);
  } catch (const std::exception& e) {
    r.errored = true;
    r.error = e.what();
  }
  r.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  return r;
}

int cmd_report(const std::string& path, const std::string& json_path, const GlobalOpts& g) {
  FileRun r = run_file(path, g.seed, g, /*b7_additivity=*/true);
  if (r.errored) {
    std::cerr << "error: " << path << ": " << r.error << "\n";
    return 2;
  }
  std::cout << report_text(r.file, r.outcome, r.betti);
  if (!json_path.empty()) {
    OrderedJson j = report_json(r.file, r.outcome, g.seed, r.elapsed_ms);
    std::ofstream out(json_path, std::ios::binary);
    out << j.dump(2) << "\n";
  }
  return r.outcome.any_failed() ? 1 : 0;
}

std::vector<std::string> corpus_files(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".ideal")
      files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_verify(const std::string& dir, const std::string& json_path, const GlobalOpts& g,
               int b7_count) {
  std::vector<std::string> files;
  try {
    files = corpus_files(dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (files.empty()) {
    std::cout << "warning: no .ideal files under " << dir << "\n";
    return 0;
  }

  std::vector<FileRun> runs(files.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      runs[i] = run_file(files[i], mix_seed(g.seed, i), g, static_cast<int>(i) < b7_count);
    }
  };
  int jobs = std::max(1, g.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // Aggregate table: per check id, pass/fail/skip counts across the corpus.
  std::map<std::string, std::array<long long, 3>> table;
  long long errored = 0, failed_files = 0;
  for (const FileRun& r : runs) {
    if (r.errored) {
      ++errored;
      continue;
    }
    bool file_failed = false;
    for (const CheckResult& c : r.outcome.checks) {
      int slot = c.skipped ? 2 : (c.passed ? 0 : 1);
      table[c.check_id][slot]++;
      file_failed |= c.failed();
    }
    failed_files += file_failed;
  }

  std::cout << "verified " << runs.size() << " ideal files (" << errored << " errored)\n\n";
  std::cout << "check                                   pass  fail  skip\n";
  std::cout << "------------------------------------------------------\n";
  for (const auto& [id, counts] : table) {
    std::printf("%-38s %5lld %5lld %5lld\n", id.c_str(), counts[0], counts[1], counts[2]);
  }
  std::cout << "\n";
  for (const FileRun& r : runs) {
    if (r.errored) {
      std::cout << "[ERROR] " << r.path << ": " << r.error << "\n";
    } else if (r.outcome.any_failed()) {
      std::cout << "[FAIL]  " << r.path << "\n";
      for (const CheckResult& c : r.outcome.checks)
        if (c.failed())
          std::cout << "        " << c.check_id << ": "
                    << (c.lhs_is_neg_infty ? std::string("-inf") : c.lhs.str()) << " " << c.relation
                    << " " << c.rhs.str() << " violated\n";
    }
  }

  if (!json_path.empty()) {
    OrderedJson j;
    j["schema"] = kReportSchema;
    j["tool_version"] = kToolVersion;
    j["seed"] = g.seed;
    OrderedJson arr = OrderedJson::array();
    for (const FileRun& r : runs) {
      OrderedJson f;
      f["path"] = r.path;
      if (r.errored) {
        f["error"] = r.error;
      } else {
        f["report"] = report_json(r.file, r.outcome, g.seed, r.elapsed_ms);
      }
      arr.push_back(f);
    }
    j["files"] = arr;
    std::ofstream out(json_path, std::ios::binary);
    out << j.dump(2) << "\n";
  }

  if (errored || failed_files) {
    std::cout << "\nRESULT: FAIL (" << failed_files << " files with violated checks, " << errored
              << " errors)\n";
    return 1;
  }
  std::cout << "\nRESULT: PASS\n";
  return 0;
}

/// Exact decimal string for lhs/rhs with six digits, avoiding floating point.
std::string ratio_string(const BigInt& lhs, const BigInt& rhs) {
  if (rhs == 0) return "nan";
  BigInt scaled = lhs * 1000000;
  BigInt q = scaled / rhs;
  bool neg = q < 0;
  if (neg) q = -q;
  std::string digits = q.str();
  while (digits.size() < 7) digits.insert(digits.begin(), '0');
  std::string s = digits.substr(0, digits.size() - 6) + "." + digits.substr(digits.size() - 6);
  return (neg ? "-" : "") + s;
}

struct SearchHit {
  std::string check_id;
  BigInt lhs, rhs;
  long long ideal_index;
  std::string ideal_text;

  /// Tightness order: larger lhs/rhs first; ties by index.
  bool tighter_than(const SearchHit& o) const {
    BigInt a = lhs * o.rhs, b = o.lhs * rhs;
    if ((rhs > 0) != (o.rhs > 0)) throw std::logic_error("mixed-sign ratio comparison");
    if (a != b) return a > b;
    return ideal_index < o.ideal_index;
  }
};

int cmd_search(int n, long long p, int max_deg, int num_gens, long long count,
               const std::string& flavor_s, int top_k, const std::string& out_path,
               const GlobalOpts& g) {
  if (n < 1 || n > 4) {
    std::cerr << "error: search supports 1 <= n <= 4\n";
    return 2;
  }
  GradedRing R(n, static_cast<fp_t>(p));
  IdealFlavor flavor = flavor_from_string(flavor_s);
  std::vector<std::string> names = default_var_names(n);

  struct IdealRun {
    bool timed_out = false;
    bool failed = false;
    std::string text;
    std::vector<SearchHit> hits;
  };
  std::vector<IdealRun> results(count);
  std::atomic<long long> next{0};
  auto worker = [&] {
    while (true) {
      long long i = next.fetch_add(1);
      if (i >= count) return;
      IdealRun& out = results[i];
      std::uint64_t iseed = mix_seed(g.seed, static_cast<std::uint64_t>(i) + 1);
      SplitMix64 rng(iseed);
      std::vector<Poly> gens = random_ideal_gens(R, flavor, max_deg, num_gens, rng);
      std::string text;
      for (size_t k = 0; k < gens.size(); ++k)
        text += (k ? ", " : "") + poly_to_string(gens[k], names, R);
      out.text = text;
      try {
        ScopedDeadline budget(std::chrono::milliseconds(1000ll * g.timeout_secs));
        Analyzer az(R);
        VerifyOptions opt;
        opt.seed = iseed;
        VerifyOutcome v = verify_ideal(az, gens, opt);
        out.failed = v.any_failed();
        for (const CheckResult& c : v.checks) {
          if (c.skipped || c.lhs_is_neg_infty) continue;
          if (c.relation != "<" && c.relation != "<=") continue;
          if (c.rhs <= 0) continue;
          out.hits.push_back({c.check_id, c.lhs, c.rhs, i, text});
        }
      } catch (const ComputationTimeout&) {
        out.timed_out = true;
      } catch (const std::exception& e) {
        out.failed = true;
        out.text += std::string("  # error: ") + e.what();
      }
    }
  };
  int jobs = std::max(1, g.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::map<std::string, std::vector<SearchHit>> per_check;
  long long timeouts = 0, failures = 0;
  for (const IdealRun& r : results) {
    timeouts += r.timed_out;
    failures += r.failed;
    for (const SearchHit& h : r.hits) per_check[h.check_id].push_back(h);
  }
  std::ostringstream os;
  os << "# regcalc search extremal table\n";
  os << "# n=" << n << " char=" << p << " max_deg=" << max_deg << " num_gens=" << num_gens
     << " count=" << count << " flavor=" << flavor_s << " seed=" << g.seed << " top=" << top_k
     << "\n";
  os << "# ideals=" << count << " timeouts=" << timeouts << " check_failures=" << failures << "\n";
  for (auto& [id, hits] : per_check) {
    std::sort(hits.begin(), hits.end(),
              [](const SearchHit& a, const SearchHit& b) { return a.tighter_than(b); });
    for (int k = 0; k < std::min<long long>(top_k, hits.size()); ++k) {
      const SearchHit& h = hits[k];
      os << id << "\t" << (k + 1) << "\t" << ratio_string(h.lhs, h.rhs) << "\t" << h.lhs.str()
         << "\t" << h.rhs.str() << "\t(" << h.ideal_text << ")\n";
    }
  }
  std::string payload = os.str();
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << payload;
    std::cout << "wrote " << out_path << " (" << per_check.size() << " checks ranked)\n";
  }
  return failures ? 1 : 0;
}

int cmd_gin(const std::string& path, const std::string& order_s, const GlobalOpts& g) {
  try {
    IdealFile f = load_ideal(path, g);
    TermOrder ord = order_s == "lex" ? lex_top() : grevlex_top();
    GinResult r = gin(f.gens, ord, g.seed, f.ring);
    std::cout << "gin (order " << order_s << ", seed " << g.seed << ", attempts "
              << r.cert.attempts << "):\n";
    std::string line;
    for (size_t i = 0; i < r.gens.size(); ++i)
      line += (i ? ", " : "") + monomial_to_string(r.gens[i], f.var_names);
    std::cout << "  " << line << "\n";
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << path << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact regularity, deficiency-module and homological-degree calculator over F_p"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOpts g;
  app.add_option("--seed", g.seed, "random seed recorded in all outputs");
  app.add_option("--timeout-secs", g.timeout_secs, "per-ideal time budget")->capture_default_str();
  app.add_option("--char", g.char_override, "override the coefficient characteristic");
  app.add_option("--jobs", g.jobs, "parallel workers for corpus commands")->capture_default_str();

  std::string path, dir, json_path, out_path;
  std::string order_s = "grevlex", flavor_s = "monomial";
  int b7_count = 10;
  int n = 3, max_deg = 3, num_gens = 3, top_k = 5;
  long long count = 100, char_p = kDefaultChar;

  CLI::App* rep = app.add_subcommand("report", "full invariant report for one ideal file");
  rep->add_option("file", path, "ideal file")->required();
  rep->add_option("--json", json_path, "also write a JSON report to this path");

  const char* env_corpus = std::getenv("REGCALC_CORPUS");
  dir = env_corpus ? env_corpus : "";
  CLI::App* ver = app.add_subcommand("verify", "run every check across a directory of ideal files");
  ver->add_option("dir", dir, "corpus directory (default: $REGCALC_CORPUS)");
  ver->add_option("--json", json_path, "write the aggregate JSON report to this path");
  ver->add_option("--b7-additivity-files", b7_count,
                  "number of leading files that also run the exact-sequence length check")
      ->capture_default_str();

  CLI::App* sea = app.add_subcommand("search", "randomized bound-tightness search");
  sea->add_option("--n", n, "number of variables (<= 4)")->capture_default_str();
  sea->add_option("--search-char", char_p, "coefficient characteristic")->capture_default_str();
  sea->add_option("--max-deg", max_deg, "maximum generator degree")->capture_default_str();
  sea->add_option("--num-gens", num_gens, "generators per ideal")->capture_default_str();
  sea->add_option("--count", count, "number of random ideals")->capture_default_str();
  sea->add_option("--flavor", flavor_s, "monomial | binomial | dense")->capture_default_str();
  sea->add_option("--top", top_k, "instances kept per check")->capture_default_str();
  sea->add_option("--out", out_path, "results file (stdout if omitted)");

  CLI::App* gi = app.add_subcommand("gin", "generic initial ideal of one ideal file");
  gi->add_option("file", path, "ideal file")->required();
  gi->add_option("--order", order_s, "grevlex | lex")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rep->parsed()) return cmd_report(path, json_path, g);
    if (ver->parsed()) {
      if (dir.empty()) {
        std::cerr << "error: no corpus directory given and REGCALC_CORPUS is unset\n";
        return 2;
      }
      return cmd_verify(dir, json_path, g, b7_count);
    }
    if (sea->parsed()) return cmd_search(n, char_p, max_deg, num_gens, count, flavor_s, top_k,
                                         out_path, g);
    if (gi->parsed()) return cmd_gin(path, order_s, g);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
