// Command-line surface for the subset-orbit toolkit. All output is
// machine-readable and byte-stable across runs and --jobs settings.

#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "sworbit/catalogue.hpp"
#include "sworbit/projline.hpp"
#include "sworbit/swcheck.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitExpectMismatch = 1;
constexpr int kExitUsage = 2;

struct SourceOpts {
  bool builtin = false;
  std::string catalogue_path;
};

struct FormatOpt {
  std::string format = "text";
};

void add_source_opts(CLI::App* cmd, SourceOpts& src) {
  auto* b = cmd->add_flag("--builtin", src.builtin, "use the builtin catalogue");
  auto* c = cmd->add_option("--catalogue", src.catalogue_path, "read groups from a catalogue file");
  b->excludes(c);
}

void add_format_opt(CLI::App* cmd, FormatOpt& fmt) {
  cmd->add_option("--format", fmt.format, "output format")
      ->check(CLI::IsMember({"text", "tsv"}))
      ->capture_default_str();
}

std::vector<sworbit::GroupRecord> load_records(const SourceOpts& src) {
  if (src.builtin) return sworbit::builtin_catalogue();
  if (src.catalogue_path.empty())
    throw sworbit::ParseError("select a group source: --builtin or --catalogue <path>");
  std::ifstream in(src.catalogue_path);
  if (!in) throw sworbit::ParseError("cannot open catalogue file " + src.catalogue_path);
  return sworbit::parse_catalogue(in);
}

const sworbit::GroupRecord& find_record(const std::vector<sworbit::GroupRecord>& records,
                                        const std::string& name) {
  for (const auto& r : records)
    if (r.name == name) return r;
  throw sworbit::ParseError("no group named " + name + " in the catalogue");
}

// tsv mirrors text field-for-field: spaces become tabs.
void emit(const std::string& line, const std::string& format) {
  if (format == "text") {
    std::cout << line << "\n";
    return;
  }
  std::string out = line;
  for (char& c : out)
    if (c == ' ') c = '\t';
  std::cout << out << "\n";
}

std::pair<int, int> parse_k_range(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) {
    const int k = std::stoi(text);
    return {k, k};
  }
  return {std::stoi(text.substr(0, pos)), std::stoi(text.substr(pos + 2))};
}

std::string join_ints(const std::vector<int>& v) {
  if (v.empty()) return "-";
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

int run_order(const SourceOpts& src, const FormatOpt& fmt, const std::string& name) {
  const auto records = load_records(src);
  const auto& rec = find_record(records, name);
  const auto chain = sworbit::build_chain(rec.group());
  emit("order " + rec.name + " " + std::to_string(chain.order()), fmt.format);
  return kExitOk;
}

int run_sigma(const SourceOpts& src, const FormatOpt& fmt, const std::string& name,
              const std::string& krange) {
  const auto records = load_records(src);
  const auto& rec = find_record(records, name);
  int lo = 1, hi = rec.degree - 1;
  if (!krange.empty()) std::tie(lo, hi) = parse_k_range(krange);
  if (lo < 1 || hi > rec.degree - 1 || lo > hi)
    throw sworbit::ParseError("k range must lie within 1.." + std::to_string(rec.degree - 1));
  const auto g = rec.group();
  const auto chain = sworbit::build_chain(g);
  for (int k = lo; k <= hi; ++k) {
    const auto part = sworbit::subset_orbits(g, chain, k);
    emit("sigma " + rec.name + " k=" + std::to_string(k) + " " + std::to_string(part.sigma()),
         fmt.format);
  }
  return kExitOk;
}

struct ScanOutput {
  std::vector<std::string> lines;
  bool mismatch = false;
};

ScanOutput scan_one(const sworbit::GroupRecord& rec, std::optional<std::pair<int, int>> krange,
                    bool expect) {
  ScanOutput out;
  const auto g = rec.group();
  const auto chain = sworbit::build_chain(g);
  auto [lo, hi] = krange ? *krange : sworbit::default_k_range(rec.degree);
  lo = std::max(lo, 1);
  hi = std::min(hi, rec.degree - 1);
  const auto witnesses = sworbit::sw_scan(g, chain, lo, hi);
  for (const auto& w : witnesses) out.lines.push_back(sworbit::witness_line(w, rec.name));
  if (expect) {
    std::vector<int> got;
    for (const auto& w : witnesses)
      if (got.empty() || got.back() != w.k) got.push_back(w.k);
    std::vector<int> want = rec.expect_k.value_or(std::vector<int>{});
    std::sort(want.begin(), want.end());
    if (got == want) {
      out.lines.push_back("expect " + rec.name + " ok");
    } else {
      out.lines.push_back("expect " + rec.name + " mismatch got=" + join_ints(got) +
                          " want=" + join_ints(want));
      out.mismatch = true;
    }
  }
  return out;
}

int run_swscan(const SourceOpts& src, const FormatOpt& fmt, const std::string& group_filter,
               const std::string& krange_text, unsigned jobs, bool expect) {
  const auto records = load_records(src);
  std::optional<std::pair<int, int>> krange;
  if (!krange_text.empty()) krange = parse_k_range(krange_text);

  std::vector<const sworbit::GroupRecord*> selected;
  for (const auto& rec : records) {
    if (!group_filter.empty() && rec.name != group_filter) continue;
    if (group_filter.empty() && rec.skip_scan) continue;  // explicit selection overrides
    selected.push_back(&rec);
  }
  if (!group_filter.empty() && selected.empty())
    throw sworbit::ParseError("no group named " + group_filter + " in the catalogue");

  std::vector<ScanOutput> outputs(selected.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < selected.size(); ++i) outputs[i] = scan_one(*selected[i], krange, expect);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next.fetch_add(1); i < selected.size(); i = next.fetch_add(1))
        outputs[i] = scan_one(*selected[i], krange, expect);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<unsigned>(jobs, selected.size()); ++t)
      pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  bool mismatch = false;
  for (const auto& out : outputs) {
    for (const auto& line : out.lines) emit(line, fmt.format);
    mismatch = mismatch || out.mismatch;
  }
  return mismatch ? kExitExpectMismatch : kExitOk;
}

int run_projline(const FormatOpt& fmt, int q) {
  const auto report = sworbit::theorem_check(q);
  emit("valid_exponents " + std::to_string(report.valid.size()), fmt.format);
  for (const auto& row : report.per_exponent) {
    emit("exponent x=" + std::to_string(row.x) + " pgl_stab=" + std::to_string(row.pgl_stab) +
             " psl_stab=" + std::to_string(row.psl_stab) + " det_A=" + std::to_string(row.det_a) +
             " A_in_psl=" + (row.a_in_psl ? "true" : "false") +
             " psl_orbit=" + std::to_string(row.psl_orbit) +
             " exceeds_C3=" + (row.exceeds_c3 ? "true" : "false"),
         fmt.format);
  }
  return kExitOk;
}

int run_ud(const SourceOpts& src, const FormatOpt& fmt, const std::string& name,
           const std::string& delta_text, const std::string& sigma_text) {
  const auto records = load_records(src);
  const auto& rec = find_record(records, name);
  const auto delta = sworbit::parse_subset(delta_text, rec.degree);
  const auto sigma = sworbit::parse_subset(sigma_text, rec.degree);
  const auto g = rec.group();
  const auto chain = sworbit::build_chain(g);
  const auto ud = sworbit::ud_counts(g, chain, delta, sigma);

  std::string verdict;
  if (ud.nested)
    verdict = "ok";
  else if (ud.u == 0 && ud.d == 0)
    verdict = "skipped";
  else
    verdict = static_cast<std::uint64_t>(ud.d) * ud.sigma_len ==
                      static_cast<std::uint64_t>(ud.u) * ud.delta_len
                  ? "ok"
                  : "fail";
  emit("ud u=" + std::to_string(ud.u) + " d=" + std::to_string(ud.d) +
           " |D^G|=" + std::to_string(ud.delta_len) + " |S^G|=" + std::to_string(ud.sigma_len) +
           " identity=" + verdict,
       fmt.format);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permutation group orbit-length toolkit"};
  app.require_subcommand(1);

  SourceOpts src;
  FormatOpt fmt;
  std::string name, krange, delta_text, sigma_text, group_filter;
  unsigned jobs = 1;
  bool expect = false;
  int q = 0;

  auto* cmd_order = app.add_subcommand("order", "print the exact group order");
  add_source_opts(cmd_order, src);
  add_format_opt(cmd_order, fmt);
  cmd_order->add_option("name", name, "group name")->required();

  auto* cmd_sigma = app.add_subcommand("sigma", "print orbit counts on k-subsets");
  add_source_opts(cmd_sigma, src);
  add_format_opt(cmd_sigma, fmt);
  cmd_sigma->add_option("name", name, "group name")->required();
  cmd_sigma->add_option("--k", krange, "k range a..b (default: 1..degree-1)");

  auto* cmd_swscan = app.add_subcommand("swscan", "scan for orbit-length witnesses");
  add_source_opts(cmd_swscan, src);
  add_format_opt(cmd_swscan, fmt);
  cmd_swscan->add_option("--group", group_filter, "scan a single group");
  cmd_swscan->add_option("--k", krange, "k range override a..b");
  cmd_swscan->add_option("--jobs", jobs, "worker threads across groups")->capture_default_str();
  cmd_swscan->add_flag("--expect", expect, "cross-check witnesses against expect_k metadata");

  auto* cmd_projline = app.add_subcommand("projline", "projective-line stabilizer report");
  add_format_opt(cmd_projline, fmt);
  cmd_projline->add_option("--q", q, "odd prime power >= 7")->required();

  auto* cmd_ud = app.add_subcommand("ud", "removal/extension double-count for a subset pair");
  add_source_opts(cmd_ud, src);
  add_format_opt(cmd_ud, fmt);
  cmd_ud->add_option("name", name, "group name")->required();
  cmd_ud->add_option("--delta", delta_text, "k-subset, e.g. {1,2,3}")->required();
  cmd_ud->add_option("--sigma", sigma_text, "(k+1)-subset, e.g. {1,2,3,4}")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_order->parsed()) return run_order(src, fmt, name);
    if (cmd_sigma->parsed()) return run_sigma(src, fmt, name, krange);
    if (cmd_swscan->parsed()) return run_swscan(src, fmt, group_filter, krange, jobs, expect);
    if (cmd_projline->parsed()) return run_projline(fmt, q);
    if (cmd_ud->parsed()) return run_ud(src, fmt, name, delta_text, sigma_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
