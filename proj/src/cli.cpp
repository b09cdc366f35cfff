#include "gaussfermat/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "gaussfermat/census.hpp"
#include "gaussfermat/classify.hpp"
#include "json.hpp"

namespace gaussfermat::cli {

namespace {

const std::vector<GaussianBase> kTableGaussianBases = {
    {1, 2}, {1, 4}, {1, 6}, {1, 10}, {2, 5}, {2, 7}, {3, 8}, {3, 10}, {4, 5}, {4, 9},
};
const std::vector<u64> kTableIntegerBases = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11};

unsigned default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const unsigned long w = std::stoul(env);
      if (w > 0) return static_cast<unsigned>(w);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, ',')) {
    if (current.find_first_not_of(" \t") != std::string::npos) items.push_back(current);
  }
  return items;
}

std::vector<GaussianBase> parse_gaussian_list(const std::string& text) {
  std::vector<GaussianBase> out;
  for (const auto& item : split_list(text)) out.push_back(parse_gaussian_base(item));
  return out;
}

std::vector<u64> parse_integer_list(const std::string& text) {
  std::vector<u64> out;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    const std::string trimmed = item.substr(item.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed[0] == '-') {
      throw std::invalid_argument("malformed integer base '" + item + "'");
    }
    const unsigned long long v = std::stoull(trimmed, &used);
    if (trimmed.find_first_not_of(" \t", used) != std::string::npos) {
      throw std::invalid_argument("malformed integer base '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

// Rate-limited progress lines on the error stream. Runs shorter than a
// second print nothing.
class Progress {
 public:
  Progress(std::ostream& err, std::string label, bool quiet)
      : err_(err), label_(std::move(label)), quiet_(quiet),
        last_(std::chrono::steady_clock::now()) {}

  CensusControl control() {
    CensusControl c;
    if (quiet_) return c;
    c.progress = [this](u64 done, u64 total) {
      const auto now = std::chrono::steady_clock::now();
      const bool final_line = done == total && printed_;
      if (!final_line && now - last_ < std::chrono::seconds(1)) return;
      last_ = now;
      printed_ = true;
      err_ << label_ << ": " << done << "/" << total << " blocks\n";
    };
    return c;
  }

 private:
  std::ostream& err_;
  std::string label_;
  bool quiet_;
  bool printed_ = false;
  std::chrono::steady_clock::time_point last_;
};

struct Config {
  unsigned workers = default_workers();
  std::string format = "plain";
  u64 giuga_cap = kDefaultGiugaCap;
  u64 enum_cap = kDefaultEnumerationCap;
  bool quiet = false;
};

std::string bool_text(bool b) { return b ? "true" : "false"; }

void render_report(const ClassificationReport& r, const std::string& format, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> fields = {
      {"n", std::to_string(r.n)},
      {"is_prime", bool_text(r.is_prime)},
      {"phi", std::to_string(r.phi)},
      {"lambda", std::to_string(r.lambda)},
      {"script_f", std::to_string(r.script_f)},
      {"g_carmichael", bool_text(r.g_carmichael)},
      {"carmichael", bool_text(r.carmichael)},
      {"g_cyclic", bool_text(r.g_cyclic)},
      {"cyclic", bool_text(r.cyclic)},
      {"g_lehmer", bool_text(r.g_lehmer)},
      {"phi_power_congruence", bool_text(r.phi_power_congruence)},
      {"lambda_power_congruence", bool_text(r.lambda_power_congruence)},
      {"williams_1", bool_text(r.williams_1)},
  };
  if (r.giuga_member) fields.emplace_back("giuga_member", bool_text(*r.giuga_member));
  if (r.g_carmichael_witness) {
    fields.emplace_back("g_carmichael_witness", std::to_string(*r.g_carmichael_witness));
  }
  if (r.carmichael_witness) {
    fields.emplace_back("carmichael_witness", std::to_string(*r.carmichael_witness));
  }

  if (format == "records") {
    nlohmann::ordered_json j;
    j["kind"] = "classify";
    for (const auto& [k, v] : fields) {
      if (v == "true" || v == "false") {
        j[k] = v == "true";
      } else {
        j[k] = std::stoull(v);
      }
    }
    out << j.dump() << '\n';
  } else if (format == "csv") {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
    out << '\n';
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].second;
    out << '\n';
  } else {
    for (const auto& [k, v] : fields) out << k << '=' << v << '\n';
  }
}

void render_list(std::string_view kind, const RangeQuery& q, std::optional<std::string> base,
                 const std::vector<u64>& values, const std::string& format, std::ostream& out) {
  if (format == "records") {
    out << list_to_record(kind, q, std::move(base), values);
  } else if (format == "csv") {
    out << list_to_csv(values);
  } else {
    for (u64 v : values) out << v << '\n';
  }
}

void render_table(const CensusTable& t, const std::string& format, std::ostream& out) {
  if (format == "records") {
    out << to_records(t);
    return;
  }
  if (format == "csv") {
    out << to_csv(t);
    return;
  }
  std::size_t width = 4;
  for (const auto& z : t.gaussian_bases) width = std::max(width, to_string(z).size());
  out << std::left << std::setw(static_cast<int>(width)) << "base";
  for (u64 a : t.integer_bases) out << ' ' << std::right << std::setw(4) << a;
  out << '\n';
  for (std::size_t i = 0; i < t.gaussian_bases.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(width)) << to_string(t.gaussian_bases[i]);
    for (u64 c : t.counts[i]) out << ' ' << std::right << std::setw(4) << c;
    out << '\n';
  }
}

void render_verification(const VerificationReport& r, const std::string& format,
                         std::ostream& out) {
  if (format == "records") {
    nlohmann::ordered_json j;
    j["kind"] = "verify";
    j["source"] = r.source;
    j["total_read"] = r.total_read;
    j["filtered"] = r.filtered;
    j["invalid_base"] = r.invalid_base;
    j["malformed_lines"] = r.malformed_lines;
    j["passing"] = r.passing;
    j["notes"] = r.notes;
    out << j.dump() << '\n';
    return;
  }
  if (format == "csv") {
    out << "source,total_read,filtered,invalid_base,malformed_lines,passing\n";
    out << r.source << ',' << r.total_read << ',' << r.filtered << ',' << r.invalid_base << ','
        << r.malformed_lines << ',';
    for (std::size_t i = 0; i < r.passing.size(); ++i) out << (i ? " " : "") << r.passing[i];
    out << '\n';
    return;
  }
  out << "source=" << r.source << '\n'
      << "total_read=" << r.total_read << '\n'
      << "filtered=" << r.filtered << '\n'
      << "invalid_base=" << r.invalid_base << '\n'
      << "malformed_lines=" << r.malformed_lines << '\n'
      << "passing=";
  for (std::size_t i = 0; i < r.passing.size(); ++i) out << (i ? " " : "") << r.passing[i];
  out << '\n';
  for (const auto& note : r.notes) out << "note=" << note << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian Fermat tests, number classes over G_n, and range censuses",
               "gaussfermat"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  Config cfg;
  app.add_option("--workers", cfg.workers, "worker threads (default: $GAUSSFERMAT_WORKERS or cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"plain", "csv", "records"}));
  app.add_option("--giuga-cap", cfg.giuga_cap, "largest n for Giuga-set sums")
      ->check(CLI::PositiveNumber);
  app.add_option("--enum-cap", cfg.enum_cap, "largest n for explicit group enumeration")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", cfg.quiet, "suppress progress on the error stream");

  // classify
  u64 classify_n = 0;
  bool classify_giuga = false;
  auto* classify_cmd = app.add_subcommand("classify", "report every number-class flag for n");
  classify_cmd->add_option("n", classify_n, "integer, 2 <= n < 2^63")->required();
  classify_cmd->add_flag("--giuga", classify_giuga, "also test Giuga-set membership");

  // group
  u64 group_n = 0;
  bool group_elements = false;
  auto* group_cmd = app.add_subcommand("group", "structure of G_n");
  group_cmd->add_option("n", group_n, "modulus, 2 <= n < 2^63")->required();
  group_cmd->add_flag("--elements", group_elements, "list the elements (n <= enum cap)");

  // search
  std::string search_what;
  u64 search_lo = 2, search_hi = 0;
  std::string search_filter, search_base;
  u64 search_int_base = 0;
  auto* search_cmd = app.add_subcommand(
      "search",
      "list n in [lo, hi) in a class: gfp, psp, carmichael_intersection, or a classifier "
      "(g_carmichael, carmichael, g_cyclic, g_lehmer, congruence_exception, giuga, williams_1, "
      "twin_pair_product)");
  search_cmd->add_option("what", search_what, "class to search for")->required();
  search_cmd->add_option("--lo", search_lo, "inclusive lower bound (default 2)");
  search_cmd->add_option("--hi", search_hi, "exclusive upper bound")->required();
  search_cmd->add_option("--filter", search_filter, "residue filter MODULUS,RESIDUE");
  search_cmd->add_option("--base", search_base, "Gaussian base a+bi for gfp");
  search_cmd->add_option("--int-base", search_int_base, "integer base for psp");

  // table
  u64 table_lo = 2, table_limit = 40'000'000;
  std::string table_filter;
  std::optional<std::string> table_gaussian, table_integer;
  auto* table_cmd = app.add_subcommand("table", "joint Gaussian/classical pseudoprime counts");
  table_cmd->add_option("--limit", table_limit, "exclusive upper bound (default 40000000)");
  table_cmd->add_option("--lo", table_lo, "inclusive lower bound (default 2)");
  table_cmd->add_option("--filter", table_filter, "residue filter MODULUS,RESIDUE");
  table_cmd->add_option("--gaussian-bases", table_gaussian, "comma-separated a+bi list");
  table_cmd->add_option("--integer-bases", table_integer, "comma-separated integer list");

  // verify
  std::string verify_file, verify_base = "1+2i", verify_filter;
  auto* verify_cmd = app.add_subcommand(
      "verify", "run the Gaussian test on every integer of a pseudoprime list");
  verify_cmd->add_option("--file", verify_file, "one integer per line, '#' comments")
      ->required();
  verify_cmd->add_option("--base", verify_base, "Gaussian base (default 1+2i)");
  verify_cmd->add_option("--filter", verify_filter, "residue filter MODULUS,RESIDUE");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    auto parse_filter = [](const std::string& text) -> std::optional<ResidueFilter> {
      if (text.empty()) return std::nullopt;
      return parse_residue_filter(text);
    };

    if (*classify_cmd) {
      require_modulus(classify_n, "n");
      ClassifyOptions options;
      options.giuga = classify_giuga;
      options.giuga_cap = cfg.giuga_cap;
      render_report(classify(classify_n, options), cfg.format, out);
      return kExitOk;
    }

    if (*group_cmd) {
      require_modulus(group_n, "n");
      const GroupDescriptor g = group_structure(group_n);
      out << "n=" << group_n << '\n' << "order=" << g.order << '\n'
          << "exponent=" << g.exponent << '\n' << "cyclic_orders=";
      for (std::size_t i = 0; i < g.cyclic_orders.size(); ++i) {
        out << (i ? " " : "") << g.cyclic_orders[i];
      }
      out << '\n';
      if (group_elements) {
        for (const auto& z : enumerate_group(group_n, cfg.enum_cap)) {
          out << z.re() << '+' << z.im() << "i\n";
        }
      }
      return kExitOk;
    }

    if (*search_cmd) {
      RangeQuery q;
      q.lo = search_lo;
      q.hi = search_hi;
      q.filter = parse_filter(search_filter);
      q.workers = cfg.workers;
      Progress progress(err, "search " + search_what, cfg.quiet);
      const CensusControl control = progress.control();
      if (search_what == "gfp") {
        if (search_base.empty()) throw std::invalid_argument("search gfp requires --base");
        const GaussianBase z = parse_gaussian_base(search_base);
        render_list("gfp", q, to_string(z), search_gfp(q, z, control), cfg.format, out);
      } else if (search_what == "psp") {
        if (search_int_base < 2) throw std::invalid_argument("search psp requires --int-base >= 2");
        render_list("psp", q, std::to_string(search_int_base),
                    search_fermat_psp(q, search_int_base, control), cfg.format, out);
      } else if (search_what == "carmichael_intersection") {
        render_list("carmichael_intersection", q, std::nullopt,
                    carmichael_intersection_scan(q, control), cfg.format, out);
      } else {
        const Classifier which = parse_classifier(search_what);
        render_list(to_string(which), q, std::nullopt,
                    search_classifier(q, which, cfg.giuga_cap, control), cfg.format, out);
      }
      return kExitOk;
    }

    if (*table_cmd) {
      RangeQuery q;
      q.lo = table_lo;
      q.hi = table_limit;
      q.filter = parse_filter(table_filter);
      q.workers = cfg.workers;
      const auto zs = table_gaussian ? parse_gaussian_list(*table_gaussian) : kTableGaussianBases;
      const auto as = table_integer ? parse_integer_list(*table_integer) : kTableIntegerBases;
      Progress progress(err, "table", cfg.quiet);
      render_table(joint_census(q, zs, as, progress.control()), cfg.format, out);
      return kExitOk;
    }

    if (*verify_cmd) {
      const GaussianBase z = parse_gaussian_base(verify_base);
      const VerificationReport report =
          verify_external_list(verify_file, z, parse_filter(verify_filter));
      render_verification(report, cfg.format, out);
      if (!report.passing.empty()) {
        for (const auto& note : report.notes) err << "warning: " << note << '\n';
        return kExitFinding;
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace gaussfermat::cli
