#include "fabius/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "fabius/audit.hpp"
#include "fabius/errors.hpp"
#include "fabius/evaluate.hpp"
#include "fabius/number_theory.hpp"
#include "fabius/sequences.hpp"
#include "fabius/text.hpp"

namespace fabius::cli {

namespace {

using nlohmann::json;

enum class Format { text, csv, json };

struct CommonOptions {
  Format format = Format::text;
  std::string out_path;
  unsigned jobs = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App& sub, CommonOptions& common) {
  static const std::map<std::string, Format> formats{
      {"text", Format::text}, {"csv", Format::csv}, {"json", Format::json}};
  sub.add_option("--format", common.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  sub.add_option("--out", common.out_path, "Write data to FILE instead of stdout");
  sub.add_option("--jobs", common.jobs, "Worker threads for scans")->check(CLI::Range(1u, 1024u));
}

json envelope(std::string_view command, json params) {
  return json{{"command", command}, {"params", std::move(params)}, {"version", kVersion}};
}

// ---- seq ------------------------------------------------------------------

struct SeqOptions {
  std::string name;
  long max = -1;
};

void run_seq(const SeqOptions& opt, const CommonOptions& common, std::ostream& out) {
  if (opt.max < 0) throw UsageError("seq: --max must be >= 0");
  if (opt.name == "R" && opt.max < 1) throw UsageError("seq R: --max must be >= 1");
  const auto n_max = static_cast<std::size_t>(opt.max);
  SequenceCache cache;

  std::vector<std::pair<std::size_t, std::string>> rows;
  if (opt.name == "c") {
    const auto v = moments(n_max, cache);
    for (std::size_t n = 0; n < v.size(); ++n) rows.emplace_back(n, v[n].to_string());
  } else if (opt.name == "d") {
    const auto v = half_moments(n_max, cache);
    for (std::size_t n = 0; n < v.size(); ++n) rows.emplace_back(n, v[n].to_string());
  } else if (opt.name == "F") {
    const auto v = moment_numerators(n_max, cache);
    for (std::size_t n = 0; n < v.size(); ++n) rows.emplace_back(n, v[n].get_str());
  } else if (opt.name == "G") {
    const auto v = half_moment_numerators(n_max, cache);
    for (std::size_t n = 0; n < v.size(); ++n) rows.emplace_back(n, v[n].get_str());
  } else {
    const auto v = reshetnikov_numbers(n_max, cache);
    for (std::size_t i = 0; i < v.size(); ++i) rows.emplace_back(i + 1, v[i].get_str());
  }

  switch (common.format) {
    case Format::text:
      for (const auto& [n, value] : rows) out << n << ' ' << value << '\n';
      break;
    case Format::csv:
      out << "n,value\n";
      for (const auto& [n, value] : rows) out << n << ',' << value << '\n';
      break;
    case Format::json: {
      json doc = envelope("seq", {{"name", opt.name}, {"max", opt.max}});
      doc["rows"] = json::array();
      for (const auto& [n, value] : rows) doc["rows"].push_back({{"n", n}, {"value", value}});
      out << doc.dump(2) << '\n';
      break;
    }
  }
}

// ---- eval -----------------------------------------------------------------

struct EvalOptions {
  std::string x;
  std::optional<std::string> eps;
  std::optional<unsigned> digits;
};

// Enough places to resolve the error bound, plus two.
unsigned default_digits(const Rational& bound) {
  unsigned places = 0;
  Rational step(1);
  while (step > bound && places < 10000) {
    step /= Rational(10);
    ++places;
  }
  return places + 2;
}

void run_eval(const EvalOptions& opt, const CommonOptions& common, std::ostream& out) {
  Rational x;
  Rational eps;
  try {
    x = parse_number(opt.x);
    if (opt.eps) eps = parse_number(*opt.eps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (eps.sign() < 0) throw UsageError("eval: --eps must be >= 0");

  SequenceCache cache;
  const EvalResult result = fabius_eval(x, eps, cache);
  const bool approx = result.method == EvalMethod::approximation;
  std::optional<unsigned> digits = opt.digits;
  if (approx && !digits) digits = default_digits(result.error_bound);
  const std::string decimal = digits ? format_decimal(result.value, *digits) : std::string();

  switch (common.format) {
    case Format::text:
      if (approx) {
        out << decimal << " +- " << result.error_bound.to_string() << '\n';
      } else {
        out << result.value.to_string() << '\n';
        if (digits) out << decimal << '\n';
      }
      break;
    case Format::csv:
      out << "x,value,error_bound,method" << (digits ? ",decimal" : "") << '\n';
      out << x.to_string() << ',' << result.value.to_string() << ',' << result.error_bound.to_string() << ','
          << to_string(result.method);
      if (digits) out << ',' << decimal;
      out << '\n';
      break;
    case Format::json: {
      json params{{"x", x.to_string()}, {"eps", eps.to_string()}};
      if (opt.digits) params["digits"] = *opt.digits;
      json doc = envelope("eval", std::move(params));
      json row{{"x", x.to_string()},
               {"value", result.value.to_string()},
               {"error_bound", result.error_bound.to_string()},
               {"method", to_string(result.method)}};
      if (digits) row["decimal"] = decimal;
      doc["rows"] = json::array({row});
      out << doc.dump(2) << '\n';
      break;
    }
  }
}

// ---- table ----------------------------------------------------------------

struct TableOptions {
  long level = 0;
  long max_level = 14;
};

void run_table(const TableOptions& opt, const CommonOptions& common, std::ostream& out) {
  if (opt.level < 1 || opt.level > opt.max_level || opt.level > 62) {
    throw UsageError("table: --level must be in [1, " + std::to_string(std::min(opt.max_level, 62L)) + "]");
  }
  const auto level = static_cast<unsigned long>(opt.level);
  const unsigned long count = 1ul << (level - 1);
  SequenceCache cache;
  cache.half_moment(level);

  std::vector<Rational> values(count);
  const unsigned long jobs = std::clamp<unsigned long>(common.jobs, 1, count);
  {
    std::vector<std::jthread> workers;
    for (unsigned long j = 0; j < jobs; ++j) {
      workers.emplace_back([&, j] {
        for (unsigned long k = count * j / jobs; k < count * (j + 1) / jobs; ++k) {
          const Rational x = ldexp(Rational(static_cast<long>(2 * k + 1)), -static_cast<long>(level));
          values[k] = fabius_eval(x, Rational(), cache).value;
        }
      });
    }
  }
  BigInt common_den = 1;
  for (const auto& v : values) {
    mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(), v.mpq().get_den_mpz_t());
  }

  switch (common.format) {
    case Format::text:
      for (unsigned long k = 0; k < count; ++k) out << 2 * k + 1 << ' ' << values[k].to_string() << '\n';
      out << "D " << common_den.get_str() << '\n';
      break;
    case Format::csv:
      out << "a,value\n";
      for (unsigned long k = 0; k < count; ++k) out << 2 * k + 1 << ',' << values[k].to_string() << '\n';
      out << "D," << common_den.get_str() << '\n';
      break;
    case Format::json: {
      json doc = envelope("table", {{"level", opt.level}});
      doc["rows"] = json::array();
      for (unsigned long k = 0; k < count; ++k) doc["rows"].push_back({{"a", 2 * k + 1}, {"value", values[k].to_string()}});
      doc["D"] = common_den.get_str();
      out << doc.dump(2) << '\n';
      break;
    }
  }
}

// ---- verify ---------------------------------------------------------------

struct VerifyCliOptions {
  std::string suite = "all";
  long max = -1;
  bool timing = false;
  bool format_given = false;
};

bool run_verify(const VerifyCliOptions& opt, const CommonOptions& common, std::ostream& out) {
  if (opt.max < 1) throw UsageError("verify: --max must be >= 1");
  const auto& names = suite_names();
  if (opt.suite != "all" && std::find(names.begin(), names.end(), opt.suite) == names.end()) {
    throw UsageError("verify: unknown suite '" + opt.suite + "'");
  }
  SequenceCache cache;
  VerifyOptions options;
  options.jobs = common.jobs;
  const auto reports = run_suites(opt.suite, static_cast<unsigned long>(opt.max), cache, options);
  const bool all_pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });

  // verify emits JSON unless another format was asked for.
  const Format format = opt.format_given ? common.format : Format::json;
  switch (format) {
    case Format::text:
      for (const auto& r : reports) {
        out << r.suite << ' ' << (r.passed() ? "pass" : "fail") << ' ' << r.n_min << ".." << r.n_max;
        if (r.first_failure) {
          const auto& f = *r.first_failure;
          out << " n=" << f.n << " check=\"" << f.check << "\" expected=" << f.expected << " actual=" << f.actual;
        }
        out << '\n';
      }
      break;
    case Format::csv:
      out << "suite,n_min,n_max,outcome,failure_n,check,expected,actual\n";
      for (const auto& r : reports) {
        out << r.suite << ',' << r.n_min << ',' << r.n_max << ',' << (r.passed() ? "pass" : "fail");
        if (r.first_failure) {
          const auto& f = *r.first_failure;
          out << ',' << f.n << ",\"" << f.check << "\"," << f.expected << ',' << f.actual;
        } else {
          out << ",,,,";
        }
        out << '\n';
      }
      break;
    case Format::json: {
      json doc = envelope("verify", {{"suite", opt.suite}, {"max", opt.max}});
      doc["report"] = json::array();
      for (const auto& r : reports) doc["report"].push_back(to_json(r, opt.timing));
      doc["outcome"] = all_pass ? "pass" : "fail";
      out << doc.dump(2) << '\n';
      break;
    }
  }
  return all_pass;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact values of the Fabius function at dyadic points", "fabius"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "Read options from an INI/TOML file");
  app.require_subcommand(1);

  CommonOptions common;

  SeqOptions seq;
  auto* seq_cmd = app.add_subcommand("seq", "Print one of the sequences c, d, F, G, R");
  seq_cmd->add_option("name", seq.name, "Sequence name")->required()->check(CLI::IsMember({"c", "d", "F", "G", "R"}));
  seq_cmd->add_option("--max", seq.max, "Largest index")->required();
  add_common(*seq_cmd, common);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate F(x), exactly or within --eps");
  eval_cmd->add_option("--x", eval.x, "Point: 3/8, 0.375, 2^-7, ...")->required();
  eval_cmd->add_option("--eps", eval.eps, "Absolute error allowed at non-dyadic points");
  eval_cmd->add_option("--digits", eval.digits, "Decimal places to print");
  add_common(*eval_cmd, common);

  TableOptions table;
  auto* table_cmd = app.add_subcommand("table", "F(a/2^n) for odd a, with their common denominator");
  table_cmd->add_option("--level", table.level, "Level n")->required();
  table_cmd->add_option("--max-level", table.max_level, "Largest level accepted")->capture_default_str();
  add_common(*table_cmd, common);

  VerifyCliOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
  verify_cmd->add_option("--suite", verify.suite, "reshetnikov, valuation, parity, cross, eval, "
                                                  "denominators, conjecture or all")
      ->capture_default_str();
  verify_cmd->add_option("--max", verify.max, "Largest index (grid suites are capped)")->required();
  verify_cmd->add_flag("--timing", verify.timing, "Include elapsed_ms in the JSON report");
  add_common(*verify_cmd, common);

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!common.out_path.empty()) {
    file.open(common.out_path);
    if (!file) {
      err << "error: cannot open " << common.out_path << " for writing\n";
      return kUsage;
    }
    sink = &file;
  }

  try {
    if (*seq_cmd) {
      run_seq(seq, common, *sink);
    } else if (*eval_cmd) {
      run_eval(eval, common, *sink);
    } else if (*table_cmd) {
      run_table(table, common, *sink);
    } else {
      verify.format_given = verify_cmd->count("--format") > 0;
      if (!run_verify(verify, common, *sink)) return kVerificationFailed;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NonTerminatingEvaluation& e) {
    err << "error: " << e.what() << '\n';
    return kNeedsTolerance;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

}  // namespace fabius::cli
