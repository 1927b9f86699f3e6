#include "costsem/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "costsem/parse.hpp"
#include "costsem/print.hpp"
#include "json.hpp"

namespace costsem::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kMismatch = 1;   // also type errors
constexpr int kParseError = 2;
constexpr int kFuel = 3;

enum class Lang { stlc, ma };

struct Options {
  Fuel fuel = 1'000'000;
  Phase phase = Phase::intensional;
  bool json_output = false;
};

struct Input {
  Lang lang;
  std::optional<stlc::TmPtr> stlc_term;
  std::optional<ma::ExpPtr> ma_exp;
  std::optional<ma::CmdPtr> ma_cmd;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Input load(const std::string& path) {
  std::string src = read_file(path);
  Input input{};
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".stlc") {
    input.lang = Lang::stlc;
    input.stlc_term = parse::parse_stlc(src);
    return input;
  }
  if (path.size() >= 3 && path.substr(path.size() - 3) == ".ma") {
    input.lang = Lang::ma;
    auto program = parse::parse_ma(src);
    if (auto* e = std::get_if<ma::ExpPtr>(&program))
      input.ma_exp = *e;
    else
      input.ma_cmd = std::get<ma::CmdPtr>(program);
    return input;
  }
  throw parse::ParseError(0, 0, "unrecognized file extension for " + path +
                                    " (want .stlc or .ma)",
                          "");
}

json side_json(const harness::SideOutcome& side) {
  json out;
  bool valued = side.status == harness::SideOutcome::Status::value;
  out["status"] = valued ? "value" : "fuel";
  if (valued && !side.cost.is_erased())
    out["cost"] = side.cost.count().steps();
  else
    out["cost"] = nullptr;
  if (valued)
    out["value"] = side.value;
  else
    out["value"] = nullptr;
  if (valued && side.store)
    out["store"] = *side.store;
  else
    out["store"] = nullptr;
  return out;
}

json report_to_json(const harness::AdequacyReport& report) {
  json out;
  out["program"] = report.program;
  out["phase"] = to_string(report.phase);
  out["operational"] = side_json(report.operational);
  out["denotational"] = side_json(report.denotational);
  out["verdict"] = harness::to_string(report.verdict);
  return out;
}

void print_side(std::ostream& out, const char* label,
                const harness::SideOutcome& side) {
  out << label << ": ";
  if (side.status != harness::SideOutcome::Status::value) {
    out << "fuel exhausted\n";
    return;
  }
  out << side.value;
  if (!side.cost.is_erased()) out << "  (cost " << side.cost.count().steps() << ")";
  if (side.store) {
    out << "  store [";
    for (std::size_t i = 0; i < side.store->size(); ++i)
      out << (i ? ", " : "") << (*side.store)[i];
    out << "]";
  }
  out << "\n";
}

int report_exit(harness::Verdict verdict) {
  switch (verdict) {
    case harness::Verdict::match: return kOk;
    case harness::Verdict::both_fuel: return kFuel;
    default: return kMismatch;
  }
}

// ----------------------------------------------------------- subcommands

int do_check(const Input& input, const Options& opt, std::ostream& out,
             std::ostream& err) {
  std::string rendered;
  if (input.lang == Lang::stlc) {
    auto ty = stlc::check({}, *input.stlc_term);
    if (!ty) {
      err << "type error\n";
      return kMismatch;
    }
    rendered = print::type(*ty);
  } else if (input.ma_exp) {
    auto ty = ma::check_exp({}, {}, *input.ma_exp);
    if (!ty) {
      err << "type error\n";
      return kMismatch;
    }
    rendered = print::type(*ty);
  } else {
    auto ty = ma::check_cmd({}, {}, *input.ma_cmd);
    if (!ty) {
      err << "type error\n";
      return kMismatch;
    }
    rendered = print::type(*ty) + " (command)";
  }
  if (opt.json_output)
    out << json{{"type", rendered}}.dump() << "\n";
  else
    out << rendered << "\n";
  return kOk;
}

bool typechecks(const Input& input) {
  if (input.lang == Lang::stlc) return stlc::check({}, *input.stlc_term).has_value();
  if (input.ma_exp) return ma::check_exp({}, {}, *input.ma_exp).has_value();
  return ma::check_cmd({}, {}, *input.ma_cmd).has_value();
}

int emit_outcome(const Options& opt, std::ostream& out,
                 const harness::SideOutcome& side, const char* label) {
  if (opt.json_output)
    out << side_json(side).dump() << "\n";
  else
    print_side(out, label, side);
  return side.status == harness::SideOutcome::Status::value ? kOk : kFuel;
}

// With --trace the output is exactly the machine states: the initial one
// plus one line per transition, so the line count is the cost + 1.
int do_run_op(const Input& input, const Options& opt, bool trace,
              std::ostream& out, std::ostream& err) {
  if (!typechecks(input)) {
    err << "type error\n";
    return kMismatch;
  }
  bool tracing = trace && !opt.json_output;
  harness::SideOutcome side;
  if (input.lang == Lang::stlc) {
    stlc::TraceFn tracer;
    if (tracing)
      tracer = [&out](const stlc::TmPtr& t) { out << print::term(t) << "\n"; };
    auto r = stlc::eval_op(*input.stlc_term, opt.fuel, tracer);
    if (r.status == stlc::EvalResult::Status::value) {
      side.status = harness::SideOutcome::Status::value;
      side.cost = seal(opt.phase, r.cost);
      side.value = print::term(r.value);
    }
  } else if (input.ma_exp) {
    auto r = ma::eval_exp_op(*input.ma_exp, opt.fuel);
    if (r.status == ma::ExpEvalResult::Status::value) {
      side.status = harness::SideOutcome::Status::value;
      side.cost = seal(opt.phase, r.cost);
      side.value = print::exp(r.value);
    }
  } else {
    ma::CmdTraceFn tracer;
    if (tracing)
      tracer = [&out](const ma::State& s) {
        out << print::store(s.store) << " | " << print::cmd(s.cmd) << "\n";
      };
    auto r = ma::eval_cmd_op(ma::State{{}, *input.ma_cmd}, opt.fuel, tracer);
    if (r.status == ma::CmdEvalResult::Status::value) {
      side.status = harness::SideOutcome::Status::value;
      side.cost = seal(opt.phase, r.cost);
      side.value = print::exp(r.value);
      std::vector<std::string> cells;
      for (const auto& c : r.store) cells.push_back(print::exp(c));
      side.store = cells;
    }
  }
  if (tracing)
    return side.status == harness::SideOutcome::Status::value ? kOk : kFuel;
  return emit_outcome(opt, out, side, "result");
}

int do_run_den(const Input& input, const Options& opt, std::ostream& out,
               std::ostream& err) {
  if (!typechecks(input)) {
    err << "type error\n";
    return kMismatch;
  }
  harness::SideOutcome side;
  Budget budget{opt.fuel};
  try {
    if (input.lang == Lang::stlc) {
      auto d = stlc::denote(*input.stlc_term, {}, {}, &budget);
      side.status = harness::SideOutcome::Status::value;
      side.cost = seal(opt.phase, d.cost);
      side.value = print::sem_value(d.value);
    } else if (input.ma_exp) {
      auto d = ma::denote_exp(*input.ma_exp, {}, ma::ge_refl(), {}, {}, &budget);
      side.status = harness::SideOutcome::Status::value;
      side.cost = seal(opt.phase, d.cost);
      side.value = print::sem_value(d.value);
    } else {
      auto d = run(ma::denote_cmd(*input.ma_cmd, {}, ma::ge_refl(), {}, {}, {},
                                  &budget),
                   opt.fuel);
      if (d) {
        side.status = harness::SideOutcome::Status::value;
        side.cost = seal(opt.phase, d->cost);
        side.value = print::sem_value(d->value.first);
        std::vector<std::string> cells;
        for (const auto& c : d->value.second) cells.push_back(print::sem_value(c));
        side.store = cells;
      }
    }
  } catch (const BudgetExhausted&) {
  }
  return emit_outcome(opt, out, side, "result");
}

int do_adequacy(const Input& input, const Options& opt, std::ostream& out,
                std::ostream& err) {
  harness::AdequacyReport report;
  if (input.lang == Lang::stlc) {
    auto ty = stlc::check({}, *input.stlc_term);
    if (!ty || !std::holds_alternative<stlc::Ty::Bool>((*ty)->node)) {
      err << "type error: adequacy needs a closed bool program\n";
      return kMismatch;
    }
    report = harness::differential_stlc(*input.stlc_term, opt.phase, opt.fuel);
  } else if (input.ma_exp) {
    auto ty = ma::check_exp({}, {}, *input.ma_exp);
    if (!ty || !ma::as_positive(*ty)) {
      err << "type error: adequacy needs a positive-typed closed expression\n";
      return kMismatch;
    }
    report = harness::differential_ma_exp(*input.ma_exp, opt.phase, opt.fuel);
  } else {
    auto ty = ma::check_cmd({}, {}, *input.ma_cmd);
    if (!ty || !ma::as_positive(*ty)) {
      err << "type error: adequacy needs a positive-typed closed command\n";
      return kMismatch;
    }
    report = harness::differential_ma(*input.ma_cmd, opt.phase, opt.fuel);
  }
  if (opt.json_output) {
    out << report_to_json(report).dump() << "\n";
  } else {
    out << "program: " << report.program << "\n";
    print_side(out, "operational", report.operational);
    print_side(out, "denotational", report.denotational);
    out << "verdict: " << harness::to_string(report.verdict) << "\n";
  }
  return report_exit(report.verdict);
}

int do_fuzz(const Options& opt, const std::string& lang_name,
            std::uint64_t count, std::uint64_t seed, std::size_t max_size,
            std::size_t max_sig, std::ostream& out) {
  harness::GenConfig cfg;
  cfg.seed = seed;
  cfg.max_size = max_size;
  cfg.max_sig = max_sig;
  cfg.fuel = opt.fuel;
  harness::Language lang =
      lang_name == "stlc" ? harness::Language::stlc : harness::Language::ma;
  auto summary = harness::fuzz_campaign(cfg, lang, opt.phase, count);
  if (opt.json_output) {
    json failures = json::array();
    for (const auto& f : summary.failures) {
      json one;
      one["case"] = f.index;
      one["report"] = report_to_json(f.report);
      one["shrunk"] = f.shrunk_program;
      one["shrunk-size"] = f.shrunk_size;
      failures.push_back(one);
    }
    json j;
    j["lang"] = lang_name;
    j["phase"] = to_string(opt.phase);
    j["count"] = summary.total;
    j["matches"] = summary.matches;
    j["both-fuel"] = summary.both_fuel;
    j["failures"] = failures;
    out << j.dump() << "\n";
  } else {
    out << "cases: " << summary.total << "  matches: " << summary.matches
        << "  both-fuel: " << summary.both_fuel
        << "  failures: " << summary.failures.size() << "\n";
    for (const auto& f : summary.failures) {
      out << "case " << f.index << ": "
          << harness::to_string(f.report.verdict) << "\n  program: "
          << f.report.program << "\n  shrunk (" << f.shrunk_size
          << " nodes): " << f.shrunk_program << "\n";
    }
  }
  return summary.failures.empty() ? kOk : kMismatch;
}

}  // namespace

std::string report_json(const harness::AdequacyReport& report) {
  return report_to_json(report).dump();
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"cost-aware semantics workbench"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Options opt;
  if (const char* env = std::getenv("COSTSEM_FUEL"))
    opt.fuel = std::strtoull(env, nullptr, 10);
  std::string phase_name = "intensional";
  app.add_option("--fuel", opt.fuel, "evaluation fuel budget");
  app.add_option("--phase", phase_name, "intensional | extensional")
      ->check(CLI::IsMember({"intensional", "extensional"}));
  app.add_flag("--json", opt.json_output, "machine-readable output");

  std::string file;
  auto* check_cmd = app.add_subcommand("check", "type-check a program");
  check_cmd->add_option("file", file)->required();
  auto* run_op = app.add_subcommand("run-op", "run the operational semantics");
  run_op->add_option("file", file)->required();
  bool trace = false;
  run_op->add_flag("--trace", trace, "print every machine state");
  auto* run_den = app.add_subcommand("run-den", "run the denotational semantics");
  run_den->add_option("file", file)->required();
  auto* adequacy = app.add_subcommand("adequacy", "compare both semantics");
  adequacy->add_option("file", file)->required();

  auto* fuzz = app.add_subcommand("fuzz", "random differential testing");
  std::string lang_name;
  std::uint64_t count = 100, seed = 0;
  std::size_t max_size = 50, max_sig = 4;
  fuzz->add_option("--lang", lang_name)->required()
      ->check(CLI::IsMember({"stlc", "ma"}));
  fuzz->add_option("--count", count);
  fuzz->add_option("--seed", seed);
  fuzz->add_option("--max-size", max_size);
  fuzz->add_option("--max-sig", max_sig);

  std::vector<std::string> argv_backwards(args.rbegin(), args.rend());
  try {
    app.parse(argv_backwards);
  } catch (const CLI::ParseError& e) {
    std::stringstream msg_out, msg_err;
    int code = app.exit(e, msg_out, msg_err);
    out << msg_out.str();
    err << msg_err.str();
    return code;
  }

  opt.phase = phase_name == "extensional" ? Phase::extensional
                                          : Phase::intensional;

  try {
    if (fuzz->parsed())
      return do_fuzz(opt, lang_name, count, seed, max_size, max_sig, out);
    Input input = load(file);
    if (check_cmd->parsed()) return do_check(input, opt, out, err);
    if (run_op->parsed()) return do_run_op(input, opt, trace, out, err);
    if (run_den->parsed()) return do_run_den(input, opt, out, err);
    if (adequacy->parsed()) return do_adequacy(input, opt, out, err);
  } catch (const parse::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  }
  return kOk;
}

}  // namespace costsem::cli
