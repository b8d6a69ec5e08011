#include "corec/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>

#include "corec/classical.hpp"
#include "corec/errors.hpp"

namespace corec::cli {
namespace {

std::string sexp_list(const std::vector<Nat>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(xs[i].value());
  }
  return out + ")";
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    body();
    return exit_code::ok;
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return exit_code::parse;
  } catch (const CheckError& e) {
    err << e.what() << '\n';
    return exit_code::parse;
  } catch (const FuelExhausted& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::limit;
  } catch (const LimitError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::limit;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::range;
  } catch (const TypeError& e) {
    err << "type error: " << e.what() << '\n';
    return exit_code::runtime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::runtime;
  }
}

}  // namespace

int eval_command(const std::string& text, const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { run_pipeline(parse_pipeline(text), options, out); });
}

void bits_demo(std::ostream& out) {
  auto input = [] { return append_list<bool>({true, false, false, true, false}, always(true)); };
  out << '\'' << sexp_list(takes(infinite_bits(input()), 3)) << '\n';
  out << '\'' << sexp_list(takes(infinite_bits(input()), 5)) << '\n';

  // One handle observed deeply first; the shallow re-observation then
  // agrees with the deeper answer.
  auto ix = infinite_bits(input());
  auto deep = takes(ix, 5);
  auto shallow = takes(ix, 3);
  out << "'(" << sexp_list(shallow) << ' ' << sexp_list(deep) << ")\n";
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persistent streams and classical corecursion"};
  app.require_subcommand(1);

  std::string text;
  std::string format = "lines";
  Options options;

  auto* eval = app.add_subcommand("eval", "Evaluate a pipeline, e.g. \"count-down 3 | take 6\"");
  eval->add_option("pipeline", text, "Pipeline text")->required();
  eval->add_option("--format", format, "Output format")->check(CLI::IsMember({"lines", "list"}));
  eval->add_option("--depth-limit", options.depth_limit, "Deepest observation allowed")->check(CLI::PositiveNumber);
  eval->add_option("--fuel", options.fuel, "Elements scanned per observation by searches")->check(CLI::PositiveNumber);

  auto* parse = app.add_subcommand("parse", "Print a pipeline in canonical form with its stream kind");
  parse->add_option("pipeline", text, "Pipeline text")->required();

  auto* demo = app.add_subcommand("bits-demo", "Print the infinite-bits example outputs");
  auto* self = app.add_subcommand("selftest", "Run the built-in oracle checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::parse;
  }

  if (eval->parsed()) {
    options.format = format == "list" ? Format::list : Format::lines;
    return eval_command(text, options, out, err);
  }
  if (parse->parsed()) {
    return guarded(err, [&] {
      auto e = parse_pipeline(text);
      StreamKind k = check_pipeline(e);
      out << to_string(e) << '\n' << "kind: " << kind_name(k) << '\n';
    });
  }
  if (demo->parsed()) {
    return guarded(err, [&] { bits_demo(out); });
  }
  if (self->parsed()) {
    int code = exit_code::ok;
    int r = guarded(err, [&] { code = selftest(out); });
    return r != exit_code::ok ? r : code;
  }
  return exit_code::parse;
}

}  // namespace corec::cli
