#pragma once

// The pipeline language.
//
//   pipeline := stream "|" observer
//   stream   := call ("|" call)*          first call is a generator, the rest stages
//   call     := NAME arg*
//   arg      := INT | BOOL | list | NAME | "(" stream ")"
//   list     := "[" (lit ("," lit)*)? "]"
//   observer := "take" INT | "index" INT | "collect"
//
// NAME arguments name built-in functions (succ, add, even, ...).  Calls are
// arity- and shape-checked while parsing; stream kinds are inferred by
// check_pipeline.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "corec/cli/value.hpp"

namespace corec::cli {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct ParseError : std::runtime_error {
  ParseError(SourcePos pos, const std::string& message, std::vector<std::string> expected = {});

  SourcePos pos;
  std::vector<std::string> expected;
};

// Well-formed syntax that does not make sense, e.g. collect on a stream that
// may never end.
struct CheckError : std::runtime_error {
  CheckError(SourcePos pos, const std::string& message);

  SourcePos pos;
};

struct StreamExpr;

struct Arg {
  enum class Kind { integer, boolean, list, name, stream };

  Kind kind = Kind::integer;
  std::int64_t integer = 0;
  bool boolean = false;
  std::vector<Value> list;
  std::string name;
  std::shared_ptr<const StreamExpr> stream;
  SourcePos pos;  // not part of equality

  friend bool operator==(const Arg& a, const Arg& b);
};

struct Call {
  std::string name;
  std::vector<Arg> args;
  SourcePos pos;  // not part of equality

  friend bool operator==(const Call& a, const Call& b) { return a.name == b.name && a.args == b.args; }
};

struct StreamExpr {
  Call generator;
  std::vector<Call> stages;

  friend bool operator==(const StreamExpr& a, const StreamExpr& b) {
    return a.generator == b.generator && a.stages == b.stages;
  }
};

struct Observer {
  enum class Kind { take, index, collect };

  Kind kind = Kind::take;
  std::uint64_t count = 0;
  SourcePos pos;  // not part of equality

  friend bool operator==(const Observer& a, const Observer& b) {
    return a.kind == b.kind && (a.kind == Kind::collect || a.count == b.count);
  }
};

struct PipelineExpr {
  StreamExpr source;
  Observer observer;

  friend bool operator==(const PipelineExpr& a, const PipelineExpr& b) {
    return a.source == b.source && a.observer == b.observer;
  }
};

enum class StreamKind { infinite, ending, skipping, general };

std::string_view kind_name(StreamKind k);

PipelineExpr parse_pipeline(std::string_view text);

// Canonical text; parse_pipeline(to_string(e)) == e.
std::string to_string(const PipelineExpr& e);
std::string to_string(const StreamExpr& e);

StreamKind infer_kind(const StreamExpr& e);

// Kind of the observed stream; throws CheckError if the observer does not
// apply to it.
StreamKind check_pipeline(const PipelineExpr& e);

// ---------------------------------------------------------------------------
// The vocabulary.

enum class Param { integer, natural, literal, list, nonempty_list, fn1, fn2, predicate, stream };

struct Signature {
  std::string_view name;
  bool generator;
  std::vector<Param> params;
  std::size_t required;  // trailing params past this are optional
};

const Signature* find_signature(std::string_view name);
const std::vector<Signature>& signatures();

bool is_fn1(std::string_view name);
bool is_fn2(std::string_view name);
bool is_predicate(std::string_view name);

}  // namespace corec::cli
