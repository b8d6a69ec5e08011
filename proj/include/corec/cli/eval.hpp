#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "corec/cli/pipeline.hpp"
#include "corec/cli/value.hpp"
#include "corec/stream.hpp"
#include "corec/typed.hpp"

namespace corec::cli {

// An observation went deeper than --depth-limit allows, or past the end.
struct LimitError : std::runtime_error {
  explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

enum class Format { lines, list };

struct Options {
  Format format = Format::lines;
  std::size_t depth_limit = 1'000'000;
  std::size_t fuel = 1'000'000;
};

using AnyStream = std::variant<Stream<Value>, EndingStream<Value>, SkippingStream<Value>, GeneralStream<Value>>;

StreamKind kind_of(const AnyStream& s);

AnyStream build_stream(const StreamExpr& e, const Options& options);

// The observer's result, one rendered element per entry; skipped positions
// render as "_".
std::vector<std::string> observe(const PipelineExpr& e, const Options& options);

void run_pipeline(const PipelineExpr& e, const Options& options, std::ostream& out);

}  // namespace corec::cli
