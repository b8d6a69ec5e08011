#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "corec/cli/eval.hpp"

namespace corec::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int runtime = 1;  // type errors and anything unexpected
inline constexpr int parse = 2;    // parse and check errors, bad options
inline constexpr int limit = 3;    // fuel exhausted, depth limit, index past end
inline constexpr int range = 4;    // arithmetic out of range
}  // namespace exit_code

// args excludes the program name.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Evaluates one pipeline and maps failures to exit codes.
int eval_command(const std::string& text, const Options& options, std::ostream& out, std::ostream& err);

void bits_demo(std::ostream& out);

int selftest(std::ostream& out);

}  // namespace corec::cli
