#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "racg/graph.hpp"

namespace racg::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;
inline constexpr int kIndeterminate = 3;

// Generator specs: path-of-squares:m, k2m:m, kab:a,b, complete:n, cycle:n,
// empty:n, gnp:n,p,seed, glue:fig2[-crossed],
// glue:<g6>,<u>,<v>,<g6>,<u>,<v>[,straight|crossed].
Graph generate(std::string_view spec);

// `args` excludes the program name. Diagnostics go to `err` as one line
// prefixed "error: ".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace racg::cli
