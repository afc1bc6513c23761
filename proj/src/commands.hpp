#ifndef DGHOPF_COMMANDS_HPP
#define DGHOPF_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "dghopf/io.hpp"

namespace dghopf::cli {

struct CommandOptions {
  std::string command;
  std::string input;  // file path or built-in example name
  std::string theory = "hopf";
  std::string q = "3";  // integer or "inf"
  int degree = 2;
  bool unrestricted = false;
  std::optional<int> m_max, n_max, d_max;
  int order = 2;
  std::uint64_t seed = 1;
  std::string cocycle;
  std::optional<std::uint32_t> prime;
  std::optional<int> top;
  std::string field;  // example: "rational" or "prime"
};

enum ExitCode { ok = 0, failure = 1, usage = 2 };

// Runs one command; human-readable lines go to out, the machine-readable
// report is filled in. Returns the process exit code.
int run_command(const CommandOptions& opts, std::ostream& out, Json& report);

// Built-in presentation document by name, or nullopt.
std::optional<Json> builtin_document(const std::string& name, std::optional<std::uint32_t> prime = std::nullopt,
                                     std::optional<int> top = std::nullopt, const std::string& field = "");

}  // namespace dghopf::cli

#endif
