#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace friablelab::cli {

enum class OutputFormat { json, csv };

// Effective parameters of one run: command defaults, overlaid by a key=value
// file, overlaid by flags. Values stay textual until the command reads them.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;
  OutputFormat format = OutputFormat::json;
  std::string output;  // empty: stdout
  unsigned threads = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitAccuracy = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCapacity = 3;

std::vector<std::string> commands();

// Parses argv (argv[0] is the program name). Throws ConfigError on bad input.
// Returns false when help was printed and nothing should run.
bool parse_command_line(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out);

// Reads key=value lines ('#' starts a comment). Throws ConfigError.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Executes one command and writes its report. Returns an exit status; errors
// are described on err.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_command_line + run with exit-status mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

}  // namespace friablelab::cli
