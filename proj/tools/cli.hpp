#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "drmsim/harness.hpp"

namespace drmsim::cli {

// Bad flags or flag combinations; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// args excludes the program name. Returns the process exit code:
// 0 success, 1 runtime failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "start:step:stop" (inclusive), "a,b,c" or a single value.
std::vector<double> parse_grid(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

// Flat key=value lines; blank lines and '#' comments ignored.
std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in);

std::string csv_header();
void write_csv(std::ostream& out, const SimConfig& cfg, const SimResult& result);
std::string format_ber(double ber);
std::string run_manifest(const SimConfig& cfg, const std::string& timestamp);

}  // namespace drmsim::cli
