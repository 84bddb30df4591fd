#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssdlab/dataset.hpp"
#include "ssdlab/gof.hpp"
#include "ssdlab/model.hpp"
#include "ssdlab/ssd.hpp"

namespace ssdlab::cli {

enum class Command { fit, compare, curves, ttt, sample, entropy };
enum class OutputFormat { table, csv, json };

struct Grid {
    double x_min = 0.0;
    double x_max = 20.0;
    int points = 201;
};

struct RunConfig {
    Command command = Command::compare;
    std::string input_path;
    std::string output_path;  // empty: the caller's stream
    OutputFormat output_format = OutputFormat::table;
    std::vector<ModelKind> models{kAllModels.begin(), kAllModels.end()};
    AlphaMode alpha_mode = AlphaMode::continuous;
    int alpha_max = 50;
    std::uint64_t seed = 1;
    Grid grid;
    std::optional<SsdParams> params;
    std::size_t sample_size = 1000;
    double order = 2.0;
};

/// Bad input: carries the 1-based line number when it came from a file.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0) : std::runtime_error(what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Reads observations separated by newlines, commas or whitespace. Blank
/// lines and lines starting with '#' are skipped.
Dataset parse_dataset(std::istream& in, std::string label, const std::string& source = "<input>");
Dataset ingest(const std::filesystem::path& path);

/// `path` as given when it exists, otherwise relative to $SSDLAB_FIXTURES.
std::filesystem::path resolve_input(const std::string& path);

Grid parse_grid(const std::string& text);                   // "min:max:points"
SsdParams parse_params(const std::string& text);            // "alpha=..,theta=.."
std::vector<ModelKind> parse_models(const std::string& text);  // "ssd,lindley"

/// Shortest decimal string that reads back to the same double.
std::string format_number(double value);

void write_report(std::ostream& out, const ModelReport& report, OutputFormat format);

/// Executes one command. Returns the process exit code: 0 success,
/// 1 usage or parse error, 2 when some model fit failed.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ssdlab::cli
