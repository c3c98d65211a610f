#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "refine/density.hpp"
#include "refine/feature_select.hpp"
#include "refine/refinement.hpp"

namespace refine::io {

// {"kind": "gaussian", "mu": m, "sigma": s} or
// {"kind": "histogram", "lo": a, "hi": b, "mass": [...]}. Throws InputError.
Density parse_density(const nlohmann::json& spec);
nlohmann::json density_to_json(const Density& density);

nlohmann::json read_json(const std::filesystem::path& path);

// One file {"pos": spec, "neg": spec, "prior": p} or two spec files (positive
// class first). `prior` overrides the file value; the default is 1/2.
ClassConditionalModel load_model(std::span<const std::filesystem::path> paths,
                                 std::optional<double> prior = std::nullopt);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name, or by number when `column` is all digits.
  std::size_t column(const std::string& column) const;
};

// Delimiter-separated text with a header row. Blank lines are skipped; every
// row must have as many fields as the header. Throws InputError.
Table read_table(std::istream& in, char delimiter = ',');
Table read_table(const std::filesystem::path& path, char delimiter = ',');

double parse_real(const std::string& field);
// "-1"/"+1"/"1" or "0"/"1" style labels mapped to -1/+1.
int parse_label(const std::string& field);

// Columns eta_hat and outcome.
ForecastRecordSet forecasts_from_table(const Table& table);
// Every column except `label_column` becomes a feature.
TabularDataset dataset_from_table(const Table& table, const std::string& label_column);

}  // namespace refine::io
