#include "refine/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "refine/errors.hpp"

namespace refine::io {

using nlohmann::json;

namespace {

double number_field(const json& spec, const char* key) {
  if (!spec.contains(key) || !spec.at(key).is_number()) {
    throw InputError(std::string("density spec needs numeric field '") + key + "'");
  }
  return spec.at(key).get<double>();
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, delimiter)) out.push_back(trim(field));
  if (!line.empty() && line.back() == delimiter) out.emplace_back();
  return out;
}

}  // namespace

Density parse_density(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec.at("kind").is_string()) {
    throw InputError("density spec must be an object with a string 'kind'");
  }
  const auto kind = spec.at("kind").get<std::string>();
  try {
    if (kind == "gaussian") {
      return GaussianDensity(number_field(spec, "mu"), number_field(spec, "sigma"));
    }
    if (kind == "histogram") {
      if (!spec.contains("mass") || !spec.at("mass").is_array()) {
        throw InputError("histogram spec needs a 'mass' array");
      }
      std::vector<double> mass;
      for (const auto& m : spec.at("mass")) {
        if (!m.is_number()) throw InputError("histogram mass entries must be numbers");
        mass.push_back(m.get<double>());
      }
      return GridDensity(number_field(spec, "lo"), number_field(spec, "hi"), std::move(mass));
    }
  } catch (const ParameterError& e) {
    throw InputError(std::string("invalid density spec: ") + e.what());
  }
  throw InputError("unknown density kind '" + kind + "'");
}

json density_to_json(const Density& density) {
  if (const auto* g = std::get_if<GaussianDensity>(&density)) {
    return {{"kind", "gaussian"}, {"mu", g->mu}, {"sigma", g->sigma}};
  }
  const auto& grid = std::get<GridDensity>(density);
  return {{"kind", "histogram"}, {"lo", grid.lo()}, {"hi", grid.hi()}, {"mass", grid.mass()}};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot read '" + path.string() + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

ClassConditionalModel load_model(std::span<const std::filesystem::path> paths,
                                 std::optional<double> prior) {
  try {
    if (paths.size() == 1) {
      const json spec = read_json(paths[0]);
      if (!spec.is_object() || !spec.contains("pos") || !spec.contains("neg")) {
        throw InputError("model file needs 'pos' and 'neg' density specs");
      }
      double pi = 0.5;
      if (spec.contains("prior")) {
        if (!spec.at("prior").is_number()) throw InputError("'prior' must be a number");
        pi = spec.at("prior").get<double>();
      }
      return ClassConditionalModel(parse_density(spec.at("pos")), parse_density(spec.at("neg")),
                                   prior.value_or(pi));
    }
    if (paths.size() == 2) {
      return ClassConditionalModel(parse_density(read_json(paths[0])),
                                   parse_density(read_json(paths[1])), prior.value_or(0.5));
    }
  } catch (const ParameterError& e) {
    throw InputError(std::string("invalid model: ") + e.what());
  }
  throw InputError("expected one model file or two density files");
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
  std::size_t index = 0;
  const auto [end, ec] = std::from_chars(name.data(), name.data() + name.size(), index);
  if (!name.empty() && ec == std::errc{} && end == name.data() + name.size() &&
      index < header.size()) {
    return index;
  }
  throw InputError("no column '" + name + "'");
}

Table read_table(std::istream& in, char delimiter) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split(line, delimiter);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw InputError("line " + std::to_string(line_no) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) {
    throw InputError("table has no header row");
  }
  return table;
}

Table read_table(const std::filesystem::path& path, char delimiter) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot read '" + path.string() + "'");
  }
  return read_table(in, delimiter);
}

double parse_real(const std::string& field) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (first != last && *first == '+') ++first;
  const auto [end, ec] = std::from_chars(first, last, value);
  if (first == last || ec != std::errc{} || end != last) {
    throw InputError("not a number: '" + field + "'");
  }
  return value;
}

int parse_label(const std::string& field) {
  const double v = parse_real(field);
  if (v == 1.0) return 1;
  if (v == -1.0 || v == 0.0) return -1;
  throw InputError("label must be -1/+1 or 0/1, got '" + field + "'");
}

ForecastRecordSet forecasts_from_table(const Table& table) {
  const std::size_t eta_col = table.column("eta_hat");
  const std::size_t outcome_col = table.column("outcome");
  std::vector<ForecastRecord> records;
  records.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    records.push_back({parse_real(row[eta_col]), parse_label(row[outcome_col])});
  }
  return ForecastRecordSet(std::move(records));
}

TabularDataset dataset_from_table(const Table& table, const std::string& label_column) {
  const std::size_t label_col = table.column(label_column);
  TabularDataset data;
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c == label_col) continue;
    feature_cols.push_back(c);
    data.feature_names.push_back(table.header[c]);
  }
  data.columns.assign(feature_cols.size(), {});
  for (const auto& row : table.rows) {
    data.labels.push_back(parse_label(row[label_col]));
    for (std::size_t f = 0; f < feature_cols.size(); ++f) {
      data.columns[f].push_back(parse_real(row[feature_cols[f]]));
    }
  }
  if (data.labels.empty()) {
    throw InputError("dataset has no rows");
  }
  return data;
}

}  // namespace refine::io
