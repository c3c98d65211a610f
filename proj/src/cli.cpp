#include "refine/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "refine/errors.hpp"
#include "refine/feature_select.hpp"
#include "refine/io.hpp"
#include "refine/links.hpp"
#include "refine/poly_reward.hpp"
#include "refine/refinement.hpp"

namespace refine::cli {
namespace {

using Json = nlohmann::ordered_json;

// All floating output carries 12 significant digits.
std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double rounded(double x) {
  if (!std::isfinite(x)) return x;
  if (x == 0.0) return 0.0;
  return std::strtod(fmt(x).c_str(), nullptr);
}

std::string rational_text(const Rational& r) {
  std::ostringstream s;
  s << numerator(r) << "/" << denominator(r);
  return s.str();
}

Json rational_json(const Rational& r) {
  std::ostringstream num;
  std::ostringstream den;
  num << numerator(r);
  den << denominator(r);
  return Json{{"numerator", num.str()}, {"denominator", den.str()}};
}

// Rounds to `digits` significant digits in exact decimal.
Rational round_significant(const Rational& r, int digits) {
  const double x = static_cast<double>(r);
  if (x == 0.0) return r;
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(x))));
  const int decimals = digits - 1 - exponent;
  Rational scale = 1;
  for (int i = 0; i < std::abs(decimals); ++i) scale *= 10;
  const Rational scaled = decimals >= 0 ? Rational(r * scale) : Rational(r / scale);
  const double nearest = std::round(static_cast<double>(scaled));
  const Rational back(static_cast<long long>(nearest));
  return decimals >= 0 ? Rational(back / scale) : Rational(back * scale);
}

struct Report {
  Json records;
  std::string table;
};

// ---------------------------------------------------------------------------

Report cmd_bound(const RunConfig& config) {
  std::vector<std::filesystem::path> paths(config.inputs.begin(), config.inputs.end());
  const auto model = io::load_model(paths, config.prior);
  const QuadratureConfig quad{config.tolerance, config.max_depth};
  const BayesErrorReport report = bayes_error(model, quad);
  const auto violations = check_bound_chain(report);

  std::vector<std::pair<std::string, double>> ascending(report.bounds.begin(), report.bounds.end());
  std::stable_sort(ascending.begin(), ascending.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });

  Report out;
  Json bounds = Json::object();
  for (const auto& [name, value] : ascending) bounds[name] = rounded(value);
  Json chain_violations = Json::array();
  for (const auto& v : violations) {
    chain_violations.push_back(
        {{"tighter", v.tighter}, {"looser", v.looser}, {"excess", rounded(v.excess)}});
  }
  out.records = {{"prior", rounded(model.prior())},
                 {"bayes_error", rounded(report.bayes_error)},
                 {"miss_rate", rounded(report.miss_rate)},
                 {"false_positive_rate", rounded(report.false_positive_rate)},
                 {"bounds", bounds},
                 {"chain", {{"order", bound_chain()},
                            {"holds", violations.empty()},
                            {"violations", chain_violations}}}};

  std::ostringstream t;
  t << std::left;
  t << std::setw(22) << "prior" << fmt(model.prior()) << "\n";
  t << std::setw(22) << "bayes_error" << fmt(report.bayes_error) << "\n";
  t << std::setw(22) << "miss_rate" << fmt(report.miss_rate) << "\n";
  t << std::setw(22) << "false_positive_rate" << fmt(report.false_positive_rate) << "\n";
  for (const auto& [name, value] : ascending) {
    t << std::setw(8) << "bound" << std::setw(14) << name << fmt(value) << "\n";
  }
  t << std::setw(22) << "chain" << (violations.empty() ? "holds" : "violated") << "\n";
  for (const auto& v : violations) {
    t << "violation " << v.tighter << " > " << v.looser << " by " << fmt(v.excess) << "\n";
  }
  out.table = t.str();
  return out;
}

Report cmd_decompose(const RunConfig& config) {
  if (config.inputs.size() != 1) {
    throw InputError("decompose needs exactly one --input file");
  }
  const auto records =
      io::forecasts_from_table(io::read_table(config.inputs[0], config.delimiter));
  const auto reward = make_reward(config.reward.empty() ? "ls" : config.reward);
  const std::size_t bins = config.bins == 0 ? kDefaultDecompositionBins : config.bins;
  const Decomposition d = decompose_forecasts(records, reward, bins);

  Report out;
  Json per_bin = Json::array();
  for (const auto& b : d.per_bin) {
    per_bin.push_back({{"eta_hat", rounded(b.eta_hat)},
                       {"frequency", rounded(b.frequency)},
                       {"eta", rounded(b.eta)},
                       {"count", b.count},
                       {"clamped", b.clamped}});
  }
  out.records = {{"reward", reward.name()},
                 {"bins", bins},
                 {"total", rounded(d.total)},
                 {"calibration", rounded(d.calibration)},
                 {"refinement", rounded(d.refinement)},
                 {"per_bin", per_bin}};

  std::ostringstream t;
  t << std::left;
  t << std::setw(14) << "reward" << reward.name() << "\n";
  t << std::setw(14) << "total" << fmt(d.total) << "\n";
  t << std::setw(14) << "calibration" << fmt(d.calibration) << "\n";
  t << std::setw(14) << "refinement" << fmt(d.refinement) << "\n";
  t << std::setw(20) << "eta_hat" << std::setw(20) << "frequency" << std::setw(20) << "eta"
    << std::setw(8) << "count" << "clamped\n";
  for (const auto& b : d.per_bin) {
    t << std::setw(20) << fmt(b.eta_hat) << std::setw(20) << fmt(b.frequency) << std::setw(20)
      << fmt(b.eta) << std::setw(8) << b.count << (b.clamped ? "yes" : "no") << "\n";
  }
  out.table = t.str();
  return out;
}

Report cmd_rank(const RunConfig& config) {
  if (config.inputs.size() != 1) {
    throw InputError("rank needs exactly one --input file");
  }
  const auto data = io::dataset_from_table(io::read_table(config.inputs[0], config.delimiter),
                                           config.label_column);
  const auto reward = make_reward(config.reward.empty() ? "log-natural" : config.reward);
  const std::size_t bins = config.bins == 0 ? kDefaultFeatureBins : config.bins;
  const std::size_t k = config.k == 0 ? data.columns.size() : config.k;
  const auto ranked = greedy_rank(data, reward, k, bins);

  Report out;
  Json list = Json::array();
  std::ostringstream t;
  t << std::left << std::setw(6) << "rank" << std::setw(24) << "feature" << "score\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    list.push_back({{"feature", ranked[i].name}, {"score", rounded(ranked[i].score)}});
    t << std::setw(6) << i + 1 << std::setw(24) << ranked[i].name << fmt(ranked[i].score) << "\n";
  }
  out.records = {{"reward", reward.name()}, {"bins", bins}, {"ranking", list}};
  out.table = t.str();
  return out;
}

Report cmd_polyj(const RunConfig& config) {
  const auto poly = build_poly_reward(config.poly_order);
  const Rational k1_rounded = round_significant(poly.k1(), 3);
  const Rational k2_rounded = poly.k2_for(k1_rounded);

  Report out;
  Json coefficients = Json::array();
  std::ostringstream coeff_text;
  for (std::size_t i = 0; i < poly.coefficients().size(); ++i) {
    const auto& c = poly.coefficients()[i];
    if (c == 0) continue;
    Json entry = rational_json(c);
    entry["power"] = i;
    coefficients.push_back(entry);
    coeff_text << "coefficient  eta^" << std::left << std::setw(4) << i << rational_text(c)
               << "\n";
  }
  const std::string note = "K2 recomputed with K1 rounded to 3 significant digits (" +
                           fmt(static_cast<double>(k1_rounded)) + ") is " +
                           fmt(static_cast<double>(k2_rounded)) + "; exact K2 is " +
                           rational_text(poly.k2()) + " = " +
                           fmt(static_cast<double>(poly.k2()));
  out.records = {{"n", poly.order()},
                 {"k1", rational_json(poly.k1())},
                 {"k1_value", rounded(static_cast<double>(poly.k1()))},
                 {"k2", rational_json(poly.k2())},
                 {"k2_value", rounded(static_cast<double>(poly.k2()))},
                 {"k1_rounded", rounded(static_cast<double>(k1_rounded))},
                 {"k2_with_rounded_k1", rounded(static_cast<double>(k2_rounded))},
                 {"r_coefficients", coefficients},
                 {"note", note}};

  std::ostringstream t;
  t << std::left;
  t << std::setw(20) << "n" << poly.order() << "\n";
  t << std::setw(20) << "k1" << rational_text(poly.k1()) << " = "
    << fmt(static_cast<double>(poly.k1())) << "\n";
  t << std::setw(20) << "k2" << rational_text(poly.k2()) << " = "
    << fmt(static_cast<double>(poly.k2())) << "\n";
  t << std::setw(20) << "k1_rounded" << fmt(static_cast<double>(k1_rounded)) << "\n";
  t << std::setw(20) << "k2_with_rounded_k1" << fmt(static_cast<double>(k2_rounded)) << "\n";
  t << coeff_text.str();
  t << "note: " << note << "\n";
  out.table = t.str();
  return out;
}

// One block of a figure: named columns of equal length.
struct Block {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

Block reward_curves(const std::string& title, const std::vector<std::string>& names) {
  Block block{title, {"eta"}, {}};
  std::vector<MaximalReward> rewards;
  for (const auto& n : names) {
    rewards.push_back(make_reward(n));
    block.columns.push_back(n);
  }
  for (double eta : linspace(0.0, 1.0, 101)) {
    std::vector<double> row = {eta};
    for (const auto& r : rewards) row.push_back(r.value(eta));
    block.rows.push_back(std::move(row));
  }
  return block;
}

std::vector<Block> figure_blocks(const RunConfig& config) {
  std::vector<Block> blocks;
  const auto want = [&config](const char* name) {
    return config.figure == "all" || config.figure == name;
  };
  if (want("fig1")) {
    // Composite rows: (reward, link).
    const std::vector<std::pair<std::string, std::string>> rows = {
        {"zero-one", "zero-one-a"}, {"zero-one", "zero-one-b"}, {"ls", "ls"},
        {"exp", "exp"},             {"log", "log"},             {"savage", "savage"},
        {"tangent", "tangent"}};
    for (const auto& [reward, link_name] : rows) {
      if (!config.link.empty() && config.link != link_name) continue;
      const auto link = make_link(link_name);
      const auto j = make_reward(composite_scaled_reward(reward));
      Block block{"fig1 " + link_name, {"v", "composite"}, {}};
      for (double v : domain_grid(link, 201, 5.0)) {
        block.rows.push_back({v, j.value(link.inverse(v))});
      }
      blocks.push_back(std::move(block));
    }
  }
  if (want("fig3")) {
    blocks.push_back(
        reward_curves("fig3", {"zero-one", "ls", "cosh", "sec", "log", "log-cos", "exp"}));
  }
  if (want("fig5")) {
    const auto reward = make_reward(config.reward.empty() ? "ls" : config.reward);
    const auto grid = linspace(-8.0, 8.0, 161);
    for (double mu : {0.1, 1.5, 4.0}) {
      const ClassConditionalModel model(GaussianDensity(mu, 1.0), GaussianDensity(-mu, 1.0));
      Block block{"fig5 mu=+-" + fmt(mu), {"x", "marginal", "reward", "product"}, {}};
      for (const auto& r : refinement_terms_table(model, reward, grid)) {
        block.rows.push_back({r.x, r.marginal, r.reward, r.product});
      }
      blocks.push_back(std::move(block));
    }
  }
  if (want("fig6")) {
    std::vector<std::string> names = {"zero-one", "poly-0", "poly-2", "poly-4"};
    const std::string extra = "poly-" + std::to_string(config.poly_order);
    if (std::find(names.begin(), names.end(), extra) == names.end()) names.push_back(extra);
    blocks.push_back(reward_curves("fig6", names));
  }
  if (blocks.empty()) {
    throw InputError("unknown figure '" + config.figure + "'");
  }
  return blocks;
}

Report cmd_figures(const RunConfig& config) {
  const auto blocks = figure_blocks(config);
  Report out;
  out.records = Json::array();
  std::ostringstream t;
  for (const auto& b : blocks) {
    Json rows = Json::array();
    for (const auto& r : b.rows) {
      Json row = Json::array();
      for (double v : r) row.push_back(rounded(v));
      rows.push_back(row);
    }
    out.records.push_back({{"block", b.title}, {"columns", b.columns}, {"rows", rows}});
    t << "# " << b.title << "\n";
    for (std::size_t c = 0; c < b.columns.size(); ++c) {
      t << (c ? "\t" : "") << b.columns[c];
    }
    t << "\n";
    for (const auto& r : b.rows) {
      for (std::size_t c = 0; c < r.size(); ++c) t << (c ? "\t" : "") << fmt(r[c]);
      t << "\n";
    }
    t << "\n";
  }
  out.table = t.str();
  return out;
}

// ---------------------------------------------------------------------------

void validate(const RunConfig& config) {
  if (!(config.tolerance > 0.0)) throw CLI::ValidationError("--tol", "must be positive");
  if (config.max_depth < 1) throw CLI::ValidationError("--max-depth", "must be at least 1");
  if (config.subcommand == "bound" && config.inputs.empty()) {
    throw CLI::ValidationError("--input", "bound needs a model file or two density files");
  }
  if (config.subcommand == "bound" && config.inputs.size() > 2) {
    throw CLI::ValidationError("--input", "bound takes at most two files");
  }
  if ((config.subcommand == "decompose" || config.subcommand == "rank") &&
      config.inputs.size() != 1) {
    throw CLI::ValidationError("--input", config.subcommand + " needs exactly one file");
  }
  if (config.prior && !(*config.prior > 0.0 && *config.prior < 1.0)) {
    throw CLI::ValidationError("--prior", "must lie in (0,1)");
  }
  if (!config.reward.empty()) make_reward(config.reward);
  if (!config.link.empty()) make_link(config.link);
}

Report dispatch(const RunConfig& config) {
  if (config.subcommand == "bound") return cmd_bound(config);
  if (config.subcommand == "decompose") return cmd_decompose(config);
  if (config.subcommand == "rank") return cmd_rank(config);
  if (config.subcommand == "polyj") return cmd_polyj(config);
  return cmd_figures(config);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Refinement, calibration, and Bayes-error bounds for proper scores"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "table";
  std::string delimiter = ",";

  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", config.output, "Write the report here instead of stdout");
    sub->add_option("--format", format, "table or records")
        ->check(CLI::IsMember({"table", "records", "table-text", "structured-records"}));
  };

  auto* bound = app.add_subcommand("bound", "Bayes error and refinement bounds of a model");
  bound->add_option("--input", config.inputs, "Model file, or positive then negative density")
      ->required();
  bound->add_option("--prior", config.prior, "P(y = 1), overrides the model file");
  bound->add_option("--tol", config.tolerance, "Quadrature tolerance");
  bound->add_option("--max-depth", config.max_depth, "Quadrature refinement levels");
  add_output(bound);

  auto* decompose = app.add_subcommand("decompose", "Calibration/refinement split of forecasts");
  decompose->add_option("--input", config.inputs, "Table with eta_hat and outcome")->required();
  decompose->add_option("--reward", config.reward, "Maximal reward (default ls)");
  decompose->add_option("--bins", config.bins, "Equal-width prediction bins (default 20)");
  decompose->add_option("--delimiter", delimiter, "Field delimiter");
  add_output(decompose);

  auto* rank = app.add_subcommand("rank", "Greedy refinement feature ranking");
  rank->add_option("--input", config.inputs, "Dataset table")->required();
  rank->add_option("--label-col", config.label_column, "Label column name or index");
  rank->add_option("--reward", config.reward, "Maximal reward (default log-natural)");
  rank->add_option("--bins", config.bins, "Histogram bins per feature (default 16)");
  rank->add_option("--k", config.k, "Number of features to rank (default all)");
  rank->add_option("--delimiter", delimiter, "Field delimiter");
  add_output(rank);

  auto* polyj = app.add_subcommand("polyj", "Exact constants of the polynomial reward");
  polyj->add_option("--n", config.poly_order, "Even polynomial order");
  add_output(polyj);

  auto* figures = app.add_subcommand("figures", "Plot-ready tables");
  figures->add_option("--figure", config.figure, "fig1, fig3, fig5, fig6 or all");
  figures->add_option("--reward", config.reward, "Reward for fig5 (default ls)");
  figures->add_option("--link", config.link, "Restrict fig1 to one link");
  figures->add_option("--n", config.poly_order, "Extra polynomial order for fig6");
  add_output(figures);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    for (auto* sub : {bound, decompose, rank, polyj, figures}) {
      if (sub->parsed()) config.subcommand = sub->get_name();
    }
    config.format = format == "records" || format == "structured-records" ? OutputFormat::records
                                                                          : OutputFormat::table;
    if (delimiter == "\\t") delimiter = "\t";
    if (delimiter.size() != 1) throw CLI::ValidationError("--delimiter", "must be one character");
    config.delimiter = delimiter[0];
    validate(config);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const RegistryError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const Report report = dispatch(config);
    const std::string text =
        config.format == OutputFormat::records ? report.records.dump(2) + "\n" : report.table;
    if (config.output.empty()) {
      out << text;
    } else {
      std::ofstream file(config.output, std::ios::binary);
      if (!file) throw InputError("cannot write '" + config.output + "'");
      file << text;
    }
    return kSuccess;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << " (last estimate " << fmt(e.last_estimate())
        << ")\n";
    return kNumericalError;
  } catch (const RegistryError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace refine::cli
