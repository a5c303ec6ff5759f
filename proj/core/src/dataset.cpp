#include "shapbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "shapbench/csv.hpp"
#include "shapbench/errors.hpp"

namespace shapbench {

namespace {

double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) {
      throw_error(ErrorKind::kParse,
                  context + ": trailing characters in number \"" + s + "\"");
    }
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw_error(ErrorKind::kParse, context + ": not a number: \"" + s + "\"");
  }
}

}  // namespace

Dataset::Dataset(std::vector<std::string> column_names, Eigen::MatrixXd values)
    : names_(std::move(column_names)), values_(std::move(values)) {
  if (static_cast<Eigen::Index>(names_.size()) != values_.cols()) {
    throw_error(ErrorKind::kValidation,
                "dataset: header width does not match value columns");
  }
}

Dataset Dataset::from_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  Eigen::MatrixXd values(static_cast<Eigen::Index>(table.rows.size()),
                         static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_double(table.rows[r][c],
                       path + " row " + std::to_string(r + 2) + " column \"" +
                           table.header[c] + "\"");
    }
  }
  return Dataset(table.header, std::move(values));
}

int Dataset::column_index(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw_error(ErrorKind::kInput, "dataset has no column named \"" + name + "\"");
  }
  return static_cast<int>(it - names_.begin());
}

Dataset Dataset::drop_column(const std::string& name) const {
  const int drop = column_index(name);
  std::vector<std::string> names;
  Eigen::MatrixXd values(values_.rows(), values_.cols() - 1);
  Eigen::Index out = 0;
  for (Eigen::Index c = 0; c < values_.cols(); ++c) {
    if (c == drop) continue;
    names.push_back(names_[static_cast<std::size_t>(c)]);
    values.col(out++) = values_.col(c);
  }
  return Dataset(std::move(names), std::move(values));
}

void FeatureGroups::validate(int input_dim) const {
  if (features.empty()) {
    throw_error(ErrorKind::kValidation, "group map has no features");
  }
  if (feature_count() > 63) {
    throw_error(ErrorKind::kValidation,
                "group map has " + std::to_string(feature_count()) +
                    " features; the cap is 63");
  }
  std::vector<int> owner(static_cast<std::size_t>(input_dim), -1);
  for (std::size_t i = 0; i < features.size(); ++i) {
    const FeatureGroup& g = features[i];
    if (g.columns.empty()) {
      throw_error(ErrorKind::kValidation,
                  "feature \"" + g.name + "\" has no columns");
    }
    for (int c : g.columns) {
      if (c < 0 || c >= input_dim) {
        throw_error(ErrorKind::kValidation,
                    "feature \"" + g.name + "\" references column " +
                        std::to_string(c) + " outside input dim " +
                        std::to_string(input_dim));
      }
      if (owner[static_cast<std::size_t>(c)] >= 0) {
        throw_error(ErrorKind::kValidation,
                    "column " + std::to_string(c) +
                        " is claimed by two features");
      }
      owner[static_cast<std::size_t>(c)] = static_cast<int>(i);
    }
  }
  for (int c = 0; c < input_dim; ++c) {
    if (owner[static_cast<std::size_t>(c)] < 0) {
      throw_error(ErrorKind::kValidation,
                  "input column " + std::to_string(c) +
                      " belongs to no feature group");
    }
  }
}

FeatureGroups FeatureGroups::scalar(int m, const std::string& prefix) {
  FeatureGroups groups;
  groups.features.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    groups.features.push_back(
        {prefix + std::to_string(i), {i}, FeatureKind::kContinuous});
  }
  return groups;
}

FeatureGroups FeatureGroups::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw_error(ErrorKind::kInput, "cannot open group map: " + path);
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw_error(ErrorKind::kParse, path + ": " + e.what());
  }
  FeatureGroups groups;
  try {
    for (const auto& f : doc.at("features")) {
      FeatureGroup g;
      g.name = f.at("name").get<std::string>();
      g.columns = f.at("columns").get<std::vector<int>>();
      const std::string kind = f.at("kind").get<std::string>();
      if (kind == "continuous") {
        g.kind = FeatureKind::kContinuous;
      } else if (kind == "categorical") {
        g.kind = FeatureKind::kCategorical;
      } else {
        throw_error(ErrorKind::kParse,
                    path + ": unknown feature kind \"" + kind + "\"");
      }
      groups.features.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw_error(ErrorKind::kParse, path + ": " + e.what());
  }
  return groups;
}

std::string FeatureGroups::to_json_string() const {
  nlohmann::json doc;
  doc["features"] = nlohmann::json::array();
  for (const FeatureGroup& g : features) {
    doc["features"].push_back(
        {{"name", g.name},
         {"columns", g.columns},
         {"kind", g.kind == FeatureKind::kContinuous ? "continuous"
                                                     : "categorical"}});
  }
  return doc.dump(2) + "\n";
}

ReferenceVector compute_reference(
    const Eigen::MatrixXd& columns,
    const std::vector<ReferencePolicy>& policies) {
  if (columns.rows() == 0) {
    throw_error(ErrorKind::kInput, "reference computation needs a non-empty dataset");
  }
  if (static_cast<Eigen::Index>(policies.size()) != columns.cols()) {
    throw_error(ErrorKind::kArgument,
                "reference policies must match column count");
  }
  ReferenceVector ref;
  ref.values.resize(columns.cols());
  ref.policies = policies;
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    if (policies[static_cast<std::size_t>(c)] == ReferencePolicy::kMean) {
      ref.values(c) = columns.col(c).mean();
    } else {
      // Most frequent value; the ordered map makes the smallest value win ties.
      std::map<double, int> counts;
      for (Eigen::Index r = 0; r < columns.rows(); ++r) {
        ++counts[columns(r, c)];
      }
      double best = counts.begin()->first;
      int best_count = counts.begin()->second;
      for (const auto& [value, count] : counts) {
        if (count > best_count) {
          best = value;
          best_count = count;
        }
      }
      ref.values(c) = best;
    }
  }
  return ref;
}

std::vector<ReferencePolicy> policies_from_groups(
    const FeatureGroups& groups, int input_dim,
    std::optional<ReferencePolicy> override_policy) {
  std::vector<ReferencePolicy> policies(static_cast<std::size_t>(input_dim),
                                        ReferencePolicy::kMean);
  for (const FeatureGroup& g : groups.features) {
    for (int c : g.columns) {
      if (c >= 0 && c < input_dim) {
        policies[static_cast<std::size_t>(c)] =
            g.kind == FeatureKind::kCategorical ? ReferencePolicy::kMode
                                                : ReferencePolicy::kMean;
      }
    }
  }
  if (override_policy) {
    std::fill(policies.begin(), policies.end(), *override_policy);
  }
  return policies;
}

ReferenceVector ReferenceVector::from_csv_file(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 3) {
    throw_error(ErrorKind::kParse,
                path + ": expected columns column,policy,value");
  }
  ReferenceVector ref;
  ref.values.resize(static_cast<Eigen::Index>(table.rows.size()));
  ref.policies.resize(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string& policy = table.rows[r][1];
    if (policy == "mean") {
      ref.policies[r] = ReferencePolicy::kMean;
    } else if (policy == "mode") {
      ref.policies[r] = ReferencePolicy::kMode;
    } else {
      throw_error(ErrorKind::kParse,
                  path + ": unknown reference policy \"" + policy + "\"");
    }
    ref.values(static_cast<Eigen::Index>(r)) =
        parse_double(table.rows[r][2], path + " row " + std::to_string(r + 2));
  }
  return ref;
}

std::string ReferenceVector::to_csv_string(
    const std::vector<std::string>& column_names) const {
  std::ostringstream out;
  out << "column,policy,value\n";
  for (Eigen::Index c = 0; c < values.size(); ++c) {
    const auto idx = static_cast<std::size_t>(c);
    out << (idx < column_names.size() ? column_names[idx]
                                      : "c" + std::to_string(c))
        << ','
        << (policies[idx] == ReferencePolicy::kMean ? "mean" : "mode") << ','
        << format_double(values(c)) << '\n';
  }
  return out.str();
}

}  // namespace shapbench
