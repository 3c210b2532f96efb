#include "pct/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pct/error.hpp"

namespace pct {

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::none:
      return "none";
    case Normalization::minmax:
      return "minmax";
    case Normalization::zscore:
      return "zscore";
  }
  return "none";
}

Normalization normalization_from_string(std::string_view text) {
  if (text == "none") return Normalization::none;
  if (text == "minmax") return Normalization::minmax;
  if (text == "zscore") return Normalization::zscore;
  throw ConfigError("unknown normalization '" + std::string(text) + "' (expected none, minmax or zscore)");
}

DistanceSpec::DistanceSpec(const Schema& schema, std::vector<std::size_t> dims,
                           std::vector<double> weights, Normalization normalization)
    : dims_(std::move(dims)), weights_(std::move(weights)), normalization_(normalization) {
  if (dims_.empty()) {
    throw ConfigError("distance needs at least one dimension");
  }
  if (weights_.empty()) {
    weights_.assign(dims_.size(), 1.0);
  }
  if (weights_.size() != dims_.size()) {
    throw ConfigError("distance has " + std::to_string(dims_.size()) + " dims but " +
                      std::to_string(weights_.size()) + " weights");
  }
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] >= schema.size()) {
      throw ConfigError("distance dimension out of range");
    }
    const Attribute& attr = schema[dims_[i]];
    if (attr.kind != AttributeKind::numeric) {
      throw ConfigError("distance dimension '" + attr.name + "' is not numeric (encode nominals first)");
    }
    if (std::count(dims_.begin(), dims_.end(), dims_[i]) > 1) {
      throw ConfigError("distance dimension '" + attr.name + "' listed twice");
    }
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw ConfigError("distance weight for '" + attr.name + "' must be positive");
    }
  }
  scales_.assign(dims_.size(), 1.0);
  frozen_ = normalization_ == Normalization::none;
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

DistanceSpec DistanceSpec::parse(std::string_view text, const Schema& schema) {
  std::istringstream in{std::string(text)};
  std::vector<std::size_t> dims;
  std::vector<double> weights;
  Normalization norm = Normalization::none;
  bool has_dims = false;
  for (std::string word; in >> word;) {
    if (word == "distance") continue;
    const auto eq = word.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("distance: expected key=value, found '" + word + "'");
    }
    const std::string key = word.substr(0, eq);
    const std::string value = word.substr(eq + 1);
    if (key == "dims") {
      has_dims = true;
      for (const std::string& name : split(value, ',')) dims.push_back(schema.require(name));
    } else if (key == "weights") {
      for (const std::string& w : split(value, ',')) {
        const auto v = parse_number(w);
        if (!v) throw ConfigError("distance: bad weight '" + w + "'");
        weights.push_back(*v);
      }
    } else if (key == "norm") {
      norm = normalization_from_string(value);
    } else {
      throw ConfigError("distance: unknown key '" + key + "'");
    }
  }
  if (!has_dims) {
    throw ConfigError("distance: missing dims=");
  }
  return DistanceSpec(schema, std::move(dims), std::move(weights), norm);
}

DistanceSpec DistanceSpec::frozen_on(const Dataset& ds, std::span<const std::size_t> ids) const {
  DistanceSpec out = *this;
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    double lo = INFINITY;
    double hi = -INFINITY;
    double sum = 0.0;
    std::size_t count = 0;
    for (const std::size_t id : ids) {
      const double v = ds[id].values[dims_[d]];
      if (is_missing(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
      ++count;
    }
    double scale = 1.0;
    if (normalization_ == Normalization::minmax && count > 0 && hi > lo) {
      scale = hi - lo;
    } else if (normalization_ == Normalization::zscore && count > 1) {
      const double mean = sum / static_cast<double>(count);
      double sq = 0.0;
      for (const std::size_t id : ids) {
        const double v = ds[id].values[dims_[d]];
        if (!is_missing(v)) sq += (v - mean) * (v - mean);
      }
      const double sd = std::sqrt(sq / static_cast<double>(count));
      if (sd > 0.0) scale = sd;
    }
    out.scales_[d] = scale;
  }
  out.frozen_ = true;
  return out;
}

DistanceSpec DistanceSpec::with_scales(std::vector<double> scales) const {
  if (scales.size() != dims_.size()) {
    throw ConfigError("distance: scale count does not match dims");
  }
  DistanceSpec out = *this;
  out.scales_ = std::move(scales);
  out.frozen_ = true;
  return out;
}

DistanceSpec DistanceSpec::scaled_weights(double factor) const {
  DistanceSpec out = *this;
  for (double& w : out.weights_) w *= factor;
  return out;
}

std::string DistanceSpec::to_string(const Schema& schema) const {
  std::string out = "dims=";
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    if (d > 0) out += ',';
    out += schema[dims_[d]].name;
  }
  out += " weights=";
  for (std::size_t d = 0; d < weights_.size(); ++d) {
    if (d > 0) out += ',';
    out += format_number(weights_[d]);
  }
  out += " norm=";
  out += pct::to_string(normalization_);
  return out;
}

std::vector<double> project(const Example& e, const DistanceSpec& spec) {
  std::vector<double> out;
  out.reserve(spec.size());
  for (const std::size_t d : spec.dims()) out.push_back(e.values[d]);
  return out;
}

std::optional<double> try_distance(std::span<const double> a, std::span<const double> b,
                                   const DistanceSpec& spec) {
  if (!spec.frozen()) {
    throw ConfigError("distance computed before normalization statistics were frozen");
  }
  const auto weights = spec.weights();
  const auto scales = spec.scales();
  double sum = 0.0;
  std::size_t defined = 0;
  for (std::size_t d = 0; d < spec.size(); ++d) {
    if (is_missing(a[d]) || is_missing(b[d])) continue;
    const double diff = (a[d] - b[d]) / scales[d];
    sum += weights[d] * diff * diff;
    ++defined;
  }
  if (defined == 0) return std::nullopt;
  if (defined < spec.size()) {
    sum *= static_cast<double>(spec.size()) / static_cast<double>(defined);
  }
  return std::sqrt(sum);
}

double distance(std::span<const double> a, std::span<const double> b, const DistanceSpec& spec) {
  if (auto d = try_distance(a, b, spec)) return *d;
  throw DistanceUndefined("no dimension is defined in both operands");
}

double distance(const Example& a, const Example& b, const DistanceSpec& spec) {
  return distance(project(a, spec), project(b, spec), spec);
}

double distance(const Example& a, const Prototype& b, const DistanceSpec& spec) {
  return distance(project(a, spec), b.mean, spec);
}

double distance(const Prototype& a, const Prototype& b, const DistanceSpec& spec) {
  return distance(a.mean, b.mean, spec);
}

Prototype prototype(const Dataset& ds, std::span<const std::size_t> cluster, const DistanceSpec& spec) {
  if (cluster.empty()) {
    throw EmptyCluster("prototype of an empty cluster");
  }
  Prototype p;
  p.mean.assign(spec.size(), 0.0);
  p.support.assign(spec.size(), 0);
  const auto dims = spec.dims();
  for (const std::size_t id : cluster) {
    const Example& e = ds[id];
    for (std::size_t d = 0; d < dims.size(); ++d) {
      const double v = e.values[dims[d]];
      if (is_missing(v)) continue;
      p.mean[d] += v;
      ++p.support[d];
    }
  }
  for (std::size_t d = 0; d < dims.size(); ++d) {
    p.mean[d] = p.support[d] > 0 ? p.mean[d] / static_cast<double>(p.support[d]) : kMissing;
  }
  return p;
}

double cluster_distance(const Dataset& ds, std::span<const std::size_t> first,
                        std::span<const std::size_t> second, const DistanceSpec& spec) {
  return distance(prototype(ds, first, spec), prototype(ds, second, spec), spec);
}

double sum_squares(const Dataset& ds, std::span<const std::size_t> cluster, const DistanceSpec& spec) {
  const Prototype p = prototype(ds, cluster, spec);
  double ss = 0.0;
  for (const std::size_t id : cluster) {
    if (const auto d = try_distance(project(ds[id], spec), p.mean, spec)) ss += *d * *d;
  }
  return ss;
}

std::size_t informative_count(const Dataset& ds, std::span<const std::size_t> cluster,
                              const DistanceSpec& spec) {
  std::size_t n = 0;
  for (const std::size_t id : cluster) {
    const Example& e = ds[id];
    if (std::any_of(spec.dims().begin(), spec.dims().end(),
                    [&](std::size_t d) { return !is_missing(e.values[d]); })) {
      ++n;
    }
  }
  return n;
}

double relative_error(const Dataset& ds, std::span<const std::size_t> actuals,
                      std::span<const Prototype> predictions, const Prototype& baseline,
                      const DistanceSpec& spec) {
  if (actuals.size() != predictions.size()) {
    throw ConfigError("relative_error: actuals and predictions differ in length");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    const std::vector<double> point = project(ds[actuals[i]], spec);
    const auto to_pred = try_distance(point, predictions[i].mean, spec);
    const auto to_base = try_distance(point, baseline.mean, spec);
    if (!to_pred || !to_base) continue;
    num += *to_pred * *to_pred;
    den += *to_base * *to_base;
  }
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    throw REUndefined("relative error undefined: baseline error is zero");
  }
  return num / den;
}

}  // namespace pct
