#pragma once

#include <functional>
#include <string>
#include <vector>

#include "aaotwin/twin.hpp"

namespace aaotwin {

// One settable/fittable scalar of SensorParams, addressed by a dotted key.
// Bounds are the box used when the parameter is freed in a fit.
struct ParamKey {
  std::string key;
  std::function<double(const SensorParams&)> get;
  std::function<void(SensorParams&, double)> set;
  double fit_lower;
  double fit_upper;
  double fit_scale;
};

const std::vector<ParamKey>& param_registry();

const ParamKey* find_param_key(const std::string& key);

// Sets a dotted key, rejecting unknown names.
void set_param(SensorParams& params, const std::string& key, double value);

double get_param(const SensorParams& params, const std::string& key);

// Keys in registry order with their current values, for serialization.
std::vector<std::pair<std::string, double>> all_params(
    const SensorParams& params);

}  // namespace aaotwin
