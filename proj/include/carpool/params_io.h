#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "carpool/model.h"

namespace carpool {

// Stable textual names for every scenario parameter, in declaration order.
std::vector<std::string_view> param_names();

// Full-precision, round-trippable text of each parameter.
std::vector<std::pair<std::string_view, std::string>> param_values(
    scenario_params const&);

// Throws carpool::error on an unknown key or a malformed value.
void set_param(scenario_params&, std::string_view key, std::string_view value);

std::string format_double(double);
double parse_double(std::string_view);
std::uint64_t parse_uint(std::string_view);

}  // namespace carpool
