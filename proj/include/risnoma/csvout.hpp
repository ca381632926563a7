#pragma once

#include <string>
#include <vector>

#include "risnoma/engine.hpp"

namespace risnoma {

// Fixed-format results table, 6 significant digits, newline-terminated.
// Columns: sweep_param, sweep_value, scheme, mean_lambda2, se_lambda2,
// mean_rate_bps, se_rate_bps, trials, mean_wall_s.
std::string csv_text(const std::vector<PointRow>& rows);

// Throws IoError when `rows` is empty or the path cannot be written.
void write_csv(const std::vector<PointRow>& rows, const std::string& path);

} // namespace risnoma
