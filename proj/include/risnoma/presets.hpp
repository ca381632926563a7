#pragma once

#include <string>
#include <vector>

#include "risnoma/config.hpp"

namespace risnoma {

// Canned experiments at desk scale (100 trials by default): fig3/fig4 rate
// comparisons on fixed deployments, fig5..fig10 randomized connectivity
// sweeps, table2 the scheme runtime comparison.
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
RunSpec make_preset(const std::string& name);

// The four-UE / two-UAV / two-RIS fixed deployment used by fig3.
Scenario fixed_four_ue_scenario();

} // namespace risnoma
