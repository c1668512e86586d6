#pragma once

#include <string>

#include "json.hpp"
#include "mmd2d/exact_solver.hpp"
#include "mmd2d/path_select.hpp"
#include "mmd2d/rate_matrix.hpp"
#include "mmd2d/schedule.hpp"

namespace mmd2d {

// {"ap": 6, "n_nodes": 7, "paths": [[6, 0, 3, 4], ...]}
nlohmann::json to_json(const PathSet& paths);
PathSet path_set_from_json(const nlohmann::json& j);

// {"total_slots": 8, "pairings": [{"slots": 2, "links": [[6, 0]]}, ...]}
nlohmann::json to_json(const Schedule& sched);
Schedule schedule_from_json(const nlohmann::json& j);

// Schedule fields plus "objective" and "proven_optimal".
nlohmann::json to_json(const ExactSolution& sol);

// Plain text: n rows of n whitespace-separated integers; '#' starts a comment.
std::string format_rate_matrix(const RateMatrix& rates);
// Throws std::runtime_error on malformed text.
RateMatrix parse_rate_matrix(const std::string& text);

}  // namespace mmd2d
