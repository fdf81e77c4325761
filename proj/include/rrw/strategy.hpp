#pragma once

#include <vector>

#include "rrw/cone.hpp"

namespace rrw {

/// Node-rewriting actions. Integer codes are part of the on-disk formats.
enum class Action : int { Isop = 0, Exact = 1, Npn = 2 };
constexpr int kNumActions = 3;

const char* action_name(Action a);

/// Input-size ranges per action: ISOP [2,10], exact synthesis [2,5], NPN
/// [2,4]. ISOP's range guarantees the set is nonempty for every valid cone.
std::vector<Action> possible_actions(const FeatureVector& fv);
std::vector<Action> possible_actions_for_size(int input_size);

}  // namespace rrw
