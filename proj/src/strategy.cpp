#include "rrw/strategy.hpp"

#include "rrw/errors.hpp"

namespace rrw {

const char* action_name(Action a)
{
    switch (a) {
    case Action::Isop: return "isop";
    case Action::Exact: return "exact";
    case Action::Npn: return "npn";
    }
    return "?";
}

std::vector<Action> possible_actions_for_size(int input_size)
{
    assert(input_size >= 2 && input_size <= 10);
    std::vector<Action> actions{Action::Isop};
    if (input_size <= 5) actions.push_back(Action::Exact);
    if (input_size <= 4) actions.push_back(Action::Npn);
    return actions;
}

std::vector<Action> possible_actions(const FeatureVector& fv)
{
    return possible_actions_for_size(fv.input_size);
}

}  // namespace rrw
