#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "groupmms/instance.hpp"

namespace groupmms {

// Agent whose threshold has been normalized to 1; capped entries in [0,1].
struct ThresholdedAgent {
  AgentId id;
  UtilityVector capped;
};

struct BagFillResult {
  std::vector<std::pair<AgentId, Bundle>> served;  // in serving order
  Bundle leftover;
};

using BagTrace = std::function<void(AgentId winner, const Bundle& bag, const Rational& value)>;

// Bag filling: grow a bag with the remaining item most valued by any
// unserved agent (ties: lowest item id); the moment an unserved agent values
// the bag >= 1, she takes it (ties: lowest agent id) and a fresh bag starts.
// Every closed bag is worth < 2 to each then-unserved agent since items are
// capped at 1. EXHAUSTED if items run out first, which signals a violated
// caller-side precondition.
BagFillResult bag_fill(const std::vector<ThresholdedAgent>& agents, const Bundle& items,
                       const BagTrace& trace = {});

}  // namespace groupmms
