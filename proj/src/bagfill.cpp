#include "groupmms/bagfill.hpp"

#include <algorithm>

#include "groupmms/errors.hpp"

namespace groupmms {

BagFillResult bag_fill(const std::vector<ThresholdedAgent>& agents, const Bundle& items,
                       const BagTrace& trace) {
  const Rational one(1);
  for (const auto& agent : agents) {
    for (int item : items) {
      const Rational& e = agent.capped.at(item);
      if (e < Rational(0) || e > one) {
        fail(Errc::cap_violation, "agent (" + std::to_string(agent.id.group + 1) + "," +
                                      std::to_string(agent.id.agent + 1) + ") values item " +
                                      std::to_string(item + 1) + " at " + format_rational(e));
      }
    }
  }

  BagFillResult result;
  std::vector<bool> served(agents.size(), false);
  std::vector<bool> used(items.size(), false);
  std::vector<Rational> bag_value(agents.size(), Rational(0));
  std::size_t remaining_agents = agents.size();
  std::size_t remaining_items = items.size();
  Bundle bag;

  while (remaining_agents > 0) {
    if (remaining_items == 0) {
      fail(Errc::exhausted, "items ran out with " + std::to_string(remaining_agents) +
                                " agents unserved; a caller-side precondition was violated");
    }
    // the remaining item some unserved agent values most, ties by item id
    int pick = -1;
    Rational pick_value(-1);
    for (std::size_t idx = 0; idx < items.size(); ++idx) {
      if (used[idx]) continue;
      Rational best(0);
      bool any = false;
      for (std::size_t a = 0; a < agents.size(); ++a) {
        if (served[a]) continue;
        const Rational& e = agents[a].capped[items[idx]];
        if (!any || e > best) {
          best = e;
          any = true;
        }
      }
      if (pick < 0 || best > pick_value) {
        pick = static_cast<int>(idx);
        pick_value = best;
      }
    }
    used[pick] = true;
    --remaining_items;
    bag.push_back(items[pick]);

    int winner = -1;
    for (std::size_t a = 0; a < agents.size(); ++a) {
      if (served[a]) continue;
      bag_value[a] += agents[a].capped[items[pick]];
      if (winner < 0 && bag_value[a] >= one) winner = static_cast<int>(a);
    }
    if (winner >= 0) {
      served[winner] = true;
      --remaining_agents;
      std::sort(bag.begin(), bag.end());
      if (trace) trace(agents[winner].id, bag, bag_value[winner]);
      result.served.emplace_back(agents[winner].id, bag);
      bag.clear();
      for (std::size_t a = 0; a < agents.size(); ++a) bag_value[a] = Rational(0);
    }
  }

  for (std::size_t idx = 0; idx < items.size(); ++idx) {
    if (!used[idx]) result.leftover.push_back(items[idx]);
  }
  std::sort(result.leftover.begin(), result.leftover.end());
  return result;
}

}  // namespace groupmms
