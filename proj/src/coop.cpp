#include "coopcraft/coop.hpp"

#include <algorithm>

namespace coopcraft {

void open_request(WorldState& s, int agent, TradableResource resource, EventList& events) {
  if (!s.agents[static_cast<std::size_t>(agent)].alive) return;
  const auto it = std::lower_bound(s.requests.begin(), s.requests.end(), agent,
                                   [](const TradeRequest& r, int id) { return r.requester < id; });
  const TradeRequest fresh{static_cast<std::int16_t>(agent), resource, static_cast<std::int16_t>(kRequestTtl)};
  if (it != s.requests.end() && it->requester == agent) {
    *it = fresh;
  } else {
    s.requests.insert(it, fresh);
  }
  Event e;
  e.kind = EventKind::Request;
  e.agent = static_cast<std::int16_t>(agent);
  e.subject = static_cast<std::uint8_t>(resource);
  events.push_back(e);
}

const TradeRequest* find_request(const WorldState& s, int agent) {
  for (const auto& r : s.requests) {
    if (r.requester == agent) return &r;
  }
  return nullptr;
}

int holding(const AgentState& a, TradableResource r) {
  switch (r) {
    case TradableResource::Food: return a.food;
    case TradableResource::Water: return a.water;
    default: return a.inventory.count(item_of(r));
  }
}

bool fulfill_give(WorldState& s, const EnvConfig& config, int giver, int receiver, EventList& events) {
  if (giver == receiver || receiver < 0 || receiver >= config.n_agents) return false;
  AgentState& from = s.agents[static_cast<std::size_t>(giver)];
  AgentState& to = s.agents[static_cast<std::size_t>(receiver)];
  if (!from.alive || !to.alive) return false;
  const TradeRequest* request = find_request(s, receiver);
  if (request == nullptr) return false;
  const TradableResource r = request->resource;
  if (holding(from, r) < 1) return false;

  int received = 1;
  switch (r) {
    case TradableResource::Food:
      from.food = static_cast<std::int16_t>(from.food - 1);
      received = std::min(1, to.meter_cap - to.food);
      to.food = static_cast<std::int16_t>(to.food + received);
      break;
    case TradableResource::Water:
      from.water = static_cast<std::int16_t>(from.water - 1);
      received = std::min(1, to.meter_cap - to.water);
      to.water = static_cast<std::int16_t>(to.water + received);
      break;
    default: {
      const Item item = item_of(r);
      if (to.inventory.count(item) >= kItemCap) return false;
      from.inventory[item] = static_cast<std::uint16_t>(from.inventory.count(item) - 1);
      to.inventory[item] = static_cast<std::uint16_t>(to.inventory.count(item) + 1);
      break;
    }
  }
  Event e;
  e.kind = EventKind::Trade;
  e.agent = static_cast<std::int16_t>(giver);
  e.other = static_cast<std::int16_t>(receiver);
  e.subject = static_cast<std::uint8_t>(r);
  e.amount = static_cast<std::int16_t>(received);
  events.push_back(e);
  return true;
}

void tick_requests(WorldState& s) {
  for (auto& r : s.requests) --r.ttl;
  std::erase_if(s.requests, [&](const TradeRequest& r) {
    return r.ttl <= 0 || !s.agents[static_cast<std::size_t>(r.requester)].alive;
  });
}

}  // namespace coopcraft
