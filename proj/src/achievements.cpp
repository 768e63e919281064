#include "coopcraft/achievements.hpp"

namespace coopcraft {

static_assert(kAchievements.size() == kNumAchievements);
static_assert(kNumAchievements <= 64, "ledger rows are 64-bit masks");

std::optional<AchievementId> achievement_from_name(std::string_view name) {
  for (int i = 0; i < kNumAchievements; ++i) {
    if (kAchievements[static_cast<std::size_t>(i)].name == name) return static_cast<AchievementId>(i);
  }
  return std::nullopt;
}

}  // namespace coopcraft
