#include "heatpoll/decision.hpp"

namespace heatpoll {

TemperatureReference::TemperatureReference()
    : TemperatureReference(std::array<Range, 5>{{{10, 16}, {17, 19}, {20, 24}, {25, 27}, {28, 32}}}) {}

TemperatureReference::TemperatureReference(std::array<Range, 5> ranges) : ranges_(ranges) {
    for (std::size_t i = 0; i < ranges_.size(); ++i) {
        if (ranges_[i].low > ranges_[i].high) {
            throw std::invalid_argument("temperature reference range is inverted");
        }
        if (i > 0 && ranges_[i].low != ranges_[i - 1].high + 1) {
            throw std::invalid_argument("temperature reference ranges must be contiguous and ascending");
        }
    }
    const Range& neutral = ranges_[static_cast<std::size_t>(HeaterPreference::Neutral)];
    if (neutral.low > 21 || neutral.high < 22) {
        throw std::invalid_argument("neutral range must contain 21 and 22");
    }
    if (ranges_[static_cast<std::size_t>(HeaterPreference::Warm)].low < 25) {
        throw std::invalid_argument("warm range must start at 25 or above");
    }
}

} // namespace heatpoll
