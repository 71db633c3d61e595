#pragma once

#include <string>
#include <vector>

namespace heatpoll {

// Built-in pool of 200 first names used when the config does not
// supply its own list.
const std::vector<std::string>& default_name_pool();

} // namespace heatpoll
