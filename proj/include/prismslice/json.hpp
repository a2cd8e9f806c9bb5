#pragma once

#include <json.hpp>

namespace prismslice {
using Json = nlohmann::ordered_json;
}
