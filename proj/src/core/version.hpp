#pragma once

namespace holo {

inline constexpr const char* kVersionString = "0.1.0";

}  // namespace holo
