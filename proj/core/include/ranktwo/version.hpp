#pragma once

namespace ranktwo {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace ranktwo
