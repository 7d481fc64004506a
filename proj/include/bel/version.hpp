#pragma once

namespace bel {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bel
