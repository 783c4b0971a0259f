#pragma once

namespace xidx {

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace xidx
