#pragma once

namespace qdent {

inline constexpr const char* version = "0.1.0";

} // namespace qdent
