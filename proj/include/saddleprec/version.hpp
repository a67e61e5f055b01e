#pragma once

namespace saddleprec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace saddleprec
