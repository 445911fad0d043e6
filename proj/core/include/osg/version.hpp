#pragma once

namespace osg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace osg
