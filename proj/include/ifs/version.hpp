#ifndef IFS_VERSION_HPP
#define IFS_VERSION_HPP

namespace ifs {

inline constexpr const char* kToolName = "ifsim";
inline constexpr const char* kVersion = "0.1.0";

} // namespace ifs

#endif
