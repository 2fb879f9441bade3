#ifndef TREESHIFT_VERSION_HPP
#define TREESHIFT_VERSION_HPP

namespace treeshift {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kVersionString = "treeshift 0.1.0";

}  // namespace treeshift

#endif  // TREESHIFT_VERSION_HPP
