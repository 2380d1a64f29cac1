#ifndef POLARDQC_VERSION_HPP
#define POLARDQC_VERSION_HPP

namespace polardqc {

inline constexpr const char* kVersion = "0.1.0";

} // namespace polardqc

#endif
