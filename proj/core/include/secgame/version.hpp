#ifndef SECGAME_VERSION_HPP
#define SECGAME_VERSION_HPP

namespace secgame {

inline constexpr const char* kVersion = "0.1.0";

} // namespace secgame

#endif
