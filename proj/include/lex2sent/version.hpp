#ifndef LEX2SENT_VERSION_HPP_
#define LEX2SENT_VERSION_HPP_

namespace lex2sent {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lex2sent

#endif  // LEX2SENT_VERSION_HPP_
