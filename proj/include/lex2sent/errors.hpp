#ifndef LEX2SENT_ERRORS_HPP_
#define LEX2SENT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lex2sent {

// Error categories map 1:1 onto CLI exit codes (see tools/lex2sent.cpp).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lex2sent

#endif  // LEX2SENT_ERRORS_HPP_
