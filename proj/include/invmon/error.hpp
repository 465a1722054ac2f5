#ifndef INVMON_ERROR_HPP_
#define INVMON_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace invmon {

  //! Base exception for everything thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! Syntax error in a word, presentation, graph or model file.
  class ParseError : public Error {
   public:
    ParseError(std::string const& msg, std::size_t line = 0, std::size_t col = 0)
        : Error(line == 0 ? msg
                          : "line " + std::to_string(line) + ", column "
                                + std::to_string(col) + ": " + msg),
          _line(line),
          _col(col) {}

    std::size_t line() const noexcept {
      return _line;
    }
    std::size_t column() const noexcept {
      return _col;
    }

   private:
    std::size_t _line;
    std::size_t _col;
  };

}  // namespace invmon

#endif  // INVMON_ERROR_HPP_
