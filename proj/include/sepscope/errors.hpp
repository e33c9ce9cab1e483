#pragma once

#include <stdexcept>
#include <string>

namespace sepscope {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error { using Error::Error; };
class DataError : public Error { using Error::Error; };
class LabelError : public Error { using Error::Error; };
class FormatError : public Error { using Error::Error; };
class ShapeError : public Error { using Error::Error; };
class SingularError : public Error { using Error::Error; };
class ConvergenceError : public Error { using Error::Error; };
class DegenerateError : public Error { using Error::Error; };
class UnsupportedError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };

}  // namespace sepscope
