#ifndef WINTERLAT_ERROR_HPP
#define WINTERLAT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace winterlat {

enum class ErrorKind {
  InvalidWall,
  InvalidParameter,
  TooClose,
  NoBonds,
  Unclassifiable,
  NotACenter,
  TooLarge,
  EmptyShape,
  BelowWall,
  WettingRegime,
  Parse,
};

inline const char* to_string(ErrorKind k)
{
  switch (k) {
    case ErrorKind::InvalidWall: return "InvalidWall";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::TooClose: return "TooClose";
    case ErrorKind::NoBonds: return "NoBonds";
    case ErrorKind::Unclassifiable: return "Unclassifiable";
    case ErrorKind::NotACenter: return "NotACenter";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::EmptyShape: return "EmptyShape";
    case ErrorKind::BelowWall: return "BelowWall";
    case ErrorKind::WettingRegime: return "WettingRegime";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
  {
  }

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace winterlat

#endif  // WINTERLAT_ERROR_HPP
