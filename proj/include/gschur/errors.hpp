#ifndef GSCHUR_ERRORS_HPP
#define GSCHUR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gschur {

// Stable error codes; the CLI maps these to structured JSON on stderr.
enum class Errc {
  InvalidArgument,
  AllWeightsZero,
  NonpositiveShapeOrRate,
  SeriesDivergence,
  NotMajorized,
  NotStrictlyMajorized,
  NotComparable,
  TailBoundMissing,
  NotSymmetric,
  NotPSD,
  ParseError,
  TraceMismatch,
  Unreachable,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidArgument:        return "InvalidArgument";
    case Errc::AllWeightsZero:         return "AllWeightsZero";
    case Errc::NonpositiveShapeOrRate: return "NonpositiveShapeOrRate";
    case Errc::SeriesDivergence:       return "SeriesDivergence";
    case Errc::NotMajorized:           return "NotMajorized";
    case Errc::NotStrictlyMajorized:   return "NotStrictlyMajorized";
    case Errc::NotComparable:          return "NotComparable";
    case Errc::TailBoundMissing:       return "TailBoundMissing";
    case Errc::NotSymmetric:           return "NotSymmetric";
    case Errc::NotPSD:                 return "NotPSD";
    case Errc::ParseError:             return "ParseError";
    case Errc::TraceMismatch:          return "TraceMismatch";
    case Errc::Unreachable:            return "Unreachable";
  }
  return "Unknown";
}

class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw DomainError(code, what);
}

}  // namespace gschur

#endif  // GSCHUR_ERRORS_HPP
