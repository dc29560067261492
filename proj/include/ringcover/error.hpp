#ifndef RINGCOVER_ERROR_HPP_
#define RINGCOVER_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ringcover {

enum class Errc {
  non_associative,
  bad_unit,
  malformed_coords,
  bad_order,
  unsupported_field_order,
  cap_exceeded,
  not_an_ideal,
  not_a_cover,
  not_applicable,
  timeout,
  syntax_error,
  range_error,
};

inline char const* errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::non_associative: return "NonAssociative";
    case Errc::bad_unit: return "BadUnit";
    case Errc::malformed_coords: return "MalformedCoords";
    case Errc::bad_order: return "BadOrder";
    case Errc::unsupported_field_order: return "UnsupportedFieldOrder";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::not_an_ideal: return "NotAnIdeal";
    case Errc::not_a_cover: return "NotACover";
    case Errc::not_applicable: return "NotApplicable";
    case Errc::timeout: return "Timeout";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::range_error: return "RangeError";
  }
  return "Unknown";
}

//! Every engine failure is reported as a RingError carrying an Errc.
class RingError : public std::runtime_error {
 public:
  RingError(Errc code, std::string const& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ringcover

#endif  // RINGCOVER_ERROR_HPP_
