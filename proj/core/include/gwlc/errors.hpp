#pragma once

#include <stdexcept>
#include <string>

namespace gwlc {

enum class errc {
  sum_not_one,
  zero_extinction,
  degenerate_unary,
  not_critical,
  negative_probability,
  order_too_small,
  zero_constant_term,
  out_of_range,
  ell_too_small,
  zero_accepted,
  malformed_encoding,
  invalid_argument,
};

const char* errc_name(errc code);

/// Domain error carrying a stable error code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
  throw Error(code, message);
}

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::sum_not_one: return "SumNotOne";
    case errc::zero_extinction: return "ZeroExtinction";
    case errc::degenerate_unary: return "DegenerateUnary";
    case errc::not_critical: return "NotCritical";
    case errc::negative_probability: return "NegativeProbability";
    case errc::order_too_small: return "OrderTooSmall";
    case errc::zero_constant_term: return "ZeroConstantTerm";
    case errc::out_of_range: return "OutOfRange";
    case errc::ell_too_small: return "EllTooSmall";
    case errc::zero_accepted: return "ZeroAccepted";
    case errc::malformed_encoding: return "MalformedEncoding";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace gwlc
