#pragma once

#include <stdexcept>
#include <string>

namespace aw {

enum class errc {
  ok = 0,
  invalid_argument,
  imaginary_leakage,
  branch_violation,
  unresolved_shift,
  degenerate_signal,
  nondecaying_integrand,
  out_of_window,
  io_failure,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace aw
