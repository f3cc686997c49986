#pragma once

namespace prefixsel {

// Kernel selection: the OpenMP kernels are the default; the serial ones are
// the reference the tests compare against.
enum class Exec { serial, parallel };

int worker_threads() noexcept;

}  // namespace prefixsel
