#pragma once

#include <mutex>

#include <fftw3.h>

namespace stlsq::detail {

// The FFTW planner is not thread-safe; executing an existing plan is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace stlsq::detail
