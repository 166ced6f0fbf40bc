#pragma once
#include "doctest.h"
#include "stokes_spectra/error.hpp"

namespace test_support {

template <class F>
stokes_spectra::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const stokes_spectra::Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return stokes_spectra::ErrorCode::InvalidArgument;
}

}  // namespace test_support
