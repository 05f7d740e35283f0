#pragma once

#include <complex>
#include <cmath>

#include <gtest/gtest.h>

// Both macros accept trailing `<< context`.
#define EXPECT_CNEAR(a, b, tol)                                                               \
  EXPECT_LE(std::abs(std::complex<double>(a) - std::complex<double>(b)), (tol))               \
      << "got " << std::complex<double>(a) << ", expected " << std::complex<double>(b) << " "

#define EXPECT_CREL(a, b, tol)                                                                \
  EXPECT_LE(std::abs(std::complex<double>(a) - std::complex<double>(b)),                      \
            (tol) * std::abs(std::complex<double>(b)))                                        \
      << "got " << std::complex<double>(a) << ", expected " << std::complex<double>(b) << " "
