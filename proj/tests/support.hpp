#pragma once

#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "dgh/errors.hpp"

#define CHECK_CODE(expr, ec)                                        \
  do {                                                              \
    bool thrown_ = false;                                           \
    try {                                                           \
      (void)(expr);                                                 \
    } catch (const dgh::DomainError& e_) {                          \
      thrown_ = true;                                               \
      CHECK_MESSAGE(e_.code() == (ec), std::string(dgh::to_string(e_.code())));\
    }                                                               \
    CHECK_MESSAGE(thrown_, "expected a DomainError");               \
  } while (0)

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
