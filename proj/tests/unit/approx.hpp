#pragma once

#include <doctest.h>

// purely relative: |a - b| < eps * max(|a|, |b|)
inline doctest::Approx approx(double v) { return doctest::Approx(v).scale(0.0); }
