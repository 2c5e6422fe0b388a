#pragma once

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "polars/data_io.hpp"
#include "polars/error.hpp"
#include "polars/rng.hpp"

namespace support {

inline std::string data_path(const std::string& file) {
  return std::string(POLARS_TEST_DATA_DIR) + "/" + file;
}

inline std::string golden_path(const std::string& file) {
  return std::string(POLARS_TEST_GOLDEN_DIR) + "/" + file;
}

template <typename Fn>
polars::ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const polars::Error& e) {
    return e.code();
  }
  FAIL("expected polars::Error");
  return polars::ErrorCode::kIoError;
}

// Reference "ref" plus `models` noisy, rescaled copies of it. Seeded so that
// every test run sees the same data.
inline polars::Dataset random_dataset(std::size_t models, std::size_t length, std::uint64_t seed) {
  polars::SplitMix64 rng(seed);
  std::vector<double> ref(length);
  for (std::size_t i = 0; i < length; ++i) {
    ref[i] = std::sin(0.3 * static_cast<double>(i)) + 0.2 * rng.normal();
  }
  polars::Dataset d;
  d.id = "random";
  d.reference_name = "ref";
  d.vectors.emplace_back("ref", ref);
  for (std::size_t m = 0; m < models; ++m) {
    const double scale = rng.uniform(0.3, 1.8);
    const double noise = rng.uniform(0.0, 1.2);
    std::vector<double> v(length);
    for (std::size_t i = 0; i < length; ++i) v[i] = scale * ref[i] + noise * rng.normal();
    char name[32];
    std::snprintf(name, sizeof name, "m%02zu", m);
    d.vectors.emplace_back(name, v);
  }
  return d;
}

}  // namespace support
