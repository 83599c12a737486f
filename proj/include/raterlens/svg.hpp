// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

namespace raterlens::svg {

enum class Marker { None, Circle, Square };

struct Series {
  std::string name;
  std::string color;
  std::vector<std::array<double, 2>> points;
  bool line = false;
  Marker marker = Marker::Circle;
};

// Fixed-size chart with axes, tick labels and a legend. Output bytes depend
// only on the arguments, so charts fall under the determinism contract too.
void write_chart(const std::string& path, const std::string& title,
                 const std::string& x_label, const std::string& y_label,
                 const std::vector<Series>& series);

}  // namespace raterlens::svg
