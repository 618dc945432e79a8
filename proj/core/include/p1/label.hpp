#pragma once

#include <string>

namespace p1 {

enum class Label { A, B, C, undecided };

const char* label_name(Label l);

struct SolutionClass {
  Label label = Label::undecided;
  double confidence = 0;  // in (0, 1] when labeled
  std::string evidence;
};

}  // namespace p1
