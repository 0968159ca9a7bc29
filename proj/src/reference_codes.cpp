#include "permfsk/reference_codes.hpp"

#include <stdexcept>

namespace permfsk {

CodeBook example_code_m4_d4() {
  return CodeBook(4, {{1, 2, 3, 4}, {2, 1, 4, 3}, {3, 4, 1, 2}, {4, 3, 2, 1}});
}

CodeBook example_code_m4_d3() {
  return CodeBook(4, {{1, 2, 3, 4},
                      {1, 3, 4, 2},
                      {2, 1, 4, 3},
                      {2, 4, 3, 1},
                      {3, 1, 2, 4},
                      {3, 4, 1, 2},
                      {4, 2, 1, 3},
                      {4, 3, 2, 1},
                      {1, 4, 2, 3},
                      {2, 3, 1, 4},
                      {3, 2, 4, 1},
                      {4, 1, 3, 2}});
}

CodeBook example_code_m3_d2() {
  return CodeBook(3, {{1, 2, 3},
                      {1, 3, 2},
                      {2, 1, 3},
                      {2, 3, 1},
                      {3, 1, 2},
                      {3, 2, 1}});
}

CodeBook example_code_m3_d3() {
  return CodeBook(3, {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}});
}

CodeBook reference_code_book(const std::string& name) {
  if (name == "m4d4") return example_code_m4_d4();
  if (name == "m4d3") return example_code_m4_d3();
  if (name == "m3d2") return example_code_m3_d2();
  if (name == "m3d3") return example_code_m3_d3();
  throw std::invalid_argument("unknown reference code book: " + name);
}

std::vector<std::string> reference_code_names() {
  return {"m3d2", "m3d3", "m4d3", "m4d4"};
}

}  // namespace permfsk
