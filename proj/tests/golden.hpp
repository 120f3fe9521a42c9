#ifndef PADLFUN_TESTS_GOLDEN_HPP
#define PADLFUN_TESTS_GOLDEN_HPP

// Published reference values shared by the unit, CLI and acceptance tests.

#include <string>
#include <utility>
#include <vector>

namespace golden {

// 1/(zeta(1-2k)(1-37^{2k-1})) in 37-adic digit layout, 2k = 2, 4, ..., 36.
inline const std::vector<std::pair<long, std::string>>& zetap37() {
  static const std::vector<std::pair<long, std::string>> rows{
      {2, "25 + 24*37 + 24*37^2 + 24*37^3 + 24*37^4 + O(37^5)"},
      {4, "9 + 3*37 + 9*37^3 + 3*37^4 + O(37^5)"},
      {6, "7 + 30*37 + 36*37^2 + 36*37^3 + 36*37^4 + O(37^5)"},
      {8, "18 + 6*37 + O(37^5)"},
      {10, "16 + 33*37 + 36*37^2 + 36*37^3 + 36*37^4 + O(37^5)"},
      {12, "8 + 25*37 + 28*37^2 + 23*37^3 + O(37^5)"},
      {14, "25 + 36*37 + 36*37^2 + 36*37^3 + 36*37^4 + O(37^5)"},
      {16, "6 + 16*37 + 31*37^2 + 29*37^3 + 20*37^4 + O(37^5)"},
      {18, "3 + 4*37 + 10*37^2 + 32*37^3 + 25*37^4 + O(37^5)"},
      {20, "11 + 13*37 + 19*37^2 + 36*37^3 + 12*37^4 + O(37^5)"},
      {22, "1 + 26*37 + 15*37^2 + 35*37^3 + 9*37^4 + O(37^5)"},
      {24, "16 + 28*37 + 24*37^2 + 27*37^3 + 31*37^4 + O(37^5)"},
      {26, "4 + 17*37 + 25*37^2 + 25*37^3 + 19*37^4 + O(37^5)"},
      {28, "22 + 36*37 + 8*37^2 + 4*37^3 + 33*37^4 + O(37^5)"},
      {30, "22 + 5*37 + 35*37^2 + 9*37^3 + 5*37^4 + O(37^5)"},
      {32, "36*37^-1 + 28 + 3*37 + 19*37^2 + 18*37^3 + O(37^4)"},
      {34, "20 + 37 + 30*37^2 + 15*37^3 + 22*37^4 + O(37^5)"},
      {36, "36*37 + 29*37^2 + 35*37^3 + 5*37^4 + 37^5 + O(37^6)"},
  };
  return rows;
}

// factor(denominator(1/mass(2k))) for 2k = 2, ..., 20.
inline const std::vector<std::pair<long, std::string>>& mass_denominators() {
  static const std::vector<std::pair<long, std::string>> rows{
      {2, "1"},
      {4, "1"},
      {6, "1"},
      {8, "[691, 1]"},
      {10, "[691, 1; 3617, 1; 43867, 1]"},
      {12, "[131, 1; 283, 1; 593, 1; 617, 1; 691, 2; 3617, 1; 43867, 1]"},
      {14, "[103, 1; 131, 1; 283, 1; 593, 1; 617, 1; 691, 1; 3617, 1; 43867, 1; 657931, 1; 2294797, 1]"},
      {16,
       "[103, 1; 131, 1; 283, 1; 593, 1; 617, 1; 691, 1; 1721, 1; 3617, 2; 9349, 1; 43867, 1; 362903, 1; 657931, "
       "1; 2294797, 1; 1001259881, 1]"},
      {18,
       "[37, 1; 103, 1; 131, 1; 283, 1; 593, 1; 617, 1; 683, 1; 691, 1; 1721, 1; 3617, 1; 9349, 1; 43867, 2; "
       "362903, 1; 657931, 1; 2294797, 1; 305065927, 1; 1001259881, 1; 151628697551, 1]"},
      {20,
       "[103, 1; 131, 1; 283, 2; 593, 1; 617, 2; 683, 1; 691, 1; 1721, 1; 3617, 1; 9349, 1; 43867, 1; 362903, 1; "
       "657931, 1; 2294797, 1; 305065927, 1; 1001259881, 1; 151628697551, 1; 154210205991661, 1; "
       "26315271553053477373, 1]"},
  };
  return rows;
}

}  // namespace golden

#endif
