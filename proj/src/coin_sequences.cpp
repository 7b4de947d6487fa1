#include "fdtqw/coin_sequences.hpp"

#include <stdexcept>

namespace fdtqw {

CoinWord fib_coin_sequence(const AnglePair& angles, int count) {
  if (count < 1) throw std::invalid_argument("coin count must be >= 1");
  CoinWord word;
  word.period = 6;
  word.coins.reserve(count);
  CoinMatrix prev = make_hadamard_coin(angles.alpha);
  CoinMatrix cur = coin_multiply(make_hadamard_coin(angles.alpha), make_hadamard_coin(angles.beta));
  word.coins.push_back(prev);
  if (count > 1) word.coins.push_back(cur);
  for (int j = 2; j < count; ++j) {
    CoinMatrix next = coin_multiply(cur, prev);
    prev = cur;
    cur = next;
    word.coins.push_back(cur);
  }
  return word;
}

CoinMatrix closed_form_coin(const AnglePair& angles, int j) {
  const double a = angles.alpha, b = angles.beta;
  switch (j) {
    case 0: return make_hadamard_coin(a);
    case 1: return make_rotation_coin(a - b);
    case 2: return make_hadamard_coin(2.0 * a - b);
    case 3: return make_hadamard_coin(a);
    case 4: return make_rotation_coin(b - a);
    case 5: return make_hadamard_coin(b);
    default: throw std::invalid_argument("closed-form coin index must be in 0..5");
  }
}

CoinWord fib_step_coin_word(const AnglePair& angles, int translations) {
  if (translations < 1) throw std::invalid_argument("translation count must be >= 1");
  const CoinMatrix ca = make_hadamard_coin(angles.alpha);
  const CoinMatrix cb = make_hadamard_coin(angles.beta);
  const CoinMatrix block[3] = {ca, cb, ca};
  CoinWord word;
  word.period = 3;
  word.coins.reserve(translations);
  for (int j = 0; j < translations; ++j) word.coins.push_back(block[j % 3]);
  return word;
}

std::string step_operator_letters(int j) {
  if (j < 0) throw std::invalid_argument("step operator index must be >= 0");
  std::string prev = "a";   // U_0 = T C(a)
  std::string cur = "ba";   // U_1 = T C(a) T C(b), rightmost factor first
  if (j == 0) return prev;
  if (j == 1) return cur;
  for (int i = 2; i <= j; ++i) {
    std::string next = prev + cur;  // U_i = U_{i-1} U_{i-2}
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

long fibonacci_value(int n) {
  if (n < 0) throw std::invalid_argument("Fibonacci index must be >= 0");
  long prev = 1, cur = 2;
  if (n == 0) return prev;
  for (int i = 1; i < n; ++i) {
    long next = prev + cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

FibonacciClock fibonacci_clock(int j) {
  if (j < 0) throw std::invalid_argument("clock index must be >= 0");
  FibonacciClock clock;
  clock.j = j;
  for (int n = 0; n < j; ++n) clock.r += fibonacci_value(n);
  return clock;
}

}  // namespace fdtqw
