#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdtqw/core_types.hpp"

namespace fdtqw {

/// Time-ordered coin word; coins[0] is applied first. `period` is set when
/// the word is known to repeat with that period.
struct CoinWord {
  std::vector<CoinMatrix> coins;
  std::optional<int> period;
};

/// Coins C_0..C_{count-1} of the Fibonacci coin recursion
/// C_{j+1} = C_j * C_{j-1}, C_0 = C(alpha), C_1 = C(alpha)C(beta).
/// The sequence repeats with period 6.
CoinWord fib_coin_sequence(const AnglePair& angles, int count);

/// Closed form of the j-th Fibonacci coin, j in 0..5:
///   C(alpha), R(alpha-beta), C(2 alpha-beta), C(alpha), R(beta-alpha), C(beta)
/// where C is the generalized Hadamard coin and R a proper rotation.
CoinMatrix closed_form_coin(const AnglePair& angles, int j);

/// Coin word of the period-6 extension of the Fibonacci step recursion
/// U_j = U_{j-1} U_{j-2}, U_0 = T C(alpha), U_1 = T C(alpha) T C(beta),
/// expanded in application order. One period reads (alpha, beta, alpha,
/// alpha, beta, alpha); the word already repeats with period 3.
CoinWord fib_step_coin_word(const AnglePair& angles, int translations);

/// Letters of the step operator U_j in application order, 'a' for C(alpha)
/// and 'b' for C(beta). word(U_j) = word(U_{j-2}) + word(U_{j-1}).
std::string step_operator_letters(int j);

/// Fibonacci numbers with F(0) = 1, F(1) = 2.
long fibonacci_value(int n);

/// Translation-count clock for the step recursion: after applying
/// U_0..U_{j-1} the walker has seen r = sum_{n<j} F(n) shifts.
struct FibonacciClock {
  int j = 0;
  long r = 0;
};

FibonacciClock fibonacci_clock(int j);

}  // namespace fdtqw
