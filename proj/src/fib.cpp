#include "acm/fib.hpp"

#include <stdexcept>

namespace acm {

int arrows_for(int n) {
  if (n != 2 && n != 3) throw std::invalid_argument("arrows_for: n must be 2 or 3");
  return n * (n + 1) / 2;
}

cpp_int fibonacci(int l, int k) {
  if (l < 2) throw std::invalid_argument("fibonacci: need l >= 2");
  if (k < 0) return -fibonacci(l, -k);  // the recursion extends oddly downward
  cpp_int prev = 0, cur = 1;  // a_0, a_1
  if (k == 0) return prev;
  for (int i = 1; i < k; ++i) {
    cpp_int next = l * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

cpp_int rank_fk(int n, int k) {
  int l = arrows_for(n);
  if (k >= 1) return n * fibonacci(l, k) - fibonacci(l, k - 1);
  return fibonacci(l, 1 - k) - n * fibonacci(l, -k);
}

cpp_int rank_ek(int n, int k) {
  if (k < 1) throw std::invalid_argument("rank_ek: need k >= 1");
  int l = arrows_for(n);
  int omega2_rank = n * (n - 1) / 2;  // rank of Omega^2 on P^n
  return fibonacci(l, k) - omega2_rank * fibonacci(l, k - 1);
}

}  // namespace acm
