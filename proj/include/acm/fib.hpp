#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace acm {

using boost::multiprecision::cpp_int;

/// Number of independent quadrics through the relevant Veronese variety:
/// l = binomial(n+1, 2), i.e. 3 for n = 2 and 6 for n = 3.
int arrows_for(int n);

/// a_{l,0} = 0, a_{l,1} = 1, a_{l,k+1} = l*a_{l,k} - a_{l,k-1}; k >= 0.
cpp_int fibonacci(int l, int k);

/// rank of the k-th bundle in the F-family on P^n.
cpp_int rank_fk(int n, int k);

/// rank of the k-th bundle in the E-family on P^n (k >= 1).
cpp_int rank_ek(int n, int k);

}  // namespace acm
