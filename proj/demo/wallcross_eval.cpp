// Checks the wall-crossing quotient on Lmm:2 at random points modulo a
// prime, well past the range where exact arithmetic is comfortable.

#include <iostream>

#include "wallx/wallx.hpp"

int main()
{
    using namespace wallx;
    const CheckReport rep = check_wallcross(2, I0::ilp1(1), 10, BackendPolicy::eval(5, 42));
    for (const auto& r : rep.degrees) std::cout << "t^" << r.d << "  " << (r.equal ? "equal" : "unequal") << "\n";
    std::cout << "Schwartz-Zippel bound " << rep.sz_bound.value_or(1.0) << "\n" << (rep.pass ? "PASS" : "FAIL") << "\n";
}
