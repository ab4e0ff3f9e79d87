// Sums the localization contributions over the JS fixed points and compares
// with the binomial closed form.

#include <iostream>

#include "wallx/wallx.hpp"

int main()
{
    using namespace wallx;
    const int k = 2;
    for (int d = 1; d <= 3; ++d) {
        const auto fps = js_fixed_points(k, d);
        std::vector<RatFun> terms;
        for (const auto& fp : fps) terms.push_back(contribution(fp));
        const RatFun total = RatFun::sum(terms);
        std::cout << "d=" << d << "  " << fps.size() << " fixed points\n"
                  << "  sum      " << total << "\n"
                  << "  binomial " << js_binomial(k, d) << "\n"
                  << "  " << (total == js_binomial(k, d) ? "equal" : "unequal") << "\n";
    }
}
