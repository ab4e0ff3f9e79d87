// Walks the stability parameter counterclockwise around the square
// [-1,1]^2 and prints each wall or chamber it enters.

#include <iostream>
#include <vector>

#include "wallx/wallx.hpp"

int main()
{
    using namespace wallx;
    auto frac = [](int n) {
        Rational r(n, 12);
        r.canonicalize();
        return r;
    };
    std::vector<Theta> path;
    for (int i = 12; i > -12; --i) path.push_back({frac(i), 1});   // top, right to left
    for (int i = 12; i > -12; --i) path.push_back({-1, frac(i)});  // left, top to bottom
    for (int i = -12; i < 12; ++i) path.push_back({frac(i), -1});  // bottom
    for (int i = -12; i < 12; ++i) path.push_back({1, frac(i)});   // right
    std::string last;
    for (const Theta& th : path) {
        std::string c;
        try {
            c = classify_theta(th, 6).to_string();
        } catch (const Inconclusive&) {
            c = "inconclusive (walls accumulate beyond k = 6)";
        }
        if (c != last) std::cout << th.to_string() << "  " << c << "\n";
        last = c;
    }
}
