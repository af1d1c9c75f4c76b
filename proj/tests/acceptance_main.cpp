// One line per acceptance criterion; exits nonzero if any fails.
#include <iostream>

#include "gerbegw/acceptance.hpp"

int main()
{
    bool ok = true;
    gerbegw::acceptance::run_all([&](const gerbegw::acceptance::Criterion& c) {
        std::cout << gerbegw::acceptance::format(c) << std::endl;
        ok = ok && c.passed;
    });
    return ok ? 0 : 1;
}
