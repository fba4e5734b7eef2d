#pragma once

#include <string>
#include <vector>

#include "cdbs/quasi.hpp"

namespace cdbs {

/// Analytic test field with closed-form pure partial derivatives of any
/// order per direction.
struct TestFunction {
    std::string name;
    Field f;
    std::function<double(Vec2, int)> d1;  // d^k/dx1^k
    std::function<double(Vec2, int)> d2;  // d^k/dx2^k
};

/// Registry lookup; throws for unknown names. Available: sinexp, expsum,
/// sincos, splitexp (a branch field adapted to the u_domain gap), and
/// monomials "mono:<d1>:<d2>".
TestFunction test_function(const std::string& name);

std::vector<std::string> test_function_names();

}  // namespace cdbs
