#include "cdbs/testfn.hpp"

#include <cmath>
#include <stdexcept>

namespace cdbs {

namespace {

double falling(int d, int k) {  // d (d-1) ... (d-k+1)
    double v = 1.0;
    for (int t = 0; t < k; ++t) v *= d - t;
    return v;
}

TestFunction make_mono(int d1, int d2) {
    TestFunction tf;
    tf.name = "mono:" + std::to_string(d1) + ":" + std::to_string(d2);
    tf.f = [d1, d2](Vec2 x) { return std::pow(x.x, d1) * std::pow(x.y, d2); };
    tf.d1 = [d1, d2](Vec2 x, int k) {
        if (k > d1) return 0.0;
        return falling(d1, k) * std::pow(x.x, d1 - k) * std::pow(x.y, d2);
    };
    tf.d2 = [d1, d2](Vec2 x, int k) {
        if (k > d2) return 0.0;
        return falling(d2, k) * std::pow(x.x, d1) * std::pow(x.y, d2 - k);
    };
    return tf;
}

}  // namespace

TestFunction test_function(const std::string& name) {
    if (name == "sinexp") {
        TestFunction tf;
        tf.name = name;
        tf.f = [](Vec2 x) { return std::sin(x.x) * std::exp(x.y); };
        tf.d1 = [](Vec2 x, int k) { return std::sin(x.x + k * M_PI_2) * std::exp(x.y); };
        tf.d2 = [](Vec2 x, int) { return std::sin(x.x) * std::exp(x.y); };
        return tf;
    }
    if (name == "expsum") {
        TestFunction tf;
        tf.name = name;
        tf.f = [](Vec2 x) { return std::exp(0.5 * x.x + x.y); };
        tf.d1 = [](Vec2 x, int k) { return std::pow(0.5, k) * std::exp(0.5 * x.x + x.y); };
        tf.d2 = [](Vec2 x, int) { return std::exp(0.5 * x.x + x.y); };
        return tf;
    }
    if (name == "sincos") {
        TestFunction tf;
        tf.name = name;
        tf.f = [](Vec2 x) { return std::sin(1.5 * x.x) * std::cos(x.y); };
        tf.d1 = [](Vec2 x, int k) {
            return std::pow(1.5, k) * std::sin(1.5 * x.x + k * M_PI_2) * std::cos(x.y);
        };
        tf.d2 = [](Vec2 x, int k) { return std::sin(1.5 * x.x) * std::cos(x.y + k * M_PI_2); };
        return tf;
    }
    if (name == "splitexp") {
        // sinexp with the right side lifted by a quintic smoothstep ramp
        // whose transition band (1.9, 3.2) sits inside the gap of the
        // u_domain fixture. The field lies in the anisotropic Sobolev space
        // over that domain, yet any globally smooth extension across the
        // gap needs derivatives far larger than its own.
        TestFunction tf;
        tf.name = name;
        constexpr double kLift = 2.5, kEdge = 1.9, kWidth = 1.3;
        auto step_deriv = [](double t, int k) {
            if (t <= 0.0 || t >= 1.0) return k == 0 ? (t >= 1.0 ? 1.0 : 0.0) : 0.0;
            double c[6] = {0, 0, 0, 10, -15, 6};  // 10t^3 - 15t^4 + 6t^5
            double v = 0.0;
            for (int d = 5; d >= k; --d) {
                double f = c[d];
                for (int m = 0; m < k; ++m) f *= d - m;
                v = v * t + f;
            }
            return v;
        };
        tf.f = [=](Vec2 x) {
            return (std::sin(x.x) + kLift * step_deriv((x.x - kEdge) / kWidth, 0)) *
                   std::exp(x.y);
        };
        tf.d1 = [=](Vec2 x, int k) {
            double ramp = kLift * std::pow(kWidth, -k) * step_deriv((x.x - kEdge) / kWidth, k);
            return (std::sin(x.x + k * M_PI_2) + ramp) * std::exp(x.y);
        };
        tf.d2 = [=](Vec2 x, int) {
            return (std::sin(x.x) + kLift * step_deriv((x.x - kEdge) / kWidth, 0)) *
                   std::exp(x.y);
        };
        return tf;
    }
    if (name.rfind("mono:", 0) == 0) {
        size_t c = name.find(':', 5);
        if (c != std::string::npos)
            return make_mono(std::stoi(name.substr(5, c - 5)), std::stoi(name.substr(c + 1)));
    }
    throw std::invalid_argument("unknown test function '" + name + "'");
}

std::vector<std::string> test_function_names() {
    return {"sinexp", "expsum", "sincos", "splitexp"};
}

}  // namespace cdbs
