#include "zxopt/rational.hpp"

#include <cmath>

namespace zxopt {

double Phase::radians() const {
    return M_PI * static_cast<double>(num) / static_cast<double>(den);
}

std::string Phase::str() const {
    if (num == 0)
        return "0";
    std::string s;
    if (num != 1)
        s += std::to_string(num);
    s += "pi";
    if (den != 1) {
        s += "/";
        s += std::to_string(den);
    }
    return s;
}

std::string Phase::qasm_str() const {
    if (num == 0)
        return "0";
    std::string s;
    if (num != 1)
        s += std::to_string(num) + "*";
    s += "pi";
    if (den != 1)
        s += "/" + std::to_string(den);
    return s;
}

} // namespace zxopt
