#pragma once

#include <functional>

#include "c0ip/hermite.hpp"

namespace c0ip {

using ScalarField = std::function<double(const Point&)>;
/// Field with derivatives through order three.
using JetField = std::function<Jet(const Point&)>;
/// Jet-valued field that may depend on which triangle the point is evaluated
/// from (piecewise functions); analytic fields ignore the index.
using ElementJetField = std::function<Jet(int triangle, const Point&)>;

inline ElementJetField per_element(JetField f) {
  return [f = std::move(f)](int, const Point& x) { return f(x); };
}

}  // namespace c0ip
