#include "bandapprox/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace bandapprox {

using Rule = boost::math::quadrature::gauss<double, 64>;

const std::vector<double>& gl_nodes() {
  static const std::vector<double> xs(Rule::abscissa().begin(),
                                      Rule::abscissa().end());
  return xs;
}

const std::vector<double>& gl_weights() {
  static const std::vector<double> ws(Rule::weights().begin(),
                                      Rule::weights().end());
  return ws;
}

}  // namespace bandapprox
