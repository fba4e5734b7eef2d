#pragma once

#include <string>
#include <vector>

#include "cdbs/geometry.hpp"

namespace cdbs {

/// Named in-repo domains used by the experiment harness and the test
/// suites: rectangle, lshape, u_domain, spike, fig1like, thinslab.
///
/// Multi-piece domains carry extra "corner" pieces whose graphs bevel the
/// reentrant corners, so that every small connected subset fits inside a
/// single piece (the overlap guarantee the domain definition asks for).
GraphDomain fixture_domain(const std::string& name);

std::vector<std::string> fixture_names();

bool is_fixture_name(const std::string& name);

}  // namespace cdbs
