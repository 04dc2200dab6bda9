#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "specbound/isoperimetry.hpp"
#include "specbound/warped_geometry.hpp"

namespace specbound {

/// `euclidean:N` or `hyperbolic:N[:kappa]`.
WarpingModel parse_model_name(const std::string& name);

/// `power:D:N`, `croke2`, `model` (the ball profile of `model`) or `tabulated:<csv path>`.
IsoperimetricFunction parse_profile_name(const std::string& name, const WarpingModel& model);

/// Entry point of the `specbound` executable; returns the process exit code.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specbound
