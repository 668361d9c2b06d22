#pragma once

namespace theta_ran {

/// Selects the OpenMP kernel or its serial reference. Both produce identical
/// output, in identical order.
enum class Execution { serial, parallel };

}  // namespace theta_ran
