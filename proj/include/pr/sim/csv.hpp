#pragma once

#include <string>

#include "pr/sim/scenario.hpp"

namespace pr {

// Schema: t,x1..xn,xd1..xdn,e1..en,s1..sn,tau1..taum,V,That
// 15 significant digits, LF line endings.
std::string log_to_csv(const SimLog& log);
void write_csv(const SimLog& log, const std::string& path);
SimLog read_csv(const std::string& path);

}  // namespace pr
