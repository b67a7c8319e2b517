#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace steinerq {
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
}
