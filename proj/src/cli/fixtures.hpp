#pragma once

#include <string>
#include <vector>

#include "qbc/channel.hpp"

namespace qbc::cli {

struct Fixture {
  std::string name;
  KrausChannel channel;
  ConnectionGraph graph;
};

// Built-in channels for `verify --fixtures`. Their content does not depend
// on the command-line seed.
std::vector<Fixture> builtin_fixtures();

// Qutrit channel that is the identity on span{|0>,|1>} and sends |2> to |0>.
KrausChannel qutrit_erasure_to_zero();

}  // namespace qbc::cli
