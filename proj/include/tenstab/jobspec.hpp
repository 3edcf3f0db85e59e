#pragma once

#include <map>
#include <string>
#include <vector>

#include "tenstab/vogel.hpp"

namespace tenstab {

// ---------------------------------------------------------------------------
// Structured-text job descriptions for the command-line tool.
//
// Statements are separated by newlines or ';'.  '#' starts a comment.
//   ring Z                    | ring Z/<m>        (m >= 2)
//   module <name> rel <matrix>                    (rows = generators)
//   module <name> free <rank>
//   map <name> <source> <target> <matrix>         (rows = target coordinates)
//   cmd <command> <names...> [key=value ...]
// The name "Z" is predefined as the free module of rank one over the ring.
// Commands: stabilize, tor, tower, asymptotic, intertwine, satellite, omega,
// vogel-roundtrip, verify-cubes, verify-all.
// Recognized parameters: n, horizon, seed, count, truncation.  The
// truncation override is accepted for compatibility and has no effect: all
// arithmetic is exact.
// ---------------------------------------------------------------------------

struct JobSpec {
    Ring ring = ring_Z();
    std::map<std::string, FPModule> modules;
    std::map<std::string, ModuleMap> maps;
    std::string command;
    std::vector<std::string> args;      // positional names after the command
    std::map<std::string, long> params;
};

JobSpec parse_jobspec(const std::string& text);

struct Report {
    bool ok = false;
    std::string human;    // line-oriented text with timings
    std::string machine;  // deterministic key-value sidecar
};

Report run(const JobSpec& job);

}  // namespace tenstab
