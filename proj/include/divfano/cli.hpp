#ifndef DIVFANO_CLI_HPP
#define DIVFANO_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include "divfano/core.hpp"

namespace divfano::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_validation = 2,
    exit_unknown = 3,
    exit_io = 4
};

/// "a0,a1,...,an:d", weights in any order. Throws validation_error.
WeightSystem parse_weight_system(const std::string &text);

/// Runs one command line (without the program name) and returns the exit
/// code. Everything is written to out / err; nothing else is touched except
/// files named by --out.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace divfano::cli

#endif
