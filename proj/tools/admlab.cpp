#include <admlab/cli/run.hpp>

#include "scenario_schema.hpp"

int main(int argc, char** argv) { return admlab::cli::cli_main(argc, argv, admlab::cli::scenario_schema); }
