#include "fieldrank/cli_app.hpp"

int main(int argc, char** argv) { return fieldrank::cli::run(argc, argv); }
