#include "app.hpp"

int main(int argc, char** argv) { return podselect::cli::run_cli(argc, argv); }
