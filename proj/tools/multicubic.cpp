#include <iostream>

#include "multicubic/app.hpp"

int main(int argc, char** argv) { return multicubic::cli_main(argc, argv, std::cout, std::cerr); }
