#include <iostream>

#include "spotpath/io.hpp"

int main(int argc, char** argv) { return spotpath::io::run_cli(argc, argv, std::cout, std::cerr); }
