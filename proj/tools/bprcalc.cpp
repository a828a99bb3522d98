#include "bpr/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bpr::dispatch(argc, argv, std::cout, std::cerr); }
