#include <iostream>

#include "osg/cli/commands.hpp"

int main(int argc, char** argv) { return osg::cli::run(argc, argv, std::cout, std::cerr); }
