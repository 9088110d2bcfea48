#include <iostream>

#include "reslab_app/app.hpp"

int main(int argc, char** argv) { return reslab::app::run(argc, argv, std::cout, std::cerr); }
