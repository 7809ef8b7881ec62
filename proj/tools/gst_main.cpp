#include <iostream>

#include "gst/cli.hpp"

int main(int argc, char** argv)
{
    return static_cast<int>(gst::cli::dispatch(argc, argv, std::cout, std::cerr));
}
