// Writes the golden corpus. Run once; the output under tests/fixtures/golden
// is frozen and checked by the golden test.
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "../support/generators.hpp"
#include "gst/wire/codec.hpp"

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::fprintf(stderr, "usage: make_golden OUT_DIR\n");
        return 2;
    }
    const std::filesystem::path dir(argv[1]);
    std::filesystem::create_directories(dir);
    for (std::size_t n = 0; n < gst::testing::kGoldenCount; ++n) {
        char name[32];
        std::snprintf(name, sizeof name, "golden-%03zu.gst", n);
        std::ofstream(dir / name, std::ios::binary) << gst::wire::serialize_canonical(gst::testing::golden_document(n));
    }
    return 0;
}
