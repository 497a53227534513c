// Writes small input files for the CLI tests.
#include <cstdio>
#include <fstream>
#include <string>

#include "ridgeframe/fixtures.hpp"
#include "ridgeframe/grid_field.hpp"

using namespace ridgeframe;

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: %s gaussian|zero|csv|badmagic|truncated PATH\n", argv[0]);
        return 2;
    }
    const std::string kind = argv[1], path = argv[2];
    if (kind == "gaussian") {
        write_field(path, gaussian_field(2, 64, 0.35));
    } else if (kind == "zero") {
        write_field(path, GridField(2, 64));
    } else if (kind == "csv") {
        write_field_csv(path, gaussian_field(2, 64, 0.35));
    } else if (kind == "badmagic") {
        std::ofstream(path, std::ios::binary) << "NOTAGRID and some more bytes";
    } else if (kind == "truncated") {
        write_field(path, gaussian_field(2, 64, 0.35));
        std::string bytes;
        {
            std::ifstream is(path, std::ios::binary);
            bytes.assign(std::istreambuf_iterator<char>(is), {});
        }
        std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes.substr(0, bytes.size() / 2);
    } else {
        std::fprintf(stderr, "unknown fixture '%s'\n", kind.c_str());
        return 2;
    }
    return 0;
}
