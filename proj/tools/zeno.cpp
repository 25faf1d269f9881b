#include "zeno/io.hpp"

int main(int argc, char** argv) {
    return zeno::io::main_entry(argc, argv);
}
