#include "invconn/cli/cli.hpp"

int main(int argc, char** argv) {
    try {
        return invconn::run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return invconn::kExitInternal;
    }
}
