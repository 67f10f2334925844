#include <fstream>
#include <iostream>

#include "orbitquad/cli.hpp"

using namespace orbitquad;

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    cli::RunSpec spec = cli::parse_spec(args);
    cli::RunResult res = cli::run(spec);
    std::string text = res.document.dump(2) + "\n";
    if (spec.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(spec.output, std::ios::binary);
      if (!f) {
        std::cerr << "orbitquad: cannot write " << spec.output << "\n";
        return cli::exit_code::internal;
      }
      f << text;
    }
    return res.exit_code;
  } catch (const cli::CliError& e) {
    if (e.code == cli::exit_code::ok) {
      std::cout << e.what();
      return 0;
    }
    std::cerr << "orbitquad: " << e.what() << "\n";
    return e.code;
  } catch (const Error& e) {
    std::cerr << "orbitquad: " << e.what() << "\n";
    return cli::exit_code::internal;
  }
}
