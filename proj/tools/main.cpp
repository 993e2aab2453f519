#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "common.hpp"
#include "sentopic/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"sentopic: joint sentiment/topic document modeling"};
  app.require_subcommand(1);
  sentopic::cli::register_prepare(app);
  sentopic::cli::register_train(app);
  sentopic::cli::register_eval(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sentopic::cli::kExitUsage;
  } catch (const sentopic::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return sentopic::cli::kExitNumeric;
  } catch (const sentopic::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return sentopic::cli::kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return sentopic::cli::kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return sentopic::cli::kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sentopic::cli::kExitNumeric;
  }
  return 0;
}
