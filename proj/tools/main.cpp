#include <iostream>

#include "ait/errors.hpp"
#include "common.hpp"

namespace {

int exit_code(ait::ErrorKind kind) {
  switch (kind) {
    case ait::ErrorKind::kFingerprintMismatch:
      return ait::cli::kExitFingerprint;
    case ait::ErrorKind::kResourceLimit:
      return ait::cli::kExitResource;
    default:
      return ait::cli::kExitError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ait::cli;
  CLI::App app{"ait: algorithmic information workbench"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes:\n"
      "  0  success\n"
      "  1  error (bad arguments or an error reported by the library)\n"
      "  2  profile fingerprint mismatch between ledger and profile\n"
      "  3  resource limit (stage work exceeds the work cap)\n"
      "\n"
      "The default profile path is taken from $AIT_PROFILE.");
  app.set_config("--config", "", "key=value configuration file; flags win");
  app.get_config_formatter_base()->arrayDelimiter(',');

  Global g;
  app.add_option("--profile", g.profile_path, "Machine profile file");
  app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();
  app.add_option("--threads", g.threads, "Enumeration threads")->capture_default_str();

  add_enumerate(app, g);
  add_solovay(app, g);
  add_kc(app, g);
  add_berry(app, g);
  add_monitor(app, g);
  add_nogap(app, g);
  add_ktriv(app, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  } catch (const ait::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
