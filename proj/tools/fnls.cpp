// Command-line front end: ground-state, evolve, verify, classify, sweep.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"

#include "fnls/config.hpp"
#include "fnls/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spectral laboratory for the focusing fractional NLS"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    int threads = 0;
    bool verbose = false;

    for (const char* name :
         {"ground-state", "evolve", "verify", "classify", "sweep"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--output", output_dir, "output directory override");
        sub->add_option("--threads", threads, "worker pool size (sweep)");
        sub->add_flag("--verbose", verbose, "chatty progress on stderr");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        fnls::RunConfig cfg = fnls::load_config(config_path);
        if (threads <= 0) {
            if (const char* env = std::getenv("FNLS_THREADS")) threads = std::atoi(env);
        }
        if (threads <= 0) threads = cfg.run.threads;
        const std::string out = output_dir.empty() ? cfg.output.directory : output_dir;
        if (verbose)
            std::fprintf(stderr, "fnls %s: config=%s output=%s threads=%d\n",
                         command.c_str(), config_path.c_str(), out.c_str(), threads);
        return fnls::run_command(command, cfg, out, threads);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "{\"error\": \"%s\"}\n", e.what());
        return 2;
    }
}
