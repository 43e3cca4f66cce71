#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chaostrack/commands.hpp"
#include "chaostrack/config.hpp"

namespace {

void print_usage(std::ostream& out) {
    out << "usage: chaostrack <command> [--config FILE] [--key value ...]\n"
           "                  [--jobs N] [--out PATH] [--format csv|json]\n\n"
           "commands:\n"
           "  fig1a       classical kicked-rotor frequency map, K in [0.1, 1.2]\n"
           "  fig1b       quantum kicked-rotor frequency map, K in [0.1, 10]\n"
           "  fig2        frequencies of <x(t)> vs g for the three-well condensate\n"
           "  fig3        maximum Lyapunov exponent vs g\n"
           "  fig4        critical nonlinearity vs initial population\n"
           "  sweep-bec   generic <x(t)> frequency-map sweep over g\n"
           "  sweep-kr    generic kicked-rotor sweep over K (kr.mode selects)\n"
           "  mle         Lyapunov-exponent sweep over g\n"
           "  critical-g  separatrix estimate plus chaotic-region bracket\n"
           "  wannier     lattice overlap integrals and dipole elements\n\n"
           "Any config key can be overridden with --<key> <value>; flags win\n"
           "over the config file, which wins over the command preset.\n";
}

int fail(const std::string& type, const std::string& message) {
    nlohmann::ordered_json err;
    err["error"] = type;
    err["message"] = message;
    std::cerr << err.dump() << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace chaostrack;

    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        print_usage(args.empty() ? std::cerr : std::cout);
        return args.empty() ? 2 : 0;
    }
    const std::string command = args[0];
    if (!is_command(command)) {
        print_usage(std::cerr);
        return fail("UnknownCommand", "unknown command '" + command + "'");
    }

    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
    for (std::size_t i = 1; i < args.size(); i += 2) {
        const std::string& flag = args[i];
        if (flag.rfind("--", 0) != 0)
            return fail("UsageError", "expected --key, got '" + flag + "'");
        if (i + 1 >= args.size())
            return fail("UsageError", "missing value for " + flag);
        const std::string key = flag.substr(2);
        if (key == "config")
            config_path = args[i + 1];
        else
            overrides.emplace_back(key, args[i + 1]);
    }

    try {
        RunConfig cfg;
        apply_command_preset(command, cfg);
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) return fail("IOError", "cannot read config file " + config_path);
            std::stringstream buf;
            buf << in.rdbuf();
            apply_config_text(cfg, buf.str());
        }
        for (const auto& [key, value] : overrides) set_config_key(cfg, key, value, 0);
        cfg.finalize();

        const std::string path = run_command(command, cfg);
        std::cout << path << "\n";
        return 0;
    } catch (const ParseError& e) {
        return fail("ParseError", e.what());
    } catch (const ValidationError& e) {
        return fail("ValidationError", e.what());
    } catch (const SimulationError& e) {
        return fail("SimulationError", e.what());
    } catch (const std::exception& e) {
        return fail("InternalError", e.what());
    }
}
