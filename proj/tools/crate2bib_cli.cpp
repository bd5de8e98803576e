// crate2bib command-line tool. Prints BibTeX candidates for one package.
//
// Exit codes: 0 success, 1 package or version not found, 2 usage error,
// 3 network failure without a cached fallback, 4 other failures.

#include <CLI11.hpp>
#include <crate2bib/crate2bib.h>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNetwork = 3;
constexpr int kExitOther = 4;

int exit_code_for(c2b_status status) {
    switch (status) {
        case C2B_OK: return kExitOk;
        case C2B_ERR_NOT_FOUND:
        case C2B_ERR_NO_MATCH:
        case C2B_ERR_ALL_YANKED: return kExitNotFound;
        case C2B_ERR_INVALID_ARGUMENT: return kExitUsage;
        case C2B_ERR_NETWORK:
        case C2B_ERR_RATE_LIMITED:
        case C2B_ERR_OFFLINE_MISS: return kExitNetwork;
        default: return kExitOther;
    }
}

struct ClientDeleter {
    void operator()(c2b_client* c) const { c2b_client_free(c); }
};
struct ResultDeleter {
    void operator()(c2b_result* r) const { c2b_result_free(r); }
};

int fail(c2b_status status) {
    std::cerr << "crate2bib: " << c2b_last_error_message() << '\n';
    return exit_code_for(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate BibTeX entries for a crates.io package", "crate2bib"};

    std::string package;
    std::string version = "latest";
    std::optional<std::string> out_path;
    bool no_cff = false;
    std::optional<std::string> branch;
    std::string user_agent = "crate2bib-cli (contact: <none>)";
    bool offline = false;
    std::optional<std::string> cache_dir;
    std::int64_t ttl = 86400;
    std::string registry = "https://crates.io";

    app.add_option("package", package, "Package name on the registry")->required();
    app.add_option("version", version, "Version request: latest, X, X.Y or X.Y.Z")->capture_default_str();
    app.add_option("--out", out_path, "Write entries to this file instead of stdout");
    app.add_flag("--no-cff", no_cff, "Skip the repository CITATION.cff probe");
    app.add_option("--branch", branch, "Branch to probe before main and master");
    app.add_option("--user-agent", user_agent, "User-Agent sent with every request")->capture_default_str();
    app.add_flag("--offline", offline, "Use only cached responses");
    app.add_option("--cache-dir", cache_dir, "Cache directory (default: $CRATE2BIB_CACHE_DIR or platform cache)");
    app.add_option("--ttl", ttl, "Cache lifetime in seconds")->check(CLI::NonNegativeNumber)->capture_default_str();
    app.add_option("--registry", registry, "Registry base URL")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "crate2bib: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    c2b_config config;
    c2b_config_init(&config);
    config.base_url = registry.c_str();
    config.user_agent = user_agent.c_str();
    config.cache_dir = cache_dir ? cache_dir->c_str() : nullptr;
    config.ttl_seconds = ttl;
    config.offline = offline ? 1 : 0;

    c2b_client* raw_client = nullptr;
    if (auto status = c2b_client_new(&config, &raw_client); status != C2B_OK) {
        return fail(status);
    }
    std::unique_ptr<c2b_client, ClientDeleter> client(raw_client);

    c2b_result* raw_result = nullptr;
    auto status = c2b_gather(client.get(), package.c_str(), version.c_str(), no_cff ? 0 : 1,
                             branch ? branch->c_str() : nullptr, &raw_result);
    if (status != C2B_OK) {
        return fail(status);
    }
    std::unique_ptr<c2b_result, ResultDeleter> result(raw_result);

    for (size_t i = 0; i < c2b_result_count(result.get()); ++i) {
        for (size_t w = 0; w < c2b_result_warning_count(result.get(), i); ++w) {
            std::cerr << "warning: " << c2b_result_warning(result.get(), i, w) << '\n';
        }
    }

    const std::string rendered = c2b_result_render(result.get());
    if (out_path) {
        std::ofstream out(*out_path, std::ios::binary | std::ios::trunc);
        out << rendered;
        if (!out) {
            std::cerr << "crate2bib: cannot write " << *out_path << '\n';
            return kExitOther;
        }
    } else {
        std::cout << rendered << std::flush;
        if (!std::cout) {
            return kExitOther;
        }
    }
    return kExitOk;
}
