#include <doctest.h>

#include "semver.hpp"

using namespace crate2bib;

TEST_CASE("parse_semver accepts the documented grammar") {
    auto v = parse_semver("1.2.3-rc.1+build.5");
    REQUIRE(v);
    CHECK(v->major == 1);
    CHECK(v->minor == 2);
    CHECK(v->patch == 3);
    CHECK(v->prerelease == std::vector<std::string>{"rc", "1"});
    CHECK(v->build == "build.5");
    CHECK(v->to_string() == "1.2.3-rc.1+build.5");
}

TEST_CASE("parse_semver rejects malformed versions") {
    for (const char* bad : {"", "1", "1.2", "1.2.3.4", "01.2.3", "1.02.3", "1.2.3-", "1.2.3-01", "1.2.3+",
                            "1.2.3-a..b", "v1.2.3", "1.2.x", " 1.2.3", "1.2.3-ä"}) {
        CAPTURE(bad);
        CHECK_FALSE(parse_semver(bad));
    }
}

TEST_CASE("precedence follows the semver.org example chain") {
    const char* chain[] = {"1.0.0-alpha", "1.0.0-alpha.1", "1.0.0-alpha.beta", "1.0.0-beta",
                           "1.0.0-beta.2", "1.0.0-beta.11", "1.0.0-rc.1", "1.0.0", "1.0.1", "1.10.0", "2.0.0"};
    for (std::size_t i = 0; i + 1 < std::size(chain); ++i) {
        CAPTURE(chain[i]);
        CHECK(*parse_semver(chain[i]) < *parse_semver(chain[i + 1]));
    }
}

TEST_CASE("build metadata does not change precedence") {
    auto a = *parse_semver("1.0.0+a");
    auto b = *parse_semver("1.0.0+b");
    CHECK(a.same_precedence(b));
    CHECK(a != b);
}
