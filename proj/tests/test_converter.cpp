#include <doctest.h>

#include "converter.hpp"
#include "error.hpp"
#include "fixtures.hpp"

using namespace crate2bib;
using namespace crate2bib::testing;

namespace {

PackageMeta fixture_meta(const std::string& name) {
    return parse_package_meta(read_fixture("registry/" + name + ".json"),
                              {read_fixture("registry/" + name + ".versions.json")}, now_seconds());
}

bool mentions(const std::vector<std::string>& warnings, const std::string& needle) {
    for (const auto& w : warnings) {
        if (w.find(needle) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("split_display_name and join_authors") {
    CHECK(split_display_name("Sean McArthur") == std::pair<std::string, std::string>{"McArthur", "Sean"});
    CHECK(split_display_name("  Ada  Lovelace King ") == std::pair<std::string, std::string>{"King", "Ada Lovelace"});
    CHECK(split_display_name("seanmonstar") == std::pair<std::string, std::string>{"seanmonstar", ""});

    CffAuthor person;
    person.family_names = "Doe";
    person.given_names = "Jane";
    CffAuthor bare;
    bare.family_names = "Roe";
    CffAuthor org;
    org.kind = CffAuthor::Kind::Entity;
    org.name = "The Rust Project";
    CHECK(join_authors({person, bare, org}) == "Doe, Jane and Roe and {The Rust Project}");
}

TEST_CASE("package_to_bib for crate2bib") {
    auto meta = fixture_meta("crate2bib");
    auto converted = package_to_bib(meta, meta.versions[0]);
    const auto& e = converted.entry;
    CHECK(e.entry_type() == "software");
    CHECK(e.citation_key() == "Pleyer2025");
    CHECK(e.get("url") == "https://crates.io/crates/crate2bib");
    CHECK(e.get("author") == "Pleyer, Jonas");
    CHECK(e.get("title") == "crate2bib");
    CHECK(e.get("version") == "0.5.0");
    CHECK(e.get("year") == "2025");
    CHECK(e.get("month") == "2");
    CHECK(e.get("license") == "GPL-2.0");
    CHECK(converted.warnings.empty());
    CHECK(parse_entry(serialize(e)) == e);
}

TEST_CASE("package_to_bib key for the reqwest publisher") {
    auto meta = fixture_meta("reqwest");
    auto resolved = resolve_version("latest", meta.versions);
    CHECK(resolved.version.semver == "0.12.12");
    CHECK(package_to_bib(meta, resolved.version).entry.citation_key() == "McArthur2025");
}

TEST_CASE("package_to_bib without a publisher") {
    auto meta = fixture_meta("norepo-demo");
    auto converted = package_to_bib(meta, meta.versions[0]);
    CHECK_FALSE(converted.entry.get("author"));
    CHECK_FALSE(converted.entry.get("license"));
    CHECK(converted.warnings.size() == 1);
    CHECK(converted.entry.citation_key() == "norepo-demo2024");
    CHECK(parse_entry(serialize(converted.entry)) == converted.entry);
}

TEST_CASE("package_to_bib round-trips for every fixture version") {
    for (const char* name : {"crate2bib", "reqwest", "cellsim-demo", "norepo-demo"}) {
        auto meta = fixture_meta(name);
        for (const auto& v : meta.versions) {
            CAPTURE(v.semver);
            auto e = package_to_bib(meta, v).entry;
            CHECK(parse_entry(serialize(e)) == e);
        }
    }
}

TEST_CASE("cff_to_bib with one author and no preferred citation") {
    auto cff = parse_cff("cff-version: 1.2.0\nmessage: m\ntitle: Tool\nauthors:\n  - family-names: Doe\n    given-names: Jane\n");
    VersionInfo v;
    v.semver = "1.0.0";
    v.published_at = Timestamp{std::chrono::sys_days{std::chrono::year{2023} / 5 / 1}};
    auto entries = cff_to_bib(cff, "tool", v);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].entry.entry_type() == "software");
    CHECK(entries[0].entry.get("version") == "1.0.0");
    CHECK(entries[0].entry.get("author") == "Doe, Jane");
    CHECK(entries[0].entry.citation_key() == "Doe2023");
    CHECK(entries[0].warnings.empty());
}

TEST_CASE("cff_to_bib with an article preferred citation") {
    auto cff = parse_cff(read_fixture("cff/cellsim-demo.cff"));
    auto meta = fixture_meta("cellsim-demo");
    auto entries = cff_to_bib(cff, meta.name, meta.versions[0]);
    REQUIRE(entries.size() == 2);

    const auto& sw = entries[0].entry;
    CHECK(sw.entry_type() == "software");
    CHECK(sw.get("title") == "cellsim-demo: agent-based cell simulations");
    CHECK(sw.get("author") == "Example, Ada and Sample, Bo");
    CHECK(sw.get("version") == "0.3.0");
    CHECK(sw.get("year") == "2024");
    CHECK(sw.get("month") == "11");
    CHECK(sw.get("doi") == "10.5281/zenodo.0000001");
    CHECK(sw.get("url") == "https://github.com/example-org/cellsim-demo");
    CHECK(sw.get("license") == "MIT OR Apache-2.0");
    REQUIRE(entries[0].warnings.size() == 1);
    CHECK(mentions(entries[0].warnings, "0.4.0"));

    const auto& art = entries[1].entry;
    CHECK(art.entry_type() == "article");
    CHECK(art.get("journal") == "Journal of Example Software");
    CHECK(art.get("year") == "2024");
    CHECK(art.get("volume") == "9");
    CHECK(art.get("pages") == "101--110");
    CHECK(art.get("doi") == "10.1234/joes.00101");
    CHECK(art.get("title") == "Agent-based cell simulations in Rust");
    CHECK(sw.citation_key() != art.citation_key());
}

TEST_CASE("cff_to_bib version precedence") {
    auto cff = parse_cff(read_fixture("cff/cellsim-demo.cff"));
    VersionInfo same;
    same.semver = "0.3.0";
    CHECK(cff_to_bib(cff, "cellsim-demo", same)[0].warnings.empty());

    cff.version = "v0.3.0";
    CHECK(cff_to_bib(cff, "cellsim-demo", same)[0].warnings.empty());

    cff.version.reset();
    VersionInfo other;
    other.semver = "0.4.0";
    auto entries = cff_to_bib(cff, "cellsim-demo", other);
    CHECK(entries[0].entry.get("version") == "0.4.0");
    CHECK(entries[0].warnings.empty());
}

TEST_CASE("bib_type_for_cff_type mapping") {
    CHECK(bib_type_for_cff_type("article") == "article");
    CHECK(bib_type_for_cff_type("conference-paper") == "inproceedings");
    CHECK(bib_type_for_cff_type("software") == "software");
    CHECK(bib_type_for_cff_type("book") == "misc");
    CHECK(bib_type_for_cff_type("") == "misc");
}

TEST_CASE("gather_candidates without a repository") {
    StubServer stub;
    serve_registry_fixture(stub, "norepo-demo");
    StubSession s(stub);
    auto candidates = gather_candidates("norepo-demo", "latest", s.ctx);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].origin.kind == OriginKind::RegistryMetadata);
    CHECK(stub.hits() == 2);
}

TEST_CASE("gather_candidates with a CITATION.cff and preferred citation") {
    StubServer stub;
    serve_registry_fixture(stub, "cellsim-demo");
    stub.route("/gh/example-org/cellsim-demo/main/CITATION.cff", 200, read_fixture("cff/cellsim-demo.cff"));
    StubSession s(stub);
    auto candidates = gather_candidates("cellsim-demo", "latest", s.ctx);
    REQUIRE(candidates.size() == 3);
    CHECK(candidates[0].origin.kind == OriginKind::RegistryMetadata);
    CHECK(candidates[1].origin.kind == OriginKind::CitationCff);
    CHECK(candidates[2].origin.kind == OriginKind::CffPreferredCitation);
    std::set<std::string> keys;
    for (const auto& c : candidates) keys.insert(c.entry.citation_key());
    CHECK(keys.size() == 3);
    CHECK(candidates[0].origin.source_url == stub.base_url() + "/api/v1/crates/cellsim-demo");
    CHECK(candidates[1].origin.source_url == stub.base_url() + "/gh/example-org/cellsim-demo/main/CITATION.cff");
    CHECK(candidates[0].entry.citation_key() == "Example2025");
    CHECK(candidates[1].entry.citation_key() == "Example2024");
    CHECK(candidates[2].entry.citation_key() == "Example2024a");
}

TEST_CASE("gather_candidates output is deterministic") {
    std::string first;
    for (int run = 0; run < 2; ++run) {
        StubServer stub;
        serve_registry_fixture(stub, "cellsim-demo");
        stub.route("/gh/example-org/cellsim-demo/main/CITATION.cff", 200, read_fixture("cff/cellsim-demo.cff"));
        StubSession s(stub);
        auto text = render_candidates(gather_candidates("cellsim-demo", "latest", s.ctx));
        // The origin lines carry the stub's port; compare the entries only.
        std::string entries;
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) {
            if (!line.starts_with("% origin:")) entries += line + "\n";
        }
        if (run == 0) {
            first = entries;
        } else {
            CHECK(entries == first);
        }
    }
}

TEST_CASE("gather_candidates with a schema-invalid CITATION.cff") {
    StubServer stub;
    serve_registry_fixture(stub, "cellsim-demo");
    stub.route("/gh/example-org/cellsim-demo/main/CITATION.cff", 200, read_fixture("cff/cellsim-demo-corrupt.cff"));
    StubSession s(stub);
    auto candidates = gather_candidates("cellsim-demo", "latest", s.ctx);
    REQUIRE(candidates.size() == 1);
    CHECK(mentions(candidates[0].warnings, "SchemaViolation"));
}

TEST_CASE("gather_candidates with probing disabled makes no repository requests") {
    StubServer stub;
    serve_registry_fixture(stub, "cellsim-demo");
    StubSession s(stub);
    auto candidates = gather_candidates("cellsim-demo", "0.3", s.ctx, GatherOptions{false, std::nullopt});
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].entry.get("version") == "0.3.0");
    for (const auto& r : stub.log()) {
        CHECK_FALSE(r.path.starts_with("/gh"));
    }
}

TEST_CASE("gather_candidates probes the preferred branch first") {
    StubServer stub;
    serve_registry_fixture(stub, "cellsim-demo");
    stub.route("/gh/example-org/cellsim-demo/develop/CITATION.cff", 200, read_fixture("cff/cellsim-demo.cff"));
    StubSession s(stub);
    auto candidates = gather_candidates("cellsim-demo", "latest", s.ctx, GatherOptions{true, "develop"});
    CHECK(candidates.size() == 3);
    CHECK(stub.hits() == 3);
}

TEST_CASE("gather_candidates degrades on an unsupported host and on probe failures") {
    StubServer stub;
    stub.route("/api/v1/crates/gitlab-demo", 200,
               R"({"crate": {"name": "gitlab-demo", "repository": "https://gitlab.com/o/r"}})");
    stub.route("/api/v1/crates/gitlab-demo/versions", 200,
               R"({"versions": [{"num": "1.0.0", "yanked": false, "created_at": "2024-01-01T00:00:00Z"}]})");
    serve_registry_fixture(stub, "cellsim-demo");
    stub.route("/gh/example-org/cellsim-demo/main/CITATION.cff", 502, "bad gateway");
    StubSession s(stub);

    auto gitlab = gather_candidates("gitlab-demo", "latest", s.ctx);
    REQUIRE(gitlab.size() == 1);
    CHECK(mentions(gitlab[0].warnings, "not supported"));

    auto failing = gather_candidates("cellsim-demo", "latest", s.ctx);
    REQUIRE(failing.size() == 1);
    CHECK(mentions(failing[0].warnings, "Network"));
}

TEST_CASE("gather_candidates propagates registry and resolution errors") {
    StubServer stub;
    serve_registry_fixture(stub, "crate2bib");
    StubSession s(stub);
    auto kind = [&](const char* name, const char* req) {
        try {
            gather_candidates(name, req, s.ctx);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Io;
    };
    CHECK(kind("missing-crate", "latest") == ErrorKind::NotFound);
    CHECK(kind("crate2bib", "9") == ErrorKind::NoMatch);
    CHECK(kind("crate2bib", "0.3") == ErrorKind::AllYanked);
    CHECK(kind("crate2bib", "~1") == ErrorKind::InvalidInput);
}
