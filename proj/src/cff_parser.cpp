#include "cff_parser.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>

#include "error.hpp"
#include "timeutil.hpp"

namespace crate2bib {
namespace {

[[noreturn]] void violation(const std::string& what) { throw Error(ErrorKind::SchemaViolation, what); }

class Reader {
public:
    explicit Reader(std::vector<std::string>* warnings) : warnings_(warnings) {}

    void warn(std::string message) const {
        if (warnings_) {
            warnings_->push_back(std::move(message));
        }
    }

    std::optional<std::string> scalar(const YAML::Node& map, const char* key) const {
        YAML::Node node = map[key];
        if (!node || node.IsNull()) {
            return std::nullopt;
        }
        if (!node.IsScalar()) {
            violation(std::string("'") + key + "' must be a scalar");
        }
        return node.Scalar();
    }

    std::string required_text(const YAML::Node& map, const char* key, const std::string& where) const {
        auto value = scalar(map, key);
        if (!value || value->empty()) {
            violation(where + ": missing or empty '" + key + "'");
        }
        return *value;
    }

    CffAuthor author(const YAML::Node& node, const std::string& where) const {
        if (!node.IsMap()) {
            violation(where + ": author entries must be mappings");
        }
        CffAuthor a;
        auto family = scalar(node, "family-names");
        auto name = scalar(node, "name");
        if (family && !family->empty()) {
            a.kind = CffAuthor::Kind::Person;
            a.family_names = *family;
            if (auto particle = scalar(node, "name-particle"); particle && !particle->empty()) {
                a.family_names = *particle + " " + a.family_names;
            }
            a.given_names = scalar(node, "given-names").value_or("");
        } else if (name && !name->empty()) {
            a.kind = CffAuthor::Kind::Entity;
            a.name = *name;
        } else {
            violation(where + ": author has neither 'family-names' nor 'name'");
        }
        a.orcid = scalar(node, "orcid");
        return a;
    }

    std::vector<CffAuthor> authors(const YAML::Node& map, const std::string& where) const {
        YAML::Node list = map["authors"];
        if (!list || !list.IsSequence() || list.size() == 0) {
            violation(where + ": 'authors' must be a non-empty list");
        }
        std::vector<CffAuthor> out;
        for (const auto& item : list) {
            out.push_back(author(item, where));
        }
        return out;
    }

    std::optional<std::string> license(const YAML::Node& map) const {
        YAML::Node node = map["license"];
        if (!node || node.IsNull()) {
            return std::nullopt;
        }
        if (node.IsScalar()) {
            return node.Scalar();
        }
        if (!node.IsSequence()) {
            violation("'license' must be a string or a list");
        }
        std::string joined;
        for (const auto& item : node) {
            if (!item.IsScalar()) {
                violation("'license' entries must be strings");
            }
            if (!joined.empty()) {
                joined += " OR ";
            }
            joined += item.Scalar();
        }
        return joined.empty() ? std::nullopt : std::optional(joined);
    }

    PreferredCitation preferred(const YAML::Node& node) const {
        const std::string where = "preferred-citation";
        if (!node.IsMap()) {
            violation(where + " must be a mapping");
        }
        PreferredCitation pc;
        pc.entry_kind = required_text(node, "type", where);
        pc.title = required_text(node, "title", where);
        pc.authors = authors(node, where);
        if (auto year = scalar(node, "year")) {
            int value = 0;
            auto [ptr, ec] = std::from_chars(year->data(), year->data() + year->size(), value);
            if (ec == std::errc{} && ptr == year->data() + year->size()) {
                pc.year = value;
            } else {
                warn("preferred-citation year '" + *year + "' is not an integer; ignored");
            }
        }
        pc.doi = scalar(node, "doi");
        pc.journal = scalar(node, "journal");
        pc.volume = scalar(node, "volume");
        pc.url = scalar(node, "url");
        pc.pages = scalar(node, "pages");
        auto start = scalar(node, "start");
        auto end = scalar(node, "end");
        if (start && end) {
            pc.pages = *start + "--" + *end;
        } else if (start) {
            pc.pages = *start;
        }
        return pc;
    }

private:
    std::vector<std::string>* warnings_;
};

}  // namespace

CffDocument parse_cff(std::string_view raw_text, std::vector<std::string>* warnings) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(raw_text));
    } catch (const YAML::Exception& e) {
        throw Error(ErrorKind::NotYaml, std::string("CITATION.cff is not valid YAML: ") + e.what());
    }
    if (!root.IsMap()) {
        throw Error(ErrorKind::NotYaml, "CITATION.cff is not a YAML mapping");
    }

    Reader r(warnings);
    CffDocument doc;
    try {
        doc.cff_version = r.scalar(root, "cff-version").value_or("");
        if (doc.cff_version.empty()) {
            r.warn("CITATION.cff has no cff-version");
        } else if (!doc.cff_version.starts_with("1.2.")) {
            r.warn("unsupported cff-version '" + doc.cff_version + "'; parsing as 1.2.x");
        }
        doc.message = r.scalar(root, "message").value_or("");
        doc.title = r.required_text(root, "title", "CITATION.cff");
        doc.authors = r.authors(root, "CITATION.cff");
        doc.version = r.scalar(root, "version");
        doc.doi = r.scalar(root, "doi");
        doc.url = r.scalar(root, "url");
        doc.repository_code = r.scalar(root, "repository-code");
        doc.license = r.license(root);
        if (auto date = r.scalar(root, "date-released")) {
            doc.date_released = parse_date(*date);
            if (!doc.date_released) {
                throw Error(ErrorKind::BadDate, "date-released '" + *date + "' is not a YYYY-MM-DD date");
            }
        }
        if (YAML::Node pc = root["preferred-citation"]; pc && !pc.IsNull()) {
            doc.preferred_citation = r.preferred(pc);
        }
    } catch (const YAML::Exception& e) {
        violation(std::string("unexpected CITATION.cff structure: ") + e.what());
    }
    return doc;
}

}  // namespace crate2bib
