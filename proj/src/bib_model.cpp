#include "bib_model.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "error.hpp"

namespace crate2bib {
namespace {

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || is_ascii_digit(c); }

// U+00C0..U+00FF and U+0100..U+017F; '*' marks two-letter foldings, '-' no letter.
constexpr std::string_view kLatin1Fold = "AAAAAA*CEEEEIIIIDNOOOOO-OUUUUY**aaaaaa*ceeeeiiiidnooooo-ouuuuy*y";
constexpr std::string_view kLatinExtAFold =
    "AaAaAaCcCcCcCcDd"
    "DdEeEeEeEeEeGgGg"
    "GgGgHhHhIiIiIiIi"
    "Ii**JjKkkLlLlLlL"
    "lLlNnNnNnnNnOoOo"
    "Oo**RrRrRrSsSsSs"
    "SsTtTtTtUuUuUuUu"
    "UuUuWwYyYZzZzZzs";

std::string_view fold_codepoint(char32_t cp) {
    switch (cp) {
        case 0xC6: return "AE";
        case 0xDE: return "TH";
        case 0xDF: return "ss";
        case 0xE6: return "ae";
        case 0xFE: return "th";
        case 0x132: return "IJ";
        case 0x133: return "ij";
        case 0x152: return "OE";
        case 0x153: return "oe";
        default: break;
    }
    if (cp >= 0xC0 && cp <= 0xFF) {
        return kLatin1Fold.substr(cp - 0xC0, 1);
    }
    if (cp >= 0x100 && cp <= 0x17F) {
        return kLatinExtAFold.substr(cp - 0x100, 1);
    }
    return {};
}

// Decodes one UTF-8 sequence at `pos`; invalid bytes decode as U+FFFD.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
    auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    unsigned char lead = byte(pos);
    int extra = lead < 0x80 ? 0 : (lead >> 5) == 0x6 ? 1 : (lead >> 4) == 0xE ? 2 : (lead >> 3) == 0x1E ? 3 : -1;
    if (extra < 0) {
        ++pos;
        return 0xFFFD;
    }
    char32_t cp = extra == 0 ? lead : lead & (0x3F >> extra);
    for (int i = 1; i <= extra; ++i) {
        if (pos + i >= s.size() || (byte(pos + i) & 0xC0) != 0x80) {
            ++pos;
            return 0xFFFD;
        }
        cp = (cp << 6) | (byte(pos + i) & 0x3F);
    }
    pos += extra + 1;
    return cp;
}

std::string alpha_suffix(std::size_t n) {
    // 1 -> a, 26 -> z, 27 -> aa (bijective base 26)
    std::string out;
    while (n > 0) {
        --n;
        out.insert(out.begin(), static_cast<char>('a' + n % 26));
        n /= 26;
    }
    return out;
}

std::string key_from_stem(const std::string& stem, int year, const std::set<std::string>& taken) {
    std::string base = stem + std::to_string(year);
    if (!taken.contains(base)) {
        return base;
    }
    for (std::size_t n = 1;; ++n) {
        std::string candidate = base + alpha_suffix(n);
        if (!taken.contains(candidate)) {
            return candidate;
        }
    }
}

std::string strip_leading_non_alpha(std::string s) {
    auto first = std::find_if(s.begin(), s.end(), is_ascii_alpha);
    s.erase(s.begin(), first);
    return s;
}

void check_year(int year) {
    if (year < 1000 || year > 9999) {
        throw Error(ErrorKind::InvalidInput, "citation year must have four digits, got " + std::to_string(year));
    }
}

constexpr std::array<std::pair<char, std::string_view>, 3> kControlWords = {{
    {'~', "\\textasciitilde{}"},
    {'^', "\\textasciicircum{}"},
    {'\\', "\\textbackslash{}"},
}};
constexpr std::string_view kBraceLeft = "\\textbraceleft{}";
constexpr std::string_view kBraceRight = "\\textbraceright{}";

}  // namespace

bool is_valid_citation_key(std::string_view key) {
    if (key.empty() || !is_ascii_alpha(key.front())) {
        return false;
    }
    return std::all_of(key.begin(), key.end(),
                       [](char c) { return is_ascii_alnum(c) || c == ':' || c == '_' || c == '-'; });
}

bool is_valid_field_name(std::string_view name) {
    if (name.empty() || !(name.front() >= 'a' && name.front() <= 'z')) {
        return false;
    }
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || is_ascii_digit(c) || c == '_' || c == '-';
    });
}

bool is_verbatim_field(std::string_view name) { return name == "url" || name == "doi"; }

const std::vector<std::string_view>& canonical_field_order() {
    static const std::vector<std::string_view> order = {"author", "title",  "version", "year", "month", "journal",
                                                        "volume", "pages", "doi",     "url",  "license", "note"};
    return order;
}

BibEntry::BibEntry(std::string entry_type, std::string citation_key)
    : entry_type_(std::move(entry_type)), citation_key_(std::move(citation_key)) {
    if (entry_type_.empty() ||
        !std::all_of(entry_type_.begin(), entry_type_.end(), [](char c) { return c >= 'a' && c <= 'z'; })) {
        throw Error(ErrorKind::InvalidInput, "invalid entry type '" + entry_type_ + "'");
    }
    if (!is_valid_citation_key(citation_key_)) {
        throw Error(ErrorKind::InvalidInput, "invalid citation key '" + citation_key_ + "'");
    }
}

void BibEntry::set(std::string name, std::string value) {
    if (!is_valid_field_name(name)) {
        throw Error(ErrorKind::InvalidInput, "invalid field name '" + name + "'");
    }
    if (is_verbatim_field(name) && value.find_first_of("{}\\") != std::string::npos) {
        throw Error(ErrorKind::InvalidInput, "field '" + name + "' may not contain braces or backslashes");
    }
    fields_[std::move(name)] = std::move(value);
}

void BibEntry::add(std::string name, std::string value) {
    if (fields_.contains(name)) {
        throw Error(ErrorKind::InvalidInput, "duplicate field '" + name + "'");
    }
    set(std::move(name), std::move(value));
}

std::optional<std::string> BibEntry::get(std::string_view name) const {
    auto it = fields_.find(std::string(name));
    if (it == fields_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void BibEntry::set_citation_key(std::string key) {
    if (!is_valid_citation_key(key)) {
        throw Error(ErrorKind::InvalidInput, "invalid citation key '" + key + "'");
    }
    citation_key_ = std::move(key);
}

std::string key_stem_from_name(std::string_view name) {
    std::string out;
    std::size_t pos = 0;
    while (pos < name.size()) {
        char32_t cp = decode_utf8(name, pos);
        if (cp < 0x80) {
            char c = static_cast<char>(cp);
            if (is_ascii_alnum(c)) {
                out += c;
            }
            continue;
        }
        for (char c : fold_codepoint(cp)) {
            if (is_ascii_alnum(c)) {
                out += c;
            }
        }
    }
    return out;
}

std::string generate_key(std::string_view primary_family_name, int year, const std::set<std::string>& taken_keys) {
    check_year(year);
    std::string stem = strip_leading_non_alpha(key_stem_from_name(primary_family_name));
    if (stem.empty()) {
        throw Error(ErrorKind::Unkeyable, "name '" + std::string(primary_family_name) + "' yields no key characters");
    }
    return key_from_stem(stem, year, taken_keys);
}

std::string generate_key_or(std::string_view primary_family_name, std::string_view fallback_stem, int year,
                            const std::set<std::string>& taken_keys) {
    try {
        return generate_key(primary_family_name, year, taken_keys);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Unkeyable) {
            throw;
        }
    }
    std::string stem;
    for (char c : fallback_stem) {
        if (is_ascii_alnum(c) || c == '_' || c == '-') {
            stem += c;
        }
    }
    stem = strip_leading_non_alpha(std::move(stem));
    if (stem.empty()) {
        throw Error(ErrorKind::Unkeyable, "neither name nor fallback yields key characters");
    }
    return key_from_stem(stem, year, taken_keys);
}

std::string escape_bibtex(std::string_view value) {
    // Braces that pair up are kept as grouping markup; stray ones are escaped.
    std::vector<bool> matched(value.size(), false);
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i] == '{') {
            open.push_back(i);
        } else if (value[i] == '}' && !open.empty()) {
            matched[open.back()] = true;
            matched[i] = true;
            open.pop_back();
        }
    }

    std::string out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        char c = value[i];
        switch (c) {
            case '&':
            case '%':
            case '$':
            case '#':
            case '_':
                out += '\\';
                out += c;
                break;
            case '{':
                out += matched[i] ? std::string_view("{") : kBraceLeft;
                break;
            case '}':
                out += matched[i] ? std::string_view("}") : kBraceRight;
                break;
            case '~':
            case '^':
            case '\\':
                for (const auto& [ch, word] : kControlWords) {
                    if (ch == c) {
                        out += word;
                    }
                }
                break;
            default:
                out += c;
        }
    }
    return out;
}

std::string unescape_bibtex(std::string_view value) {
    std::string out;
    out.reserve(value.size());
    std::size_t i = 0;
    while (i < value.size()) {
        if (value[i] != '\\') {
            out += value[i++];
            continue;
        }
        std::string_view rest = value.substr(i);
        if (rest.size() >= 2 && std::string_view("&%$#_").find(rest[1]) != std::string_view::npos) {
            out += rest[1];
            i += 2;
            continue;
        }
        bool replaced = false;
        for (const auto& [ch, word] : kControlWords) {
            if (rest.starts_with(word)) {
                out += ch;
                i += word.size();
                replaced = true;
                break;
            }
        }
        if (!replaced && rest.starts_with(kBraceLeft)) {
            out += '{';
            i += kBraceLeft.size();
            replaced = true;
        } else if (!replaced && rest.starts_with(kBraceRight)) {
            out += '}';
            i += kBraceRight.size();
            replaced = true;
        }
        if (!replaced) {
            out += value[i++];
        }
    }
    return out;
}

std::string serialize(const BibEntry& entry) {
    std::string out = "@" + entry.entry_type() + "{" + entry.citation_key() + ",\n";
    auto emit = [&](const std::string& name, const std::string& value) {
        out += "  ";
        out += name;
        out += " = {";
        out += is_verbatim_field(name) ? value : escape_bibtex(value);
        out += "},\n";
    };
    const auto& order = canonical_field_order();
    for (auto name : order) {
        if (auto it = entry.fields().find(std::string(name)); it != entry.fields().end()) {
            emit(it->first, it->second);
        }
    }
    for (const auto& [name, value] : entry.fields()) {
        if (std::find(order.begin(), order.end(), name) == order.end()) {
            emit(name, value);
        }
    }
    out += "}\n";
    return out;
}

namespace {

class EntryParser {
public:
    explicit EntryParser(std::string_view text) : text_(text) {}

    BibEntry parse() {
        skip_space_and_comments();
        expect('@');
        std::string type = read_while([](char c) { return is_ascii_alpha(c); });
        if (type.empty()) {
            fail("missing entry type");
        }
        std::transform(type.begin(), type.end(), type.begin(), [](char c) { return std::tolower(c); });
        skip_space();
        char close = '}';
        if (peek() == '(') {
            close = ')';
            ++pos_;
        } else {
            expect('{');
        }
        skip_space();
        std::string key = read_while([](char c) {
            return !std::isspace(static_cast<unsigned char>(c)) && c != ',' && c != '}' && c != ')' && c != '{';
        });
        if (key.empty()) {
            fail("missing citation key");
        }
        skip_space();
        expect(',');

        BibEntry entry = build(std::move(type), std::move(key));
        while (true) {
            skip_space();
            if (peek() == close) {
                ++pos_;
                break;
            }
            std::string name = read_while([](char c) { return is_ascii_alnum(c) || c == '_' || c == '-' || c == ':'; });
            if (name.empty()) {
                fail("malformed field");
            }
            std::transform(name.begin(), name.end(), name.begin(), [](char c) { return std::tolower(c); });
            skip_space();
            expect('=');
            skip_space();
            std::string raw = read_value();
            std::string value = is_verbatim_field(name) ? raw : unescape_bibtex(raw);
            if (entry.fields().contains(name)) {
                fail("duplicate field '" + name + "'");
            }
            try {
                entry.set(name, std::move(value));
            } catch (const Error& e) {
                fail(e.what());
            }
            skip_space();
            if (peek() == ',') {
                ++pos_;
            } else if (peek() != close) {
                fail("expected ',' or end of entry");
            }
        }
        skip_space_and_comments();
        if (pos_ != text_.size()) {
            fail("unexpected content after entry");
        }
        return entry;
    }

private:
    BibEntry build(std::string type, std::string key) {
        try {
            return BibEntry(std::move(type), std::move(key));
        } catch (const Error& e) {
            fail(e.what());
        }
    }

    std::string read_value() {
        char c = peek();
        if (c == '{') {
            ++pos_;
            std::size_t start = pos_;
            int depth = 1;
            while (pos_ < text_.size()) {
                if (text_[pos_] == '{') {
                    ++depth;
                } else if (text_[pos_] == '}' && --depth == 0) {
                    return std::string(text_.substr(start, pos_++ - start));
                }
                ++pos_;
            }
            fail("unbalanced braces");
        }
        if (c == '"') {
            ++pos_;
            std::size_t start = pos_;
            int depth = 0;
            while (pos_ < text_.size()) {
                char d = text_[pos_];
                if (d == '{') {
                    ++depth;
                } else if (d == '}') {
                    --depth;
                } else if (d == '"' && depth == 0) {
                    return std::string(text_.substr(start, pos_++ - start));
                }
                ++pos_;
            }
            fail("unterminated quoted value");
        }
        std::string number = read_while(is_ascii_digit);
        if (number.empty()) {
            fail("malformed field value");
        }
        return number;
    }

    template <typename Pred>
    std::string read_while(Pred pred) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && pred(text_[pos_])) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    void skip_space_and_comments() {
        while (true) {
            skip_space();
            if (peek() != '%') {
                return;
            }
            while (pos_ < text_.size() && text_[pos_] != '\n') {
                ++pos_;
            }
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::Syntax, "BibTeX syntax error at offset " + std::to_string(pos_) + ": " + what);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

BibEntry parse_entry(std::string_view text) { return EntryParser(text).parse(); }

}  // namespace crate2bib
