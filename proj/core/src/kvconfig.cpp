#include "itsc/kvconfig.hpp"

#include <cctype>
#include <sstream>

#include "itsc/scenario.hpp"

namespace itsc {

namespace {

std::string trim(const std::string& s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& what)
{
    std::ostringstream os;
    os << "config line " << line << ": " << what;
    throw ParseError(os.str());
}

}  // namespace

const KvSection* KvDocument::find(const std::string& name) const
{
    for (const auto& s : sections)
        if (s.name == name)
            return &s;
    return nullptr;
}

std::vector<const KvSection*> KvDocument::find_all(const std::string& name) const
{
    std::vector<const KvSection*> out;
    for (const auto& s : sections)
        if (s.name == name)
            out.push_back(&s);
    return out;
}

KvDocument parse_kv(const std::string& text)
{
    KvDocument doc;
    doc.sections.push_back(KvSection{"", -1, 0, {}, {}});

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                fail(line_no, "unterminated section header '" + line + "'");
            const std::string inner = trim(line.substr(1, line.size() - 2));
            if (inner.empty())
                fail(line_no, "empty section header");
            KvSection sec;
            sec.line = line_no;
            const auto space = inner.find_first_of(" \t");
            if (space == std::string::npos) {
                sec.name = inner;
            } else {
                sec.name = inner.substr(0, space);
                const std::string id_text = trim(inner.substr(space + 1));
                char* end = nullptr;
                const long long id = std::strtoll(id_text.c_str(), &end, 10);
                if (end == id_text.c_str() || *end != '\0')
                    fail(line_no, "section id '" + id_text + "' is not an integer");
                sec.id = id;
            }
            doc.sections.push_back(std::move(sec));
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(line_no, "empty key");
        KvSection& sec = doc.sections.back();
        if (sec.has(key))
            fail(line_no, "duplicate key '" + key + "' in section [" + sec.name + "]");
        sec.values[key] = value;
        sec.value_lines[key] = line_no;
    }
    return doc;
}

}  // namespace itsc
