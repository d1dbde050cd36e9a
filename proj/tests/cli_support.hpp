#ifndef TROPICOUNT_TESTS_CLI_SUPPORT_HPP
#define TROPICOUNT_TESTS_CLI_SUPPORT_HPP

// Running the command-line tool against the golden outputs.

#include <expat.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace cli_support {

namespace fs = std::filesystem;

inline const std::string cli = TROPICOUNT_CLI;
inline const fs::path source_dir = TROPICOUNT_SOURCE_DIR;

struct Run {
    int status = -1;
    std::string out;
};

/// Runs the CLI from the source tree with an empty cache variable unless `env` says otherwise.
inline Run run(const std::string& args, const std::string& env = "TROPICOUNT_CACHE=") {
    const std::string cmd = "cd '" + source_dir.string() + "' && " + env + " '" + cli + "' " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

inline std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct GoldenCase {
    std::string name, args, file;
};

inline std::vector<GoldenCase> golden_cases() {
    std::vector<GoldenCase> out;
    std::ifstream in(source_dir / "tests/golden/cases.txt");
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        auto bar = line.find('|');
        GoldenCase c{line.substr(0, bar), line.substr(bar + 1), ""};
        c.file = c.name + (c.args.rfind("render", 0) == 0 ? ".svg" : ".out");
        out.push_back(c);
    }
    return out;
}

inline bool well_formed_xml(const std::string& text, std::string& why) {
    XML_Parser p = XML_ParserCreate(nullptr);
    const bool ok = XML_Parse(p, text.data(), static_cast<int>(text.size()), XML_TRUE) == XML_STATUS_OK;
    if (!ok) why = std::string(XML_ErrorString(XML_GetErrorCode(p))) + " at line " + std::to_string(XML_GetCurrentLineNumber(p));
    XML_ParserFree(p);
    return ok;
}

inline std::size_t count(const std::string& s, const std::string& what) {
    std::size_t n = 0;
    for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) ++n;
    return n;
}


/// Every golden case reproduces its file byte for byte, twice; SVG outputs parse as XML.
/// Returns the number of cases checked, and the first problem in `why`.
inline std::size_t check_goldens(std::string& why) {
    std::size_t checked = 0;
    for (const auto& c : golden_cases()) {
        const auto first = run(c.args), second = run(c.args);
        if (first.status != 0) why = c.name + ": exit " + std::to_string(first.status);
        else if (first.out != slurp(source_dir / "tests/golden" / c.file)) why = c.name + ": differs from golden";
        else if (second.out != first.out) why = c.name + ": not reproducible";
        else if (c.file.ends_with(".svg") && !well_formed_xml(first.out, why)) why = c.name + ": " + why;
        if (!why.empty()) return checked;
        ++checked;
    }
    return checked;
}

} // namespace cli_support

#endif // TROPICOUNT_TESTS_CLI_SUPPORT_HPP
