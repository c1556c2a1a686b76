#include "polarsrg/setfile.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace polarsrg {

std::string point_to_text(const Field& F, const Vec& p) {
    std::string out = "(";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out += ",";
        out += F.to_string(p[i]);
    }
    out += ")";
    return out;
}

std::vector<std::vector<int>> parse_point_text(const std::string& line) {
    std::vector<std::vector<int>> coords;
    size_t pos = 0;
    auto expect = [&](char c) {
        if (pos >= line.size() || line[pos] != c)
            throw SetFileError("malformed point line: " + line);
        ++pos;
    };
    auto skip_ws = [&] {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    };
    skip_ws();
    expect('(');
    while (true) {
        skip_ws();
        expect('[');
        std::vector<int> coeffs;
        while (true) {
            skip_ws();
            size_t start = pos;
            while (pos < line.size() && (isdigit(static_cast<unsigned char>(line[pos])) || line[pos] == '-')) ++pos;
            if (pos == start) throw SetFileError("expected a coefficient: " + line);
            coeffs.push_back(std::stoi(line.substr(start, pos - start)));
            skip_ws();
            if (pos < line.size() && line[pos] == ',') {
                ++pos;
                continue;
            }
            break;
        }
        expect(']');
        coords.push_back(std::move(coeffs));
        skip_ws();
        if (pos < line.size() && line[pos] == ',') {
            ++pos;
            continue;
        }
        break;
    }
    expect(')');
    return coords;
}

std::vector<std::pair<std::string, std::string>> split_tokens(const std::string& s) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        size_t eq = tok.find('=');
        if (eq == std::string::npos)
            out.emplace_back(tok, "");
        else
            out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
    return out;
}

}  // namespace

SetFile load_set_file(std::istream& in) {
    SetFile sf;
    std::string line;
    if (!std::getline(in, line)) throw SetFileError("empty set file");
    const std::string header = "# graph:";
    if (line.rfind(header, 0) != 0) throw SetFileError("missing '# graph:' header");
    bool have_family = false;
    GraphSpec spec;
    for (auto& [key, value] : split_tokens(line.substr(header.size()))) {
        if (key == "q")
            spec.q = std::stoi(value);
        else if (key == "r")
            spec.r = std::stoi(value);
        else if (key == "eps")
            spec.eps = std::stoi(value);
        else if (key == "model")
            spec.model = value == "split" ? Model::split : Model::canonical;
        else if (key == "class")
            spec.q3_class = std::stoi(value);
        else if (auto fam = family_from_name(key)) {
            spec.family = *fam;
            have_family = true;
        } else {
            throw SetFileError("unknown header token: " + key);
        }
    }
    if (!have_family) throw SetFileError("header names no graph family");
    sf.spec = spec;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string prov = "# provenance:";
            const std::string expd = "# expected:";
            if (line.rfind(prov, 0) == 0) {
                size_t start = prov.size();
                while (start < line.size() && line[start] == ' ') ++start;
                sf.provenance = line.substr(start);
            } else if (line.rfind(expd, 0) == 0) {
                Expected e;
                for (auto& [key, value] : split_tokens(line.substr(expd.size()))) {
                    if (key == "h1")
                        e.h1 = std::stoll(value);
                    else if (key == "h2")
                        e.h2 = std::stoll(value);
                    else if (key == "size")
                        e.size = std::stoll(value);
                    else if (key == "type")
                        e.type = value == "positive" ? SetType::positive : SetType::negative;
                }
                sf.expected = e;
            }
            continue;
        }
        sf.points.push_back(parse_point_line(line));
    }
    return sf;
}

VertexSet resolve_set(const SetFile& sf, const Graph& g) {
    if (!(sf.spec == g.spec)) throw SetFileError("set file names a different graph");
    const Field& F = *g.field;
    std::vector<int> indices;
    for (const auto& coords : sf.points) {
        Vec p;
        for (const auto& coeffs : coords) p.push_back(F.from_coeffs(coeffs));
        Vec norm = g.spec.family == Family::NU ? g.herm->normalize_point(std::move(p))
                                               : normalize_point(F, std::move(p));
        int idx = g.index_of(norm);
        if (idx < 0) throw SetFileError("point " + point_to_text(F, norm) + " is not a vertex");
        indices.push_back(idx);
    }
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (static_cast<long long>(indices.size()) != static_cast<long long>(sf.points.size()))
        throw SetFileError("set file repeats a vertex");
    return VertexSet{g.spec, std::move(indices), sf.provenance, sf.expected};
}

void save_set_file(std::ostream& out, const Graph& g, const VertexSet& y) {
    const GraphSpec& s = g.spec;
    out << "# graph: " << family_name(s.family) << " q=" << s.q << " r=" << s.r
        << " eps=" << (s.eps > 0 ? "+1" : "-1");
    if (s.model == Model::split) out << " model=split";
    if (s.family == Family::NO_even3 && s.q3_class != 1) out << " class=" << s.q3_class;
    out << "\n";
    if (!y.provenance.empty()) out << "# provenance: " << y.provenance << "\n";
    if (y.expected) {
        out << "# expected: h1=" << y.expected->h1 << " h2=" << y.expected->h2
            << " type=" << set_type_name(y.expected->type) << " size=" << y.expected->size << "\n";
    }
    for (int i : y.indices) out << point_to_text(*g.field, g.vertices[i]) << "\n";
}

}  // namespace polarsrg
