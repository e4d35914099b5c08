#include "polyconf/io/conformation_file.hpp"

#include <fstream>
#include <sstream>

#include "polyconf/error.hpp"
#include "polyconf/io/text_format.hpp"

namespace polyconf::io {

std::string serialize_conformations(const std::vector<repr::PolymerConformation>& confs,
                                    const repr::PolymerGraph& graph) {
    std::ostringstream out;
    out << "polyconf-conformations 1\n";
    out << "spec_hash " << graph.spec_hash_hex() << "\n";
    out << "n_units " << graph.n_units() << "\n";
    out << "n_atoms " << graph.total_atoms() << "\n";
    for (std::size_t c = 0; c < confs.size(); ++c) {
        const repr::PolymerConformation& conf = confs[c];
        if (conf.atom_count() != graph.total_atoms())
            throw SizeMismatchError("conformation " + std::to_string(c + 1) +
                                    " does not match the graph atom count");
        out << "conformation " << (c + 1) << "\n";
        for (int a = 0; a < graph.total_atoms(); ++a) {
            int unit = graph.owner_unit(a);
            int local = graph.owner_local(a);
            const std::string& elem = graph.unit(unit).elements[static_cast<std::size_t>(local)];
            const geom::Vec3& v = conf.coords[static_cast<std::size_t>(a)];
            out << (unit + 1) << " " << local << " " << elem << " " << format_real(v.x) << " "
                << format_real(v.y) << " " << format_real(v.z) << "\n";
        }
        out << "end\n";
    }
    return out.str();
}

void write_conformations(const std::vector<repr::PolymerConformation>& confs,
                         const repr::PolymerGraph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write conformation file '" + path + "'");
    out << serialize_conformations(confs, graph);
}

namespace {

[[noreturn]] void malformed(const std::string& filename, int line, const std::string& what) {
    throw MalformedRecordError(filename + ":" + std::to_string(line) + ": " + what);
}

} // namespace

std::vector<repr::PolymerConformation> parse_conformations(const std::string& text,
                                                           const repr::PolymerGraph& graph,
                                                           const std::string& filename) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_line = [&](bool required) -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (!line.empty())
                return true;
        }
        if (required)
            malformed(filename, lineno, "unexpected end of file");
        return false;
    };

    next_line(true);
    if (line != "polyconf-conformations 1")
        malformed(filename, lineno, "expected header 'polyconf-conformations 1'");

    next_line(true);
    {
        std::istringstream ls(line);
        std::string key, hash;
        ls >> key >> hash;
        if (key != "spec_hash" || hash.size() != 16)
            malformed(filename, lineno, "expected 'spec_hash <hex16>'");
        if (hash != graph.spec_hash_hex())
            throw HashMismatchError(filename + ": conformations were written for spec hash " + hash +
                                    " but the supplied graph has " + graph.spec_hash_hex());
    }

    auto read_int_field = [&](const std::string& key) {
        next_line(true);
        std::istringstream ls(line);
        std::string k;
        long long v = -1;
        ls >> k >> v;
        if (k != key || v < 0)
            malformed(filename, lineno, "expected '" + key + " <count>'");
        return static_cast<int>(v);
    };
    int n_units = read_int_field("n_units");
    int n_atoms = read_int_field("n_atoms");
    if (n_units != graph.n_units() || n_atoms != graph.total_atoms())
        throw HashMismatchError(filename + ": header counts do not match the supplied graph");

    std::vector<repr::PolymerConformation> confs;
    while (next_line(false)) {
        std::istringstream ls(line);
        std::string key;
        int index = -1;
        ls >> key >> index;
        if (key != "conformation" || index != static_cast<int>(confs.size()) + 1)
            malformed(filename, lineno, "expected 'conformation " +
                                            std::to_string(confs.size() + 1) + "'");

        repr::PolymerConformation conf;
        conf.coords.reserve(static_cast<std::size_t>(n_atoms));
        for (int a = 0; a < n_atoms; ++a) {
            next_line(true);
            std::istringstream rs(line);
            int unit1 = 0, local = -1;
            std::string elem;
            double x = 0, y = 0, z = 0;
            if (!(rs >> unit1 >> local >> elem >> x >> y >> z))
                malformed(filename, lineno, "expected '<unit> <local> <element> <x> <y> <z>'");
            if (unit1 - 1 != graph.owner_unit(a) || local != graph.owner_local(a))
                malformed(filename, lineno, "atom record out of order for global atom " +
                                                std::to_string(a));
            const std::string& expected =
                graph.unit(graph.owner_unit(a)).elements[static_cast<std::size_t>(local)];
            if (elem != expected)
                malformed(filename, lineno, "element '" + elem + "' does not match topology ('" +
                                                expected + "')");
            conf.coords.push_back({x, y, z});
        }
        next_line(true);
        if (line != "end")
            malformed(filename, lineno, "expected 'end' after conformation block");
        confs.push_back(std::move(conf));
    }
    return confs;
}

std::vector<repr::PolymerConformation> read_conformations(const std::string& path,
                                                          const repr::PolymerGraph& graph) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open conformation file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_conformations(buf.str(), graph, path);
}

} // namespace polyconf::io
