#include "vrptree/tree.hpp"

#include "vrptree/errors.hpp"

#include "json.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vrpt {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::string_view kTextMagic = "vrptree-instance 1";
constexpr std::string_view kJsonFormat = "vrptree-instance/1";

struct RawEdge {
    std::string u, v;
    Length len;
    std::size_t line;
};

struct RawInstance {
    std::vector<std::string> comments;
    std::int64_t scale = 1;
    std::string root;
    std::vector<RawEdge> edges;
    std::vector<std::string> clients;
};

Length parse_length(std::string_view token, std::int64_t scale, std::size_t line) {
    Ratio r;
    try {
        r = Ratio::parse(token);
    } catch (const InvalidArgument&) {
        throw ParseError("line " + std::to_string(line) + ": bad length '" + std::string(token) + "'");
    }
    if (r.num() < 0) throw InvalidArgument("line " + std::to_string(line) + ": negative edge length");
    Ratio scaled = r * Ratio(scale);
    if (scaled.den() != 1) {
        throw ParseError("line " + std::to_string(line) + ": length '" + std::string(token) +
                         "' is not a multiple of 1/" + std::to_string(scale));
    }
    return scaled.num();
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

RawInstance parse_text(std::string_view text) {
    RawInstance raw;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool magic = false;
    bool have_scale = false;
    std::vector<std::pair<std::vector<std::string>, std::size_t>> deferred;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] == '#') {
            raw.comments.push_back(line);
            continue;
        }
        auto tok = split_ws(line);
        if (tok.empty()) continue;
        if (!magic) {
            if (line != kTextMagic) {
                throw ParseError("line " + std::to_string(lineno) + ": expected '" + std::string(kTextMagic) + "'");
            }
            magic = true;
            continue;
        }
        if (tok[0] == "scale") {
            if (tok.size() != 2) throw ParseError("line " + std::to_string(lineno) + ": scale takes one value");
            try {
                raw.scale = std::stoll(tok[1]);
            } catch (...) {
                throw ParseError("line " + std::to_string(lineno) + ": bad scale");
            }
            if (raw.scale < 1 || std::to_string(raw.scale) != tok[1]) {
                throw ParseError("line " + std::to_string(lineno) + ": scale must be a positive integer");
            }
            if (have_scale) throw ParseError("line " + std::to_string(lineno) + ": duplicate scale");
            have_scale = true;
        } else if (tok[0] == "root") {
            if (tok.size() != 2) throw ParseError("line " + std::to_string(lineno) + ": root takes one id");
            if (!raw.root.empty()) throw ParseError("line " + std::to_string(lineno) + ": duplicate root");
            raw.root = tok[1];
        } else if (tok[0] == "edge" || tok[0] == "client") {
            deferred.emplace_back(std::move(tok), lineno);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown directive '" + tok[0] + "'");
        }
    }
    if (!magic) throw ParseError("empty instance");
    // Lengths depend on the scale, which may be declared after edges.
    for (auto& [tok, ln] : deferred) {
        if (tok[0] == "edge") {
            if (tok.size() != 4) throw ParseError("line " + std::to_string(ln) + ": edge takes <u> <v> <len>");
            raw.edges.push_back({tok[1], tok[2], parse_length(tok[3], raw.scale, ln), ln});
        } else {
            if (tok.size() != 2) throw ParseError("line " + std::to_string(ln) + ": client takes one id");
            raw.clients.push_back(tok[1]);
        }
    }
    return raw;
}

RawInstance parse_json(std::string_view text) {
    RawInstance raw;
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad JSON instance: ") + e.what());
    }
    try {
        if (j.value("format", std::string()) != kJsonFormat) {
            throw ParseError("JSON instance must declare format '" + std::string(kJsonFormat) + "'");
        }
        if (j.contains("comments")) {
            for (const auto& c : j.at("comments")) raw.comments.push_back(c.get<std::string>());
        }
        raw.scale = j.value("scale", std::int64_t{1});
        if (raw.scale < 1) throw ParseError("scale must be a positive integer");
        raw.root = j.at("root").get<std::string>();
        std::size_t idx = 0;
        for (const auto& e : j.at("edges")) {
            ++idx;
            const auto& len = e.at("len");
            std::string token = len.is_string() ? len.get<std::string>() : len.dump();
            raw.edges.push_back(
                {e.at("u").get<std::string>(), e.at("v").get<std::string>(), parse_length(token, raw.scale, idx), idx});
        }
        for (const auto& c : j.at("clients")) raw.clients.push_back(c.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON instance: ") + e.what());
    }
    return raw;
}

RoutingTree build(const RawInstance& raw) {
    if (raw.root.empty()) throw ParseError("instance has no root");
    // Prune client-free subtrees before building, keeping declaration order.
    std::unordered_map<std::string, std::vector<std::size_t>> out_edges;
    std::unordered_map<std::string, std::size_t> parent_edge;
    for (std::size_t i = 0; i < raw.edges.size(); ++i) {
        const auto& e = raw.edges[i];
        if (e.u == e.v) throw InvalidArgument("self loop at '" + e.u + "'");
        auto [it, fresh] = parent_edge.emplace(e.v, i);
        if (!fresh) {
            if (raw.edges[it->second].u == e.u) throw InvalidArgument("duplicate edge " + e.u + " -> " + e.v);
            throw InvalidArgument("vertex '" + e.v + "' has two parents");
        }
        out_edges[e.u].push_back(i);
    }
    if (parent_edge.count(raw.root)) throw InvalidArgument("root '" + raw.root + "' cannot have a parent");
    std::unordered_map<std::string, bool> is_client;
    for (const auto& c : raw.clients) {
        if (!is_client.emplace(c, true).second) throw InvalidArgument("duplicate client '" + c + "'");
        if (c != raw.root && !parent_edge.count(c)) {
            throw InvalidArgument("client '" + c + "' is not connected to the tree");
        }
    }
    // Reachability and client presence from the root.
    std::unordered_map<std::string, bool> keep;
    std::size_t reached = 0;
    {
        std::vector<std::pair<std::string, bool>> stack{{raw.root, false}};
        std::unordered_map<std::string, bool> visited;
        while (!stack.empty()) {
            auto [v, done] = stack.back();
            stack.pop_back();
            if (done) {
                bool k = is_client.count(v) > 0;
                if (auto it = out_edges.find(v); it != out_edges.end()) {
                    for (std::size_t ei : it->second) k = k || keep[raw.edges[ei].v];
                }
                keep[v] = k;
                continue;
            }
            if (visited[v]) throw InvalidArgument("edge list contains a cycle");
            visited[v] = true;
            ++reached;
            stack.push_back({v, true});
            if (auto it = out_edges.find(v); it != out_edges.end()) {
                for (std::size_t ei : it->second) stack.push_back({raw.edges[ei].v, false});
            }
        }
    }
    if (reached != parent_edge.size() + 1) {
        for (const auto& e : raw.edges) {
            // find an endpoint not reachable
            std::string x = e.u;
            std::unordered_map<std::string, bool> seen;
            while (x != raw.root && parent_edge.count(x) && !seen[x]) {
                seen[x] = true;
                x = raw.edges[parent_edge.at(x)].u;
            }
            if (x != raw.root) throw InvalidArgument("edge " + e.u + " -> " + e.v + " is disconnected from the root");
        }
        throw InvalidArgument("disconnected edge list");
    }

    RoutingTree t;
    t.set_scale(raw.scale);
    for (const auto& c : raw.comments) t.add_comment(c);
    VertexId r = t.add_vertex(raw.root);
    t.set_root(r);
    for (const auto& e : raw.edges) {
        if (!keep[e.v]) continue;
        VertexId u = t.find(e.u).value_or(kNoVertex);
        if (u == kNoVertex) u = t.add_vertex(e.u);
        VertexId v = t.find(e.v).value_or(kNoVertex);
        if (v == kNoVertex) v = t.add_vertex(e.v);
        t.add_edge(u, v, e.len);
    }
    for (const auto& c : raw.clients) {
        if (c == raw.root) throw InvalidArgument("the depot cannot be a client");
        t.set_client(t.find(c).value());
    }
    t.validate();
    return t;
}

} // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path + "'");
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << data;
    if (!out) throw IoError("cannot write '" + path + "'");
}

RoutingTree load_instance(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '{') return build(parse_json(text));
    return build(parse_text(text));
}

RoutingTree load_instance_file(const std::string& path) {
    return load_instance(read_text_file(path));
}

std::string save_instance(const RoutingTree& tree, bool structured) {
    if (structured) {
        ojson j;
        j["format"] = kJsonFormat;
        if (!tree.comments().empty()) j["comments"] = tree.comments();
        j["scale"] = tree.scale();
        j["root"] = tree.name(tree.root());
        j["edges"] = ojson::array();
        for (VertexId c : tree.edge_order()) {
            ojson e;
            e["u"] = tree.name(tree.parent(c));
            e["v"] = tree.name(c);
            if (tree.scale() == 1) {
                e["len"] = tree.parent_length(c);
            } else {
                e["len"] = format_length(tree.parent_length(c), tree.scale());
            }
            j["edges"].push_back(std::move(e));
        }
        j["clients"] = ojson::array();
        for (VertexId c : tree.clients()) j["clients"].push_back(tree.name(c));
        return j.dump(2) + "\n";
    }
    std::string out;
    for (const auto& c : tree.comments()) out += c + "\n";
    out += std::string(kTextMagic) + "\n";
    out += "scale " + std::to_string(tree.scale()) + "\n";
    out += "root " + tree.name(tree.root()) + "\n";
    for (VertexId c : tree.edge_order()) {
        out += "edge " + tree.name(tree.parent(c)) + " " + tree.name(c) + " " +
               format_length(tree.parent_length(c), tree.scale()) + "\n";
    }
    for (VertexId c : tree.clients()) out += "client " + tree.name(c) + "\n";
    return out;
}

void save_instance_file(const RoutingTree& tree, const std::string& path, bool structured) {
    write_text_file(path, save_instance(tree, structured));
}

std::string instance_digest(const RoutingTree& tree) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : save_instance(tree, false)) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace vrpt
