#include "vrptree/solution.hpp"

#include "vrptree/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace vrpt {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::string_view kFormat = "vrptree-solution/1";

ojson length_json(Length units, std::int64_t scale) {
    if (scale == 1) return units;
    return format_length(units, scale);
}

Length length_from_json(const ojson& j, std::int64_t scale, const char* what) {
    std::string token = j.is_string() ? j.get<std::string>() : j.dump();
    Ratio r;
    try {
        r = Ratio::parse(token);
    } catch (const InvalidArgument&) {
        throw ParseError(std::string("bad ") + what + " '" + token + "'");
    }
    Ratio scaled = r * Ratio(scale);
    if (scaled.den() != 1) throw ParseError(std::string(what) + " '" + token + "' is not a multiple of the scale unit");
    return scaled.num();
}

} // namespace

Length tour_length(const RoutingTree& tree, const std::vector<VertexId>& clients) {
    std::vector<bool> used(tree.size(), false);
    Length s = 0;
    for (VertexId c : clients) {
        if (c >= tree.size()) throw InvalidArgument("unknown vertex in tour");
        for (VertexId v = c; v != tree.root() && !used[v]; v = tree.parent(v)) {
            used[v] = true;
            s += tree.parent_length(v);
        }
    }
    return 2 * s;
}

void Solution::recompute(const RoutingTree& tree) {
    makespan = 0;
    total_length = 0;
    max_clients = 0;
    for (auto& t : tours) {
        std::sort(t.clients.begin(), t.clients.end());
        t.length = tour_length(tree, t.clients);
        makespan = std::max(makespan, t.length);
        total_length += t.length;
        max_clients = std::max(max_clients, t.clients.size());
    }
}

std::string solution_to_json(const RoutingTree& tree, const Solution& s) {
    const std::int64_t sc = tree.scale();
    ojson j;
    j["format"] = kFormat;
    j["objective"] = s.objective;
    j["makespan"] = length_json(s.makespan, sc);
    j["total_length"] = length_json(s.total_length, sc);
    j["max_clients"] = s.max_clients;
    j["D"] = s.objective == "capacity" ? ojson(s.D) : length_json(s.D, sc);
    j["params"] = ojson::object();
    for (const auto& [k, v] : s.params) j["params"][k] = v;
    j["counters"] = ojson::object();
    for (const auto& [k, v] : s.counters) j["counters"][k] = v;
    j["tours"] = ojson::array();
    for (const auto& t : s.tours) {
        ojson o;
        o["clients"] = ojson::array();
        for (VertexId c : t.clients) o["clients"].push_back(tree.name(c));
        o["length"] = length_json(t.length, sc);
        o["client_count"] = t.clients.size();
        if (t.rounded) {
            Ratio r = *t.rounded;
            if (s.objective != "capacity") r = r / Ratio(sc);
            o["rounded"] = r.str();
        }
        o["roundups"] = t.roundups;
        o["clusters"] = t.clusters;
        o["merges"] = t.merges;
        j["tours"].push_back(std::move(o));
    }
    return j.dump(2) + "\n";
}

Solution solution_from_json(const RoutingTree& tree, std::string_view text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad JSON solution: ") + e.what());
    }
    const std::int64_t sc = tree.scale();
    Solution s;
    try {
        if (j.value("format", std::string()) != kFormat) {
            throw ParseError("solution must declare format '" + std::string(kFormat) + "'");
        }
        s.objective = j.value("objective", std::string("makespan"));
        s.makespan = length_from_json(j.at("makespan"), sc, "makespan");
        if (j.contains("total_length")) s.total_length = length_from_json(j.at("total_length"), sc, "total_length");
        s.max_clients = j.value("max_clients", std::size_t{0});
        if (j.contains("D")) {
            s.D = s.objective == "capacity" ? j.at("D").get<std::int64_t>() : length_from_json(j.at("D"), sc, "D");
        }
        if (j.contains("params")) {
            for (const auto& [k, v] : j.at("params").items()) s.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
        }
        if (j.contains("counters")) {
            for (const auto& [k, v] : j.at("counters").items()) s.counters[k] = v.get<std::int64_t>();
        }
        for (const auto& o : j.at("tours")) {
            Tour t;
            for (const auto& c : o.at("clients")) {
                auto name = c.get<std::string>();
                auto id = tree.find(name);
                if (!id) throw ParseError("solution names unknown vertex '" + name + "'");
                t.clients.push_back(*id);
            }
            t.length = length_from_json(o.at("length"), sc, "tour length");
            if (o.contains("rounded")) {
                Ratio r = Ratio::parse(o.at("rounded").get<std::string>());
                if (s.objective != "capacity") r = r * Ratio(sc);
                t.rounded = r;
            }
            t.roundups = o.value("roundups", std::size_t{0});
            t.clusters = o.value("clusters", std::size_t{0});
            t.merges = o.value("merges", std::size_t{0});
            s.tours.push_back(std::move(t));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON solution: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("bad JSON solution: ") + e.what());
    }
    return s;
}

void save_solution_file(const RoutingTree& tree, const Solution& s, const std::string& path) {
    write_text_file(path, solution_to_json(tree, s));
}

Solution load_solution_file(const RoutingTree& tree, const std::string& path) {
    return solution_from_json(tree, read_text_file(path));
}

std::string solution_to_text(const RoutingTree& tree, const Solution& s) {
    const std::int64_t sc = tree.scale();
    std::ostringstream out;
    out << "objective " << s.objective << "\n";
    out << "makespan " << format_length(s.makespan, sc) << "\n";
    out << "total_length " << format_length(s.total_length, sc) << "\n";
    out << "tours " << s.tours.size() << "\n";
    out << std::left << std::setw(6) << "tour" << std::setw(12) << "length" << std::setw(9) << "clients"
        << std::setw(9) << "roundups" << "members\n";
    for (std::size_t i = 0; i < s.tours.size(); ++i) {
        const Tour& t = s.tours[i];
        out << std::setw(6) << i << std::setw(12) << format_length(t.length, sc) << std::setw(9) << t.clients.size()
            << std::setw(9) << t.roundups;
        for (std::size_t j = 0; j < t.clients.size(); ++j) out << (j ? " " : "") << tree.name(t.clients[j]);
        out << "\n";
    }
    for (const auto& [k, v] : s.counters) out << "counter " << k << " " << v << "\n";
    return out.str();
}

} // namespace vrpt
