#include "bandwave/petri.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace bandwave {

namespace {

namespace pt = boost::property_tree;

struct RawArc {
    std::string id;
    std::string source;
    std::string target;
    int weight = 1;
};

struct Collected {
    std::string net_name;
    std::vector<std::pair<std::string, int>> places;  // (id, marking)
    std::vector<std::string> transitions;
    std::vector<RawArc> arcs;
};

int text_value(const pt::ptree& node, const char* element, int fallback) {
    auto child = node.get_child_optional(element);
    if (!child) return fallback;
    std::string text = child->get<std::string>("text", "");
    try {
        return std::stoi(text);
    } catch (const std::exception&) {
        throw ParseError("non-numeric value '" + text + "' in <" + element + ">");
    }
}

void collect(const pt::ptree& parent, Collected& out) {
    for (const auto& [key, node] : parent) {
        if (key == "place") {
            std::string id = node.get<std::string>("<xmlattr>.id", "");
            if (id.empty()) throw ParseError("place without id attribute");
            int marking = text_value(node, "initialMarking", 0);
            if (marking < 0 || marking > 1)
                throw ParseError("initial marking " + std::to_string(marking) + " of place '" +
                                 id + "' outside {0,1}; only 1-safe nets are supported");
            out.places.emplace_back(id, marking);
        } else if (key == "transition") {
            std::string id = node.get<std::string>("<xmlattr>.id", "");
            if (id.empty()) throw ParseError("transition without id attribute");
            out.transitions.push_back(id);
        } else if (key == "arc") {
            RawArc arc;
            arc.id = node.get<std::string>("<xmlattr>.id", "");
            arc.source = node.get<std::string>("<xmlattr>.source", "");
            arc.target = node.get<std::string>("<xmlattr>.target", "");
            if (arc.source.empty() || arc.target.empty())
                throw ParseError("arc '" + arc.id + "' missing source or target");
            arc.weight = text_value(node, "inscription", 1);
            out.arcs.push_back(std::move(arc));
        } else if (key == "page") {
            collect(node, out);
        }
    }
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::vector<std::pair<int, int>> dependency_pairs(const PetriNet& net, DependencyKind kind) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
        std::set<int> deps(net.pre[t].begin(), net.pre[t].end());
        if (kind != DependencyKind::Read) deps.insert(net.post[t].begin(), net.post[t].end());
        for (int p : deps) out.emplace_back(static_cast<int>(t), p);
    }
    return out;
}

}  // namespace

int place_slot(const PetriNet& net, const std::string& name) {
    auto it = std::find(net.places.begin(), net.places.end(), name);
    if (it == net.places.end()) throw std::out_of_range("unknown place: " + name);
    return static_cast<int>(it - net.places.begin());
}

int transition_slot(const PetriNet& net, const std::string& name) {
    auto it = std::find(net.transitions.begin(), net.transitions.end(), name);
    if (it == net.transitions.end()) throw std::out_of_range("unknown transition: " + name);
    return static_cast<int>(it - net.transitions.begin());
}

PetriNet parse_pnml(std::string_view document) {
    pt::ptree tree;
    std::istringstream in{std::string(document)};
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError("malformed XML: " + std::string(e.message()));
    }

    auto pnml = tree.get_child_optional("pnml");
    if (!pnml) throw ParseError("document has no <pnml> root element");
    auto net_node = pnml->get_child_optional("net");
    if (!net_node) throw ParseError("<pnml> contains no <net> element");

    Collected raw;
    raw.net_name = net_node->get<std::string>("<xmlattr>.id", "");
    collect(*net_node, raw);

    PetriNet net;
    net.name = raw.net_name;
    std::map<std::string, int> place_of, transition_of;
    for (const auto& [id, marking] : raw.places) {
        if (place_of.count(id)) throw ParseError("duplicate place id '" + id + "'");
        place_of[id] = static_cast<int>(net.places.size());
        net.places.push_back(id);
        net.initial_marking.push_back(marking);
    }
    for (const auto& id : raw.transitions) {
        if (transition_of.count(id) || place_of.count(id))
            throw ParseError("duplicate id '" + id + "'");
        transition_of[id] = static_cast<int>(net.transitions.size());
        net.transitions.push_back(id);
    }
    net.pre.resize(net.transitions.size());
    net.post.resize(net.transitions.size());

    std::set<std::pair<int, int>> seen_pre, seen_post;
    for (const auto& arc : raw.arcs) {
        if (arc.weight != 1)
            throw ParseError("arc '" + arc.id + "' has weight " + std::to_string(arc.weight) +
                             "; only unit arcs are supported");
        auto sp = place_of.find(arc.source);
        auto tp = place_of.find(arc.target);
        auto st = transition_of.find(arc.source);
        auto tt = transition_of.find(arc.target);
        if (sp != place_of.end() && tt != transition_of.end()) {
            if (!seen_pre.emplace(tt->second, sp->second).second)
                throw ParseError("duplicate arc from '" + arc.source + "' to '" + arc.target +
                                 "'");
            net.pre[tt->second].push_back(sp->second);
        } else if (st != transition_of.end() && tp != place_of.end()) {
            if (!seen_post.emplace(st->second, tp->second).second)
                throw ParseError("duplicate arc from '" + arc.source + "' to '" + arc.target +
                                 "'");
            net.post[st->second].push_back(tp->second);
        } else if (sp != place_of.end() && tp != place_of.end()) {
            throw ParseError("arc '" + arc.id + "' connects two places");
        } else if (st != transition_of.end() && tt != transition_of.end()) {
            throw ParseError("arc '" + arc.id + "' connects two transitions");
        } else {
            const std::string& missing =
                (sp == place_of.end() && st == transition_of.end()) ? arc.source : arc.target;
            throw ParseError("arc references unknown node '" + missing + "'");
        }
    }
    for (auto& v : net.pre) std::sort(v.begin(), v.end());
    for (auto& v : net.post) std::sort(v.begin(), v.end());
    return net;
}

std::string to_pnml(const PetriNet& net) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<pnml>\n";
    out << "  <net id=\"" << xml_escape(net.name) << "\" "
        << "type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n";
    out << "    <page id=\"page0\">\n";
    for (std::size_t p = 0; p < net.places.size(); ++p) {
        out << "      <place id=\"" << xml_escape(net.places[p]) << "\">";
        if (net.initial_marking[p] != 0)
            out << "<initialMarking><text>" << net.initial_marking[p]
                << "</text></initialMarking>";
        out << "</place>\n";
    }
    for (const auto& t : net.transitions)
        out << "      <transition id=\"" << xml_escape(t) << "\"/>\n";
    int arc_no = 0;
    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
        for (int p : net.pre[t])
            out << "      <arc id=\"a" << ++arc_no << "\" source=\""
                << xml_escape(net.places[p]) << "\" target=\"" << xml_escape(net.transitions[t])
                << "\"/>\n";
        for (int p : net.post[t])
            out << "      <arc id=\"a" << ++arc_no << "\" source=\""
                << xml_escape(net.transitions[t]) << "\" target=\"" << xml_escape(net.places[p])
                << "\"/>\n";
    }
    out << "    </page>\n  </net>\n</pnml>\n";
    return out.str();
}

std::vector<std::pair<int, int>> write_set(const PetriNet& net) {
    return dependency_pairs(net, DependencyKind::Write);
}

std::vector<std::pair<int, int>> read_set(const PetriNet& net) {
    return dependency_pairs(net, DependencyKind::Read);
}

BipartiteDependencyGraph dependency_graph(const PetriNet& net, DependencyKind kind) {
    std::vector<VertexId> rows, cols;
    rows.reserve(net.transitions.size());
    cols.reserve(net.places.size());
    for (const auto& t : net.transitions) rows.push_back(transition_id(t));
    for (const auto& p : net.places) cols.push_back(place_id(p));
    return BipartiteDependencyGraph(std::move(rows), std::move(cols),
                                    dependency_pairs(net, kind));
}

}  // namespace bandwave
