#include "vrpsl/InstanceIO.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace vrpsl {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

double parseNumber(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) fail(line, "invalid number '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(line, "invalid number '" + tok + "'");
    }
}

// Fleet size fallback for plain CVRP files: trailing -kNN in the name, else
// the bin-packing lower bound.
int inferFleetSize(const std::string& name, double totalDemand, double capacity) {
    const auto pos = name.rfind('k');
    if (pos != std::string::npos && pos + 1 < name.size() && pos > 0 &&
        (name[pos - 1] == '-' || name[pos - 1] == '_')) {
        int m = 0;
        bool digits = false;
        for (std::size_t i = pos + 1; i < name.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) { digits = false; break; }
            m = m * 10 + (name[i] - '0');
            digits = true;
        }
        if (digits && m > 0) return m;
    }
    return std::max(1, static_cast<int>(std::ceil(totalDemand / capacity - 1e-9)));
}

std::string fmtDouble(double v) {
    if (isIntegral(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(v)));
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

InstanceFormat formatFromName(const std::string& name) {
    const std::string s = upper(name);
    if (s == "VRPSL") return InstanceFormat::Vrpsl;
    if (s == "CVRPLIB" || s == "CVRP") return InstanceFormat::Cvrplib;
    if (s == "VRPPFCC") return InstanceFormat::Vrppfcc;
    if (s == "CPTP") return InstanceFormat::Cptp;
    throw std::invalid_argument("unknown instance format '" + name + "'");
}

std::string formatName(InstanceFormat format) {
    switch (format) {
        case InstanceFormat::Vrpsl: return "vrpsl";
        case InstanceFormat::Cvrplib: return "cvrplib";
        case InstanceFormat::Vrppfcc: return "vrppfcc";
        case InstanceFormat::Cptp: return "cptp";
    }
    return "?";
}

Instance parseInstance(const std::string& text, InstanceFormat format) {
    Instance inst;
    inst.rounding = (format == InstanceFormat::Vrppfcc || format == InstanceFormat::Cptp)
                        ? DistanceRounding::Exact
                        : DistanceRounding::NearestInteger;

    int dimension = -1;
    int vehicles = -1;
    bool sawCoords = false, sawDemand = false, sawProfit = false, sawWeight = false;
    bool sawGroup = false, sawLevel = false;
    std::map<int, int> groupOfNode;      // 1-based node -> 1-based group
    std::map<int, double> levelOfGroup;  // 1-based group -> alpha

    std::istringstream in(text);
    std::string raw;
    int lineNo = 0;
    std::string section;
    int sectionLine = 0;

    auto requireDimension = [&](int line) {
        if (dimension < 2) fail(line, "section before a valid DIMENSION");
    };

    while (std::getline(in, raw)) {
        ++lineNo;
        std::string line = trim(raw);
        if (line.empty()) continue;

        // Header keys and section markers.
        std::string key = upper(line);
        const auto colon = line.find(':');
        std::string value;
        if (colon != std::string::npos) {
            key = upper(trim(line.substr(0, colon)));
            value = trim(line.substr(colon + 1));
        }

        if (key == "EOF") break;
        if (key == "NAME") { inst.name = value; continue; }
        if (key == "COMMENT" || key == "TYPE") continue;
        if (key == "DIMENSION") {
            dimension = static_cast<int>(parseNumber(value, lineNo));
            if (dimension < 2) fail(lineNo, "DIMENSION must be at least 2");
            inst.nbCustomers = dimension - 1;
            inst.coords.assign(static_cast<std::size_t>(dimension), {0.0, 0.0});
            inst.demand.assign(static_cast<std::size_t>(dimension), 0.0);
            inst.profit.assign(static_cast<std::size_t>(dimension), 0.0);
            inst.weight.assign(static_cast<std::size_t>(dimension), -1.0);
            inst.groupOf.assign(static_cast<std::size_t>(dimension), -1);
            continue;
        }
        if (key == "CAPACITY") { inst.capacity = parseNumber(value, lineNo); continue; }
        if (key == "VEHICLES") { vehicles = static_cast<int>(parseNumber(value, lineNo)); continue; }
        if (key == "EDGE_WEIGHT_TYPE") {
            const std::string t = upper(value);
            if (t == "EUC_2D") inst.rounding = DistanceRounding::NearestInteger;
            else if (t == "EUC_2D_EXACT") inst.rounding = DistanceRounding::Exact;
            else fail(lineNo, "unsupported EDGE_WEIGHT_TYPE '" + value + "'");
            continue;
        }
        if (key == "NODE_COORD_SECTION" || key == "DEMAND_SECTION" || key == "PROFIT_SECTION" ||
            key == "SERVICE_WEIGHT_SECTION" || key == "GROUP_SECTION" ||
            key == "SERVICE_LEVEL_SECTION" || key == "DEPOT_SECTION") {
            requireDimension(lineNo);
            section = key;
            sectionLine = lineNo;
            if (key == "NODE_COORD_SECTION") sawCoords = true;
            if (key == "DEMAND_SECTION") sawDemand = true;
            if (key == "PROFIT_SECTION") sawProfit = true;
            if (key == "SERVICE_WEIGHT_SECTION") sawWeight = true;
            if (key == "GROUP_SECTION") sawGroup = true;
            if (key == "SERVICE_LEVEL_SECTION") sawLevel = true;
            continue;
        }

        // Data line inside the current section.
        if (section.empty()) fail(lineNo, "unrecognized directive '" + line + "'");
        std::istringstream ls(line);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);

        if (section == "DEPOT_SECTION") continue; // single-depot convention, entries ignored

        if (toks.size() < 2) fail(lineNo, "truncated entry in " + section);
        const int id = static_cast<int>(parseNumber(toks[0], lineNo));
        if (id < 1 || id > dimension) fail(lineNo, "node/group id out of range in " + section);

        if (section == "NODE_COORD_SECTION") {
            if (toks.size() != 3) fail(lineNo, "expected 'id x y' in NODE_COORD_SECTION");
            inst.coords[static_cast<std::size_t>(id - 1)] = {parseNumber(toks[1], lineNo),
                                                             parseNumber(toks[2], lineNo)};
        } else if (section == "DEMAND_SECTION") {
            inst.demand[static_cast<std::size_t>(id - 1)] = parseNumber(toks[1], lineNo);
        } else if (section == "PROFIT_SECTION") {
            inst.profit[static_cast<std::size_t>(id - 1)] = parseNumber(toks[1], lineNo);
        } else if (section == "SERVICE_WEIGHT_SECTION") {
            inst.weight[static_cast<std::size_t>(id - 1)] = parseNumber(toks[1], lineNo);
        } else if (section == "GROUP_SECTION") {
            const int g = static_cast<int>(parseNumber(toks[1], lineNo));
            if (g < 1) fail(lineNo, "group ids are 1-based in GROUP_SECTION");
            if (groupOfNode.count(id))
                fail(lineNo, "node " + std::to_string(id) + " assigned to overlapping groups");
            groupOfNode[id] = g;
        } else if (section == "SERVICE_LEVEL_SECTION") {
            const double alpha = parseNumber(toks[1], lineNo);
            if (alpha < 0.0 || alpha > 1.0) fail(lineNo, "service level outside [0,1]");
            levelOfGroup[id] = alpha;
        }
    }

    if (dimension < 2) throw ParseError("missing DIMENSION");
    if (!sawCoords) throw ParseError("missing NODE_COORD_SECTION");
    if (!sawDemand) throw ParseError("missing DEMAND_SECTION");
    if (inst.capacity <= 0.0) throw ParseError("missing or non-positive CAPACITY");
    if (std::abs(inst.demand[0]) > 1e-12) throw ParseError("depot demand must be zero");

    const bool cvrpDefaults = !sawProfit && !sawWeight && !sawGroup;
    if (format == InstanceFormat::Cvrplib && (sawProfit || sawGroup))
        throw ParseError("cvrplib input must not carry PROFIT or GROUP sections");

    if (!sawProfit)
        std::fill(inst.profit.begin(), inst.profit.end(), 0.0);
    if (!sawWeight)
        inst.weight = inst.demand;
    else
        for (int c = 1; c <= inst.nbCustomers; ++c)
            if (inst.weight[static_cast<std::size_t>(c)] < 0.0)
                fail(sectionLine, "SERVICE_WEIGHT_SECTION misses node " + std::to_string(c + 1));
    inst.weight[0] = 0.0;
    inst.profit[0] = 0.0;

    int nbGroups = 1;
    if (sawGroup) {
        for (int c = 1; c <= inst.nbCustomers; ++c) {
            const auto it = groupOfNode.find(c + 1);
            if (it == groupOfNode.end())
                throw ParseError("GROUP_SECTION misses node " + std::to_string(c + 1));
            inst.groupOf[static_cast<std::size_t>(c)] = it->second - 1;
            nbGroups = std::max(nbGroups, it->second);
        }
        if (!sawLevel) throw ParseError("GROUP_SECTION present but SERVICE_LEVEL_SECTION missing");
    } else {
        for (int c = 1; c <= inst.nbCustomers; ++c) inst.groupOf[static_cast<std::size_t>(c)] = 0;
    }

    inst.serviceLevel.assign(static_cast<std::size_t>(nbGroups), cvrpDefaults ? 1.0 : 0.0);
    if (sawLevel) {
        for (int g = 1; g <= nbGroups; ++g) {
            const auto it = levelOfGroup.find(g);
            if (it == levelOfGroup.end())
                throw ParseError("SERVICE_LEVEL_SECTION misses group " + std::to_string(g));
            inst.serviceLevel[static_cast<std::size_t>(g - 1)] = it->second;
        }
    } else if (!cvrpDefaults) {
        throw ParseError("missing SERVICE_LEVEL_SECTION");
    }

    // Reduction conventions for the special-case formats.
    if (format == InstanceFormat::Cvrplib) {
        std::fill(inst.serviceLevel.begin(), inst.serviceLevel.end(), 1.0);
        std::fill(inst.profit.begin(), inst.profit.end(), 0.0);
        inst.weight = inst.demand;
    } else if (format == InstanceFormat::Vrppfcc || format == InstanceFormat::Cptp) {
        std::fill(inst.serviceLevel.begin(), inst.serviceLevel.end(), 0.0);
        inst.rounding = DistanceRounding::Exact; // double-precision convention
    }

    double totalDemand = 0.0;
    for (int c = 1; c <= inst.nbCustomers; ++c) totalDemand += inst.demand[static_cast<std::size_t>(c)];
    inst.fleetSize = vehicles > 0 ? vehicles : inferFleetSize(inst.name, totalDemand, inst.capacity);

    inst.finalize();
    return inst;
}

Instance loadInstance(const std::string& path, InstanceFormat format) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseInstance(buf.str(), format);
}

std::string serializeInstance(const Instance& inst) {
    std::ostringstream out;
    out << "NAME : " << inst.name << "\n";
    out << "TYPE : VRPSL\n";
    out << "DIMENSION : " << inst.nbCustomers + 1 << "\n";
    out << "CAPACITY : " << fmtDouble(inst.capacity) << "\n";
    out << "VEHICLES : " << inst.fleetSize << "\n";
    out << "EDGE_WEIGHT_TYPE : "
        << (inst.rounding == DistanceRounding::NearestInteger ? "EUC_2D" : "EUC_2D_EXACT") << "\n";
    out << "NODE_COORD_SECTION\n";
    for (int i = 0; i <= inst.nbCustomers; ++i)
        out << i + 1 << " " << fmtDouble(inst.coords[static_cast<std::size_t>(i)][0]) << " "
            << fmtDouble(inst.coords[static_cast<std::size_t>(i)][1]) << "\n";
    out << "DEMAND_SECTION\n";
    for (int i = 0; i <= inst.nbCustomers; ++i)
        out << i + 1 << " " << fmtDouble(inst.demand[static_cast<std::size_t>(i)]) << "\n";
    out << "PROFIT_SECTION\n";
    for (int i = 1; i <= inst.nbCustomers; ++i)
        out << i + 1 << " " << fmtDouble(inst.profit[static_cast<std::size_t>(i)]) << "\n";
    out << "SERVICE_WEIGHT_SECTION\n";
    for (int i = 1; i <= inst.nbCustomers; ++i)
        out << i + 1 << " " << fmtDouble(inst.weight[static_cast<std::size_t>(i)]) << "\n";
    out << "GROUP_SECTION\n";
    for (int i = 1; i <= inst.nbCustomers; ++i)
        out << i + 1 << " " << inst.groupOf[static_cast<std::size_t>(i)] + 1 << "\n";
    out << "SERVICE_LEVEL_SECTION\n";
    for (int k = 0; k < inst.nbGroups(); ++k)
        out << k + 1 << " " << fmtDouble(inst.serviceLevel[static_cast<std::size_t>(k)]) << "\n";
    out << "EOF\n";
    return out.str();
}

void saveInstance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write instance file '" + path + "'");
    out << serializeInstance(inst);
}

} // namespace vrpsl
