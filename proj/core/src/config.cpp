#include "manetsim/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace manetsim::config {

namespace {

using Error = std::optional<std::string>;

struct Field {
    std::string section;
    std::string key;
    std::function<Error(Scenario&, std::string_view)> set;
    std::function<std::string(const Scenario&)> get;
};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
std::optional<T> parse_number(std::string_view v) {
    T out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) return std::nullopt;
    return out;
}

std::optional<bool> parse_bool(std::string_view v) {
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    return std::nullopt;
}

std::string fmt_bool(bool b) {
    return b ? "true" : "false";
}

// Field builders keyed by a member-access function.
template <class T, class Access>
Field number(std::string section, std::string key, Access access) {
    Field f{std::move(section), std::move(key), {}, {}};
    f.set = [access, name = f.section + "." + f.key](Scenario& s, std::string_view v) -> Error {
        auto n = parse_number<T>(v);
        if (!n) return fmt::format("{}: '{}' is not a valid number", name, v);
        access(s) = *n;
        return std::nullopt;
    };
    f.get = [access](const Scenario& s) { return fmt::format("{}", access(const_cast<Scenario&>(s))); };
    return f;
}

template <class Access>
Field boolean(std::string section, std::string key, Access access) {
    Field f{std::move(section), std::move(key), {}, {}};
    f.set = [access, name = f.section + "." + f.key](Scenario& s, std::string_view v) -> Error {
        auto b = parse_bool(v);
        if (!b) return fmt::format("{}: '{}' is not a boolean (true/false)", name, v);
        access(s) = *b;
        return std::nullopt;
    };
    f.get = [access](const Scenario& s) { return fmt_bool(access(const_cast<Scenario&>(s))); };
    return f;
}

#define MEMBER(expr) [](Scenario& s) -> auto& { return expr; }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> t;
        t.push_back({"scenario", "net_type", nullptr, [](const Scenario& s) { return std::string(to_string(s.net)); }});
        t.push_back({"scenario", "preset", nullptr, [](const Scenario& s) { return routing::preset_name(s.preset); }});
        t.push_back(number<int>("scenario", "node_count", MEMBER(s.node_count)));
        t.push_back(number<std::uint64_t>("scenario", "seed", MEMBER(s.seed)));
        t.push_back(number<double>("scenario", "horizon", MEMBER(s.horizon)));

        Field model{"mobility", "model", {}, {}};
        model.set = [](Scenario& s, std::string_view v) -> Error {
            auto m = mobility::parse_model(v);
            if (!m) return fmt::format("mobility.model: unknown model '{}' (static, random_waypoint, road_grid)", v);
            s.mobility.model = *m;
            return std::nullopt;
        };
        model.get = [](const Scenario& s) { return std::string(mobility::to_string(s.mobility.model)); };
        t.push_back(std::move(model));
        t.push_back(number<double>("mobility", "width", MEMBER(s.mobility.area.width)));
        t.push_back(number<double>("mobility", "height", MEMBER(s.mobility.area.height)));
        t.push_back(number<double>("mobility", "speed", MEMBER(s.mobility.speed)));
        t.push_back(number<double>("mobility", "pause", MEMBER(s.mobility.pause)));
        t.push_back(number<double>("mobility", "grid_spacing", MEMBER(s.mobility.grid_spacing)));

        t.push_back({"radio", "mac", nullptr, [](const Scenario& s) { return std::string(to_string(s.radio.mac)); }});
        t.push_back(number<double>("radio", "range", MEMBER(s.radio.range)));
        t.push_back(number<double>("radio", "base_delay", MEMBER(s.radio.base_delay)));
        t.push_back(number<double>("radio", "per_contender_delay", MEMBER(s.radio.per_contender_delay)));
        t.push_back(number<double>("radio", "loss_base", MEMBER(s.radio.loss_base)));
        t.push_back(number<double>("radio", "loss_per_contender", MEMBER(s.radio.loss_per_contender)));

        t.push_back(number<int>("traffic", "flows", MEMBER(s.traffic.flows)));
        t.push_back(number<double>("traffic", "rate", MEMBER(s.traffic.rate)));
        t.push_back(number<std::uint32_t>("traffic", "packet_size", MEMBER(s.traffic.packet_size)));
        t.push_back(number<double>("traffic", "start_min", MEMBER(s.traffic.start_min)));
        t.push_back(number<double>("traffic", "start_max", MEMBER(s.traffic.start_max)));
        t.push_back({"traffic", "flow", nullptr, nullptr});

        t.push_back(number<int>("aodv", "ttl_start", MEMBER(s.params.aodv.ttl_start)));
        t.push_back(number<int>("aodv", "ttl_increment", MEMBER(s.params.aodv.ttl_increment)));
        t.push_back(number<int>("aodv", "ttl_threshold", MEMBER(s.params.aodv.ttl_threshold)));
        t.push_back(number<int>("aodv", "net_diameter", MEMBER(s.params.aodv.net_diameter)));
        t.push_back(number<double>("aodv", "hello_interval", MEMBER(s.params.aodv.hello_interval)));
        t.push_back(number<int>("aodv", "allowed_hello_loss", MEMBER(s.params.aodv.allowed_hello_loss)));
        t.push_back(boolean("aodv", "local_repair", MEMBER(s.params.aodv.local_repair)));
        t.push_back(boolean("aodv", "grat_rrep", MEMBER(s.params.aodv.grat_rrep)));
        t.push_back(number<int>("aodv", "rreq_retries", MEMBER(s.params.aodv.rreq_retries)));
        t.push_back(number<double>("aodv", "active_route_timeout", MEMBER(s.params.aodv.active_route_timeout)));
        t.push_back(number<double>("aodv", "node_traversal_time", MEMBER(s.params.aodv.node_traversal_time)));
        t.push_back(number<double>("aodv", "buffer_timeout", MEMBER(s.params.aodv.buffer_timeout)));
        t.push_back(number<std::size_t>("aodv", "buffer_limit", MEMBER(s.params.aodv.buffer_limit)));

        t.push_back(number<double>("fsr", "intra_scope_interval", MEMBER(s.params.fsr.intra_scope_interval)));
        t.push_back(number<double>("fsr", "inter_scope_interval", MEMBER(s.params.fsr.inter_scope_interval)));
        t.push_back(number<int>("fsr", "scope_radius", MEMBER(s.params.fsr.scope_radius)));
        t.push_back(boolean("fsr", "route_recompute", MEMBER(s.params.fsr.recompute_on_update)));
        t.push_back(number<double>("fsr", "neighbor_hold_factor", MEMBER(s.params.fsr.neighbor_hold_factor)));
        t.push_back(number<double>("fsr", "entry_hold_factor", MEMBER(s.params.fsr.entry_hold_factor)));

        t.push_back(number<double>("olsr", "hello_interval", MEMBER(s.params.olsr.hello_interval)));
        t.push_back(number<double>("olsr", "tc_interval", MEMBER(s.params.olsr.tc_interval)));
        t.push_back(number<double>("olsr", "hold_time_multiplier", MEMBER(s.params.olsr.hold_time_multiplier)));
        return t;
    }();
    return table;
}

#undef MEMBER

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

std::optional<FlowConfig> parse_flow(std::string_view v, double horizon) {
    // src dst [rate [start [stop [size]]]]
    std::istringstream in{std::string(v)};
    FlowConfig f;
    f.stop_t = horizon;
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    if (tok.size() < 2 || tok.size() > 6) return std::nullopt;
    auto src = parse_number<int>(tok[0]);
    auto dst = parse_number<int>(tok[1]);
    if (!src || !dst) return std::nullopt;
    f.src = *src;
    f.dst = *dst;
    const std::array<double*, 3> doubles{&f.rate, &f.start_t, &f.stop_t};
    for (std::size_t i = 2; i < tok.size() && i < 5; ++i) {
        auto d = parse_number<double>(tok[i]);
        if (!d) return std::nullopt;
        *doubles[i - 2] = *d;
    }
    if (tok.size() == 6) {
        auto size = parse_number<std::uint32_t>(tok[5]);
        if (!size) return std::nullopt;
        f.packet_size = *size;
    }
    return f;
}

Scenario parse_impl(std::string_view text, std::vector<std::string>& errors) {
    std::set<std::string> sections;
    std::map<std::string, const Field*> by_name;
    for (const auto& f : fields()) {
        sections.insert(f.section);
        by_name[f.section + "." + f.key] = &f;
    }

    std::vector<Entry> entries;
    std::set<std::string> seen;
    std::string section = "scenario";
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back(fmt::format("line {}: malformed section header '{}'", line_no, line));
                continue;
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!sections.contains(section))
                errors.push_back(fmt::format("line {}: unknown section [{}]", line_no, section));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            errors.push_back(fmt::format("line {}: expected 'key = value', got '{}'", line_no, line));
            continue;
        }
        Entry e{section, std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
        const std::string name = e.section + "." + e.key;
        if (!by_name.contains(name)) {
            if (sections.contains(e.section))
                errors.push_back(
                    fmt::format("line {}: unknown key '{}' (did you mean '{}'?)", line_no, name, nearest_key(name)));
            continue;
        }
        if (e.key != "flow" && !seen.insert(name).second) {
            errors.push_back(fmt::format("line {}: duplicate key '{}'", line_no, name));
            continue;
        }
        if (e.value.empty()) {
            errors.push_back(fmt::format("line {}: empty value for '{}'", line_no, name));
            continue;
        }
        entries.push_back(std::move(e));
    }

    // Net type, preset and MAC pick the defaults everything else overrides.
    NetType net = NetType::Manet;
    routing::Preset preset;
    std::optional<MacProfile> mac;
    for (const auto& e : entries) {
        const std::string name = e.section + "." + e.key;
        if (name == "scenario.net_type") {
            if (auto n = parse_net_type(e.value))
                net = *n;
            else
                errors.push_back(fmt::format("scenario.net_type: unknown value '{}' (manet, vanet)", e.value));
        } else if (name == "scenario.preset") {
            if (auto p = routing::parse_preset(e.value))
                preset = *p;
            else
                errors.push_back(fmt::format("scenario.preset: unknown preset '{}' (valid: {})", e.value,
                                             routing::preset_names()));
        } else if (name == "radio.mac") {
            if (auto m = parse_mac(e.value))
                mac = *m;
            else
                errors.push_back(fmt::format("radio.mac: unknown profile '{}' (802.11, 802.11p)", e.value));
        }
    }

    Scenario s = Scenario::defaults(net, preset);
    if (mac) s.radio = RadioConfig::preset(*mac);
    std::vector<const Entry*> flows;
    for (const auto& e : entries) {
        const Field* f = by_name.at(e.section + "." + e.key);
        if (e.key == "flow") {
            flows.push_back(&e);
            continue;
        }
        if (!f->set) continue;
        if (auto err = f->set(s, e.value)) errors.push_back(fmt::format("line {}: {}", e.line, *err));
    }
    for (const Entry* e : flows) {
        if (auto flow = parse_flow(e->value, s.horizon))
            s.flows.push_back(*flow);
        else
            errors.push_back(
                fmt::format("line {}: traffic.flow expects 'src dst [rate [start [stop [size]]]]', got '{}'", e->line,
                            e->value));
    }
    for (auto& p : check(s)) errors.push_back(std::move(p));
    return s;
}

}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::vector<std::string> known_keys() {
    std::vector<std::string> out;
    for (const auto& f : fields()) out.push_back(f.section + "." + f.key);
    return out;
}

std::string nearest_key(std::string_view key) {
    std::string best;
    std::size_t best_d = std::string::npos;
    for (const auto& k : known_keys()) {
        const auto d = edit_distance(key, k);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

Scenario parse(std::string_view text) {
    std::vector<std::string> errors;
    Scenario s = parse_impl(text, errors);
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return s;
}

std::vector<std::string> validate(std::string_view text) {
    std::vector<std::string> errors;
    parse_impl(text, errors);
    return errors;
}

std::string serialize(const Scenario& s) {
    std::string out;
    std::string section;
    for (const auto& f : fields()) {
        if (f.section != section) {
            if (!section.empty()) out += '\n';
            section = f.section;
            out += fmt::format("[{}]\n", section);
        }
        if (f.key == "flow") {
            for (const auto& fl : s.flows)
                out += fmt::format("flow = {} {} {} {} {} {}\n", fl.src, fl.dst, fl.rate, fl.start_t, fl.stop_t,
                                   fl.packet_size);
            continue;
        }
        out += fmt::format("{} = {}\n", f.key, f.get(s));
    }
    return out;
}

}  // namespace manetsim::config
