#include "manetsim/radio.hpp"

#include "manetsim/packet.hpp"

namespace manetsim {

std::string_view to_string(MacProfile m) noexcept {
    return m == MacProfile::Mac80211p ? "802.11p" : "802.11";
}

std::optional<MacProfile> parse_mac(std::string_view s) noexcept {
    if (s == "802.11" || s == "80211" || s == "mac80211") return MacProfile::Mac80211;
    if (s == "802.11p" || s == "80211p" || s == "mac80211p") return MacProfile::Mac80211p;
    return std::nullopt;
}

RadioConfig RadioConfig::preset(MacProfile mac) {
    RadioConfig cfg;
    cfg.mac = mac;
    if (mac == MacProfile::Mac80211p) {
        cfg.base_delay = 0.001;
        cfg.per_contender_delay = 0.0005;
        cfg.loss_base = 0.005;
        cfg.loss_per_contender = 0.002;
    }
    return cfg;
}

std::vector<std::string> check(const RadioConfig& cfg) {
    std::vector<std::string> problems;
    if (!(cfg.range > 0.0)) problems.emplace_back("radio range must be positive");
    if (cfg.base_delay < 0.0 || cfg.per_contender_delay < 0.0) problems.emplace_back("MAC delays must be >= 0");
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob(cfg.loss_base) || !prob(cfg.loss_per_contender)) problems.emplace_back("MAC loss probabilities must be in [0, 1]");
    return problems;
}

std::vector<NodeId> neighbors_of(std::span<const Vec2> positions, NodeId node, double range) {
    std::vector<NodeId> out;
    const Vec2 p = positions[static_cast<std::size_t>(node)];
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (static_cast<NodeId>(i) == node) continue;
        if (in_range(p, positions[i], range)) out.push_back(static_cast<NodeId>(i));
    }
    return out;
}

std::vector<std::vector<NodeId>> unit_disk_graph(std::span<const Vec2> positions, double range) {
    const std::size_t n = positions.size();
    std::vector<std::vector<NodeId>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (in_range(positions[i], positions[j], range)) {
                adj[i].push_back(static_cast<NodeId>(j));
                adj[j].push_back(static_cast<NodeId>(i));
            }
    // j > i pushes keep adj[i] ascending; adj[j] receives i in ascending order too.
    return adj;
}

std::string_view message_name(const ControlMessage& m) noexcept {
    struct Visitor {
        std::string_view operator()(std::monostate) const { return "data"; }
        std::string_view operator()(const msg::AodvHello&) const { return "aodv_hello"; }
        std::string_view operator()(const msg::Rreq&) const { return "rreq"; }
        std::string_view operator()(const msg::Rrep& r) const { return r.gratuitous ? "grat_rrep" : "rrep"; }
        std::string_view operator()(const msg::Rerr&) const { return "rerr"; }
        std::string_view operator()(const msg::FsrUpdate& u) const { return u.full ? "fsr_full" : "fsr_scoped"; }
        std::string_view operator()(const msg::OlsrHello&) const { return "olsr_hello"; }
        std::string_view operator()(const msg::OlsrTc&) const { return "olsr_tc"; }
    };
    return std::visit(Visitor{}, m);
}

std::uint32_t wire_size(const ControlMessage& m) noexcept {
    constexpr std::uint32_t kHeader = 28;
    struct Visitor {
        std::uint32_t operator()(std::monostate) const { return 0; }
        std::uint32_t operator()(const msg::AodvHello&) const { return 20; }
        std::uint32_t operator()(const msg::Rreq&) const { return 24; }
        std::uint32_t operator()(const msg::Rrep&) const { return 20; }
        std::uint32_t operator()(const msg::Rerr& e) const {
            return 4 + 8 * static_cast<std::uint32_t>(e.unreachable.size());
        }
        std::uint32_t operator()(const msg::FsrUpdate& u) const {
            std::uint32_t n = 4;
            for (const auto& e : u.entries) n += 8 + 4 * static_cast<std::uint32_t>(e.neighbors.size());
            return n;
        }
        std::uint32_t operator()(const msg::OlsrHello& h) const {
            return 16 + 4 * static_cast<std::uint32_t>(h.symmetric.size() + h.heard.size() + h.mprs.size());
        }
        std::uint32_t operator()(const msg::OlsrTc& tc) const {
            return 16 + 4 * static_cast<std::uint32_t>(tc.selectors.size());
        }
    };
    return kHeader + std::visit(Visitor{}, m);
}

std::string_view to_string(DropReason r) noexcept {
    switch (r) {
        case DropReason::NoRoute: return "no_route";
        case DropReason::MacLoss: return "mac_loss";
        case DropReason::TtlExpired: return "ttl";
        case DropReason::BufferTimeout: return "buffer_timeout";
        case DropReason::BufferOverflow: return "buffer_overflow";
        case DropReason::LinkBreak: return "link_break";
        case DropReason::DiscoveryFailed: return "discovery_failed";
    }
    return "?";
}

}  // namespace manetsim
