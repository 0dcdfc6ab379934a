#include "qss/transcript.hpp"

#include <json.hpp>
#include <sstream>

namespace qss {

using nlohmann::ordered_json;

std::string_view to_string(Party p) {
    switch (p) {
        case Party::S: return "S";
        case Party::R1: return "R1";
        case Party::R2: return "R2";
        case Party::R3: return "R3";
        case Party::R4: return "R4";
        case Party::R5: return "R5";
        case Party::Eve: return "E";
    }
    return "?";
}

std::string_view to_string(ChannelKind c) {
    switch (c) {
        case ChannelKind::quantum: return "quantum";
        case ChannelKind::classical_public: return "classical-public";
        case ChannelKind::classical_private: return "classical-private";
    }
    return "?";
}

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::setup: return "setup";
        case Phase::auth_tokens: return "auth-tokens";
        case Phase::splitting: return "splitting";
        case Phase::authentication: return "authentication";
        case Phase::combining: return "combining";
        case Phase::decoding: return "decoding";
    }
    return "?";
}

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::phase: return "phase";
        case EventKind::quantum_send: return "quantum-send";
        case EventKind::classical: return "classical";
        case EventKind::measurement: return "measurement";
    }
    return "?";
}

std::string_view to_string(Basis b) { return b == Basis::bell ? "bell" : "computational"; }
std::string_view to_string(Scheme s) { return s == Scheme::qss22 ? "qss22" : "qss55"; }
std::string_view to_string(RunOutcome o) { return o == RunOutcome::reconstructed ? "reconstructed" : "rejected"; }

Event& EventLog::push(EventKind kind, Party from) {
    Event e;
    e.index = events_.size();
    e.phase = phase_;
    e.kind = kind;
    e.from = from;
    events_.push_back(std::move(e));
    return events_.back();
}

void EventLog::phase(Phase p) {
    phase_ = p;
    push(EventKind::phase, Party::S).payload = std::string(to_string(p));
}

void EventLog::quantum_send(Party from, Party to, std::string_view qubit) {
    auto& e = push(EventKind::quantum_send, from);
    e.to = to;
    e.channel = ChannelKind::quantum;
    e.payload = "qubit:" + std::string(qubit);
}

void EventLog::classical(Party from, Party to, ChannelKind channel, std::string payload) {
    auto& e = push(EventKind::classical, from);
    e.to = to;
    e.channel = channel;
    e.payload = std::move(payload);
}

void EventLog::measurement(Party who, Basis basis, std::string_view qubits, std::string result) {
    auto& e = push(EventKind::measurement, who);
    e.basis = basis;
    e.payload = std::string(qubits);
    e.result = std::move(result);
}

namespace {

template <class T>
ordered_json optional_name(const std::optional<T>& v) {
    return v ? ordered_json(std::string(to_string(*v))) : ordered_json(nullptr);
}

}  // namespace

std::string to_jsonl(const Transcript& t) {
    std::ostringstream out;
    ordered_json header;
    header["schema"] = Transcript::kSchema;
    header["scheme"] = to_string(t.scheme);
    header["seed"] = t.seed;
    header["trial"] = t.trial;
    header["secret"] = t.secret;
    header["attack"] = t.attack;
    out << header.dump() << '\n';

    for (const auto& e : t.events) {
        ordered_json j;
        j["index"] = e.index;
        j["phase"] = to_string(e.phase);
        j["kind"] = to_string(e.kind);
        j["from"] = to_string(e.from);
        j["to"] = optional_name(e.to);
        j["channel"] = optional_name(e.channel);
        j["payload"] = e.payload;
        j["basis"] = optional_name(e.basis);
        j["result"] = e.result.empty() ? ordered_json(nullptr) : ordered_json(e.result);
        out << j.dump() << '\n';
    }

    ordered_json summary;
    summary["outcome"] = to_string(t.outcome);
    summary["reconstructed"] = t.reconstructed.empty() ? ordered_json(nullptr) : ordered_json(t.reconstructed);
    auto shares = ordered_json::array();
    for (const auto& s : t.shares) {
        shares.push_back(ordered_json{{"holder", to_string(s.holder)}, {"name", s.name}, {"value", s.value}});
    }
    summary["shares"] = std::move(shares);
    out << summary.dump() << '\n';
    return out.str();
}

std::string to_text(const Transcript& t) {
    std::ostringstream out;
    out << "# " << Transcript::kSchema << " scheme=" << to_string(t.scheme) << " seed=" << t.seed
        << " trial=" << t.trial << " secret=" << t.secret << " attack=" << t.attack << '\n';
    for (const auto& e : t.events) {
        out << e.index << "  [" << to_string(e.phase) << "] ";
        switch (e.kind) {
            case EventKind::phase:
                out << "--- " << e.payload << " ---";
                break;
            case EventKind::quantum_send:
                out << to_string(e.from) << " -> " << to_string(*e.to) << "  " << e.payload;
                break;
            case EventKind::classical:
                out << to_string(e.from) << " -> " << to_string(*e.to) << "  (" << to_string(*e.channel) << ") "
                    << e.payload;
                break;
            case EventKind::measurement:
                out << to_string(e.from) << " measures " << e.payload << " in " << to_string(*e.basis)
                    << " basis: " << e.result;
                break;
        }
        out << '\n';
    }
    for (const auto& s : t.shares) out << "share " << to_string(s.holder) << ' ' << s.name << " = " << s.value << '\n';
    out << "outcome: " << to_string(t.outcome);
    if (!t.reconstructed.empty()) out << " reconstructed=" << t.reconstructed;
    out << '\n';
    return out.str();
}

bool channel_discipline_holds(const Transcript& t) {
    for (const auto& e : t.events) {
        switch (e.kind) {
            case EventKind::quantum_send:
                if (e.channel != ChannelKind::quantum || !e.payload.starts_with("qubit:")) return false;
                break;
            case EventKind::classical: {
                if (!e.channel || *e.channel == ChannelKind::quantum) return false;
                if (*e.channel == ChannelKind::classical_private && t.scheme != Scheme::qss55) return false;
                if (e.payload.empty() || e.payload.size() > 2) return false;
                for (char c : e.payload) {
                    if (c != '0' && c != '1') return false;
                }
                break;
            }
            case EventKind::phase:
            case EventKind::measurement:
                if (e.channel) return false;
                break;
        }
    }
    return true;
}

bool ss_published(const Transcript& t) {
    for (const auto& e : t.events) {
        if (e.kind == EventKind::classical && e.from == Party::S && e.channel == ChannelKind::classical_public) {
            return true;
        }
    }
    return false;
}

}  // namespace qss
