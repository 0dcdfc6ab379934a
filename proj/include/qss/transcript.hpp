#pragma once

// Protocol transcripts: an ordered record of every quantum send, classical
// message, measurement and phase change, serialized as one JSON object per
// line under the "qss-transcript/1" schema.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qss {

enum class Party { S, R1, R2, R3, R4, R5, Eve };
enum class ChannelKind { quantum, classical_public, classical_private };
enum class Phase { setup, auth_tokens, splitting, authentication, combining, decoding };
enum class EventKind { phase, quantum_send, classical, measurement };
enum class Basis { bell, computational };
enum class Scheme { qss22, qss55 };
enum class RunOutcome { reconstructed, rejected };

[[nodiscard]] std::string_view to_string(Party p);
[[nodiscard]] std::string_view to_string(ChannelKind c);
[[nodiscard]] std::string_view to_string(Phase p);
[[nodiscard]] std::string_view to_string(EventKind k);
[[nodiscard]] std::string_view to_string(Basis b);
[[nodiscard]] std::string_view to_string(Scheme s);
[[nodiscard]] std::string_view to_string(RunOutcome o);

struct Event {
    std::size_t index = 0;
    Phase phase = Phase::setup;
    EventKind kind = EventKind::phase;
    Party from = Party::S;
    std::optional<Party> to;
    std::optional<ChannelKind> channel;
    // Bit string (MSB first) for classical messages, "qubit:<name>" for
    // quantum sends, the measured qubits for measurements.
    std::string payload;
    std::optional<Basis> basis;
    std::string result;
};

struct ShareEntry {
    Party holder;
    std::string name;
    std::string value;
};

struct Transcript {
    static constexpr std::string_view kSchema = "qss-transcript/1";

    Scheme scheme = Scheme::qss22;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::string secret;
    std::string attack = "none";
    std::vector<Event> events;
    std::vector<ShareEntry> shares;
    RunOutcome outcome = RunOutcome::rejected;
    std::string reconstructed;  // empty when rejected
};

/// Appends events with a running index under the current phase.
class EventLog {
public:
    void phase(Phase p);
    void quantum_send(Party from, Party to, std::string_view qubit);
    void classical(Party from, Party to, ChannelKind channel, std::string payload);
    void measurement(Party who, Basis basis, std::string_view qubits, std::string result);

    [[nodiscard]] Phase current_phase() const { return phase_; }
    [[nodiscard]] const std::vector<Event>& events() const { return events_; }
    [[nodiscard]] std::vector<Event> take() { return std::move(events_); }

private:
    Event& push(EventKind kind, Party from);

    Phase phase_ = Phase::setup;
    std::vector<Event> events_;
};

/// Header line, one line per event, then a summary line.
[[nodiscard]] std::string to_jsonl(const Transcript& t);
[[nodiscard]] std::string to_text(const Transcript& t);

/// No quantum payload on a classical channel and vice versa; classical
/// payloads are 1-2 bits; private channels only in the (5,5) scheme.
[[nodiscard]] bool channel_discipline_holds(const Transcript& t);

/// True if S's teleportation outcome ever went out on a public channel.
[[nodiscard]] bool ss_published(const Transcript& t);

}  // namespace qss
