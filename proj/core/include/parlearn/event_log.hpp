#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "parlearn/observations.hpp"
#include "parlearn/trace.hpp"

namespace parlearn {

enum class EventKind {
    membership_answered,   // component, local, global, verdict
    membership_unknown,    // component, local
    equivalence_yes,       // round
    equivalence_cex,       // round, global, verdict
    cex_delivered,         // component, local, verdict
    snapshot_stored,       // component, local
    table_restored,        // component, local
    refinement,            // global (the triggering entry), verdict, note = new distribution
    run_finished,          // note = final distribution
};

struct Event {
    EventKind kind;
    int component = -1;
    int round = -1;
    Trace local;
    Trace global;
    int verdict = -1;  // 1 positive, 0 negative, -1 n/a
    std::string note;
};

class EventSink {
public:
    virtual ~EventSink() = default;
    virtual void on_event(const Event& e) = 0;
};

// Keeps every event; what the tests inspect.
class EventRecorder : public EventSink {
public:
    void on_event(const Event& e) override { events_.push_back(e); }
    const std::vector<Event>& events() const { return events_; }

private:
    std::vector<Event> events_;
};

// One tab-separated line per event; the --trace-run format, stable so replay
// can compare runs byte for byte.
class TextEventLog : public EventSink {
public:
    TextEventLog(std::ostream& out, const SymbolTable& table) : out_(out), table_(table) {}
    void on_event(const Event& e) override;

    static std::string format_line(const Event& e, const SymbolTable& table);

private:
    std::ostream& out_;
    const SymbolTable& table_;
};

}  // namespace parlearn
