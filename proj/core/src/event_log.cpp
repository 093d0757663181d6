#include "parlearn/event_log.hpp"

#include <ostream>

namespace parlearn {

namespace {

const char* kind_name(EventKind k) {
    switch (k) {
        case EventKind::membership_answered: return "mq";
        case EventKind::membership_unknown: return "mq?";
        case EventKind::equivalence_yes: return "eq-yes";
        case EventKind::equivalence_cex: return "eq-cex";
        case EventKind::cex_delivered: return "deliver";
        case EventKind::snapshot_stored: return "snapshot";
        case EventKind::table_restored: return "restore";
        case EventKind::refinement: return "refine";
        case EventKind::run_finished: return "done";
    }
    return "?";
}

}  // namespace

std::string TextEventLog::format_line(const Event& e, const SymbolTable& table) {
    std::string line = kind_name(e.kind);
    line += '\t';
    line += std::to_string(e.component);
    line += '\t';
    line += std::to_string(e.round);
    line += '\t';
    line += format_trace(e.local, table);
    line += '\t';
    line += format_trace(e.global, table);
    line += '\t';
    line += e.verdict < 0 ? "?" : (e.verdict > 0 ? "+" : "-");
    if (!e.note.empty()) {
        line += '\t';
        line += e.note;
    }
    return line;
}

void TextEventLog::on_event(const Event& e) { out_ << format_line(e, table_) << '\n'; }

}  // namespace parlearn
