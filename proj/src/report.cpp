#include "quasiline/report.hpp"

#include <iomanip>
#include <sstream>

namespace quasiline {

namespace {
void render(std::ostringstream& os, const Report& r, bool with_timing) {
    if (!r.title.empty()) os << "== " << r.title << " ==\n";
    for (const auto& it : r.items) {
        os << (it.pass ? "[ok]   " : "[FAIL] ") << it.name;
        if (!it.pass && !it.counterexample.empty()) os << "  at " << it.counterexample;
        if (with_timing) os << "  (" << std::fixed << std::setprecision(1) << it.millis << " ms)";
        os << "\n";
    }
}
}  // namespace

std::string Report::to_text() const {
    std::ostringstream os;
    render(os, *this, true);
    return os.str();
}

std::string Report::to_text_stable() const {
    std::ostringstream os;
    render(os, *this, false);
    return os.str();
}

}  // namespace quasiline
