#pragma once

// Built-in copies of the shipped fixtures, used by `selftest` and the test
// suites so they run without touching the filesystem.

#include "quasitor/ribbonmap.hpp"

namespace quasitor::fixtures {

inline constexpr const char* kEdge = R"(# single edge joining two vertices on the sphere
rmap 1
n 1
v 1-
v 1+
)";

inline constexpr const char* kC3 = R"(# triangle embedded in the sphere
rmap 1
n 3
v 1- 3+
v 2- 1+
v 3- 2+
)";

inline constexpr const char* kB2 = R"(# bouquet of two loops on the torus
rmap 1
n 2
v 1+ 2+ 1- 2-
)";

inline constexpr const char* kTorus = R"(# two vertices and four edges on the torus, reconstructed so that the
# quasi-tree list, signed circuits, Jacobian data and Bernardi anchor row
# all take their reference values
rmap 1
n 4
v 1- 3+ 2+ 3-
v 1+ 4- 2- 4+
)";

inline constexpr const char* kK4 = R"(# complete graph K4 embedded in the sphere
rmap 1
n 6
v 1- 4- 3+
v 2- 5- 1+
v 3- 6- 2+
v 4+ 5+ 6+
)";

struct Entry {
    const char* name;
    const char* text;
};

inline constexpr Entry kAll[] = {
    {"FIX-EDGE", kEdge}, {"FIX-C3", kC3}, {"FIX-B2", kB2}, {"FIX-TORUS", kTorus}, {"FIX-K4", kK4},
};

inline RibbonGraph load(const std::string& name) {
    for (const auto& e : kAll)
        if (name == e.name) return RibbonGraph::parse(e.text, name);
    fail(ErrorCode::SyntaxError, "unknown fixture '" + name + "'");
}

}  // namespace quasitor::fixtures
