#pragma once

#include <stdexcept>
#include <string>

namespace fedcarbon {

enum class Policy { CL, FA, FAD, CFA };

inline const char* policy_name(Policy p) {
    switch (p) {
        case Policy::CL: return "CL";
        case Policy::FA: return "FA";
        case Policy::FAD: return "FA-D";
        case Policy::CFA: return "CFA";
    }
    throw std::logic_error("unknown policy");
}

/// Accepts the CLI spellings cl | fa | fad | cfa (case-insensitive, and the
/// report spelling fa-d).
inline Policy parse_policy(std::string text) {
    for (auto& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (text == "cl") return Policy::CL;
    if (text == "fa") return Policy::FA;
    if (text == "fad" || text == "fa-d") return Policy::FAD;
    if (text == "cfa") return Policy::CFA;
    throw std::out_of_range("unknown policy '" + text + "' (expected cl, fa, fad or cfa)");
}

}
