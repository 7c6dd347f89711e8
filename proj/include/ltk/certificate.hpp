#pragma once

#include "ltk/certifier.hpp"

#include <string>

namespace ltk {

// Canonical JSON certificate text (byte-stable: fixed key order, no
// timestamps). `input` may be null for tower verdicts.
std::string certificate_to_json(const LubinTateInput* input, const Verdict& v);

struct VerifyResult {
    bool ok = false;
    std::string reason;
};

// Independent replay of a certificate using only the primitive layers
// (exact polynomial algebra, p-adic rings, Honda-Tate checks). Never
// invokes the verdict engine.
VerifyResult verify_certificate_text(const std::string& json_text);

} // namespace ltk
