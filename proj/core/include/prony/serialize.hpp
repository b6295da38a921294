#pragma once

#include <string>

#include "prony/backward.hpp"
#include "prony/model.hpp"
#include "prony/recovery.hpp"

namespace prony {

// Shortest round-trip decimal form (std::to_chars); "nan"/"inf"/"-inf" for
// non-finite values. Used for every CSV field so outputs are byte-stable.
std::string format_double(double v);

// Signal JSON schema (field names are fixed):
// {"nodes":[[re,im],...], "amplitudes":[[re,im],...], "amp_lo":..., "amp_hi":...,
//  "config":{"n":...,"partition":[[...],...],"delta":...,"tau":...,
//            "big_t":...,"eta":...,"ell_star":...}}
std::string signal_to_json(const Signal& signal);
Signal signal_from_json(const std::string& text);

std::string recovery_to_json(const RecoveryResult& result);
std::string backward_report_to_json(const BackwardErrorReport& report);

} // namespace prony
