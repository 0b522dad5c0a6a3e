#pragma once

#include <iosfwd>
#include <string>

#include "qclone/state.hpp"

namespace qclone {

// State file format: a JSON document
//   {"dims": [d, ...], "roles": ["A", "S1", ...], "amplitudes": [[re, im], ...]}
// with amplitudes in big-endian index order. Writers emit full double
// precision. Readers renormalize when the norm deviates by less than 1e-6
// and reject otherwise.

inline constexpr double kStateNormSlack = 1e-6;

void write_state(std::ostream& os, const PureState& state);
void write_state_file(const std::string& path, const PureState& state);

PureState read_state(std::istream& is);
PureState read_state_file(const std::string& path);

}  // namespace qclone
