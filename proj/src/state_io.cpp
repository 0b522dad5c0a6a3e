#include "qclone/state_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qclone {

using nlohmann::json;

void write_state(std::ostream& os, const PureState& state) {
  json doc;
  doc["dims"] = state.layout.dims();
  std::vector<std::string> roles;
  roles.reserve(state.layout.size());
  for (int i = 0; i < state.layout.size(); ++i) roles.push_back(state.layout.role(i));
  doc["roles"] = roles;
  json amps = json::array();
  for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i)
    amps.push_back({state.amplitudes[i].real(), state.amplitudes[i].imag()});
  doc["amplitudes"] = std::move(amps);
  os << doc.dump() << '\n';
}

void write_state_file(const std::string& path, const PureState& state) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("malformed-state-file: cannot open " + path);
  write_state(os, state);
}

PureState read_state(std::istream& is) {
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed-state-file: ") + e.what());
  }
  if (!doc.contains("dims") || !doc.contains("roles") || !doc.contains("amplitudes"))
    throw std::runtime_error("malformed-state-file: missing dims/roles/amplitudes");

  const auto dims = doc["dims"].get<std::vector<int>>();
  const auto roles = doc["roles"].get<std::vector<std::string>>();
  if (dims.size() != roles.size())
    throw std::runtime_error("malformed-state-file: dims and roles length differ");

  std::vector<Register> regs;
  regs.reserve(dims.size());
  for (size_t i = 0; i < dims.size(); ++i) regs.push_back({roles[i], dims[i]});
  RegisterLayout layout(std::move(regs));

  const auto& amps_json = doc["amplitudes"];
  if (!amps_json.is_array() ||
      static_cast<long long>(amps_json.size()) != layout.total_dim())
    throw std::runtime_error("malformed-state-file: amplitude count mismatch");

  Vector amps(layout.total_dim());
  for (long long i = 0; i < layout.total_dim(); ++i) {
    const auto& pair = amps_json[i];
    if (!pair.is_array() || pair.size() != 2)
      throw std::runtime_error("malformed-state-file: amplitude must be [re, im]");
    amps[i] = Complex(pair[0].get<double>(), pair[1].get<double>());
  }

  const double norm = amps.norm();
  if (std::abs(norm - 1.0) >= kStateNormSlack)
    throw std::runtime_error("norm-out-of-range: state norm deviates by " +
                             std::to_string(std::abs(norm - 1.0)));
  // renormalize real drift, but keep round trips bit-exact
  if (std::abs(norm - 1.0) > 1e-12) amps /= norm;
  return {std::move(layout), std::move(amps)};
}

PureState read_state_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("malformed-state-file: cannot open " + path);
  return read_state(is);
}

}  // namespace qclone
