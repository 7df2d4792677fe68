// Reconstruction of DriveSpec values from their JSON descriptors. Lives apart
// from drives.cpp so analytic families owned by other modules can take part.

#include "qerg/drives.hpp"
#include "qerg/euler.hpp"
#include "qerg/json_util.hpp"
#include "qerg/lattice.hpp"

namespace qerg {

DriveSpec drive_from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "floquet-kick")
    return floquet_kick_drive(json_to_matrix(j.at("h0")),
                              json_to_matrix(j.at("h1")));
  if (family == "cosine")
    return cosine_drive(json_to_matrix(j.at("h0")), json_to_matrix(j.at("h1")),
                        j.at("omega1").get<double>(),
                        j.at("omega2").get<double>());
  if (family == "fibonacci")
    return fibonacci_drive(json_to_matrix(j.at("h0")),
                           json_to_matrix(j.at("h1")),
                           j.at("omega1").get<double>(),
                           j.at("omega2").get<double>());
  if (family == "qubit-cue")
    return qubit_cue_drive(j.at("omega1").get<double>(),
                           j.at("omega2").get<double>(),
                           j.at("q").get<double>());
  if (family == "design-cycle") {
    std::vector<Matrix> gates;
    for (const auto& gj : j.at("gates")) gates.push_back(json_to_matrix(gj));
    return design_cycle_drive(gates);
  }
  if (family == "great-circle")
    return great_circle_3design_drive(j.at("omega").get<double>(),
                                      j.at("q").get<double>());
  if (family == "cue")
    return cue_drive(j.at("d").get<int>(),
                     j.at("omegas").get<std::vector<double>>(),
                     j.at("quasienergies").get<std::vector<double>>());
  if (family == "lattice")
    return lattice_to_drive(lattice_from_json(j.at("lattice")),
                            j.at("omegas").get<std::vector<double>>(),
                            j.at("quasienergies").get<std::vector<double>>());
  throw ArgumentError("unknown drive family: " + family);
}

}  // namespace qerg
